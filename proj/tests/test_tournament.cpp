#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "winratio/tournament.hpp"

using namespace winratio;

namespace {

using CmpMap = std::map<std::pair<std::string, std::string>, PairwiseComparison>;

CmpMap cyclic_triplet_map(double a_xy, double a_yz, double a_zx) {
    CmpMap m;
    m[{"x", "y"}] = PairwiseComparison::from_auc(a_xy);
    m[{"y", "z"}] = PairwiseComparison::from_auc(a_yz);
    m[{"z", "x"}] = PairwiseComparison::from_auc(a_zx);
    return m;
}

}  // namespace

TEST_CASE("komisarski_bound closed-form values") {
    CHECK_THAT(komisarski_bound(3),
               Catch::Matchers::WithinAbs((std::sqrt(5.0) - 1.0) / 2.0, 1e-12));
    CHECK_THAT(komisarski_bound(4), Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-15));
    CHECK_THAT(komisarski_bound(1000000), Catch::Matchers::WithinAbs(0.75, 1e-9));
    for (int n = 3; n < 200; ++n) REQUIRE(komisarski_bound(n) < komisarski_bound(n + 1));
    CHECK(komisarski_bound(200) < 0.75);
    CHECK_THROWS_AS(komisarski_bound(2), InvalidArgument);

    CHECK_THAT(komisarski_bound_wr(3),
               Catch::Matchers::WithinAbs((std::sqrt(5.0) + 1.0) / 2.0, 1e-12));
    CHECK_THAT(komisarski_bound_wr(4), Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(komisarski_bound_wr(1000000), Catch::Matchers::WithinAbs(3.0, 1e-8));
    // the WR bound is the exact WR image of the AUC bound
    for (int n = 3; n < 50; ++n)
        REQUIRE_THAT(komisarski_bound_wr(n),
                     Catch::Matchers::WithinAbs(wr_from_auc(komisarski_bound(n)), 1e-12));
}

TEST_CASE("sufficiency flags") {
    const SufficiencyFlags f1 = sufficiency_flags(0.75, 0.70);
    CHECK_THAT(f1.product, Catch::Matchers::WithinAbs(0.525, 1e-12));
    CHECK(f1.transitive_guaranteed);
    CHECK_FALSE(f1.both_at_least_inv_sqrt2);

    const SufficiencyFlags f2 = sufficiency_flags(kInvSqrt2, kInvSqrt2);
    CHECK(f2.transitive_guaranteed);  // product is exactly 1/2
    CHECK(f2.both_at_least_inv_sqrt2);

    const SufficiencyFlags f3 = sufficiency_flags(0.58, 0.70);
    CHECK_THAT(f3.product, Catch::Matchers::WithinAbs(0.406, 1e-12));
    CHECK_FALSE(f3.transitive_guaranteed);

    CHECK_THROWS_AS(sufficiency_flags(0.4, 0.7), InvalidArgument);
}

TEST_CASE("build_tournament orients edges and spots undecided pairs") {
    {
        const TournamentGraph g = build_tournament(cyclic_triplet_map(0.58, 0.70, 0.60));
        CHECK(g.nodes == std::vector<std::string>{"x", "y", "z"});
        CHECK(g.edge[g.index_of("x")][g.index_of("y")]);
        CHECK(g.edge[g.index_of("y")][g.index_of("z")]);
        CHECK(g.edge[g.index_of("z")][g.index_of("x")]);
        CHECK(g.undecided.empty());
    }
    {
        CmpMap m;
        m[{"x", "y"}] = PairwiseComparison::from_auc(0.58);
        m[{"y", "z"}] = PairwiseComparison::from_auc(0.70);
        m[{"z", "x"}] = PairwiseComparison::from_auc(0.50);
        const TournamentGraph g = build_tournament(m, 1e-9);
        CHECK(g.undecided.size() == 1);
        const LoopReport r = enumerate_cycles(g, 3);
        CHECK(r.cycles.empty());
    }
}

TEST_CASE("build_tournament validates coverage and complementarity") {
    CmpMap missing;
    missing[{"x", "y"}] = PairwiseComparison::from_auc(0.6);
    missing[{"y", "z"}] = PairwiseComparison::from_auc(0.6);
    // pair (x, z) never compared
    CHECK_THROWS_AS(build_tournament(missing), DataError);

    CmpMap bad = cyclic_triplet_map(0.58, 0.70, 0.60);
    bad[{"y", "x"}] = PairwiseComparison::from_auc(0.58);  // should be 0.42
    CHECK_THROWS_AS(build_tournament(bad), DataError);

    CmpMap both = cyclic_triplet_map(0.58, 0.70, 0.60);
    both[{"y", "x"}] = PairwiseComparison::from_auc(0.42);
    CHECK_NOTHROW(build_tournament(both));
}

TEST_CASE("enumerate_cycles on pinned tournaments") {
    {  // acyclic orientation: AUC(i, j) > 1/2 for all i < j
        CmpMap m;
        const std::vector<std::string> nodes{"a", "b", "c", "d"};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j)
                m[{nodes[i], nodes[j]}] = PairwiseComparison::from_auc(0.6);
        const LoopReport r = enumerate_cycles(build_tournament(m), 4);
        CHECK(r.cycles.empty());
    }
    {  // canonical triplet: exactly one 3-loop
        const LoopReport r =
            enumerate_cycles(build_tournament(cyclic_triplet_map(0.58, 0.70, 0.60)), 3);
        REQUIRE(r.cycles.size() == 1);
        const Cycle& c = r.cycles[0];
        CHECK(c.nodes == std::vector<std::string>{"x", "y", "z"});
        CHECK(c.length == 3);
        CHECK_THAT(c.min_auc, Catch::Matchers::WithinAbs(0.58, 1e-12));
        CHECK(c.min_edge == 0);
        CHECK_THAT(c.auc_product, Catch::Matchers::WithinAbs(0.58 * 0.70 * 0.60, 1e-15));
        CHECK(c.bound_satisfied);
    }
}

TEST_CASE("four-node loop pattern with chords") {
    // precedence ring A<B<C<D<A plus chords A<C and D<B: one 4-loop and
    // two chord 3-loops (through ACD and BCD)
    CmpMap m;
    m[{"A", "B"}] = PairwiseComparison::from_auc(0.5001);
    m[{"B", "C"}] = PairwiseComparison::from_auc(0.5026);
    m[{"C", "D"}] = PairwiseComparison::from_auc(0.5085);
    m[{"A", "D"}] = PairwiseComparison::from_auc(1.0 - 0.5057);  // D < A
    m[{"A", "C"}] = PairwiseComparison::from_auc(0.5028);
    m[{"B", "D"}] = PairwiseComparison::from_auc(1.0 - 0.5059);  // D < B
    const LoopReport r = enumerate_cycles(build_tournament(m), 4);
    REQUIRE(r.cycles.size() == 3);
    // lexicographic ordering of the canonical node sequences
    CHECK(r.cycles[0].nodes == std::vector<std::string>{"A", "B", "C", "D"});
    CHECK(r.cycles[1].nodes == std::vector<std::string>{"A", "C", "D"});
    CHECK(r.cycles[2].nodes == std::vector<std::string>{"B", "C", "D"});
    for (const Cycle& c : r.cycles) {
        CHECK(c.bound_satisfied);
        CHECK(audit_cycle(c).satisfied);
    }

    const LoopReport only3 = enumerate_cycles(build_tournament(m), 3);
    CHECK(only3.cycles.size() == 2);
}

TEST_CASE("audit flags the weak links and checks the bound") {
    const LoopReport r =
        enumerate_cycles(build_tournament(cyclic_triplet_map(0.58, 0.70, 0.60)), 3);
    const CycleAudit a = audit_cycle(r.cycles[0]);
    CHECK(a.satisfied);
    CHECK(a.min_edge_from == "x");
    CHECK(a.min_edge_to == "y");
    CHECK_THAT(a.bound, Catch::Matchers::WithinAbs(kGoldenRatioAuc, 1e-12));
    // 0.58 and 0.60 sit in the Weak band, 0.70 is Moderate
    REQUIRE(a.weak_edges.size() == 2);

    // an AUC assignment no distributions can realize must fail the audit
    Cycle impossible;
    impossible.nodes = {"p", "q", "r"};
    impossible.edge_aucs = {0.9, 0.9, 0.9};
    impossible.edge_wrs = {9.0, 9.0, 9.0};
    impossible.min_auc = 0.9;
    impossible.min_edge = 0;
    impossible.length = 3;
    impossible.bound = komisarski_bound(3);
    impossible.bound_satisfied = false;
    CHECK_FALSE(audit_cycle(impossible).satisfied);
}

TEST_CASE("cycle reports are deterministic") {
    const CmpMap m = cyclic_triplet_map(0.58, 0.70, 0.60);
    const LoopReport r1 = enumerate_cycles(build_tournament(m), 3);
    const LoopReport r2 = enumerate_cycles(build_tournament(m), 3);
    REQUIRE(r1.cycles.size() == r2.cycles.size());
    for (std::size_t i = 0; i < r1.cycles.size(); ++i) {
        CHECK(r1.cycles[i].nodes == r2.cycles[i].nodes);
        CHECK(r1.cycles[i].edge_aucs == r2.cycles[i].edge_aucs);
    }
}
