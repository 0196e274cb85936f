#pragma once

// Directed tournament over arms or distributions and its non-transitive
// loops. An edge i -> j encodes the relation "i precedes j", i.e.
// AUC(i, j) = Pr(i < j) > 1/2 + tie_epsilon, so j wins the pairwise
// comparison. A cycle x -> y -> ... -> x is a non-transitive loop.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "winratio/comparison.hpp"
#include "winratio/errors.hpp"

namespace winratio {

// sup over loops of length n of the minimum AUC inside the loop
// (Bogdanov 2010; Komisarski 2021). Increasing in n, limit 3/4.
inline double komisarski_bound(int n) {
    if (n < 3) throw InvalidArgument("loop length must be at least 3");
    const double c = std::cos(M_PI / (n + 2));
    return 1.0 - 1.0 / (4.0 * c * c);
}

// Same bound on the WR scale: 4 cos^2(pi/(n+2)) - 1, the exact image of the
// AUC bound under wr = auc/(1-auc). Equals the golden ratio at n = 3 and
// tends to 3.
inline double komisarski_bound_wr(int n) {
    if (n < 3) throw InvalidArgument("loop length must be at least 3");
    const double c = std::cos(M_PI / (n + 2));
    return 4.0 * c * c - 1.0;
}

// Two AUCs sharing a middle variable: if their product is >= 1/2 the triple
// is transitive with ANY third variable (Trybula 1965). Special case worth
// flagging on its own: both >= 1/sqrt(2).
struct SufficiencyFlags {
    double product = 0.0;
    bool transitive_guaranteed = false;
    bool both_at_least_inv_sqrt2 = false;
};

inline SufficiencyFlags sufficiency_flags(double a, double b) {
    if (!(a >= 0.5 && a <= 1.0) || !(b >= 0.5 && b <= 1.0))
        throw InvalidArgument("sufficiency flags need AUCs in [1/2, 1]");
    SufficiencyFlags f;
    f.product = a * b;
    // 1e-12 slack so the exact corollary case a = b = 1/sqrt(2), whose
    // product rounds to just under 1/2, still registers
    f.transitive_guaranteed = f.product >= 0.5 - 1e-12;
    f.both_at_least_inv_sqrt2 = a >= kInvSqrt2 && b >= kInvSqrt2;
    return f;
}

struct TournamentGraph {
    std::vector<std::string> nodes;  // sorted labels
    // comparison for every ordered pair (i, j), i != j; mirror entries are
    // complementary by construction
    std::vector<std::vector<PairwiseComparison>> pair;
    std::vector<std::vector<bool>> edge;  // edge[i][j]: i precedes j
    std::vector<std::pair<std::size_t, std::size_t>> undecided;  // i < j
    double tie_epsilon = 0.0;

    std::size_t index_of(const std::string& label) const {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), label);
        if (it == nodes.end() || *it != label)
            throw InvalidArgument("unknown node label: " + label);
        return static_cast<std::size_t>(it - nodes.begin());
    }
};

// Build the tournament from comparisons keyed by ordered label pairs. Every
// unordered pair of the node set must be covered at least once; when both
// orders are present their AUCs must be complementary within 1e-9.
inline TournamentGraph build_tournament(
    const std::map<std::pair<std::string, std::string>, PairwiseComparison>& comparisons,
    double tie_epsilon = 0.0) {
    if (tie_epsilon < 0.0) throw InvalidArgument("tie_epsilon must be non-negative");

    TournamentGraph g;
    g.tie_epsilon = tie_epsilon;
    std::set<std::string> labels;
    for (const auto& [key, cmp] : comparisons) {
        if (key.first == key.second)
            throw InvalidArgument("self-comparison for node " + key.first);
        labels.insert(key.first);
        labels.insert(key.second);
        (void)cmp;
    }
    g.nodes.assign(labels.begin(), labels.end());
    const std::size_t n = g.nodes.size();
    g.pair.assign(n, std::vector<PairwiseComparison>(n));
    g.edge.assign(n, std::vector<bool>(n, false));

    std::vector<std::vector<bool>> have(n, std::vector<bool>(n, false));
    for (const auto& [key, cmp] : comparisons) {
        const std::size_t i = g.index_of(key.first);
        const std::size_t j = g.index_of(key.second);
        if (have[j][i] && std::fabs(g.pair[j][i].auc + cmp.auc - 1.0) > 1e-9)
            throw DataError("complementarity violated for pair " + key.first + "," +
                            key.second);
        g.pair[i][j] = cmp;
        have[i][j] = true;
        if (!have[j][i]) {
            g.pair[j][i] = cmp.mirrored();
            have[j][i] = true;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!have[i][j])
                throw DataError("missing comparison for pair " + g.nodes[i] + "," +
                                g.nodes[j]);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double auc = g.pair[i][j].auc;
            if (auc > 0.5 + tie_epsilon)
                g.edge[i][j] = true;
            else if (auc < 0.5 - tie_epsilon)
                g.edge[j][i] = true;
            else
                g.undecided.emplace_back(i, j);
        }
    }
    return g;
}

struct Cycle {
    std::vector<std::string> nodes;  // precedence order, minimal label first
    std::vector<double> edge_aucs;   // edge k: nodes[k] -> nodes[k+1 mod n]
    std::vector<double> edge_wrs;
    double min_auc = 1.0;
    std::size_t min_edge = 0;  // index into edge_aucs
    double auc_product = 1.0;
    int length = 0;
    double bound = 0.0;       // komisarski_bound(length)
    bool bound_satisfied = true;
};

struct LoopReport {
    std::vector<Cycle> cycles;
};

struct CycleAudit {
    std::vector<std::string> nodes;
    double min_auc = 1.0;
    std::string min_edge_from, min_edge_to;
    double bound = 0.0;
    bool satisfied = true;
    // edges whose AUC falls in the Weak strength band
    std::vector<std::pair<std::string, std::string>> weak_edges;
};

// Necessary-condition audit: a realizable loop of length n must have
// min AUC <= komisarski_bound(n); a violation signals broken inputs,
// not a finding.
inline CycleAudit audit_cycle(const Cycle& cycle) {
    CycleAudit a;
    a.nodes = cycle.nodes;
    a.min_auc = cycle.min_auc;
    a.min_edge_from = cycle.nodes[cycle.min_edge];
    a.min_edge_to = cycle.nodes[(cycle.min_edge + 1) % cycle.nodes.size()];
    a.bound = cycle.bound;
    a.satisfied = cycle.min_auc <= cycle.bound + 1e-9;
    for (std::size_t k = 0; k < cycle.edge_aucs.size(); ++k) {
        if (classify_strength(cycle.edge_aucs[k]).label == Strength::Weak)
            a.weak_edges.emplace_back(cycle.nodes[k],
                                      cycle.nodes[(k + 1) % cycle.nodes.size()]);
    }
    return a;
}

namespace detail {

inline void cycle_dfs(const TournamentGraph& g, std::size_t root, std::size_t at,
                      std::vector<std::size_t>& path, std::vector<bool>& on_path,
                      int max_length, std::vector<std::vector<std::size_t>>& found) {
    for (std::size_t next = 0; next < g.nodes.size(); ++next) {
        if (!g.edge[at][next]) continue;
        if (next == root) {
            if (path.size() >= 3) found.push_back(path);
            continue;
        }
        // restricting to indices above the root makes the minimal node the
        // canonical rotation and finds each directed cycle exactly once
        if (next < root || on_path[next]) continue;
        if (static_cast<int>(path.size()) >= max_length) continue;
        path.push_back(next);
        on_path[next] = true;
        cycle_dfs(g, root, next, path, on_path, max_length, found);
        on_path[next] = false;
        path.pop_back();
    }
}

}  // namespace detail

// All simple directed cycles of length 3..max_length, canonicalized by
// rotating the minimal label to the front (direction preserved), ordered
// lexicographically by node-label sequence.
inline LoopReport enumerate_cycles(const TournamentGraph& g, int max_length) {
    if (max_length < 3) throw InvalidArgument("max_length must be at least 3");
    const std::size_t n = g.nodes.size();
    std::vector<std::vector<std::size_t>> found;
    std::vector<std::size_t> path;
    std::vector<bool> on_path(n, false);
    for (std::size_t root = 0; root < n; ++root) {
        path.assign(1, root);
        on_path.assign(n, false);
        on_path[root] = true;
        detail::cycle_dfs(g, root, root, path, on_path, max_length, found);
    }

    LoopReport report;
    for (const auto& idx : found) {
        Cycle c;
        c.length = static_cast<int>(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k) {
            c.nodes.push_back(g.nodes[idx[k]]);
            const std::size_t to = idx[(k + 1) % idx.size()];
            const double auc = g.pair[idx[k]][to].auc;
            c.edge_aucs.push_back(auc);
            c.edge_wrs.push_back(wr_from_auc(auc));
            c.auc_product *= auc;
            if (auc < c.min_auc) {
                c.min_auc = auc;
                c.min_edge = k;
            }
        }
        c.bound = komisarski_bound(c.length);
        c.bound_satisfied = c.min_auc <= c.bound + 1e-9;
        report.cycles.push_back(std::move(c));
    }
    std::sort(report.cycles.begin(), report.cycles.end(),
              [](const Cycle& x, const Cycle& y) { return x.nodes < y.nodes; });
    return report;
}

}  // namespace winratio
