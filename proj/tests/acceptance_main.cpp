// Acceptance suite: one pass/fail line per criterion. Exercises the library
// directly and drives the CLI binary (WINRATIO_CLI_PATH) for the
// end-to-end and determinism criteria. Exit code 0 iff every criterion
// passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "winratio/demos.hpp"
#include "winratio/winratio.hpp"

using namespace winratio;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("winratio_acceptance_" + name);
}

int run_cli(const std::string& args, const fs::path& stdout_to = {}) {
    std::string cmd = std::string(WINRATIO_CLI_PATH) + " " + args;
    if (!stdout_to.empty()) cmd += " > " + stdout_to.string();
    cmd += " 2> /dev/null";
    return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) { return read_file_bytes(p.string()); }

// ---------------------------------------------------------------------------

void criterion_1_table1() {
    const auto [x, y, z] = demos::canonical_triplet();
    const double t0 = now_ms();
    const double a_xy = exact_auc_discrete(x, y);
    const double a_yz = exact_auc_discrete(y, z);
    const double a_zx = exact_auc_discrete(z, x);
    std::map<std::pair<std::string, std::string>, PairwiseComparison> m;
    m[{"x", "y"}] = PairwiseComparison::from_auc(a_xy);
    m[{"y", "z"}] = PairwiseComparison::from_auc(a_yz);
    m[{"z", "x"}] = PairwiseComparison::from_auc(a_zx);
    const LoopReport loops = enumerate_cycles(build_tournament(m), 3);
    const double elapsed = now_ms() - t0;

    bool ok = std::fabs(a_xy - 0.58) <= 1e-12 && std::fabs(a_yz - 0.70) <= 1e-12 &&
              std::fabs(a_zx - 0.60) <= 1e-12;
    ok = ok && std::fabs(wr_from_auc(a_xy) - 1.380952380952381) <= 1e-9 &&
         std::fabs(wr_from_auc(a_yz) - 7.0 / 3.0) <= 1e-9 &&
         std::fabs(wr_from_auc(a_zx) - 1.5) <= 1e-9;
    ok = ok && loops.cycles.size() == 1 && loops.cycles[0].length == 3;
    ok = ok && elapsed < 1.0;
    std::ostringstream d;
    d << "AUCs (" << a_xy << ", " << a_yz << ", " << a_zx << "), " << loops.cycles.size()
      << " loop(s), " << elapsed << " ms";
    report(1, "canonical discrete triplet reproduced exactly", ok, d.str());
}

void criterion_2_bijection() {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> aucs(100000);
    for (double& a : aucs) a = unif(rng) * (1.0 - 1e-9);
    std::sort(aucs.begin(), aucs.end());
    bool ok = true;
    double prev_wr = -1.0, prev_auc = -1.0;
    for (double a : aucs) {
        const double wr = wr_from_auc(a);
        if (std::fabs(auc_from_wr(wr) - a) > 1e-12) ok = false;
        if (a > prev_auc && wr <= prev_wr) ok = false;
        prev_auc = a;
        prev_wr = wr;
    }
    report(2, "WR/AUC bijection round-trips 1e5 values within 1e-12", ok);
}

// shared corpus for criteria 3 and 4
struct LoopCorpus {
    std::vector<AucTriplet> triplets;  // oriented 3-loops (all components >= 1/2)
};

LoopCorpus build_corpus() {
    LoopCorpus corpus;
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double b = 0.5 + 0.5 * unif(rng);
        const double c = 0.5 + (1.0 / (2.0 * b) - 0.5) * unif(rng);
        const SigmaTriplet s = construct_sigma(b, c);
        corpus.triplets.push_back({exact_auc_discrete(s.x, s.y),
                                   exact_auc_discrete(s.y, s.z),
                                   exact_auc_discrete(s.z, s.x)});
    }
    // random discrete triples that happen to close a 3-loop
    std::uniform_int_distribution<int> val(0, 8);
    std::uniform_real_distribution<double> mass(0.05, 1.0);
    auto random_dist = [&] {
        std::vector<DiscreteDistribution::Atom> atoms;
        double sum = 0.0;
        const int n = 1 + static_cast<int>(val(rng)) % 4;
        for (int k = 0; k < n; ++k) {
            atoms.push_back({static_cast<double>(val(rng)), mass(rng)});
            sum += atoms.back().prob;
        }
        for (auto& a : atoms) a.prob /= sum;
        return DiscreteDistribution(atoms);
    };
    int found = 0;
    while (found < 1000) {
        const DiscreteDistribution x = random_dist(), y = random_dist(), z = random_dist();
        double a = exact_auc_discrete(x, y);
        double b = exact_auc_discrete(y, z);
        double c = exact_auc_discrete(z, x);
        if (a < 0.5 && b < 0.5 && c < 0.5) {
            const double na = 1.0 - c, nb = 1.0 - b, nc = 1.0 - a;
            a = na; b = nb; c = nc;
        } else if (!(a > 0.5 && b > 0.5 && c > 0.5)) {
            continue;
        }
        corpus.triplets.push_back({a, b, c});
        ++found;
    }
    return corpus;
}

void criterion_3_bound(const LoopCorpus& corpus) {
    bool ok = true;
    for (const AucTriplet& t : corpus.triplets)
        if (std::min({t.a, t.b, t.c}) > kGoldenRatioAuc + 1e-9) ok = false;
    ok = ok && std::fabs(komisarski_bound(3) - kGoldenRatioAuc) <= 1e-12;
    for (int n = 3; n < 1000; ++n)
        if (komisarski_bound(n + 1) <= komisarski_bound(n)) ok = false;
    ok = ok && std::fabs(komisarski_bound(1000000) - 0.75) <= 1e-9;
    std::ostringstream d;
    d << corpus.triplets.size() << " loops audited, bound(3) = " << komisarski_bound(3);
    report(3, "min AUC of every realizable 3-loop within the golden-ratio bound", ok,
           d.str());
}

void criterion_4_product(const LoopCorpus& corpus) {
    bool ok = true;
    for (const AucTriplet& t : corpus.triplets)
        if (t.a * t.b * t.c > 0.25 + 1e-9) ok = false;
    const SigmaTriplet eq = construct_sigma(1.0, 0.5);  // bc = 1/2
    const double product = exact_auc_discrete(eq.x, eq.y) * exact_auc_discrete(eq.y, eq.z) *
                           exact_auc_discrete(eq.z, eq.x);
    ok = ok && std::fabs(product - 0.25) <= 1e-9;
    std::ostringstream d;
    d << "cyclic products <= 1/4; equality case gives " << product;
    report(4, "cyclic AUC product bound with sharp equality", ok, d.str());
}

void criterion_5_sufficiency_grid() {
    const double t0 = now_ms();
    bool ok = true;
    for (int i = 0; i <= 50 && ok; ++i) {
        const double a = 0.5 + i / 100.0;
        for (int j = 0; j <= 50 && ok; ++j) {
            const double b = 0.5 + j / 100.0;
            if (a * b < 0.5) continue;
            for (int k = 1; k <= 50; ++k) {
                const double c = 0.5 + k / 100.0;
                if (member_s3nt({a, b, c})) {
                    ok = false;
                    break;
                }
            }
        }
    }
    const double elapsed = now_ms() - t0;
    ok = ok && elapsed < 10000.0;
    std::ostringstream d;
    d << "grid swept in " << elapsed << " ms";
    report(5, "AUC product >= 1/2 excludes every loop completion", ok, d.str());
}

void criterion_6_constructor() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    bool ok = true;
    for (int i = 0; i < 10000; ++i) {
        const double b = 0.5 + 0.5 * unif(rng);
        const double c = 0.5 + (1.0 / (2.0 * b) - 0.5) * unif(rng);
        const SigmaTriplet s = construct_sigma(b, c);
        if (std::fabs(exact_auc_discrete(s.x, s.y) - (1.0 - b * c)) > 1e-12 ||
            std::fabs(exact_auc_discrete(s.y, s.z) - b) > 1e-12 ||
            std::fabs(exact_auc_discrete(s.z, s.x) - c) > 1e-12) {
            ok = false;
            break;
        }
    }
    auto rejected_with = [](double b, double c, const char* needle) {
        try {
            construct_sigma(b, c);
            return false;
        } catch (const InvalidArgument& e) {
            return std::string(e.what()).find(needle) != std::string::npos;
        }
    };
    ok = ok && rejected_with(0.7, 0.8, "c <= 1/(2b) violated");
    ok = ok && rejected_with(0.4, 0.6, "b >= 1/2 violated");
    ok = ok && rejected_with(0.7, 0.4, "c >= 1/2 violated");
    ok = ok && rejected_with(1.1, 0.5, "b <= 1 violated");
    report(6, "Sigma constructor round-trips 1e4 in-region targets within 1e-12", ok);
}

void criterion_7_boundary() {
    bool ok = member_s3nt({0.5, 1.0, 0.5});
    const SigmaTriplet s = construct_sigma(1.0, 0.5);
    ok = ok && exact_auc_discrete(s.x, s.y) == 0.5 && exact_auc_discrete(s.y, s.z) == 1.0 &&
         exact_auc_discrete(s.z, s.x) == 0.5;
    report(7, "boundary triplet (1/2, 1, 1/2) is a member and exactly realized", ok);
}

void criterion_8_continuous_loop() {
    const double t0 = now_ms();
    const std::vector<DistributionSpec> specs = demos::continuous_triplet();
    bool ok = true;
    std::ostringstream d;
    const std::uint64_t seed = 20240801;
    for (int k = 0; k < 3; ++k) {
        const DistributionSpec& first = specs[k];
        const DistributionSpec& second = specs[(k + 1) % 3];
        const AucEstimate quad = auc_quadrature(first, second, 1e-10);
        const AucEstimate mc = auc_monte_carlo(first, second, 1000000, seed + k);
        if (!(quad.value > 0.5)) ok = false;
        if (std::fabs(quad.value - mc.value) > 4.0 * mc.std_error) ok = false;
        d << (k ? ", " : "") << quad.value;
    }
    AnalysisOptions options;
    options.method = AucMethod::quadrature;
    const AnalysisReport rep = analyze_specs("loop", specs, options);
    ok = ok && rep.loops.cycles.size() == 1 && rep.loops.cycles[0].length == 3;
    const double elapsed = now_ms() - t0;
    ok = ok && elapsed < 30000.0;
    d << "; " << elapsed << " ms";
    report(8, "continuous loop: quadrature above 1/2, MC agrees, 3-loop reported", ok,
           d.str());
}

void criterion_9_certificates() {
    std::mt19937_64 rng(9090);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sep_keys = [&](double lo, double hi, double min_gap) {
        std::vector<double> keys;
        while (keys.size() < 3) {
            const double k = lo + (hi - lo) * unif(rng);
            bool okk = true;
            for (double other : keys) okk = okk && std::fabs(k - other) >= min_gap;
            if (okk) keys.push_back(k);
        }
        return keys;
    };

    bool ok = true;
    int checked = 0;
    for (int iter = 0; iter < 200 && ok; ++iter) {
        for (int cls = 0; cls < 5 && ok; ++cls) {
            std::vector<DistributionSpec> specs;
            switch (cls) {
                case 0: {  // normals
                    const auto keys = sep_keys(-1.0, 1.0, 0.05);
                    for (double m : keys)
                        specs.push_back(DistributionSpec::normal(m, 0.3 + unif(rng)));
                    break;
                }
                case 1: {  // lognormals
                    const auto keys = sep_keys(-0.8, 0.8, 0.05);
                    for (double m : keys)
                        specs.push_back(DistributionSpec::lognormal(m, 0.3 + 0.7 * unif(rng)));
                    break;
                }
                case 2: {  // bernoullis
                    const auto keys = sep_keys(0.05, 0.95, 0.02);
                    for (double p : keys) specs.push_back(DistributionSpec::bernoulli(p));
                    break;
                }
                case 3: {  // symmetric mixes
                    const auto keys = sep_keys(-1.0, 1.0, 0.05);
                    for (double m : keys) {
                        if (unif(rng) < 0.5)
                            specs.push_back(DistributionSpec::normal(m, 0.3 + unif(rng)));
                        else {
                            const double w = 0.3 + unif(rng);
                            specs.push_back(DistributionSpec::uniform(m - w, m + w));
                        }
                    }
                    break;
                }
                case 4: {  // shift family on an asymmetric base
                    const auto keys = sep_keys(-1.0, 1.0, 0.05);
                    const bool use_exp = unif(rng) < 0.5;
                    const double shape = 0.5 + unif(rng);
                    for (double dshift : keys) {
                        DistributionSpec base = use_exp
                                                    ? DistributionSpec::exponential(shape)
                                                    : DistributionSpec::chi_squared(1 + shape);
                        specs.push_back(base.shifted(dshift));
                    }
                    break;
                }
            }
            const TransitivityCertificate cert = transitivity_certificate(specs);
            if (cert.kind == CertificateKind::none) {
                ok = false;
                break;
            }
            for (int i = 0; i < 3 && ok; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (i == j) continue;
                    const double auc = auc_between(specs[i], specs[j], 1e-8).value;
                    if ((auc > 0.5) != (cert.keys[i] < cert.keys[j])) {
                        ok = false;
                        break;
                    }
                }
            ++checked;
        }
    }
    std::ostringstream d;
    d << checked << " certified triples, all acyclic and key-ordered";
    report(9, "family certificates are sound and predict every edge", ok, d.str());
}

void criterion_10_censoring() {
    // 16 cross-pairs covering (event/censored)^2 x (earlier/tie/later)
    const char* fixture =
        "arm,time,event\n"
        "A,2,1\nA,2,0\nA,6,1\nA,6,0\n"
        "B,4,1\nB,4,0\nB,2,1\nB,2,0\n";
    const Arm a{"A", {{2, true}, {2, false}, {6, true}, {6, false}}};
    const Arm b{"B", {{4, true}, {4, false}, {2, true}, {2, false}}};
    const PairwiseComparison direct = censored_comparison(a, b);
    bool ok = direct.wins_first == 4 && direct.wins_second == 2 && direct.indeterminate == 10;

    const fs::path csv = temp_file("rule_fixture.csv");
    std::ofstream(csv) << fixture;
    const fs::path out = temp_file("rule_fixture.json");
    ok = ok && run_cli("analyze " + csv.string() + " --format json", out) == 0;
    if (ok) {
        const nlohmann::json j = nlohmann::json::parse(slurp(out));
        const auto& p = j["pairwise"][0];
        ok = p["wins_first"] == 4 && p["wins_second"] == 2 && p["indeterminate"] == 10;
    }
    report(10, "censoring rule matches hand enumeration, end to end through the CLI", ok);
}

void criterion_11_efron() {
    bool ok = true;
    const auto dice = demos::efron_dice();
    for (std::size_t k = 0; k < 4; ++k) {
        const auto& w = dice[k].second;
        const auto& l = dice[(k + 1) % 4].second;
        std::uint64_t wins = 0, losses = 0;
        for (int x : w)
            for (int y : l) {
                if (x > y) ++wins;
                else if (x < y) ++losses;
            }
        //  exact rational check: wins/(wins+losses) == 2/3
        if (wins * 3 != (wins + losses) * 2 || wins + losses != 36) ok = false;
    }
    const demos::DemoRun run = demos::run_efron();
    const Cycle* four = nullptr;
    for (const Cycle& c : run.report.loops.cycles)
        if (c.length == 4) four = &c;
    ok = ok && four != nullptr;
    if (four) {
        ok = ok && std::fabs(four->bound - 2.0 / 3.0) <= 1e-12;
        ok = ok && four->min_auc <= four->bound + 1e-9 && four->bound_satisfied;
        ok = ok && std::fabs(four->min_auc - 2.0 / 3.0) <= 1e-9;  // sharp at the bound
    }
    report(11, "dice demo: exact 2/3 adjacencies, 4-loop, audit sharp at bound(4)", ok);
}

void criterion_12_determinism() {
    bool ok = true;
    const fs::path csv = temp_file("determinism.csv");
    std::ofstream(csv) << demos::kSyntheticFourArmCsv;

    const fs::path a1 = temp_file("a1.json"), a2 = temp_file("a2.json"),
                   a4 = temp_file("a4.json");
    ok = ok && run_cli("analyze " + csv.string() + " --format json --threads 1", a1) == 0;
    ok = ok && run_cli("analyze " + csv.string() + " --format json --threads 1", a2) == 0;
    ok = ok && run_cli("analyze " + csv.string() + " --format json --threads 4", a4) == 0;
    ok = ok && slurp(a1) == slurp(a2) && slurp(a1) == slurp(a4);

    const std::string sim_args =
        "simulate \"normal(0,1)\" \"normal(0.3,1)\" \"normal(0.6,1)\" --method mc "
        "--samples 200000 --seed 99 --format json";
    const fs::path s1 = temp_file("s1.json"), s2 = temp_file("s2.json"),
                   s4 = temp_file("s4.json");
    ok = ok && run_cli(sim_args + " --threads 1", s1) == 0;
    ok = ok && run_cli(sim_args + " --threads 1", s2) == 0;
    ok = ok && run_cli(sim_args + " --threads 4", s4) == 0;
    ok = ok && slurp(s1) == slurp(s2) && slurp(s1) == slurp(s4);
    report(12, "analyze and simulate are byte-identical across runs and thread counts", ok);
}

}  // namespace

int main() {
    criterion_1_table1();
    criterion_2_bijection();
    const LoopCorpus corpus = build_corpus();
    criterion_3_bound(corpus);
    criterion_4_product(corpus);
    criterion_5_sufficiency_grid();
    criterion_6_constructor();
    criterion_7_boundary();
    criterion_8_continuous_loop();
    criterion_9_certificates();
    criterion_10_censoring();
    criterion_11_efron();
    criterion_12_determinism();

    if (g_failures == 0) std::printf("all 12 criteria passed\n");
    else std::printf("%d criterion(s) FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
