#pragma once

// Shared analysis pipeline: pairwise comparisons -> tournament -> loop
// enumeration -> necessary-condition audits -> sufficiency notes. Both the
// dataset path (censored arms) and the distribution path (exact/quadrature/
// Monte Carlo AUCs) feed the same machinery, so loop handling is identical.

#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "winratio/comparison.hpp"
#include "winratio/distributions.hpp"
#include "winratio/errors.hpp"
#include "winratio/loop_space.hpp"
#include "winratio/tournament.hpp"

namespace winratio {

inline const char* kVersion = "0.1.0";

enum class AucMethod { mc, quadrature, both };

inline const char* auc_method_name(AucMethod m) {
    switch (m) {
        case AucMethod::mc: return "mc";
        case AucMethod::quadrature: return "quadrature";
        case AucMethod::both: return "both";
    }
    return "?";
}

struct AnalysisOptions {
    double tie_epsilon = 0.0;
    int max_loop = 0;                    // 0: use the node count
    unsigned threads = 1;                // pairwise comparisons run in parallel
    AucMethod method = AucMethod::quadrature;  // distribution path
    double abs_tol = 1e-10;              // quadrature tolerance
    std::uint64_t samples = 1'000'000;   // Monte Carlo draws per pair
    std::uint64_t seed = 1;
};

struct PairResult {
    std::string first, second;  // lexicographic, first < second
    PairwiseComparison cmp;     // cmp.auc = Pr(first < second)
    std::optional<AucEstimate> estimate;     // distribution path
    std::optional<AucEstimate> cross_check;  // method "both": the MC side
};

struct SufficiencyNote {
    std::string x, y, z;  // decided chain x -> y -> z in precedence order
    SufficiencyFlags flags;
};

struct AnalysisReport {
    std::string dataset;
    std::string input_digest;  // sha256 hex of the input file; empty otherwise
    AnalysisOptions options;
    std::vector<std::string> arm_summaries;  // "label (n records)" per arm
    std::vector<std::string> spec_strings;   // distribution path
    std::vector<PairResult> pairwise;
    TournamentGraph graph;
    LoopReport loops;
    std::vector<CycleAudit> audits;
    std::optional<TransitivityCertificate> certificate;  // distribution path
    std::vector<SufficiencyNote> sufficiency;
};

namespace detail {

// per-pair Monte Carlo seed, independent of thread scheduling
inline std::uint64_t pair_seed(std::uint64_t seed, std::size_t i, std::size_t j) {
    return splitmix64(seed * 0x9e3779b97f4a7c15ULL + i * 1000003ULL + j);
}

template <typename Fn>
void for_each_index(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(count));
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// tournament + cycles + audits + sufficiency; throws InvariantViolation if a
// computed loop breaks the necessary bound (these inputs are realizable, so
// a violation means a counting or estimation bug, not a finding)
inline void finish_report(AnalysisReport& report) {
    std::map<std::pair<std::string, std::string>, PairwiseComparison> cmp_map;
    for (const auto& p : report.pairwise) cmp_map[{p.first, p.second}] = p.cmp;
    report.graph = build_tournament(cmp_map, report.options.tie_epsilon);

    const int n = static_cast<int>(report.graph.nodes.size());
    const int max_loop = report.options.max_loop > 0 ? report.options.max_loop
                                                     : std::max(3, n);
    report.loops = enumerate_cycles(report.graph, max_loop);
    for (const Cycle& c : report.loops.cycles) {
        const CycleAudit a = audit_cycle(c);
        if (!a.satisfied)
            throw InvariantViolation(
                "loop through " + c.nodes.front() + " has min AUC " +
                std::to_string(a.min_auc) + " above the length-" +
                std::to_string(c.length) + " bound " + std::to_string(a.bound) +
                "; computed comparisons are inconsistent");
        report.audits.push_back(a);
    }

    const auto& g = report.graph;
    for (std::size_t mid = 0; mid < g.nodes.size(); ++mid) {
        for (std::size_t i = 0; i < g.nodes.size(); ++i) {
            if (i == mid || !g.edge[i][mid]) continue;
            for (std::size_t k = 0; k < g.nodes.size(); ++k) {
                if (k == mid || k == i || !g.edge[mid][k]) continue;
                SufficiencyNote note;
                note.x = g.nodes[i];
                note.y = g.nodes[mid];
                note.z = g.nodes[k];
                note.flags = sufficiency_flags(g.pair[i][mid].auc, g.pair[mid][k].auc);
                report.sufficiency.push_back(note);
            }
        }
    }
}

}  // namespace detail

// Censored-dataset path: every unordered pair of arms gets the censoring-
// aware win count. Comparisons may run in parallel; counting is exact
// integer arithmetic, so results do not depend on the thread count.
inline AnalysisReport analyze_arms(const std::string& name, const std::vector<Arm>& arms,
                                   const AnalysisOptions& options,
                                   const std::string& input_digest = "") {
    if (arms.size() < 2) throw DataError("need at least 2 arms");
    std::vector<Arm> sorted = arms;
    std::sort(sorted.begin(), sorted.end(),
              [](const Arm& a, const Arm& b) { return a.label < b.label; });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i].label.empty()) throw DataError("arm labels must be non-empty");
        if (i > 0 && sorted[i].label == sorted[i - 1].label)
            throw DataError("duplicate arm label: " + sorted[i].label);
        if (sorted[i].records.empty())
            throw DataError("arm " + sorted[i].label + " has no records");
    }

    AnalysisReport report;
    report.dataset = name;
    report.input_digest = input_digest;
    report.options = options;
    for (const Arm& a : sorted)
        report.arm_summaries.push_back(a.label + " (" + std::to_string(a.records.size()) +
                                       " records)");

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (std::size_t j = i + 1; j < sorted.size(); ++j) pairs.emplace_back(i, j);
    report.pairwise.resize(pairs.size());
    detail::for_each_index(pairs.size(), options.threads, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        PairResult r;
        r.first = sorted[i].label;
        r.second = sorted[j].label;
        r.cmp = censored_comparison(sorted[i], sorted[j]);
        report.pairwise[k] = std::move(r);
    });

    detail::finish_report(report);
    return report;
}

// Distribution path: pairwise AUCs by quadrature/exact summation, Monte
// Carlo, or both (cross-checked within 4 standard errors plus the
// quadrature tolerance). Labels are T1..Tk in input order.
inline AnalysisReport analyze_specs(const std::string& name,
                                    const std::vector<DistributionSpec>& specs,
                                    const AnalysisOptions& options,
                                    std::vector<std::string> labels = {}) {
    if (specs.size() < 2) throw DataError("need at least 2 distributions");
    if (!labels.empty() && labels.size() != specs.size())
        throw InvalidArgument("one label per spec required");

    AnalysisReport report;
    report.dataset = name;
    report.options = options;
    if (labels.empty()) {
        const int width = specs.size() >= 10 ? 2 : 1;
        for (std::size_t i = 0; i < specs.size(); ++i) {
            std::string num = std::to_string(i + 1);
            while (static_cast<int>(num.size()) < width) num.insert(num.begin(), '0');
            labels.push_back("T" + num);
        }
    }
    for (std::size_t i = 0; i < specs.size(); ++i)
        report.spec_strings.push_back(labels[i] + " = " + specs[i].to_string());

    if (specs.size() >= 3) report.certificate = transitivity_certificate(specs);

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < specs.size(); ++i)
        for (std::size_t j = i + 1; j < specs.size(); ++j) pairs.emplace_back(i, j);
    report.pairwise.resize(pairs.size());
    std::vector<std::string> cross_errors(pairs.size());
    detail::for_each_index(pairs.size(), options.threads, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        PairResult r;
        r.first = labels[i];
        r.second = labels[j];
        const std::uint64_t mc_seed = detail::pair_seed(options.seed, i, j);
        switch (options.method) {
            case AucMethod::quadrature:
                r.estimate = auc_between(specs[i], specs[j], options.abs_tol);
                break;
            case AucMethod::mc:
                r.estimate = auc_monte_carlo(specs[i], specs[j], options.samples, mc_seed);
                break;
            case AucMethod::both: {
                r.estimate = auc_between(specs[i], specs[j], options.abs_tol);
                r.cross_check =
                    auc_monte_carlo(specs[i], specs[j], options.samples, mc_seed);
                const double gap = std::fabs(r.estimate->value - r.cross_check->value);
                const double allowed =
                    4.0 * r.cross_check->std_error + 10.0 * options.abs_tol + 1e-12;
                if (gap > allowed)
                    cross_errors[k] = "Monte Carlo and quadrature disagree for pair " +
                                      r.first + "," + r.second + ": |" +
                                      std::to_string(r.estimate->value) + " - " +
                                      std::to_string(r.cross_check->value) + "| > " +
                                      std::to_string(allowed);
                break;
            }
        }
        r.cmp = PairwiseComparison::from_auc(r.estimate->value);
        report.pairwise[k] = std::move(r);
    });
    for (const std::string& err : cross_errors)
        if (!err.empty()) throw InvariantViolation(err);

    detail::finish_report(report);
    return report;
}

}  // namespace winratio
