#pragma once

// Pairwise win/loss counting and the WR <-> AUC correspondence.
//
// Conventions used throughout the library, for an ordered pair
// (first, second):
//   auc = Pr(first < second)          (probability the second exceeds the first)
//   wr  = auc / (1 - auc)             (wins of the second per win of the first)
// so auc > 1/2 and wr > 1 both mean the second element wins in the long run.
//
// Two tie conventions coexist and each operation documents which it uses:
// exact distribution AUCs credit ties 0.5 to each side; empirical and
// censored counting use strict indicators and report ties as indeterminate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "winratio/errors.hpp"

namespace winratio {

inline const double kGoldenRatioAuc = (std::sqrt(5.0) - 1.0) / 2.0;
inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// ---------------------------------------------------------------------------
// Domain types

struct EventRecord {
    double time = 0.0;   // study time units, >= 0 and finite
    bool event = false;  // true = event observed, false = censored at `time`
};

struct Arm {
    std::string label;
    std::vector<EventRecord> records;
};

inline void validate_record(const EventRecord& r) {
    if (!(r.time >= 0.0) || !std::isfinite(r.time))
        throw DataError("event time must be finite and non-negative");
}

// Finite-support pmf. Atoms are sorted, equal values merged, zero-probability
// atoms dropped; remaining probabilities must be positive and sum to 1
// within 1e-12.
class DiscreteDistribution {
public:
    struct Atom {
        double value;
        double prob;
    };

    explicit DiscreteDistribution(std::vector<Atom> atoms) {
        for (const Atom& a : atoms) {
            if (!std::isfinite(a.value)) throw InvalidArgument("atom value must be finite");
            if (a.prob < 0.0) throw InvalidArgument("atom probability must be non-negative");
        }
        std::stable_sort(atoms.begin(), atoms.end(),
                         [](const Atom& x, const Atom& y) { return x.value < y.value; });
        for (const Atom& a : atoms) {
            if (a.prob == 0.0) continue;
            if (!atoms_.empty() && atoms_.back().value == a.value)
                atoms_.back().prob += a.prob;
            else
                atoms_.push_back(a);
        }
        if (atoms_.empty()) throw InvalidArgument("distribution needs at least one atom");
        double sum = 0.0;
        for (const Atom& a : atoms_) sum += a.prob;
        if (std::fabs(sum - 1.0) > 1e-12)
            throw InvalidArgument("atom probabilities must sum to 1 (got " + std::to_string(sum) + ")");
    }

    const std::vector<Atom>& atoms() const { return atoms_; }

    double mean() const {
        double m = 0.0;
        for (const Atom& a : atoms_) m += a.value * a.prob;
        return m;
    }

private:
    std::vector<Atom> atoms_;
};

// ---------------------------------------------------------------------------
// WR <-> AUC

inline double wr_from_auc(double auc) {
    if (!(auc >= 0.0 && auc <= 1.0)) throw InvalidArgument("auc must lie in [0, 1]");
    if (auc == 1.0) return std::numeric_limits<double>::infinity();
    return auc / (1.0 - auc);
}

inline double auc_from_wr(double wr) {
    if (std::isnan(wr) || wr < 0.0) throw InvalidArgument("wr must be non-negative");
    if (std::isinf(wr)) return 1.0;
    return wr / (1.0 + wr);
}

// ---------------------------------------------------------------------------
// Strength classification

enum class Strength { Weak, Moderate, Medium, Strong };

inline const char* strength_name(Strength s) {
    switch (s) {
        case Strength::Weak: return "Weak";
        case Strength::Moderate: return "Moderate";
        case Strength::Medium: return "Medium";
        case Strength::Strong: return "Strong";
    }
    return "?";
}

struct StrengthClass {
    Strength label = Strength::Weak;
    double band_lo = 0.5;  // AUC band the label was derived from; lo is open
    double band_hi = 0.5;  // except for the leftmost band, hi is closed
    bool reversed = false; // input was below 1/2 and classified via its mirror

    const char* name() const { return strength_name(label); }
};

// Band edges are the exact closed-form constants: 1/2, (sqrt 5 - 1)/2,
// 1/sqrt 2, 3/4, 1. Bands are left-open right-closed except the first.
inline StrengthClass classify_strength(double auc) {
    if (!(auc >= 0.0 && auc <= 1.0)) throw InvalidArgument("auc must lie in [0, 1]");
    StrengthClass out;
    double a = auc;
    if (a < 0.5) {
        a = 1.0 - a;
        out.reversed = true;
    }
    if (a <= kGoldenRatioAuc) {
        out.label = Strength::Weak;
        out.band_lo = 0.5;
        out.band_hi = kGoldenRatioAuc;
    } else if (a <= kInvSqrt2) {
        out.label = Strength::Moderate;
        out.band_lo = kGoldenRatioAuc;
        out.band_hi = kInvSqrt2;
    } else if (a <= 0.75) {
        out.label = Strength::Medium;
        out.band_lo = kInvSqrt2;
        out.band_hi = 0.75;
    } else {
        out.label = Strength::Strong;
        out.band_lo = 0.75;
        out.band_hi = 1.0;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pairwise comparison record

struct PairwiseComparison {
    std::uint64_t wins_first = 0;
    std::uint64_t wins_second = 0;
    std::uint64_t indeterminate = 0;
    double auc = 0.5;  // Pr(first < second)
    double wr = 1.0;   // auc / (1 - auc), +infinity when auc == 1
    StrengthClass strength;

    // Counting is pure integer arithmetic; AUC/WR are derived afterwards so
    // totals do not depend on summation order.
    static PairwiseComparison from_counts(std::uint64_t wins_first,
                                          std::uint64_t wins_second,
                                          std::uint64_t indeterminate) {
        if (wins_first + wins_second == 0)
            throw NoDeterminatePairs("all pairs tied or indeterminate: AUC/WR undefined");
        PairwiseComparison c;
        c.wins_first = wins_first;
        c.wins_second = wins_second;
        c.indeterminate = indeterminate;
        c.auc = static_cast<double>(wins_second) /
                static_cast<double>(wins_first + wins_second);
        c.wr = wr_from_auc(c.auc);
        c.strength = classify_strength(c.auc);
        return c;
    }

    // For comparisons produced analytically (exact pmf sums, quadrature,
    // Monte Carlo) where no pair grid exists.
    static PairwiseComparison from_auc(double auc) {
        PairwiseComparison c;
        c.auc = auc;
        c.wr = wr_from_auc(auc);
        c.strength = classify_strength(auc);
        return c;
    }

    PairwiseComparison mirrored() const {
        PairwiseComparison c = *this;
        std::swap(c.wins_first, c.wins_second);
        c.auc = 1.0 - auc;
        c.wr = wr_from_auc(c.auc);
        c.strength = classify_strength(c.auc);
        return c;
    }
};

// ---------------------------------------------------------------------------
// Exact AUC between finite-support distributions, ties credited 0.5.

inline double exact_auc_discrete(const DiscreteDistribution& first,
                                 const DiscreteDistribution& second) {
    double auc = 0.0;
    for (const auto& a : first.atoms()) {
        for (const auto& b : second.atoms()) {
            if (a.value < b.value)
                auc += a.prob * b.prob;
            else if (a.value == b.value)
                auc += 0.5 * a.prob * b.prob;
        }
    }
    return auc;
}

// ---------------------------------------------------------------------------
// Empirical counting over all ordered cross-pairs, strict indicators.
// Ties are indeterminate (excluded from both win counts). Sort-and-merge
// counting keeps this O((n+m) log(n+m)) so large samples are cheap.

inline PairwiseComparison empirical_comparison_uncensored(std::span<const double> first,
                                                          std::span<const double> second) {
    if (first.empty() || second.empty())
        throw InvalidArgument("empirical comparison needs non-empty samples");
    std::vector<double> x(first.begin(), first.end());
    std::vector<double> y(second.begin(), second.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());

    std::uint64_t wins_second = 0;  // pairs with x < y
    std::uint64_t ties = 0;
    std::size_t lt = 0, le = 0;
    for (double v : y) {
        while (lt < x.size() && x[lt] < v) ++lt;
        if (le < lt) le = lt;
        while (le < x.size() && x[le] <= v) ++le;
        wins_second += lt;
        ties += le - lt;
    }
    const std::uint64_t total =
        static_cast<std::uint64_t>(x.size()) * static_cast<std::uint64_t>(y.size());
    const std::uint64_t wins_first = total - wins_second - ties;
    return PairwiseComparison::from_counts(wins_first, wins_second, ties);
}

// ---------------------------------------------------------------------------
// Censoring-aware win rule. For records a (first arm) and b (second arm):
//   first wins  iff a.time > b.time and b.event
//   second wins iff b.time > a.time and a.event
// every other pair, including exact time ties, is indeterminate.

inline PairwiseComparison censored_comparison(const Arm& first, const Arm& second) {
    if (first.records.empty() || second.records.empty())
        throw InvalidArgument("censored comparison needs non-empty arms");
    for (const auto& r : first.records) validate_record(r);
    for (const auto& r : second.records) validate_record(r);

    std::vector<double> times_first, times_second;
    times_first.reserve(first.records.size());
    times_second.reserve(second.records.size());
    for (const auto& r : first.records) times_first.push_back(r.time);
    for (const auto& r : second.records) times_second.push_back(r.time);
    std::sort(times_first.begin(), times_first.end());
    std::sort(times_second.begin(), times_second.end());

    // #) a.time > b.time summed over event-records b, via sorted counting.
    std::uint64_t wins_first = 0;
    for (const auto& b : second.records) {
        if (!b.event) continue;
        wins_first += times_first.end() -
                      std::upper_bound(times_first.begin(), times_first.end(), b.time);
    }
    std::uint64_t wins_second = 0;
    for (const auto& a : first.records) {
        if (!a.event) continue;
        wins_second += times_second.end() -
                       std::upper_bound(times_second.begin(), times_second.end(), a.time);
    }
    const std::uint64_t total = static_cast<std::uint64_t>(first.records.size()) *
                                static_cast<std::uint64_t>(second.records.size());
    return PairwiseComparison::from_counts(wins_first, wins_second,
                                           total - wins_first - wins_second);
}

}  // namespace winratio
