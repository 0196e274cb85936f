#pragma once

// Parametric distribution specs with a transform stack (shift, scale > 0,
// reflect), seeded samplers, exact/quadrature/Monte Carlo AUC between specs,
// and family-level transitivity certificates.
//
// AUC(first, second) = Pr(first < second). For continuous pairs it is
// computed as the integral over u in [0, 1] of F_first(Q_second(u)), which
// is bounded and smooth even when a density blows up at a support endpoint
// (chi-squared with df = 1, reflected copies of it, ...).

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "winratio/comparison.hpp"
#include "winratio/errors.hpp"
#include "winratio/math.hpp"

namespace winratio {

enum class Family { normal, lognormal, chi_squared, uniform, exponential, bernoulli, discrete };

struct Transform {
    enum class Kind { shift, scale, reflect };
    Kind kind;
    double amount = 0.0;  // unused for reflect
};

namespace detail {

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform01() {  // open interval (0, 1), 53-bit resolution
        return (static_cast<double>(gen() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }
    double normal() {
        const double u1 = uniform01(), u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    // Marsaglia-Tsang; the k < 1 case boosts from k + 1.
    double gamma(double k) {
        if (k < 1.0) {
            const double u = uniform01();
            return gamma(k + 1.0) * std::pow(u, 1.0 / k);
        }
        const double d = k - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

class DistributionSpec {
public:
    static DistributionSpec normal(double mu, double sigma) {
        if (!(sigma > 0.0)) throw InvalidArgument("normal: sigma must be positive");
        return DistributionSpec(Family::normal, {mu, sigma});
    }
    static DistributionSpec lognormal(double mu, double sigma) {
        if (!(sigma > 0.0)) throw InvalidArgument("lognormal: sigma must be positive");
        return DistributionSpec(Family::lognormal, {mu, sigma});
    }
    static DistributionSpec chi_squared(double df) {
        if (!(df >= 1.0)) throw InvalidArgument("chisq: df must be at least 1");
        return DistributionSpec(Family::chi_squared, {df, 0.0});
    }
    static DistributionSpec uniform(double lo, double hi) {
        if (!(lo < hi)) throw InvalidArgument("uniform: need lo < hi");
        return DistributionSpec(Family::uniform, {lo, hi});
    }
    static DistributionSpec exponential(double rate) {
        if (!(rate > 0.0)) throw InvalidArgument("exponential: rate must be positive");
        return DistributionSpec(Family::exponential, {rate, 0.0});
    }
    static DistributionSpec bernoulli(double p) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("bernoulli: p must lie in [0, 1]");
        return DistributionSpec(Family::bernoulli, {p, 0.0});
    }
    static DistributionSpec discrete(DiscreteDistribution d) {
        DistributionSpec s(Family::discrete, {0.0, 0.0});
        s.atoms_ = std::move(d);
        return s;
    }

    DistributionSpec shifted(double d) const { return with(Transform{Transform::Kind::shift, d}); }
    DistributionSpec scaled(double k) const {
        if (!(k > 0.0)) throw InvalidArgument("scale factor must be positive");
        return with(Transform{Transform::Kind::scale, k});
    }
    DistributionSpec reflected() const { return with(Transform{Transform::Kind::reflect, 0.0}); }

    Family family() const { return family_; }
    const std::array<double, 2>& params() const { return params_; }
    const std::vector<Transform>& transforms() const { return transforms_; }
    bool is_continuous() const {
        return family_ != Family::bernoulli && family_ != Family::discrete;
    }

    // transform stack folded into x -> scale * x + offset
    double affine_scale() const { return scale_; }
    double affine_offset() const { return offset_; }

    double mean() const {
        double m = 0.0;
        switch (family_) {
            case Family::normal: m = params_[0]; break;
            case Family::lognormal: m = std::exp(params_[0] + 0.5 * params_[1] * params_[1]); break;
            case Family::chi_squared: m = params_[0]; break;
            case Family::uniform: m = 0.5 * (params_[0] + params_[1]); break;
            case Family::exponential: m = 1.0 / params_[0]; break;
            case Family::bernoulli: m = params_[0]; break;
            case Family::discrete: m = atoms_->mean(); return scale_ * m + offset_;
        }
        return scale_ * m + offset_;
    }

    // Point of symmetry of the transformed pdf, when the base family is
    // symmetric (normal, uniform). Affine maps preserve symmetry.
    std::optional<double> symmetry_point() const {
        switch (family_) {
            case Family::normal: return scale_ * params_[0] + offset_;
            case Family::uniform: return scale_ * 0.5 * (params_[0] + params_[1]) + offset_;
            default: return std::nullopt;
        }
    }

    // Transformed atoms for bernoulli/discrete specs.
    DiscreteDistribution transformed_atoms() const {
        if (is_continuous()) throw InvalidArgument("continuous spec has no atoms");
        std::vector<DiscreteDistribution::Atom> atoms;
        if (family_ == Family::bernoulli) {
            const double p = params_[0];
            atoms = {{offset_, 1.0 - p}, {scale_ + offset_, p}};  // values 0 and 1 mapped
        } else {
            for (const auto& a : atoms_->atoms()) atoms.push_back({scale_ * a.value + offset_, a.prob});
        }
        return DiscreteDistribution(std::move(atoms));
    }

    double cdf(double x) const {
        if (!is_continuous()) throw InvalidArgument("cdf implemented for continuous specs only");
        const double z = (x - offset_) / scale_;
        const double base = scale_ > 0.0 ? base_cdf(z) : 1.0 - base_cdf(z);
        return base;
    }

    // Inverse CDF by bisection on the transformed support; u is clamped to
    // [1e-15, 1 - 1e-15] so unbounded tails stay finite.
    double quantile(double u) const {
        if (!is_continuous()) throw InvalidArgument("quantile implemented for continuous specs only");
        u = std::clamp(u, 1e-15, 1.0 - 1e-15);
        auto [lo, hi] = support();
        // expand infinite ends to a finite bracket
        double a = std::isfinite(lo) ? lo : std::min(-1.0, mean() - 1.0);
        double b = std::isfinite(hi) ? hi : std::max(1.0, mean() + 1.0);
        while (cdf(a) > u) {
            b = a;
            a = a < 0 ? a * 2.0 : a - std::max(1.0, std::fabs(a));
            if (a < -1e300) break;
        }
        while (cdf(b) < u) {
            a = b;
            b = b > 0 ? b * 2.0 : b + std::max(1.0, std::fabs(b));
            if (b > 1e300) break;
        }
        for (int i = 0; i < 200 && b - a > 1e-14 * (1.0 + std::fabs(a) + std::fabs(b)); ++i) {
            const double m = 0.5 * (a + b);
            (cdf(m) < u ? a : b) = m;
        }
        return 0.5 * (a + b);
    }

    // (lo, hi) of the transformed support, possibly infinite
    std::pair<double, double> support() const {
        const double inf = std::numeric_limits<double>::infinity();
        double lo = -inf, hi = inf;
        switch (family_) {
            case Family::normal: break;
            case Family::lognormal: lo = 0.0; break;
            case Family::chi_squared: lo = 0.0; break;
            case Family::uniform: lo = params_[0]; hi = params_[1]; break;
            case Family::exponential: lo = 0.0; break;
            default: throw InvalidArgument("support(): continuous specs only");
        }
        double a = scale_ * lo + offset_, b = scale_ * hi + offset_;
        if (a > b) std::swap(a, b);
        return {a, b};
    }

    std::vector<double> sample(std::size_t n, std::uint64_t seed) const {
        if (n < 1) throw InvalidArgument("sample: n must be at least 1");
        detail::Rng rng(detail::splitmix64(seed));
        std::vector<double> out(n);
        for (double& x : out) x = scale_ * draw_base(rng) + offset_;
        return out;
    }

    double sample_one(detail::Rng& rng) const { return scale_ * draw_base(rng) + offset_; }

    std::string to_string() const {
        std::ostringstream os;
        os.precision(15);
        switch (family_) {
            case Family::normal: os << "normal(" << params_[0] << "," << params_[1] << ")"; break;
            case Family::lognormal: os << "lognormal(" << params_[0] << "," << params_[1] << ")"; break;
            case Family::chi_squared: os << "chisq(" << params_[0] << ")"; break;
            case Family::uniform: os << "uniform(" << params_[0] << "," << params_[1] << ")"; break;
            case Family::exponential: os << "exponential(" << params_[0] << ")"; break;
            case Family::bernoulli: os << "bernoulli(" << params_[0] << ")"; break;
            case Family::discrete: {
                os << "discrete(";
                const auto& atoms = atoms_->atoms();
                for (std::size_t i = 0; i < atoms.size(); ++i)
                    os << (i ? "," : "") << atoms[i].value << ":" << atoms[i].prob;
                os << ")";
                break;
            }
        }
        std::string s = os.str();
        for (const Transform& t : transforms_) {
            std::ostringstream tail;
            tail.precision(15);
            switch (t.kind) {
                case Transform::Kind::shift:
                    tail << (t.amount < 0 ? "-" : "+") << std::fabs(t.amount);
                    s += tail.str();
                    break;
                case Transform::Kind::scale:
                    tail << "*" << t.amount;
                    s += tail.str();
                    break;
                case Transform::Kind::reflect:
                    s = "reflect(" + s + ")";
                    break;
            }
        }
        return s;
    }

private:
    DistributionSpec(Family f, std::array<double, 2> params) : family_(f), params_(params) {}

    DistributionSpec with(Transform t) const {
        DistributionSpec s = *this;
        s.transforms_.push_back(t);
        switch (t.kind) {
            case Transform::Kind::shift: s.offset_ += t.amount; break;
            case Transform::Kind::scale: s.scale_ *= t.amount; s.offset_ *= t.amount; break;
            case Transform::Kind::reflect: s.scale_ = -s.scale_; s.offset_ = -s.offset_; break;
        }
        return s;
    }

    double base_cdf(double z) const {
        switch (family_) {
            case Family::normal: return detail::normal_cdf((z - params_[0]) / params_[1]);
            case Family::lognormal:
                return z <= 0.0 ? 0.0
                               : detail::normal_cdf((std::log(z) - params_[0]) / params_[1]);
            case Family::chi_squared:
                return z <= 0.0 ? 0.0 : detail::gamma_p(0.5 * params_[0], 0.5 * z);
            case Family::uniform:
                return std::clamp((z - params_[0]) / (params_[1] - params_[0]), 0.0, 1.0);
            case Family::exponential: return z <= 0.0 ? 0.0 : -std::expm1(-params_[0] * z);
            default: throw InvalidArgument("cdf: continuous specs only");
        }
    }

    double draw_base(detail::Rng& rng) const {
        switch (family_) {
            case Family::normal: return params_[0] + params_[1] * rng.normal();
            case Family::lognormal: return std::exp(params_[0] + params_[1] * rng.normal());
            case Family::chi_squared: return 2.0 * rng.gamma(0.5 * params_[0]);
            case Family::uniform:
                return params_[0] + (params_[1] - params_[0]) * rng.uniform01();
            case Family::exponential: return -std::log(rng.uniform01()) / params_[0];
            case Family::bernoulli: return rng.uniform01() < params_[0] ? 1.0 : 0.0;
            case Family::discrete: {
                const double u = rng.uniform01();
                double acc = 0.0;
                for (const auto& a : atoms_->atoms()) {
                    acc += a.prob;
                    if (u <= acc) return a.value;
                }
                return atoms_->atoms().back().value;
            }
        }
        return 0.0;
    }

    Family family_;
    std::array<double, 2> params_;
    std::optional<DiscreteDistribution> atoms_;  // discrete family only
    std::vector<Transform> transforms_;
    double scale_ = 1.0;
    double offset_ = 0.0;
};

// ---------------------------------------------------------------------------
// AUC estimates between specs

struct AucEstimate {
    enum class Method { exact_discrete, quadrature, monte_carlo };
    double value = 0.5;
    double std_error = 0.0;  // zero for exact/quadrature
    Method method = Method::exact_discrete;
    std::uint64_t n = 0;     // Monte Carlo draws
    std::uint64_t seed = 0;

    const char* method_name() const {
        switch (method) {
            case Method::exact_discrete: return "exact_discrete";
            case Method::quadrature: return "quadrature";
            case Method::monte_carlo: return "monte_carlo";
        }
        return "?";
    }
};

// Pr(first < second) for continuous specs by adaptive quadrature of
// F_first(Q_second(u)) over u in [0, 1].
inline AucEstimate auc_quadrature(const DistributionSpec& first, const DistributionSpec& second,
                                  double abs_tol = 1e-10) {
    if (!first.is_continuous() || !second.is_continuous())
        throw InvalidArgument("auc_quadrature needs two continuous specs");
    if (!(abs_tol > 0.0)) throw InvalidArgument("abs_tol must be positive");
    detail::AdaptiveSimpson quad(
        [&](double u) { return first.cdf(second.quantile(u)); }, abs_tol);
    const detail::QuadratureResult r = quad.integrate(0.0, 1.0, 16);
    if (!r.converged && r.error_estimate > abs_tol)
        throw Error("quadrature did not converge; achieved error bound ~" +
                    std::to_string(r.error_estimate));
    AucEstimate e;
    e.value = std::clamp(r.value, 0.0, 1.0);
    e.method = AucEstimate::Method::quadrature;
    return e;
}

// Pr(first < second) with n independent pairs; ties (probability zero for
// continuous families) credited 0.5. Binomial standard error.
inline AucEstimate auc_monte_carlo(const DistributionSpec& first, const DistributionSpec& second,
                                   std::uint64_t n, std::uint64_t seed) {
    if (n < 100) throw InvalidArgument("auc_monte_carlo needs n >= 100");
    // interleaved draws from one stream keep the pairs independent and the
    // whole run reproducible from (specs, n, seed)
    detail::Rng stream(detail::splitmix64(seed));
    double acc = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
        const double x = first.sample_one(stream);
        const double y = second.sample_one(stream);
        if (x < y) acc += 1.0;
        else if (x == y) acc += 0.5;
    }
    AucEstimate e;
    e.value = acc / static_cast<double>(n);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(n));
    e.method = AucEstimate::Method::monte_carlo;
    e.n = n;
    e.seed = seed;
    return e;
}

// Exact-where-possible dispatcher used by the simulate pipeline: discrete
// pairs by pmf summation, mixed pairs by summing the continuous CDF over the
// atoms, continuous pairs by quadrature.
inline AucEstimate auc_between(const DistributionSpec& first, const DistributionSpec& second,
                               double abs_tol = 1e-10) {
    if (first.is_continuous() && second.is_continuous())
        return auc_quadrature(first, second, abs_tol);
    AucEstimate e;
    e.method = AucEstimate::Method::exact_discrete;
    if (!first.is_continuous() && !second.is_continuous()) {
        e.value = exact_auc_discrete(first.transformed_atoms(), second.transformed_atoms());
        return e;
    }
    if (!first.is_continuous()) {
        const DiscreteDistribution atoms = first.transformed_atoms();
        double acc = 0.0;  // Pr(v < second) = 1 - F_second(v), atom by atom
        for (const auto& a : atoms.atoms()) acc += a.prob * (1.0 - second.cdf(a.value));
        e.value = acc;
        return e;
    }
    const DiscreteDistribution atoms = second.transformed_atoms();
    double acc = 0.0;  // Pr(first < w) = F_first(w)
    for (const auto& a : atoms.atoms()) acc += a.prob * first.cdf(a.value);
    e.value = acc;
    return e;
}

// ---------------------------------------------------------------------------
// Transitivity certificates (family metadata only, no density inspection).
// A non-NONE certificate guarantees an acyclic tournament among the specs,
// with edges ordered by the recorded key. NONE means "no guarantee".

enum class CertificateKind {
    all_bernoulli,                        // values {0,1}: ordered by p
    all_symmetric_pdf,                    // symmetric pdfs: ordered by center M
    common_monotone_transform_symmetric,  // one monotone map to symmetric (lognormal)
    shift_family,                         // common distribution up to shift: ordered by d
    none
};

inline const char* certificate_name(CertificateKind k) {
    switch (k) {
        case CertificateKind::all_bernoulli: return "ALL_BERNOULLI";
        case CertificateKind::all_symmetric_pdf: return "ALL_SYMMETRIC_PDF";
        case CertificateKind::common_monotone_transform_symmetric:
            return "COMMON_MONOTONE_TRANSFORM_SYMMETRIC";
        case CertificateKind::shift_family: return "SHIFT_FAMILY";
        case CertificateKind::none: return "NONE";
    }
    return "?";
}

struct TransitivityCertificate {
    CertificateKind kind = CertificateKind::none;
    std::string key_name;       // "p", "M", "mu", "d"
    std::vector<double> keys;   // one per spec, same order as the input
};

namespace detail {

// Shape signature: two specs with equal signatures differ by a pure
// translation.
struct ShiftSignature {
    std::string tag;
    std::vector<double> shape;
    double location = 0.0;
    bool valid = false;
};

inline ShiftSignature shift_signature(const DistributionSpec& s) {
    ShiftSignature sig;
    const double sc = s.affine_scale(), off = s.affine_offset();
    switch (s.family()) {
        case Family::normal:
            sig = {"normal", {std::fabs(sc) * s.params()[1]}, sc * s.params()[0] + off, true};
            break;
        case Family::uniform:
            sig = {"uniform",
                   {std::fabs(sc) * (s.params()[1] - s.params()[0])},
                   sc * 0.5 * (s.params()[0] + s.params()[1]) + off,
                   true};
            break;
        case Family::exponential:
            sig = {"exponential", {sc > 0 ? 1.0 : -1.0, std::fabs(sc) / s.params()[0]}, off, true};
            break;
        case Family::chi_squared:
            sig = {"chisq", {s.params()[0], sc}, off, true};
            break;
        case Family::lognormal:
            sig = {"lognormal",
                   {sc > 0 ? 1.0 : -1.0, s.params()[1], s.params()[0] + std::log(std::fabs(sc))},
                   off,
                   true};
            break;
        case Family::bernoulli:
        case Family::discrete: {
            const auto atoms = s.transformed_atoms().atoms();
            sig.tag = "atoms";
            for (std::size_t i = 1; i < atoms.size(); ++i)
                sig.shape.push_back(atoms[i].value - atoms[0].value);
            for (const auto& a : atoms) sig.shape.push_back(a.prob);
            sig.location = atoms[0].value;
            sig.valid = true;
            break;
        }
    }
    return sig;
}

inline bool close(double a, double b) {
    return std::fabs(a - b) <= 1e-12 * (1.0 + std::fabs(a) + std::fabs(b));
}

}  // namespace detail

inline TransitivityCertificate transitivity_certificate(
    const std::vector<DistributionSpec>& specs) {
    if (specs.size() < 3)
        throw InvalidArgument("transitivity certificate needs at least 3 specs");
    TransitivityCertificate cert;

    bool all_bern = true;
    for (const auto& s : specs)
        all_bern = all_bern && s.family() == Family::bernoulli && s.transforms().empty();
    if (all_bern) {
        cert.kind = CertificateKind::all_bernoulli;
        cert.key_name = "p";
        for (const auto& s : specs) cert.keys.push_back(s.params()[0]);
        return cert;
    }

    bool all_sym = true;
    for (const auto& s : specs) all_sym = all_sym && s.symmetry_point().has_value();
    if (all_sym) {
        cert.kind = CertificateKind::all_symmetric_pdf;
        cert.key_name = "M";
        for (const auto& s : specs) cert.keys.push_back(*s.symmetry_point());
        return cert;
    }

    // one common monotone transform to a symmetric family: lognormals with
    // pure positive scaling (scaling by k shifts the log-scale mean by ln k)
    bool all_logn = true;
    for (const auto& s : specs)
        all_logn = all_logn && s.family() == Family::lognormal && s.affine_scale() > 0.0 &&
                   s.affine_offset() == 0.0;
    if (all_logn) {
        cert.kind = CertificateKind::common_monotone_transform_symmetric;
        cert.key_name = "mu";
        for (const auto& s : specs)
            cert.keys.push_back(s.params()[0] + std::log(s.affine_scale()));
        return cert;
    }

    const detail::ShiftSignature first = detail::shift_signature(specs.front());
    bool all_shift = first.valid;
    for (const auto& s : specs) {
        const detail::ShiftSignature sig = detail::shift_signature(s);
        if (!sig.valid || sig.tag != first.tag || sig.shape.size() != first.shape.size()) {
            all_shift = false;
            break;
        }
        for (std::size_t i = 0; i < sig.shape.size(); ++i)
            if (!detail::close(sig.shape[i], first.shape[i])) {
                all_shift = false;
                break;
            }
        if (!all_shift) break;
    }
    if (all_shift) {
        cert.kind = CertificateKind::shift_family;
        cert.key_name = "d";
        for (const auto& s : specs) cert.keys.push_back(detail::shift_signature(s).location);
        return cert;
    }

    cert.kind = CertificateKind::none;
    return cert;
}

// ---------------------------------------------------------------------------
// Compact text form: family(args) with reflect(...) wrapping, then +d / -d
// shifts and *k scales applied left to right.
//   chisq(1)    normal(0.5875,0.1)    reflect(chisq(1))+1.175    uniform(0,1)*2+3

inline DistributionSpec parse_spec(const std::string& text) {
    struct Parser {
        const std::string& s;
        std::size_t i = 0;

        explicit Parser(const std::string& str) : s(str) {}

        void skip_ws() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        bool eat(char c) {
            skip_ws();
            if (i < s.size() && s[i] == c) {
                ++i;
                return true;
            }
            return false;
        }
        void expect(char c) {
            if (!eat(c))
                throw DataError("expected '" + std::string(1, c) + "' at position " +
                                std::to_string(i) + " in spec '" + s + "'");
        }
        std::string ident() {
            skip_ws();
            std::size_t start = i;
            while (i < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
                ++i;
            if (start == i) throw DataError("expected a name in spec '" + s + "'");
            return s.substr(start, i - start);
        }
        double number() {
            skip_ws();
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(s.substr(i), &pos);
            } catch (const std::exception&) {
                throw DataError("expected a number at position " + std::to_string(i) +
                                " in spec '" + s + "'");
            }
            i += pos;
            return v;
        }

        DistributionSpec primary() {
            const std::string name = ident();
            if (name == "reflect") {
                expect('(');
                DistributionSpec inner = expr();
                expect(')');
                return inner.reflected();
            }
            expect('(');
            std::vector<double> args;
            std::vector<std::pair<double, double>> pairs;
            bool pair_form = false;
            if (!eat(')')) {
                do {
                    const double v = number();
                    if (eat(':')) {
                        pair_form = true;
                        pairs.emplace_back(v, number());
                    } else {
                        args.push_back(v);
                    }
                } while (eat(','));
                expect(')');
            }
            auto need = [&](std::size_t n) {
                if (pair_form || args.size() != n)
                    throw DataError(name + " expects " + std::to_string(n) + " argument(s)");
            };
            if (name == "normal") { need(2); return DistributionSpec::normal(args[0], args[1]); }
            if (name == "lognormal") { need(2); return DistributionSpec::lognormal(args[0], args[1]); }
            if (name == "chisq" || name == "chi_squared") {
                need(1);
                return DistributionSpec::chi_squared(args[0]);
            }
            if (name == "uniform") { need(2); return DistributionSpec::uniform(args[0], args[1]); }
            if (name == "exponential" || name == "exp") {
                need(1);
                return DistributionSpec::exponential(args[0]);
            }
            if (name == "bernoulli") { need(1); return DistributionSpec::bernoulli(args[0]); }
            if (name == "discrete") {
                if (!pair_form || pairs.empty())
                    throw DataError("discrete expects value:prob pairs");
                std::vector<DiscreteDistribution::Atom> atoms;
                for (auto [v, p] : pairs) atoms.push_back({v, p});
                return DistributionSpec::discrete(DiscreteDistribution(std::move(atoms)));
            }
            throw DataError("unknown distribution family '" + name + "'");
        }

        DistributionSpec expr() {
            DistributionSpec spec = primary();
            for (;;) {
                skip_ws();
                if (eat('+')) spec = spec.shifted(number());
                else if (eat('-')) spec = spec.shifted(-number());
                else if (eat('*')) {
                    const double k = number();
                    if (!(k > 0.0)) throw DataError("scale factor must be positive");
                    spec = spec.scaled(k);
                } else
                    break;
            }
            return spec;
        }
    };

    Parser p(text);
    DistributionSpec spec = p.expr();
    p.skip_ws();
    if (p.i != text.size())
        throw DataError("trailing characters in spec '" + text + "'");
    return spec;
}

}  // namespace winratio
