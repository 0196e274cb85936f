#pragma once

// Geometry of achievable AUC triplets for three independent random
// variables. The feasibility region S3 is Trybula's (1961) Theorem 1:
//     1 - alpha(1-A, 1-B) <= C <= alpha(A, B)
// with alpha(A, B) = max((1-A)/B, (1-B)/A, 1-AB) for A+B > 1 and 1
// otherwise; its non-transitive subspace S3nt is the closure where all
// three components are >= 1/2. The extremal triplets are realized by the
// Sigma family: two two-point distributions and one degenerate one on an
// interleaved support.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "winratio/comparison.hpp"
#include "winratio/errors.hpp"

namespace winratio {

struct AucTriplet {
    double a;  // AUC_xy = Pr(x < y)
    double b;  // AUC_yz = Pr(y < z)
    double c;  // AUC_zx = Pr(z < x)
};

inline void validate_triplet(const AucTriplet& t) {
    for (double v : {t.a, t.b, t.c})
        if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("AUC components must lie in [0, 1]");
}

// Trybula's feasibility function. Continuous across a + b = 1: there the
// max form evaluates to 1, matching the a + b <= 1 branch.
inline double alpha(double a, double b) {
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
        throw InvalidArgument("alpha needs arguments in [0, 1]");
    if (a + b <= 1.0) return 1.0;
    return std::max({(1.0 - a) / b, (1.0 - b) / a, 1.0 - a * b});
}

inline bool feasible_s3(const AucTriplet& t) {
    validate_triplet(t);
    const double hi = alpha(t.a, t.b);
    const double lo = 1.0 - alpha(1.0 - t.a, 1.0 - t.b);
    return t.c >= lo - 1e-12 && t.c <= hi + 1e-12;
}

// Closure of the non-transitive region: all components >= 1/2 and the
// upper Trybula constraint. The lower constraint degenerates there: for
// a, b >= 1/2 one has (1-a) + (1-b) <= 1, hence alpha(1-a, 1-b) = 1.
inline bool member_s3nt(const AucTriplet& t) {
    validate_triplet(t);
    if (!(t.a >= 0.5 && t.b >= 0.5 && t.c >= 0.5)) return false;
    return t.c <= alpha(t.a, t.b) + 1e-12;
}

struct MembershipVerdict {
    bool feasible = false;
    bool member = false;    // in the closed non-transitive region
    bool strict = false;    // all components > 1/2 and strictly below the boundary
    bool boundary = false;  // member but not strict
};

inline MembershipVerdict classify_triplet(const AucTriplet& t) {
    MembershipVerdict v;
    v.feasible = feasible_s3(t);
    v.member = member_s3nt(t);
    if (v.member) {
        v.strict = t.a > 0.5 + 1e-12 && t.b > 0.5 + 1e-12 && t.c > 0.5 + 1e-12 &&
                   t.c < alpha(t.a, t.b) - 1e-12;
        v.boundary = !v.strict;
    }
    return v;
}

// ---------------------------------------------------------------------------
// Sigma family (Trybula 1961): X on {x1, x2} with probs (p_x, q_x), Y on
// {y1, y2} with (p_y, q_y), Z degenerate at z, supports interleaved as
// x1 < y1 < z < x2 < y2. Then
//   B = Pr(Y < Z) = p_y,  C = Pr(Z < X) = 1 - p_x,  A = Pr(X < Y) = 1 - B*C.

struct SigmaTriplet {
    DiscreteDistribution x;
    DiscreteDistribution y;
    DiscreteDistribution z;
    double p_x;
    double p_y;
    std::array<double, 5> support;
    AucTriplet target;  // (1 - b*c, b, c)
};

inline SigmaTriplet construct_sigma(double b, double c,
                                    const std::array<double, 5>& support = {1, 2, 3, 4, 5}) {
    auto fail = [](const std::string& what) { throw InvalidArgument(what); };
    if (!(b >= 0.5)) fail("b >= 1/2 violated (" + std::to_string(b) + " < 0.5)");
    if (!(b <= 1.0)) fail("b <= 1 violated (" + std::to_string(b) + " > 1)");
    if (!(c >= 0.5)) fail("c >= 1/2 violated (" + std::to_string(c) + " < 0.5)");
    const double c_max = 1.0 / (2.0 * b);
    if (!(c <= c_max))
        fail("c <= 1/(2b) violated (" + std::to_string(c) + " > " + std::to_string(c_max) + ")");
    for (int i = 0; i + 1 < 5; ++i)
        if (!(support[i] < support[i + 1]))
            fail("support values must be strictly increasing");

    const double p_y = b;
    const double p_x = 1.0 - c;
    SigmaTriplet s{
        DiscreteDistribution({{support[0], p_x}, {support[3], 1.0 - p_x}}),
        DiscreteDistribution({{support[1], p_y}, {support[4], 1.0 - p_y}}),
        DiscreteDistribution({{support[2], 1.0}}),
        p_x,
        p_y,
        support,
        {1.0 - b * c, b, c}};
    return s;
}

// ---------------------------------------------------------------------------
// Realization of an arbitrary feasible triplet by numerical search over
// three pmfs on a shared value grid {1, ..., support_size} (ties credited
// 0.5, so identical distributions realize (1/2, 1/2, 1/2) exactly). Block
// coordinate descent with projected-gradient inner steps, multi-start from
// the Sigma family, the identical-uniform triple and seeded random points.

struct RealizeResult {
    enum class Status { realized, infeasible, not_realized };
    Status status = Status::not_realized;
    std::vector<DiscreteDistribution> dists;  // x, y, z when realized
    AucTriplet achieved{0, 0, 0};
    double max_abs_error = 1.0;
    std::string message;
};

namespace detail {

// AUC of pmf p against pmf q on the shared ascending grid:
// sum_{v<w} p_v q_w + 0.5 sum_v p_v q_v.
inline double grid_auc(const std::vector<double>& p, const std::vector<double>& q) {
    double acc = 0.0;
    double q_above = 0.0;
    for (std::size_t v = q.size(); v-- > 0;) {
        // contributions of p_v against q at higher values plus the tie term
        acc += p[v] * (q_above + 0.5 * q[v]);
        q_above += q[v];
    }
    return acc;
}

// d(grid_auc(p, q))/dp: component v is sum_{w>v} q_w + 0.5 q_v.
inline std::vector<double> grid_auc_grad_p(const std::vector<double>& q) {
    std::vector<double> g(q.size());
    double above = 0.0;
    for (std::size_t v = q.size(); v-- > 0;) {
        g[v] = above + 0.5 * q[v];
        above += q[v];
    }
    return g;
}

// d(grid_auc(p, q))/dq: component w is sum_{v<w} p_v + 0.5 p_w.
inline std::vector<double> grid_auc_grad_q(const std::vector<double>& p) {
    std::vector<double> g(p.size());
    double below = 0.0;
    for (std::size_t w = 0; w < p.size(); ++w) {
        g[w] = below + 0.5 * p[w];
        below += p[w];
    }
    return g;
}

inline void project_simplex(std::vector<double>& v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        css += u[i];
        const double t = (css - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    (void)rho;
    for (double& x : v) x = std::max(0.0, x - theta);
}

}  // namespace detail

inline RealizeResult realize_triplet(const AucTriplet& t, int support_size = 9) {
    validate_triplet(t);
    RealizeResult out;
    if (support_size < 2) throw InvalidArgument("support_size must be at least 2");
    if (!feasible_s3(t)) {
        out.status = RealizeResult::Status::infeasible;
        out.message = "triplet violates the Trybula feasibility inequalities";
        return out;
    }

    const std::size_t m = static_cast<std::size_t>(support_size);
    using Vec = std::vector<double>;
    auto objective = [&](const Vec& px, const Vec& py, const Vec& pz, AucTriplet& got) {
        got.a = detail::grid_auc(px, py);
        got.b = detail::grid_auc(py, pz);
        got.c = detail::grid_auc(pz, px);
        const double da = got.a - t.a, db = got.b - t.b, dc = got.c - t.c;
        return da * da + db * db + dc * dc;
    };

    std::vector<std::array<Vec, 3>> starts;
    {  // identical-uniform start: all AUCs exactly 1/2
        Vec u(m, 1.0 / static_cast<double>(m));
        starts.push_back({u, u, u});
    }
    if (m >= 5) {  // Sigma start with (b, c) clamped into the Sigma parameter region
        const double b = std::clamp(t.b, 0.5, 1.0);
        const double c = std::clamp(t.c, 0.5, 1.0 / (2.0 * b));
        Vec px(m, 0.0), py(m, 0.0), pz(m, 0.0);
        px[0] = 1.0 - c;
        px[3] = c;
        py[1] = b;
        py[4] = 1.0 - b;
        pz[2] = 1.0;
        starts.push_back({px, py, pz});
    }
    {
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_real_distribution<double> unif(0.05, 1.0);
        for (int r = 0; r < 4; ++r) {
            std::array<Vec, 3> s;
            for (auto& v : s) {
                v.resize(m);
                double sum = 0.0;
                for (double& x : v) sum += (x = unif(rng));
                for (double& x : v) x /= sum;
            }
            starts.push_back(std::move(s));
        }
    }

    const double want = 1e-7;  // per-component residual target, below the 1e-6 contract
    std::array<Vec, 3> best;
    double best_f = std::numeric_limits<double>::infinity();
    AucTriplet best_got{0, 0, 0};

    for (auto& s : starts) {
        Vec px = s[0], py = s[1], pz = s[2];
        AucTriplet got{0, 0, 0};
        double f = objective(px, py, pz, got);
        for (int outer = 0; outer < 400 && f > want * want; ++outer) {
            for (int block = 0; block < 3; ++block) {
                Vec& p = block == 0 ? px : block == 1 ? py : pz;
                double step = 1.0;
                for (int inner = 0; inner < 25; ++inner) {
                    f = objective(px, py, pz, got);
                    const double da = got.a - t.a, db = got.b - t.b, dc = got.c - t.c;
                    Vec grad(m, 0.0);
                    if (block == 0) {
                        const Vec ga = detail::grid_auc_grad_p(py);   // dA/dpx
                        const Vec gc = detail::grid_auc_grad_q(pz);   // dC/dpx
                        for (std::size_t v = 0; v < m; ++v)
                            grad[v] = 2.0 * (da * ga[v] + dc * gc[v]);
                    } else if (block == 1) {
                        const Vec ga = detail::grid_auc_grad_q(px);   // dA/dpy
                        const Vec gb = detail::grid_auc_grad_p(pz);   // dB/dpy
                        for (std::size_t v = 0; v < m; ++v)
                            grad[v] = 2.0 * (da * ga[v] + db * gb[v]);
                    } else {
                        const Vec gb = detail::grid_auc_grad_q(py);   // dB/dpz
                        const Vec gc = detail::grid_auc_grad_p(px);   // dC/dpz
                        for (std::size_t v = 0; v < m; ++v)
                            grad[v] = 2.0 * (db * gb[v] + dc * gc[v]);
                    }
                    // backtracking projected step
                    bool moved = false;
                    while (step > 1e-12) {
                        Vec trial = p;
                        for (std::size_t v = 0; v < m; ++v) trial[v] -= step * grad[v];
                        detail::project_simplex(trial);
                        Vec saved = p;
                        p = trial;
                        AucTriplet got2{0, 0, 0};
                        const double f2 = objective(px, py, pz, got2);
                        if (f2 < f - 1e-18) {
                            f = f2;
                            got = got2;
                            moved = true;
                            step *= 1.6;
                            break;
                        }
                        p = saved;
                        step *= 0.5;
                    }
                    if (!moved) break;
                }
            }
        }
        if (f < best_f) {
            best_f = f;
            best = {px, py, pz};
            best_got = got;
        }
        if (best_f <= want * want) break;
    }

    out.achieved = best_got;
    out.max_abs_error = std::max({std::fabs(best_got.a - t.a), std::fabs(best_got.b - t.b),
                                  std::fabs(best_got.c - t.c)});
    if (out.max_abs_error <= 1e-6) {
        out.status = RealizeResult::Status::realized;
        for (const Vec& p : best) {
            std::vector<DiscreteDistribution::Atom> atoms;
            double kept = 0.0;
            for (std::size_t v = 0; v < m; ++v)
                if (p[v] > 1e-14) {
                    atoms.push_back({static_cast<double>(v + 1), p[v]});
                    kept += p[v];
                }
            for (auto& a : atoms) a.prob /= kept;  // strip projection dust
            out.dists.emplace_back(std::move(atoms));
        }
    } else {
        out.status = RealizeResult::Status::not_realized;
        out.message = "not realized at this support size (residual " +
                      std::to_string(out.max_abs_error) + ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Boundary surfaces of the non-transitive region over a grid of (a, b) in
// [1/2, 1]^2: c_hi = alpha(a, b), c_lo = max(1/2, 1 - alpha(1-a, 1-b)).

enum class SurfaceView { auc, wr };

struct SurfaceGrid {
    SurfaceView view = SurfaceView::auc;
    std::vector<std::array<double, 4>> rows;  // a, b, c_lo, c_hi (or WR images)

    const char* header() const {
        return view == SurfaceView::auc ? "a,b,c_lo,c_hi" : "wr_a,wr_b,wr_c_lo,wr_c_hi";
    }
};

inline SurfaceGrid export_surface(int grid_steps, SurfaceView view = SurfaceView::auc) {
    if (grid_steps < 2) throw InvalidArgument("grid_steps must be at least 2");
    SurfaceGrid g;
    g.view = view;
    const double h = 0.5 / (grid_steps - 1);
    for (int i = 0; i < grid_steps; ++i) {
        const double a = (i + 1 == grid_steps) ? 1.0 : 0.5 + i * h;
        for (int j = 0; j < grid_steps; ++j) {
            const double b = (j + 1 == grid_steps) ? 1.0 : 0.5 + j * h;
            const double c_hi = alpha(a, b);
            const double c_lo = std::max(0.5, 1.0 - alpha(1.0 - a, 1.0 - b));
            if (view == SurfaceView::auc)
                g.rows.push_back({a, b, c_lo, c_hi});
            else
                g.rows.push_back({wr_from_auc(a), wr_from_auc(b), wr_from_auc(c_lo),
                                  wr_from_auc(c_hi)});
        }
    }
    return g;
}

}  // namespace winratio
