// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlent/error.hpp"

namespace orlent {

inline constexpr double kLog2E = 1.4426950408889634074;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

// Monotone piecewise-cubic interpolant (Fritsch-Carlson slope limiting).
// Strictly increasing data yields a strictly increasing interpolant.
class MonotoneCubic {
public:
    MonotoneCubic() = default;

    MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        const std::size_t n = xs_.size();
        slopes_.assign(n, 0.0);
        if (n < 2) return;
        std::vector<double> h(n - 1), d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = xs_[i + 1] - xs_[i];
            d[i] = (ys_[i + 1] - ys_[i]) / h[i];
        }
        if (n == 2) {
            slopes_[0] = slopes_[1] = d[0];
        } else {
            slopes_[0] = endpoint(h[0], h[1], d[0], d[1]);
            slopes_[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
            for (std::size_t i = 1; i + 1 < n; ++i) {
                if (d[i - 1] * d[i] <= 0.0) {
                    slopes_[i] = 0.0;
                } else {
                    const double w1 = 2.0 * h[i] + h[i - 1];
                    const double w2 = h[i] + 2.0 * h[i - 1];
                    slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
                }
            }
        }
    }

    double operator()(double x) const {
        if (x <= xs_.front()) return ys_.front();
        if (x >= xs_.back()) return ys_.back();
        std::size_t hi = static_cast<std::size_t>(
            std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin());
        const std::size_t lo = hi - 1;
        const double h = xs_[hi] - xs_[lo];
        const double t = (x - xs_[lo]) / h;
        const double t2 = t * t, t3 = t2 * t;
        const double h00 = 2 * t3 - 3 * t2 + 1;
        const double h10 = t3 - 2 * t2 + t;
        const double h01 = -2 * t3 + 3 * t2;
        const double h11 = t3 - t2;
        return h00 * ys_[lo] + h10 * h * slopes_[lo] + h01 * ys_[hi] + h11 * h * slopes_[hi];
    }

private:
    static double endpoint(double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) return 0.0;
        if (std::abs(m) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return m;
    }

    std::vector<double> xs_, ys_;
    std::vector<double> slopes_;
};

} // namespace detail

struct PowerParams {
    double q; // M(t) = t^q
};

struct PowerLogParams {
    double q; // M(t) = t^q * (1 - log2 t)^(-r); M(1) = 1 by construction
    double r;
};

struct TabulatedParams {
    // Knots (t, M(t)) with first knot (0,0) and last knot (1,1), strictly
    // increasing in both coordinates; evaluated by monotone cubic interpolation.
    std::vector<std::pair<double, double>> knots;
};

/// A space-defining function M on [0,1] together with its convexity exponent
/// p in (0,1]: M(t^{1/p}) is required to be convex, making the Luxemburg
/// gauge of M a p-norm. M is extended by M(t) = +inf for t > 1 so the gauge
/// is well posed for every finite vector.
class OrliczFunction {
public:
    using Params = std::variant<PowerParams, PowerLogParams, TabulatedParams>;

    static OrliczFunction power(double q, double p = 0.0) {
        if (!(q > 0.0)) fail("OutOfDomain", "power exponent q must be positive");
        if (p == 0.0) p = std::min(1.0, q);
        return OrliczFunction(PowerParams{q}, p);
    }

    static OrliczFunction power_log(double q, double r, double p = 1.0) {
        if (!(q > 0.0)) fail("OutOfDomain", "power exponent q must be positive");
        return OrliczFunction(PowerLogParams{q, r}, p);
    }

    static OrliczFunction tabulated(std::vector<std::pair<double, double>> knots, double p = 1.0) {
        if (knots.size() < 2) fail("OutOfDomain", "tabulated descriptor needs at least 2 knots");
        for (std::size_t i = 0; i + 1 < knots.size(); ++i)
            if (!(knots[i].first < knots[i + 1].first))
                fail("OutOfDomain", "tabulated knots must be strictly increasing in t");
        return OrliczFunction(TabulatedParams{std::move(knots)}, p);
    }

    double p() const { return p_; }
    const Params& params() const { return params_; }

    bool is_power() const { return std::holds_alternative<PowerParams>(params_); }

    const char* family_name() const {
        if (std::holds_alternative<PowerParams>(params_)) return "power";
        if (std::holds_alternative<PowerLogParams>(params_)) return "powerlog";
        return "tabulated";
    }

    /// M(t); +inf beyond 1 (up to a 1e-12 clamp absorbing norm-bisection noise).
    double value(double t) const {
        if (t <= 0.0) return 0.0;
        if (t > 1.0) {
            if (t > 1.0 + 1e-12) return kInf;
            t = 1.0;
        }
        if (const auto* pw = std::get_if<PowerParams>(&params_)) return std::pow(t, pw->q);
        if (const auto* pl = std::get_if<PowerLogParams>(&params_))
            return std::pow(t, pl->q) * std::pow(1.0 - std::log2(t), -pl->r);
        return std::get<TabulatedParams>(params_).knots.empty() ? 0.0 : interp_(t);
    }

    /// M^{-1}(y) for y in [0,1]; bisection on the monotone M, closed form for
    /// the power family. Round-trips through M to better than 1e-12.
    double inverse(double y) const {
        if (y < 0.0 || y > 1.0 + 1e-12) fail("OutOfDomain", "inverse argument outside [0,1]");
        if (y <= 0.0) return 0.0;
        if (y >= 1.0) return 1.0;
        if (const auto* pw = std::get_if<PowerParams>(&params_)) return std::pow(y, 1.0 / pw->q);
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 120; ++it) {
            const double mid = 0.5 * (lo + hi);
            (value(mid) < y ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    /// log2 of M^{-1}(2^{log2_y}) for log2_y <= 0. Bisection runs in the log
    /// domain so inverse values down to 2^{-1000} keep full relative accuracy.
    double log2_inverse(double log2_y) const {
        if (log2_y > 1e-12) fail("OutOfDomain", "log2_inverse argument must be <= 0");
        if (log2_y >= 0.0) return 0.0;
        if (const auto* pw = std::get_if<PowerParams>(&params_)) return log2_y / pw->q;
        const double y = std::exp2(log2_y);
        double lo = -8.0;
        while (lo > -1080.0 && value(std::exp2(lo)) > y) lo *= 2.0;
        double hi = 0.0;
        for (int it = 0; it < 160; ++it) {
            const double mid = 0.5 * (lo + hi);
            (value(std::exp2(mid)) < y ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    /// Fundamental function phi(t) = 1 / M^{-1}(1/t), t = 2^{log2_t} >= 1.
    /// Arguments travel in the log2 domain so t never overflows.
    double fundamental(double log2_t) const { return std::exp2(log2_fundamental(log2_t)); }

    double log2_fundamental(double log2_t) const {
        if (log2_t < -1e-9) fail("OutOfDomain", "fundamental function needs t >= 1");
        if (log2_t < 0.0) log2_t = 0.0;
        return -log2_inverse(-log2_t);
    }

private:
    OrliczFunction(Params params, double p) : params_(std::move(params)), p_(p) {
        if (!(p_ > 0.0) || p_ > 1.0) fail("OutOfDomain", "convexity exponent p must lie in (0,1]");
        if (const auto* tb = std::get_if<TabulatedParams>(&params_)) {
            std::vector<double> xs, ys;
            xs.reserve(tb->knots.size());
            ys.reserve(tb->knots.size());
            for (const auto& [t, v] : tb->knots) {
                xs.push_back(t);
                ys.push_back(v);
            }
            interp_ = detail::MonotoneCubic(std::move(xs), std::move(ys));
        }
    }

    Params params_;
    double p_ = 1.0;
    detail::MonotoneCubic interp_;
};

// ---------------------------------------------------------------------------
// Structural validation
// ---------------------------------------------------------------------------

struct ValidationIssue {
    std::string code; // NonMonotone | NotPConvex | EndpointMismatch
    double where = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Checks M(0)=0, M(1)=1, strict monotonicity, and discrete midpoint
/// convexity of N(t) = M(t^{1/p}) on a deterministic grid.
inline ValidationReport validate_descriptor(const OrliczFunction& M, int grid_size = 1024) {
    ValidationReport rep;
    if (grid_size < 16) grid_size = 16;

    if (std::abs(M.value(0.0)) > 1e-12)
        rep.issues.push_back({"EndpointMismatch", 0.0, "M(0) != 0"});
    if (std::abs(M.value(1.0) - 1.0) > 1e-12)
        rep.issues.push_back({"EndpointMismatch", 1.0, "M(1) != 1"});

    std::vector<double> mv(static_cast<std::size_t>(grid_size) + 1);
    for (int i = 0; i <= grid_size; ++i) mv[i] = M.value(static_cast<double>(i) / grid_size);
    for (int i = 0; i < grid_size; ++i) {
        if (!(mv[i + 1] > mv[i])) {
            rep.issues.push_back({"NonMonotone", static_cast<double>(i) / grid_size,
                                  "M not strictly increasing between grid points"});
            break;
        }
    }

    // Midpoint convexity of N(t) = M(t^{1/p}) over consecutive grid triples.
    const double inv_p = 1.0 / M.p();
    std::vector<double> nv(static_cast<std::size_t>(grid_size) + 1);
    for (int i = 0; i <= grid_size; ++i)
        nv[i] = M.value(std::pow(static_cast<double>(i) / grid_size, inv_p));
    for (int i = 1; i < grid_size; ++i) {
        if (nv[i] > 0.5 * (nv[i - 1] + nv[i + 1]) + 1e-9) {
            rep.issues.push_back({"NotPConvex", static_cast<double>(i) / grid_size,
                                  "M(t^{1/p}) fails midpoint convexity"});
            break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Norms
// ---------------------------------------------------------------------------

/// Luxemburg norm inf{rho > 0 : sum M(|x_i|/rho) <= 1}. Exact for the power
/// family, bisection otherwise (bracket [max|x|, max|x| * n^{1/p}]).
inline double luxemburg_norm(const OrliczFunction& M, std::span<const double> x) {
    double peak = 0.0;
    for (double v : x) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;

    if (const auto* pw = std::get_if<PowerParams>(&M.params())) {
        double s = 0.0;
        for (double v : x) s += std::pow(std::abs(v) / peak, pw->q);
        return peak * std::pow(s, 1.0 / pw->q);
    }

    const auto budget = [&](double rho) {
        double s = 0.0;
        for (double v : x) {
            s += M.value(std::abs(v) / rho);
            if (s > 1.0) return s;
        }
        return s;
    };

    double lo = peak;
    double hi = peak * std::pow(static_cast<double>(x.size()), 1.0 / M.p());
    for (int widen = 0; widen < 64 && budget(hi) > 1.0; ++widen) hi *= 2.0;
    if (budget(lo) <= 1.0) return lo;
    const double tol = 1e-12 * peak;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        (budget(mid) <= 1.0 ? hi : lo) = mid;
    }
    return hi; // feasible endpoint
}

inline double luxemburg_norm(const OrliczFunction& M, const std::vector<double>& x) {
    return luxemburg_norm(M, std::span<const double>(x));
}

/// Weak-ell_p quasi-norm: max_i i^{1/p} x*_i over the non-increasing
/// rearrangement x* of |x|.
inline double weak_lp_norm(std::span<const double> x, double p) {
    if (!(p > 0.0)) fail("OutOfDomain", "weak_lp_norm needs p > 0");
    std::vector<double> a(x.begin(), x.end());
    for (double& v : a) v = std::abs(v);
    std::sort(a.begin(), a.end(), std::greater<double>());
    double best = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        best = std::max(best, std::exp2(std::log2(static_cast<double>(i + 1)) / p) * a[i]);
    return best;
}

inline double weak_lp_norm(const std::vector<double>& x, double p) {
    return weak_lp_norm(std::span<const double>(x), p);
}

// ---------------------------------------------------------------------------
// Fundamental-function ratio
// ---------------------------------------------------------------------------

struct RatioMonotoneReport {
    bool non_decreasing = true;
    double witness_log2_t = 0.0; // start of the first decreasing pair
    double ratio_before = 0.0;
    double ratio_after = 0.0;
};

/// Checks that phi_{M1}(t) / phi_{M2}(t) is non-decreasing on a geometric
/// grid t in [1, 2^64]; reports the first decreasing pair if any.
inline RatioMonotoneReport ratio_monotone_check(const OrliczFunction& M1, const OrliczFunction& M2,
                                                int grid_size = 513) {
    if (grid_size < 3) grid_size = 3;
    RatioMonotoneReport rep;
    double prev = 0.0, prev_u = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double u = 64.0 * i / (grid_size - 1);
        const double r = std::exp2(M1.log2_fundamental(u) - M2.log2_fundamental(u));
        if (i > 0 && r < prev * (1.0 - 1e-12)) {
            rep.non_decreasing = false;
            rep.witness_log2_t = prev_u;
            rep.ratio_before = prev;
            rep.ratio_after = r;
            return rep;
        }
        prev = r;
        prev_u = u;
    }
    return rep;
}

/// Convexity exponent shared by a pair of descriptors (the smaller one; a
/// q-convex function is p-convex for every p <= q).
inline double pair_p(const OrliczFunction& M1, const OrliczFunction& M2) {
    return std::min(M1.p(), M2.p());
}

} // namespace orlent
