// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "orlent/orlicz.hpp"

namespace orlent {

inline unsigned thread_budget() {
    if (const char* env = std::getenv("ORLENT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 64));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// A diagonal map between n-dimensional Orlicz spaces, n <= 6, generated by
/// non-increasing non-negative weights.
struct FiniteDiagonalInstance {
    OrliczFunction M1;
    OrliczFunction M2;
    std::vector<double> weights;

    int n() const { return static_cast<int>(weights.size()); }

    void validate() const {
        if (weights.empty() || weights.size() > 6)
            fail("OutOfDomain", "oracle instances need 1 <= n <= 6");
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (!(weights[i] >= 0.0)) fail("OutOfDomain", "weights must be non-negative");
            if (i > 0 && weights[i] > weights[i - 1] * (1.0 + 1e-12))
                fail("NonMonotone", "weights must be non-increasing");
        }
    }
};

inline double default_delta(int n) {
    if (n <= 2) return 0.05;
    if (n == 3) return 0.1;
    return 0.15;
}

struct OracleMethod {
    double grid_delta = 0.0;
    long lattice_points = 0;
    long image_points = 0;
    long cover_centers = 0;
    bool norm_clamped = false;
};

struct EntropyInterval {
    int k = 0;
    double lower = 0.0;
    double upper = 0.0;
    OracleMethod method;
};

namespace detail {

// All lattice points of (delta Z)^n inside the unit ball of ell_M1^n, in
// lexicographic coordinate order. Ball membership uses the modular
// characterization sum M1(|x_i|) <= 1 (within 1e-9, so rounding noise never
// drops genuine boundary points).
inline std::vector<double> enumerate_ball_lattice(const OrliczFunction& M1, int n, double delta,
                                                  long budget, long& count) {
    if (!(delta > 0.0) || delta > 1.0) fail("OutOfDomain", "delta must lie in (0, 1]");
    const long cmax = static_cast<long>(std::floor((1.0 + 1e-12) / delta));
    std::vector<double> flat;
    std::vector<double> point(static_cast<std::size_t>(n), 0.0);
    count = 0;

    struct Walker {
        const OrliczFunction& M1;
        int n;
        double delta;
        long cmax;
        long budget;
        long* count;
        std::vector<double>* flat;
        std::vector<double>* point;

        void walk(int axis, double partial) {
            if (axis == n) {
                if (++*count > budget) fail("BudgetExceeded", "lattice exceeds the point budget");
                flat->insert(flat->end(), point->begin(), point->end());
                return;
            }
            for (long c = -cmax; c <= cmax; ++c) {
                const double v = c * delta;
                const double m = M1.value(std::abs(v));
                if (partial + m > 1.0 + 1e-9) continue;
                (*point)[axis] = v;
                walk(axis + 1, partial + m);
            }
        }
    } walker{M1, n, delta, cmax, budget, &count, &flat, &point};

    walker.walk(0, 0.0);
    return flat;
}

} // namespace detail

/// delta-dense subset (in ell_inf) of the unit ball of ell_M1^n.
inline std::vector<std::vector<double>> discretize_ball(const OrliczFunction& M1, int n, double delta,
                                                        long budget = 10000000) {
    if (n < 1 || n > 6) fail("OutOfDomain", "discretize_ball needs 1 <= n <= 6");
    long count = 0;
    const auto flat = detail::enumerate_ball_lattice(M1, n, delta, budget, count);
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        pts[i].assign(flat.begin() + i * n, flat.begin() + (i + 1) * n);
    return pts;
}

/// Desk-scale entropy-number estimator for a fixed instance and grid spacing.
/// Lower bounds come from greedy farthest-point packing (refined by 2-swap
/// local search) of genuine image points; upper bounds from greedy covering
/// with centers restricted to image lattice points, plus the image-space
/// diameter of one delta-cell.
class EntropyOracle {
public:
    EntropyOracle(FiniteDiagonalInstance inst, double delta, long budget = 10000000)
        : inst_(std::move(inst)), delta_(delta) {
        inst_.validate();
        if (delta_ > 0.2) fail("OutOfDomain", "oracle runs need delta in (0, 0.2]");
        n_ = inst_.n();

        // Work on the instance normalized to leading weight 1 and rescale the
        // reported endpoints, so scaling all weights is exactly covariant.
        scale_ = inst_.weights[0];
        std::vector<double> w(inst_.weights);
        if (scale_ > 0.0)
            for (double& v : w) v /= scale_;

        long count = 0;
        const auto flat = detail::enumerate_ball_lattice(inst_.M1, n_, delta, budget, count);
        lattice_points_ = count;

        // Map through the diagonal weights and deduplicate (zero weights
        // collapse axes). Sorted order keeps everything deterministic.
        std::vector<std::vector<double>> imgs(static_cast<std::size_t>(count));
        for (long i = 0; i < count; ++i) {
            auto& q = imgs[i];
            q.resize(static_cast<std::size_t>(n_));
            for (int a = 0; a < n_; ++a) q[a] = w[a] * flat[i * n_ + a];
        }
        std::sort(imgs.begin(), imgs.end());
        imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
        p_count_ = static_cast<long>(imgs.size());
        images_.resize(static_cast<std::size_t>(p_count_) * n_);
        for (long i = 0; i < p_count_; ++i)
            std::copy(imgs[i].begin(), imgs[i].end(), images_.begin() + i * n_);

        std::vector<double> cell(w);
        for (double& v : cell) v *= delta_;
        slack_ = luxemburg_norm(inst_.M2, cell);

        ratio_ok_ = ratio_monotone_check(inst_.M1, inst_.M2).non_decreasing;
        norm_bound_ = ratio_ok_ ? (scale_ > 0.0 ? 1.0 : 0.0) : kInf;

        if (p_count_ <= kMatrixCap) {
            build_matrix<double>(matrix_);
        } else if (p_count_ <= kFloatMatrixCap) {
            build_matrix<float>(matrixf_); // guarded by kFloatGuard below
        } else if (!inst_.M2.is_power() || p_count_ > kOnTheFlyCap) {
            fail("BudgetExceeded",
                 "image set too large for pairwise search (" + std::to_string(p_count_) +
                     " points); increase delta");
        }

        norms_.resize(static_cast<std::size_t>(p_count_));
        for (long i = 0; i < p_count_; ++i)
            norms_[i] = luxemburg_norm(inst_.M2, point_span(i));
    }

    long lattice_count() const { return lattice_points_; }
    long image_count() const { return p_count_; }
    double slack() const { return scale_ * slack_; }
    double delta() const { return delta_; }

    /// Packing side: e_k >= 2^{1-1/p} d/2 where d is the smallest pairwise
    /// ell_M2 distance of 2^{k-1}+1 selected image points.
    double packing_lower(int k) {
        const double d = packing_distance(points_needed(k));
        return scale_ * lower_guard() * std::exp2(1.0 - 1.0 / inst_.M2.p()) * 0.5 * d;
    }

    /// Covering side: smallest greedy-feasible radius for 2^{k-1} centers,
    /// plus the delta-cell slack.
    double cover_upper(int k) {
        long centers = 0;
        return scale_ * upper_guard() * (cover_radius(centers_allowed(k), centers) + slack_);
    }

    EntropyInterval estimate(int k) {
        if (k < 1 || k > 24) fail("OutOfDomain", "oracle needs 1 <= k <= 24");
        EntropyInterval out;
        out.k = k;
        out.method.grid_delta = delta_;
        out.method.lattice_points = lattice_points_;
        out.method.image_points = p_count_;

        const double d = packing_distance(points_needed(k));
        const double f_hat = 0.5 * d;
        double lower = lower_guard() * std::exp2(1.0 - 1.0 / inst_.M2.p()) * f_hat;

        long centers = 0;
        double upper = upper_guard() * (cover_radius(centers_allowed(k), centers) + slack_);
        out.method.cover_centers = centers;
        if (upper > norm_bound_) {
            upper = norm_bound_;
            out.method.norm_clamped = true;
        }

        if (lower > upper + 1e-9 || lower > 2.0 * f_hat + 1e-9)
            fail("Inconsistent", "oracle bracket violated at k = " + std::to_string(k));
        out.lower = scale_ * lower;
        out.upper = scale_ * upper;
        return out;
    }

    /// Batch over a k-range with the interval monotonicity enforced
    /// (upper non-increasing by running minimum, lower by suffix maximum --
    /// both directions are sound since e_k itself is non-increasing).
    std::vector<EntropyInterval> estimate_range(int k_lo, int k_hi) {
        if (k_lo < 1 || k_hi < k_lo) fail("OutOfDomain", "bad k range");
        std::vector<EntropyInterval> rows;
        for (int k = k_lo; k <= k_hi; ++k) rows.push_back(estimate(k));
        for (std::size_t i = 1; i < rows.size(); ++i)
            rows[i].upper = std::min(rows[i].upper, rows[i - 1].upper);
        for (std::size_t i = rows.size(); i-- > 1;)
            rows[i - 1].lower = std::max(rows[i - 1].lower, rows[i].lower);
        return rows;
    }

private:
    static constexpr long kMatrixCap = 5000;       // dense double distances
    static constexpr long kFloatMatrixCap = 12000; // dense float distances
    static constexpr long kOnTheFlyCap = 25000;    // recompute per query (power codomain)
    static constexpr double kFloatGuard = 1e-6;    // absorbs float rounding of distances
    static constexpr long kSwapBudget = 100000;

    static long points_needed(int k) { return (1L << (k - 1)) + 1; }
    static long centers_allowed(int k) { return 1L << (k - 1); }

    std::span<const double> point_span(long i) const {
        return {images_.data() + i * n_, static_cast<std::size_t>(n_)};
    }

    // Float-tier distances carry ~1e-7 relative rounding; widen the reported
    // interval by kFloatGuard so it stays a genuine enclosure.
    double lower_guard() const { return matrixf_.empty() ? 1.0 : 1.0 - kFloatGuard; }
    double upper_guard() const { return matrixf_.empty() ? 1.0 : 1.0 + kFloatGuard; }

    double compute_dist(long i, long j) const {
        double diff[6];
        for (int a = 0; a < n_; ++a) diff[a] = images_[i * n_ + a] - images_[j * n_ + a];
        return luxemburg_norm(inst_.M2, std::span<const double>(diff, static_cast<std::size_t>(n_)));
    }

    double dist(long i, long j) const {
        if (i == j) return 0.0;
        if (!matrix_.empty()) return matrix_[i * p_count_ + j];
        if (!matrixf_.empty()) return matrixf_[i * p_count_ + j];
        return compute_dist(i, j);
    }

    template <typename T>
    void build_matrix(std::vector<T>& store) {
        store.assign(static_cast<std::size_t>(p_count_) * p_count_, T(0));
        const unsigned threads = std::min<unsigned>(thread_budget(), 16);
        auto fill_rows = [&](long lo, long hi) {
            for (long i = lo; i < hi; ++i)
                for (long j = i + 1; j < p_count_; ++j) {
                    const T d = static_cast<T>(compute_dist(i, j));
                    store[i * p_count_ + j] = d;
                    store[j * p_count_ + i] = d;
                }
        };
        if (threads <= 1 || p_count_ < 256) {
            fill_rows(0, p_count_);
        } else {
            std::vector<std::thread> pool;
            const long chunk = (p_count_ + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const long lo = t * chunk;
                const long hi = std::min<long>(p_count_, lo + chunk);
                if (lo < hi) pool.emplace_back(fill_rows, lo, hi);
            }
            for (auto& th : pool) th.join();
        }
    }

    // Farthest-point ordering, seeded at the image point of largest norm;
    // extended lazily and shared across k so packings are nested.
    void extend_fp_order(long want) {
        want = std::min(want, p_count_);
        if (fp_order_.empty()) {
            long seed = 0;
            for (long i = 1; i < p_count_; ++i)
                if (norms_[i] > norms_[seed]) seed = i;
            fp_order_.push_back(seed);
            fp_mindist_.assign(static_cast<std::size_t>(p_count_), kInf);
            for (long i = 0; i < p_count_; ++i) fp_mindist_[i] = dist(i, seed);
        }
        while (static_cast<long>(fp_order_.size()) < want) {
            long next = -1;
            double best = -1.0;
            for (long i = 0; i < p_count_; ++i)
                if (fp_mindist_[i] > best) {
                    best = fp_mindist_[i];
                    next = i;
                }
            fp_order_.push_back(next);
            for (long i = 0; i < p_count_; ++i)
                fp_mindist_[i] = std::min(fp_mindist_[i], dist(i, next));
        }
    }

    double min_pairwise(const std::vector<long>& sel, std::size_t* a = nullptr,
                        std::size_t* b = nullptr) const {
        double d = kInf;
        for (std::size_t i = 0; i < sel.size(); ++i)
            for (std::size_t j = i + 1; j < sel.size(); ++j) {
                const double v = dist(sel[i], sel[j]);
                if (v < d) {
                    d = v;
                    if (a) *a = i;
                    if (b) *b = j;
                }
            }
        return d;
    }

    double packing_distance(long K) {
        if (K > p_count_ || K < 2) return 0.0;
        extend_fp_order(K);
        std::vector<long> sel(fp_order_.begin(), fp_order_.begin() + K);
        std::vector<char> in_sel(static_cast<std::size_t>(p_count_), 0);
        for (long s : sel) in_sel[s] = 1;

        std::size_t pa = 0, pb = 0;
        double d = min_pairwise(sel, &pa, &pb);

        // 2-swap refinement: try to re-home one endpoint of the closest pair.
        long moves = 0;
        bool improved = true;
        while (improved && moves < kSwapBudget) {
            improved = false;
            for (std::size_t victim : {pb, pa}) {
                long best_c = -1;
                double best_d = d;
                for (long c = 0; c < p_count_ && moves < kSwapBudget; ++c) {
                    if (in_sel[c]) continue;
                    ++moves;
                    double dmin = kInf;
                    for (std::size_t s = 0; s < sel.size(); ++s) {
                        if (s == victim) continue;
                        dmin = std::min(dmin, dist(c, sel[s]));
                        if (dmin <= best_d) break;
                    }
                    if (dmin > best_d) {
                        best_d = dmin;
                        best_c = c;
                    }
                }
                if (best_c >= 0) {
                    in_sel[sel[victim]] = 0;
                    in_sel[best_c] = 1;
                    sel[victim] = best_c;
                    d = min_pairwise(sel, &pa, &pb);
                    improved = true;
                    break;
                }
            }
        }
        return d;
    }

    // Greedy max-coverage feasibility: can `budget` centers (image points)
    // cover every image point within radius eps?
    bool cover_feasible(double eps, long budget, long& used) const {
        const long words = (p_count_ + 63) / 64;
        std::vector<std::uint64_t> adj(static_cast<std::size_t>(p_count_) * words, 0);
        for (long i = 0; i < p_count_; ++i)
            for (long j = 0; j < p_count_; ++j)
                if (dist(i, j) <= eps) adj[i * words + j / 64] |= std::uint64_t(1) << (j % 64);

        std::vector<std::uint64_t> uncovered(static_cast<std::size_t>(words), ~std::uint64_t(0));
        if (p_count_ % 64) uncovered[words - 1] = (std::uint64_t(1) << (p_count_ % 64)) - 1;
        long remaining = p_count_;
        used = 0;
        while (remaining > 0 && used < budget) {
            long best = -1, best_gain = -1;
            for (long i = 0; i < p_count_; ++i) {
                long gain = 0;
                for (long w = 0; w < words; ++w)
                    gain += __builtin_popcountll(adj[i * words + w] & uncovered[w]);
                if (gain > best_gain) {
                    best_gain = gain;
                    best = i;
                }
            }
            if (best_gain <= 0) break;
            for (long w = 0; w < words; ++w) uncovered[w] &= ~adj[best * words + w];
            remaining -= best_gain;
            ++used;
        }
        return remaining == 0;
    }

    double cover_radius(long budget, long& used) const {
        if (budget >= p_count_) {
            used = p_count_;
            return 0.0;
        }
        if (!matrix_.empty() || !matrixf_.empty()) {
            std::vector<double> eps;
            eps.reserve(static_cast<std::size_t>(p_count_) * p_count_ + 1);
            if (!matrix_.empty())
                eps.assign(matrix_.begin(), matrix_.end());
            else
                eps.assign(matrixf_.begin(), matrixf_.end());
            eps.push_back(0.0);
            std::sort(eps.begin(), eps.end());
            eps.erase(std::unique(eps.begin(), eps.end()), eps.end());
            std::size_t lo = 0, hi = eps.size() - 1; // eps.back() = diameter, always feasible
            long used_hi = 0;
            cover_feasible(eps[hi], budget, used_hi);
            while (lo < hi) {
                const std::size_t mid = (lo + hi) / 2;
                long u = 0;
                if (cover_feasible(eps[mid], budget, u)) {
                    hi = mid;
                    used_hi = u;
                } else {
                    lo = mid + 1;
                }
            }
            used = used_hi;
            return eps[hi];
        }
        // On-the-fly path: continuous bisection, returning the feasible end.
        double lo = 0.0, hi = 0.0;
        for (long i = 0; i < p_count_; ++i) hi = std::max(hi, 2.0 * norms_[i]);
        long used_hi = 0;
        cover_feasible(hi, budget, used_hi);
        for (int it = 0; it < 36; ++it) {
            const double mid = 0.5 * (lo + hi);
            long u = 0;
            if (cover_feasible(mid, budget, u)) {
                hi = mid;
                used_hi = u;
            } else {
                lo = mid;
            }
        }
        used = used_hi;
        return hi;
    }

    FiniteDiagonalInstance inst_;
    double delta_ = 0.0;
    double scale_ = 1.0; // leading weight; computations run on weights/scale
    int n_ = 0;
    long lattice_points_ = 0;
    long p_count_ = 0;
    std::vector<double> images_; // flat, stride n_
    std::vector<double> norms_;
    std::vector<double> matrix_; // dense symmetric distances when affordable
    std::vector<float> matrixf_; // middle tier: float distances + guard
    std::vector<long> fp_order_;
    std::vector<double> fp_mindist_;
    double slack_ = 0.0;
    bool ratio_ok_ = false;
    double norm_bound_ = kInf;
};

inline double packing_lower(const FiniteDiagonalInstance& inst, int k, double delta) {
    return EntropyOracle(inst, delta).packing_lower(k);
}

inline double greedy_cover_upper(const FiniteDiagonalInstance& inst, int k, double delta) {
    return EntropyOracle(inst, delta).cover_upper(k);
}

inline EntropyInterval oracle_entropy(const FiniteDiagonalInstance& inst, int k, double delta) {
    return EntropyOracle(inst, delta).estimate(k);
}

} // namespace orlent
