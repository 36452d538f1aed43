// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "orlent/bignum.hpp"
#include "orlent/orlicz.hpp"

namespace orlent {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

// ---------------------------------------------------------------------------
// Constant-gap code families (greedy construction)
// ---------------------------------------------------------------------------

struct CodeFamily {
    long n = 0; // ground set {1..n}
    long s = 0; // subset size
    long k = 0; // target exponent: cardinality >= 2^{k/4}
    std::vector<std::vector<int>> members; // sorted 1-based index lists
};

struct CodeFamilyCheck {
    bool ok = false;
    long min_delta = 0; // smallest pairwise symmetric difference found
    std::pair<std::size_t, std::size_t> worst_pair{0, 0};
};

namespace detail {

class Bitset {
public:
    explicit Bitset(long bits) : words_((bits + 63) / 64, 0) {}
    void set(long i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    long intersection_count(const Bitset& o) const {
        long c = 0;
        for (std::size_t w = 0; w < words_.size(); ++w)
            c += __builtin_popcountll(words_[w] & o.words_[w]);
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

} // namespace detail

/// Greedy construction of a family of s-subsets of {1..n} with pairwise
/// symmetric difference >= s and cardinality >= 2^{k/4}. Requires
/// 4 log(2n) <= k <= n/5; s is the unique integer with
/// k/log(2n/k) < s <= 1 + k/log(2n/k). Candidates come from a fixed-seed
/// pseudorandom stream; exhaustion triggers a reseeded retry, up to 8 times.
inline CodeFamily build_code_family(long n, long k, std::uint64_t seed = kDefaultSeed) {
    if (n < 1 || k < 1) fail("OutOfDomain", "build_code_family needs n, k >= 1");
    const double log2_2n = std::log2(2.0 * n);
    if (4.0 * log2_2n > static_cast<double>(k) || static_cast<double>(k) > n / 5.0)
        fail("PreconditionViolated",
             "need 4 log(2n) <= k <= n/5; got n = " + std::to_string(n) + ", k = " + std::to_string(k));
    const double L = log2_2n - std::log2(static_cast<double>(k)); // log2(2n/k)
    const long s = static_cast<long>(std::floor(k / L)) + 1;
    if (k > 104) fail("BudgetExceeded", "target family size 2^{k/4} exceeds the desk-scale budget");
    const auto target = static_cast<std::size_t>(std::ceil(std::exp2(k / 4.0)));
    const long max_gap = s / 2; // symmetric difference >= s <=> intersection <= s/2

    CodeFamily best;
    best.n = n;
    best.s = s;
    best.k = k;

    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);

    for (int attempt = 0; attempt < 8; ++attempt) {
        std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt));
        CodeFamily fam;
        fam.n = n;
        fam.s = s;
        fam.k = k;
        std::vector<detail::Bitset> masks;
        const long budget = std::max<long>(1000000, 64 * static_cast<long>(target));

        for (long cand = 0; cand < budget && fam.members.size() < target; ++cand) {
            // partial Fisher-Yates draw of an s-subset
            for (long i = 0; i < s; ++i) {
                std::uniform_int_distribution<long> pick(i, n - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            detail::Bitset mask(n);
            for (long i = 0; i < s; ++i) mask.set(pool[i] - 1);
            bool ok = true;
            for (const auto& m : masks) {
                if (mask.intersection_count(m) > max_gap) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            std::vector<int> subset(pool.begin(), pool.begin() + s);
            std::sort(subset.begin(), subset.end());
            fam.members.push_back(std::move(subset));
            masks.push_back(std::move(mask));
        }
        if (fam.members.size() >= target) return fam;
        if (fam.members.size() > best.members.size()) best = std::move(fam);
    }
    fail("ConstructionExhausted", "greedy stream exhausted after 8 retries; best family size " +
                                      std::to_string(best.members.size()) + " < target " +
                                      std::to_string(target));
}

/// Exhaustive pairwise verification: every member has size s and every pair
/// has symmetric difference >= s. No probabilistic shortcut.
inline CodeFamilyCheck verify_code_family(const CodeFamily& fam) {
    CodeFamilyCheck chk;
    chk.min_delta = 2 * fam.s;
    for (const auto& m : fam.members)
        if (static_cast<long>(m.size()) != fam.s) return chk; // ok stays false
    std::vector<detail::Bitset> masks;
    masks.reserve(fam.members.size());
    for (const auto& m : fam.members) {
        detail::Bitset b(fam.n);
        for (int idx : m) b.set(idx - 1);
        masks.push_back(std::move(b));
    }
    chk.ok = true;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        for (std::size_t j = i + 1; j < masks.size(); ++j) {
            const long delta = 2 * (fam.s - masks[i].intersection_count(masks[j]));
            if (delta < chk.min_delta) {
                chk.min_delta = delta;
                chk.worst_pair = {i, j};
            }
        }
    }
    chk.ok = chk.min_delta >= fam.s;
    return chk;
}

// ---------------------------------------------------------------------------
// Implicit lattice net: membership, quantizer, cardinality bound
// ---------------------------------------------------------------------------

/// Dyadic threshold profile psi(m,j) = 2^{m-j-4} (m-j)^{-2}; non-increasing
/// in j for j = 0..m-5.
inline double lattice_net_psi(int m, int j) {
    if (m < 5 || j < 0 || j > m - 5) fail("OutOfDomain", "psi needs m >= 5 and 0 <= j <= m-5");
    const double d = static_cast<double>(m - j);
    return std::exp2(m - j - 4) / (d * d);
}

namespace detail {

// Ranks of |x| in non-increasing order, ties broken by lowest index.
inline std::vector<std::size_t> abs_rank_order(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double fa = std::abs(x[a]), fb = std::abs(x[b]);
        if (fa != fb) return fa > fb;
        return a < b;
    });
    return order;
}

// Threshold index for rank r (1-based): 0 for r = 1, otherwise the j with
// 2^{j-1} < r <= 2^j; returns -1 past rank 2^{m-5}.
inline int rank_level(long r, int m) {
    if (r == 1) return 0;
    int j = 0;
    while ((1L << j) < r) ++j; // j = ceil(log2 r)
    return j <= m - 5 ? j : -1;
}

} // namespace detail

/// True iff the (floor(2^{j-1})+1)-th largest |x_i| is <= 2^{psi(m,j)} for
/// every j in {0..m-5}. Vectors passing this test admit a nearby lattice-net
/// point (see lattice_net_quantize).
inline bool threshold_class_membership(std::span<const double> x, int m) {
    if (m < 5) fail("OutOfDomain", "threshold class needs m >= 5");
    if (static_cast<long>(x.size()) != (1L << m))
        fail("LengthMismatch", "expected vector length 2^m = " + std::to_string(1L << m));
    std::vector<double> mags(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) mags[i] = std::abs(x[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    for (int j = 0; j <= m - 5; ++j) {
        const std::size_t idx = j == 0 ? 0 : (std::size_t(1) << (j - 1));
        if (mags[idx] > std::exp2(lattice_net_psi(m, j))) return false;
    }
    return true;
}

/// Membership in the implicit net: entries divisible by 4, rank-r magnitude
/// within the level threshold, support confined to the top 2^{m-5} ranks.
/// Since the thresholds are non-increasing the rank-sorted nested chain is
/// the optimal one, so this check is exact.
inline bool lattice_net_membership(std::span<const double> z, int m) {
    if (m < 5) fail("OutOfDomain", "lattice net needs m >= 5");
    if (static_cast<long>(z.size()) != (1L << m))
        fail("LengthMismatch", "expected vector length 2^m = " + std::to_string(1L << m));
    for (double v : z)
        if (std::fmod(v, 4.0) != 0.0) return false;
    std::vector<double> mags(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) mags[i] = std::abs(z[i]);
    std::sort(mags.begin(), mags.end(), std::greater<double>());
    for (std::size_t r = 1; r <= mags.size(); ++r) {
        const int level = detail::rank_level(static_cast<long>(r), m);
        if (level < 0) {
            if (mags[r - 1] != 0.0) return false;
        } else if (mags[r - 1] > std::exp2(lattice_net_psi(m, level))) {
            return false;
        }
    }
    return true;
}

/// Quantizes x (which must lie in the threshold class) to a net point:
/// nearest multiple of 4, clipped to the rank-dependent threshold, zero past
/// rank 2^{m-5}. Guarantees ||x - z||_inf <= 4 and lattice_net_membership(z).
inline std::vector<double> lattice_net_quantize(std::span<const double> x, int m) {
    if (!threshold_class_membership(x, m))
        fail("NotInW", "vector is outside the threshold class for m = " + std::to_string(m));
    const auto order = detail::abs_rank_order(x);
    std::vector<double> z(x.size(), 0.0);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const int level = detail::rank_level(static_cast<long>(pos) + 1, m);
        if (level < 0) break; // remaining ranks stay zero
        const double cap = 4.0 * std::floor(std::exp2(lattice_net_psi(m, level)) / 4.0);
        const std::size_t i = order[pos];
        double zq = 4.0 * std::round(x[i] / 4.0);
        if (std::abs(zq) > cap) zq = std::copysign(cap, x[i]);
        z[i] = zq;
    }
    return z;
}

struct LatticeNetCardBound {
    double log2_bound = 0.0; // explicit upper bound for log2 of the net size
    double log2_value_part = 0.0; // per-chain value-assignment count (log2)
    double log2_chain_part = 0.0; // nested-chain count (log2)
    bool within = false;          // log2_bound <= 2^{m-1} - 1
};

/// log2 upper bound for a binomial coefficient C(n, beta n) via two-sided
/// factorial bounds: 1/sqrt(2 pi beta(1-beta)) e^{1/12n} n^{-1/2}
/// [beta^{-beta} (1-beta)^{-(1-beta)}]^n.
inline double log2_binomial_bound(double n, double beta) {
    const double entropy = beta * std::log2(1.0 / beta) + (1.0 - beta) * std::log2(1.0 / (1.0 - beta));
    return -0.5 * std::log2(2.0 * M_PI * beta * (1.0 - beta)) + kLog2E / (12.0 * n) -
           0.5 * std::log2(n) + n * entropy;
}

/// Explicit cardinality bound for the implicit net at scale m, assembled from
/// the per-level value counts and the nested-chain count. The net itself is
/// never materialized (already at m = 13 it would have ~2^4095 points).
inline LatticeNetCardBound lattice_net_log_card_bound(int m) {
    if (m < 5) fail("OutOfDomain", "lattice net needs m >= 5");
    LatticeNetCardBound out;
    double value_part = lattice_net_psi(m, 0);
    if (m >= 6) {
        value_part += lattice_net_psi(m, 1);
        for (int j = 2; j <= m - 5; ++j) value_part += std::exp2(j - 1) * lattice_net_psi(m, j);
    }
    double chain_part = log2_binomial_bound(std::exp2(m), std::exp2(-5));
    chain_part += std::exp2(m - 4) - 2.0; // 2^{2^{m-5}} * ... * 2^{2^1}
    out.log2_value_part = value_part;
    out.log2_chain_part = chain_part;
    out.log2_bound = value_part + chain_part;
    out.within = out.log2_bound <= std::exp2(m - 1) - 1.0;
    return out;
}

// ---------------------------------------------------------------------------
// Exact family counting
// ---------------------------------------------------------------------------

struct FamilyCountResult {
    BigUint count;
    std::size_t bit_length = 0;
    bool within_bound = false; // log2(count) <= 2^{m+3}
    long tuples = 0;           // feasible size tuples enumerated
};

/// Exact number of families (F_0..F_m) with F_i a subset of a ground set of
/// size sizes[i] and sum_i #F_i 2^{i-m} <= 1, by enumerating feasible size
/// tuples and summing products of binomial coefficients in exact integer
/// arithmetic. Ground sets must satisfy sizes[i] <= 2^{m+2^i}.
inline FamilyCountResult count_family_F(int m, const std::vector<long>& sizes,
                                        long tuple_cap = 10000000) {
    if (m < 0) fail("OutOfDomain", "count_family_F needs m >= 0");
    if (static_cast<int>(sizes.size()) != m + 1)
        fail("LengthMismatch", "need exactly m+1 ground-set sizes");
    for (int i = 0; i <= m; ++i) {
        const double cap = static_cast<double>(m) + std::exp2(i);
        if (sizes[i] < 1 || (cap < 62 && sizes[i] > (1L << static_cast<long>(cap))))
            fail("SizeBoundViolated", "size of block " + std::to_string(i) +
                                          " violates 1 <= #E_i <= 2^{m+2^i}");
        if (sizes[i] > (1L << 30)) fail("Intractable", "ground set too large for exact counting");
    }

    FamilyCountResult out;
    const long budget = 1L << m; // constraint sum f_i 2^i <= 2^m

    // Depth-first over levels m..0, maintaining the running product of
    // binomials; the binomial at each level updates multiplicatively.
    struct Walker {
        const std::vector<long>& sizes;
        long tuple_cap;
        long tuples = 0;
        BigUint total;

        void walk(int level, long remaining, const BigUint& prod) {
            if (level < 0) {
                if (++tuples > tuple_cap) fail("Intractable", "feasible tuple set exceeds cap");
                total += prod;
                return;
            }
            const long weight = 1L << level;
            const long fmax = std::min(sizes[level], remaining / weight);
            BigUint binom = BigUint::one(); // C(size, f), f = 0
            for (long f = 0; f <= fmax; ++f) {
                if (f > 0) {
                    binom.mul_small(static_cast<std::uint32_t>(sizes[level] - f + 1));
                    binom.div_small_exact(static_cast<std::uint32_t>(f));
                }
                walk(level - 1, remaining - f * weight, prod * binom);
            }
        }
    } walker{sizes, tuple_cap, 0, BigUint()};

    walker.walk(m, budget, BigUint::one());
    out.count = walker.total;
    out.tuples = walker.tuples;
    out.bit_length = out.count.bit_length();
    const std::uint64_t log_bound = std::uint64_t(1) << (m + 3);
    out.within_bound = out.count <= BigUint::pow2(log_bound);
    return out;
}

// ---------------------------------------------------------------------------
// Heavy/light splitting over dyadic blocks
// ---------------------------------------------------------------------------

using BlockVector = std::vector<std::vector<double>>; // blocks E_0..E_{m+1}

struct SplitResult {
    std::vector<std::vector<std::size_t>> heavy; // F_i: indices within block i
    BlockVector y;                               // x restricted to the heavy sets
    BlockVector z;                               // x - y
};

/// Splits a unit-ball vector over blocks E_0..E_{m+1} into its heavy part
/// y (coordinates with M1(|x|) >= 2^{i-m}) and light remainder z. The heavy
/// mass satisfies sum_i #F_i 2^{i-m} <= 1, and the light part stays inside
/// the codomain unit ball after the net weights are applied.
inline SplitResult split_decompose(const BlockVector& x, int m, const OrliczFunction& M1) {
    if (m < 1) fail("OutOfDomain", "split_decompose needs m >= 1");
    if (static_cast<int>(x.size()) != m + 2)
        fail("BlockSizeViolated", "expected m+2 blocks, got " + std::to_string(x.size()));
    for (int i = 0; i <= m; ++i) {
        const double cap = static_cast<double>(m) + std::exp2(i);
        if (cap < 62 && static_cast<double>(x[i].size()) > std::exp2(cap))
            fail("BlockSizeViolated", "block " + std::to_string(i) + " exceeds 2^{m+2^i}");
    }
    std::vector<double> flat;
    for (const auto& block : x) flat.insert(flat.end(), block.begin(), block.end());
    if (luxemburg_norm(M1, flat) > 1.0 + 1e-9)
        fail("NormExceedsOne", "input vector lies outside the unit ball");

    SplitResult out;
    out.heavy.resize(x.size());
    out.y = x;
    out.z = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double threshold = std::exp2(static_cast<double>(i) - m);
        for (std::size_t j = 0; j < x[i].size(); ++j) {
            if (M1.value(std::abs(x[i][j])) >= threshold) {
                out.heavy[i].push_back(j);
                out.z[i][j] = 0.0;
            } else {
                out.y[i][j] = 0.0;
            }
        }
    }
    return out;
}

/// sum_i #F_i 2^{i-m} for a split result.
inline double split_heavy_mass(const SplitResult& split, int m) {
    double mass = 0.0;
    for (std::size_t i = 0; i < split.heavy.size(); ++i)
        mass += static_cast<double>(split.heavy[i].size()) * std::exp2(static_cast<double>(i) - m);
    return mass;
}

/// Net weights omega_i = phi1(2^{m-i}) / phi2(2^{m-i}) for i <= m, 1 beyond.
inline std::vector<double> net_weights(const OrliczFunction& M1, const OrliczFunction& M2, int m) {
    std::vector<double> w(static_cast<std::size_t>(m) + 2, 1.0);
    for (int i = 0; i <= m; ++i) {
        const double scale = static_cast<double>(m - i);
        w[i] = std::exp2(M1.log2_fundamental(scale) - M2.log2_fundamental(scale));
    }
    return w;
}

// ---------------------------------------------------------------------------
// Standalone inequality checks
// ---------------------------------------------------------------------------

struct SqrtLogReport {
    bool pass = false;
    double worst_margin = 0.0;
    double worst_x = 0.0;
    long points = 0;
};

/// sqrt(x) log(2x) / (4 (1 + log(2x)/34)) - 1/(8 sqrt(x)) > sqrt(2) on a
/// geometric grid of [x_lo, x_hi].
inline SqrtLogReport sqrt_log_inequality_check(double x_lo = 5.0, double x_hi = 1e7,
                                               long points = 100000) {
    if (!(x_lo >= 5.0) || !(x_hi > x_lo)) fail("OutOfDomain", "grid must lie in [5, inf)");
    SqrtLogReport rep;
    rep.points = points;
    rep.worst_margin = kInf;
    const double step = std::log(x_hi / x_lo) / (points - 1);
    for (long i = 0; i < points; ++i) {
        const double x = x_lo * std::exp(step * i);
        const double l = std::log2(2.0 * x);
        const double margin =
            std::sqrt(x) * l / (4.0 * (1.0 + l / 34.0)) - 1.0 / (8.0 * std::sqrt(x)) - std::sqrt(2.0);
        if (margin < rep.worst_margin) {
            rep.worst_margin = margin;
            rep.worst_x = x;
        }
    }
    rep.pass = rep.worst_margin > 0.0;
    return rep;
}

struct CalculusEnvelopeReport {
    double beta = 0.0;
    double log2_grid_max = 0.0;
    double log2_bound = 0.0;
    double argmax_t = 0.0;
    bool pass = false;
};

/// Grid maximum of f(t) = t^{1/beta} 2^{-t/(16 log2(t)^2)} on [2^5, 1e7]
/// against its closed-form envelope at t* = (16 log2(e)/beta)(log2 of same)^2.
inline CalculusEnvelopeReport calculus_envelope_check(double beta, long points = 200000) {
    if (!(beta > 0.0) || beta > 1.0) fail("OutOfDomain", "envelope check needs beta in (0,1]");
    CalculusEnvelopeReport rep;
    rep.beta = beta;
    const double t_lo = 32.0, t_hi = 1e7;
    const double step = std::log(t_hi / t_lo) / (points - 1);
    const auto log2_f = [&](double t) {
        const double l = std::log2(t);
        return std::log2(t) / beta - t / (16.0 * l * l);
    };
    rep.log2_grid_max = -kInf;
    for (long i = 0; i < points; ++i) {
        const double t = t_lo * std::exp(step * i);
        const double v = log2_f(t);
        if (v > rep.log2_grid_max) {
            rep.log2_grid_max = v;
            rep.argmax_t = t;
        }
    }
    const double A = 16.0 * kLog2E / beta;
    const double tstar = A * std::log2(A) * std::log2(A);
    const double lstar = std::log2(tstar);
    rep.log2_bound = std::log2(22.0 * tstar) / beta - tstar / (16.0 * lstar * lstar);
    rep.pass = rep.log2_grid_max <= rep.log2_bound + 1e-9;
    return rep;
}

struct StirlingReport {
    bool pass = false;
    double worst_lower_margin = 0.0; // min over n of ln n! - ln(lower bound)
    double worst_upper_margin = 0.0; // min over n of ln(upper bound) - ln n!
    int worst_n = 0;
};

/// Two-sided factorial bounds sqrt(2 pi) n^{n+1/2} e^{-n} <= n! <= ... e^{1/12n},
/// verified in log space for n = 1..n_max.
inline StirlingReport stirling_check(int n_max = 170) {
    StirlingReport rep;
    rep.worst_lower_margin = kInf;
    rep.worst_upper_margin = kInf;
    double ln_fact = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        ln_fact += std::log(static_cast<double>(n));
        const double base = 0.5 * std::log(2.0 * M_PI) + (n + 0.5) * std::log(static_cast<double>(n)) - n;
        const double lower_margin = ln_fact - base;
        const double upper_margin = base + 1.0 / (12.0 * n) - ln_fact;
        if (std::min(lower_margin, upper_margin) <
            std::min(rep.worst_lower_margin, rep.worst_upper_margin)) {
            rep.worst_n = n;
        }
        rep.worst_lower_margin = std::min(rep.worst_lower_margin, lower_margin);
        rep.worst_upper_margin = std::min(rep.worst_upper_margin, upper_margin);
    }
    rep.pass = rep.worst_lower_margin > -1e-12 && rep.worst_upper_margin > -1e-12;
    return rep;
}

struct BinomialBoundReport {
    bool pass = false;
    long checked = 0;
    double worst_margin = 0.0; // min over (n,k) of log2(bound) - log2(C(n,k))
    int worst_n = 0, worst_k = 0;
};

/// C(n, beta n) against the factorial-based closed form for every beta with
/// beta n integer, n in [n_lo, n_hi] (n_hi <= 60 keeps C(n,k) in uint64).
inline BinomialBoundReport binomial_bound_check(int n_lo = 2, int n_hi = 60) {
    if (n_hi > 62) fail("OutOfDomain", "exact uint64 binomials need n <= 62");
    BinomialBoundReport rep;
    rep.worst_margin = kInf;
    std::vector<std::uint64_t> row{1};
    for (int n = 1; n <= n_hi; ++n) {
        std::vector<std::uint64_t> next(static_cast<std::size_t>(n) + 1, 1);
        for (int j = 1; j < n; ++j) next[j] = row[j - 1] + row[j];
        row = std::move(next);
        if (n < n_lo) continue;
        for (int kk = 1; kk < n; ++kk) {
            const double beta = static_cast<double>(kk) / n;
            const double margin =
                log2_binomial_bound(static_cast<double>(n), beta) - std::log2(static_cast<double>(row[kk]));
            ++rep.checked;
            if (margin < rep.worst_margin) {
                rep.worst_margin = margin;
                rep.worst_n = n;
                rep.worst_k = kk;
            }
        }
    }
    rep.pass = rep.worst_margin > -1e-12;
    return rep;
}

struct LemmaSuiteReport {
    SqrtLogReport sqrt_log;
    std::vector<CalculusEnvelopeReport> envelopes;
    StirlingReport stirling;
    BinomialBoundReport binomial;
    bool all_pass = false;
};

inline LemmaSuiteReport inequality_checks() {
    LemmaSuiteReport rep;
    rep.sqrt_log = sqrt_log_inequality_check();
    for (double beta : {0.2, 0.5, 1.0}) rep.envelopes.push_back(calculus_envelope_check(beta));
    rep.stirling = stirling_check();
    rep.binomial = binomial_bound_check();
    rep.all_pass = rep.sqrt_log.pass && rep.stirling.pass && rep.binomial.pass;
    for (const auto& e : rep.envelopes) rep.all_pass = rep.all_pass && e.pass;
    return rep;
}

} // namespace orlent
