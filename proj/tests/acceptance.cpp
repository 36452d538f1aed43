// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code next to each check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orlent/bounds.hpp"
#include "orlent/combinatorics.hpp"
#include "orlent/entropy_oracle.hpp"
#include "orlent/orlicz.hpp"
#include "orlent/sequences.hpp"

using namespace orlent;

namespace {

struct Criterion {
    std::string name;
    std::function<bool(std::string&)> run;
};

// --- 1. Theta/Lambda bracket over randomized instances ----------------------

bool criterion_theta_lambda(std::string& detail) {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double rel = 1e-9;
    for (int trial = 0; trial < 50; ++trial) {
        const double p = trial % 2 ? 0.5 : 1.0;
        const double q1 = p + unit(rng) * (4.0 - p);
        const double q2 = q1 + unit(rng) * 4.0; // q1 <= q2 keeps phi1/phi2 non-decreasing
        const auto M1 = OrliczFunction::power(q1, p);
        const auto M2 = OrliczFunction::power(q2, p);
        DecaySequence seq = [&]() {
            switch (trial % 4) {
                case 0: return DecaySequence::polynomial(unit(rng) * 3.0);
                case 1: return DecaySequence::exp_log(0.2 + 1.8 * unit(rng), 0.1 + 0.8 * unit(rng));
                case 2: return DecaySequence::log_decay(0.2 + 2.8 * unit(rng));
                default: return DecaySequence::constant_head(0.1 + 2.0 * unit(rng), 16.0 * unit(rng));
            }
        }();
        for (long k = 1; k <= 16; ++k) {
            const auto th = theta_bound(seq, M1, M2, k);
            const auto lm = lambda_bound(seq, M1, M2, k);
            if (th.mode != ThetaMode::Exact) {
                detail = "expected exact mode at k = " + std::to_string(k);
                return false;
            }
            if (th.log2 == -kInf && lm.log2 == -kInf) continue;
            const double tol = std::log2(1.0 + rel);
            if (th.log2 < lm.log2 - 2.0 / p - tol || th.log2 > lm.log2 + 1.0 / p + tol) {
                detail = "bracket violated: trial " + std::to_string(trial) + ", k " +
                         std::to_string(k);
                return false;
            }
        }
    }
    detail = "50 instances x k in 1..16";
    return true;
}

// --- 2. Middle-regime values match the Lebesgue closed form -----------------

bool criterion_schutt_regime(std::string& detail) {
    std::mt19937_64 rng(kDefaultSeed + 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto [p0, q0] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
        const double p = std::min(1.0, p0);
        const auto M1 = OrliczFunction::power(p0, p);
        const auto M2 = OrliczFunction::power(q0, p);
        int done = 0;
        while (done < 100) {
            const long n = 2 + static_cast<long>(unit(rng) * 1e6);
            const double l2n = 1.0 + std::log2(static_cast<double>(n));
            const long k_lo = static_cast<long>(std::ceil(l2n));
            if (k_lo > n) continue;
            const long k = k_lo + static_cast<long>(unit(rng) * static_cast<double>(n - k_lo));
            const auto A = schutt_A(n, k, M1, M2);
            if (A.regime != Regime::Middle) continue;
            const double zeta = std::pow(std::log2(2.0 * n / k) / k, 1.0 / p0 - 1.0 / q0);
            if (std::abs(A.value - zeta) > 1e-12 * zeta) {
                detail = "mismatch at n=" + std::to_string(n) + " k=" + std::to_string(k);
                return false;
            }
            ++done;
        }
    }
    detail = "200 middle-regime pairs, rel 1e-12";
    return true;
}

// --- 3. Lambda tracks the lp->lq closed form for logarithmic decay ----------

bool criterion_closed_form(std::string& detail) {
    for (auto [p0, q0] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
        const double p = std::min(1.0, p0);
        const auto M1 = OrliczFunction::power(p0, p);
        const auto M2 = OrliczFunction::power(q0, p);
        const double delta = 1.0 / p0 - 1.0 / q0;
        for (double theta : {0.5, delta, 3.0}) {
            const auto seq = DecaySequence::log_decay(theta);
            for (long k = 4; k <= (1L << 20); k *= 4) {
                const double diff =
                    lambda_bound(seq, M1, M2, k).log2 - closed_form_lpq(theta, p0, q0, k).log2;
                if (std::abs(diff) > 4.0 / p0) {
                    detail = "ratio out of bracket at k=" + std::to_string(k) +
                             " theta=" + std::to_string(theta);
                    return false;
                }
            }
        }
    }
    detail = "theta in {0.5, 1/p0-1/q0, 3}, k up to 2^20, ratio within [2^{-4/p0}, 2^{4/p0}]";
    return true;
}

// --- 4. Oracle brackets the identity-map entropy ----------------------------

bool criterion_oracle_identity(std::string& detail) {
    const auto M = OrliczFunction::power(1.0);
    for (int n = 1; n <= 3; ++n) {
        FiniteDiagonalInstance inst{M, M, std::vector<double>(static_cast<std::size_t>(n), 1.0)};
        EntropyOracle oracle(inst, default_delta(n));
        const auto rows = oracle.estimate_range(1, 6);
        for (const auto& iv : rows) {
            const double ref = std::exp2((1.0 - iv.k) / n);
            if (iv.lower > 4.0 * ref + 1e-12 || iv.upper < ref - 1e-12) {
                detail = "no intersection at n=" + std::to_string(n) + " k=" + std::to_string(iv.k);
                return false;
            }
            if (n == 1) {
                if (iv.lower > ref + 1e-12 || iv.upper < ref - 1e-12 ||
                    iv.upper - iv.lower > 0.1 + 1e-12) {
                    detail = "1-d containment/width failed at k=" + std::to_string(iv.k);
                    return false;
                }
            }
        }
    }
    detail = "n in {1,2,3}, k in 1..6, default deltas";
    return true;
}

// --- 5. Oracle agrees with the finite-dimensional theorem bracket -----------

bool criterion_oracle_schutt(std::string& detail) {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);
    const auto cs = constants(1.0, ConstantKind::ThetaForm);
    for (int n = 2; n <= 3; ++n) {
        FiniteDiagonalInstance inst{M1, M2, std::vector<double>(static_cast<std::size_t>(n), 1.0)};
        EntropyOracle oracle(inst, default_delta(n));
        for (int k = 1; k <= n; ++k) {
            const auto iv = oracle.estimate(k);
            const auto A = schutt_A(n, k, M1, M2);
            if (iv.lower > cs.c2.linear * A.value || iv.upper < cs.c1.linear * A.value) {
                detail = "no intersection at n=" + std::to_string(n) + " k=" + std::to_string(k);
                return false;
            }
        }
    }
    detail = "n in {2,3}, k <= n, power(1)->power(2)";
    return true;
}

// --- 6. Code family at (n, k) = (256, 40) -----------------------------------

bool criterion_code_family(std::string& detail) {
    const auto fam = build_code_family(256, 40);
    if (fam.s != 11) {
        detail = "expected subset size 11, got " + std::to_string(fam.s);
        return false;
    }
    if (fam.members.size() < 1024) {
        detail = "family too small: " + std::to_string(fam.members.size());
        return false;
    }
    const auto chk = verify_code_family(fam);
    if (!chk.ok || chk.min_delta < 11) {
        detail = "pairwise verification failed, min delta " + std::to_string(chk.min_delta);
        return false;
    }
    detail = std::to_string(fam.members.size()) + " subsets of size 11, all pairs verified";
    return true;
}

// --- 7. Lattice-net quantizer and cardinality bound -------------------------

bool criterion_lattice_net(std::string& detail) {
    std::mt19937_64 rng(kDefaultSeed + 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int m : {5, 6, 13}) {
        const long n = 1L << m;
        const long support = m == 13 ? 64 : n; // sparse support at m = 13
        for (int t = 0; t < 1000; ++t) {
            std::vector<double> x(static_cast<std::size_t>(n), 0.0);
            for (long r = 1; r <= support; ++r) {
                const int level = orlent::detail::rank_level(r, m);
                const double cap = std::exp2(lattice_net_psi(m, level >= 0 ? level : m - 5));
                const long pos = m == 13 ? static_cast<long>(unit(rng) * n) % n : r - 1;
                x[pos] = (unit(rng) * 2.0 - 1.0) * cap;
            }
            if (!threshold_class_membership(x, m)) {
                detail = "generator left the threshold class at m=" + std::to_string(m);
                return false;
            }
            const auto z = lattice_net_quantize(x, m);
            double gap = 0.0;
            for (long i = 0; i < n; ++i) gap = std::max(gap, std::abs(x[i] - z[i]));
            if (gap > 4.0 || !lattice_net_membership(z, m)) {
                detail = "quantizer failed at m=" + std::to_string(m) + " (gap " +
                         std::to_string(gap) + ")";
                return false;
            }
        }
    }
    for (int m = 5; m <= 20; ++m) {
        const auto bound = lattice_net_log_card_bound(m);
        if (!bound.within) {
            detail = "cardinality bound exceeded at m=" + std::to_string(m);
            return false;
        }
    }
    detail = "3000 quantizations within sup-distance 4; bounds hold for m in 5..20";
    return true;
}

// --- 8. Exact family counts --------------------------------------------------

long brute_force_family_count(int m, const std::vector<long>& sizes) {
    const long budget = 1L << m;
    long count = 0;
    std::vector<long> masks(sizes.size(), 0);
    while (true) {
        long weighted = 0;
        for (std::size_t i = 0; i < masks.size(); ++i)
            weighted += __builtin_popcountll(static_cast<unsigned long long>(masks[i])) * (1L << i);
        if (weighted <= budget) ++count;
        std::size_t i = 0;
        while (i < masks.size()) {
            if (++masks[i] < (1L << sizes[i])) break;
            masks[i] = 0;
            ++i;
        }
        if (i == masks.size()) break;
    }
    return count;
}

bool criterion_family_count(std::string& detail) {
    const auto a = count_family_F(0, {1});
    if (!(a.count == BigUint(static_cast<std::uint64_t>(brute_force_family_count(0, {1}))))) {
        detail = "m=0 count mismatch";
        return false;
    }
    const auto b = count_family_F(1, {2, 2});
    if (!(b.count == BigUint(static_cast<std::uint64_t>(brute_force_family_count(1, {2, 2}))))) {
        detail = "m=1 count mismatch";
        return false;
    }
    const std::vector<std::vector<long>> maximal = {
        {2}, {4, 8}, {8, 16, 64}, {16, 32, 128, 2048}};
    for (int m = 0; m <= 3; ++m) {
        const auto res = count_family_F(m, maximal[static_cast<std::size_t>(m)]);
        if (!res.within_bound) {
            detail = "log2 count bound failed at m=" + std::to_string(m);
            return false;
        }
    }
    detail = "brute-force agreement and log2 bounds for m <= 3";
    return true;
}

// --- 9. Lemma suite ----------------------------------------------------------

bool criterion_lemmas(std::string& detail) {
    const auto sqrt_log = sqrt_log_inequality_check(5.0, 1e7, 100000);
    if (!sqrt_log.pass) {
        detail = "sqrt-log inequality failed near x=" + std::to_string(sqrt_log.worst_x);
        return false;
    }
    for (double beta : {0.2, 0.5, 1.0}) {
        const auto env = calculus_envelope_check(beta);
        if (!env.pass) {
            detail = "envelope exceeded at beta=" + std::to_string(beta);
            return false;
        }
    }
    const auto stirling = stirling_check(170);
    if (!stirling.pass) {
        detail = "stirling bounds failed near n=" + std::to_string(stirling.worst_n);
        return false;
    }
    const auto binom = binomial_bound_check(2, 60);
    if (!binom.pass) {
        detail = "binomial bound failed at n=" + std::to_string(binom.worst_n);
        return false;
    }
    detail = "sqrt-log on 1e5 points, envelopes, stirling 1..170, binomials 2..60";
    return true;
}

// --- 10. Split guarantees -----------------------------------------------------

bool criterion_split(std::string& detail) {
    std::mt19937_64 rng(kDefaultSeed + 3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);
    const int m = 5;
    const auto omega = net_weights(M1, M2, m);
    for (int t = 0; t < 500; ++t) {
        BlockVector x(m + 2);
        std::vector<double> flat;
        for (auto& block : x) {
            block.resize(4);
            for (auto& v : block) v = unit(rng);
        }
        for (const auto& block : x) flat.insert(flat.end(), block.begin(), block.end());
        const double norm = luxemburg_norm(M1, flat);
        for (auto& block : x)
            for (auto& v : block) v /= norm * (1.0 + 1e-9);

        const auto split = split_decompose(x, m, M1);
        if (split_heavy_mass(split, m) > 1.0 + 1e-12) {
            detail = "heavy mass exceeded 1 at trial " + std::to_string(t);
            return false;
        }
        std::vector<double> weighted;
        for (int i = 0; i < m + 2; ++i)
            for (double v : split.z[i]) weighted.push_back(omega[i] * v);
        if (luxemburg_norm(M2, weighted) > 1.0 + 1e-9) {
            detail = "weighted light part left the unit ball at trial " + std::to_string(t);
            return false;
        }
    }
    detail = "500 random unit-ball vectors at m=5";
    return true;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"theta-lambda bracket", criterion_theta_lambda},
        {"middle-regime closed form", criterion_schutt_regime},
        {"closed-form tracking", criterion_closed_form},
        {"oracle identity bracket", criterion_oracle_identity},
        {"oracle vs regime bracket", criterion_oracle_schutt},
        {"code family (256, 40)", criterion_code_family},
        {"lattice-net quantizer", criterion_lattice_net},
        {"exact family counts", criterion_family_count},
        {"lemma suite", criterion_lemmas},
        {"split guarantees", criterion_split},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = false;
        try {
            pass = criteria[i].run(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("[%2zu/10] %-28s %s (%.2f s)%s%s\n", i + 1, criteria[i].name.c_str(),
                    pass ? "PASS" : "FAIL", secs, detail.empty() ? "" : " -- ", detail.c_str());
        if (!pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
