// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "orlent/bounds.hpp"
#include "orlent/combinatorics.hpp"
#include "orlent/entropy_oracle.hpp"
#include "orlent/json_io.hpp"
#include "orlent/orlicz.hpp"
#include "orlent/sequences.hpp"

namespace orlent {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------
// Constants cross-validation
// ---------------------------------------------------------------------------

using ConstantEvaluator = std::function<ConstantPair(double p, ConstantKind kind, double param)>;

/// Relations the closed-form constants must satisfy among themselves plus a
/// few frozen spot values. Returns the names of violated relations; any
/// single-exponent mutation of a constant formula trips at least one.
inline std::vector<std::string> constants_cross_validate(const ConstantEvaluator& eval) {
    std::vector<std::string> failed;
    const auto expect = [&](bool ok, const std::string& name) {
        if (!ok) failed.push_back(name);
    };
    const auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9; };

    for (double p : {1.0, 0.5, 0.25}) {
        const double ip = 1.0 / p;
        const auto theta = eval(p, ConstantKind::ThetaForm, 0.0);
        const auto lambda = eval(p, ConstantKind::LambdaForm, 0.0);
        const auto schutt = eval(p, ConstantKind::SchuttLower, 0.0);
        const auto net = eval(p, ConstantKind::DiagonalNet, 0.0);
        const auto poly0 = eval(p, ConstantKind::PolyDecay, 0.0);
        const auto dbl = eval(p, ConstantKind::Doubling, 1.0);
        const std::string tag = " @p=" + std::to_string(p);

        expect(close(theta.c1.log2 + theta.c2.log2, -2.0), "theta-form product = 1/4" + tag);
        expect(close(lambda.c1.log2, theta.c1.log2 - 2.0 * ip), "lambda c1 = theta c1 * 2^{-2/p}" + tag);
        expect(close(lambda.c2.log2, theta.c2.log2 + ip), "lambda c2 = theta c2 * 2^{1/p}" + tag);
        expect(close(dbl.c1.log2, lambda.c1.log2), "doubling c1 = lambda c1" + tag);
        expect(close(schutt.c1.log2, theta.c1.log2), "schutt lower c1 = theta c1" + tag);
        expect(close(schutt.c2.log2, -ip), "schutt small-k constant = 2^{-1/p}" + tag);
        expect(close(net.c2.log2, theta.c2.log2 - 7.0 * ip), "diagonal net = theta c2 * 2^{-7/p}" + tag);
        expect(close(poly0.c2.log2, net.c2.log2 - ip), "poly-decay(0) = diagonal net * 2^{-1/p}" + tag);
    }

    // Frozen spot values, written as independent literal arithmetic.
    const double l24 = std::log2(24.0);
    const double l48 = std::log2(48.0);
    expect(close(eval(1.0, ConstantKind::ThetaForm, 0.0).c2.log2,
                 std::log2(4.0 * std::exp2(19.0) * l24 * l24)),
           "frozen theta c2(1) = 4*2^19*log2(24)^2");
    expect(close(eval(1.0, ConstantKind::PolyDecay, 0.0).c2.log2,
                 std::log2(4.0 * std::exp2(11.0) * l24 * l24)),
           "frozen poly c(0,1) = 4*2^11*log2(24)^2");
    expect(close(eval(1.0, ConstantKind::Doubling, 1.0).c2.log2,
                 std::log2(4.0) + 36.0 + 4.0 * std::log2(l48) + 2.0),
           "frozen doubling c2(1,1) = 4*2^36*log2(48)^4*4");
    expect(close(eval(0.5, ConstantKind::SchuttLower, 0.0).c1.log2,
                 std::log2(std::pow(4.0, -2.0)) - 38.0 - 4.0 * std::log2(l48) - 2.0),
           "frozen schutt c1(0.5)");
    return failed;
}

// ---------------------------------------------------------------------------
// Invariant suite (fast versions of the per-module properties)
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<OrliczFunction> verification_descriptors() {
    return {OrliczFunction::power(1.0), OrliczFunction::power(2.0),
            OrliczFunction::power(0.5, 0.5), OrliczFunction::power_log(2.0, 1.0),
            OrliczFunction::tabulated({{0.0, 0.0}, {0.25, 0.0625}, {0.5, 0.25}, {0.75, 0.5625}, {1.0, 1.0}})};
}

} // namespace detail

inline std::vector<CheckResult> run_verification_suite(std::uint64_t seed = kDefaultSeed) {
    std::vector<CheckResult> results;
    const auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
        results.push_back({name, pass, detail});
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto descriptors = detail::verification_descriptors();

    {
        bool ok = true;
        std::string detail;
        for (const auto& M : descriptors) {
            if (!validate_descriptor(M).ok()) {
                ok = false;
                detail = std::string("descriptor ") + M.family_name() + " failed validation";
                break;
            }
            for (int t = 0; t < 200 && ok; ++t) {
                const double y = unit(rng);
                if (std::abs(M.value(M.inverse(y)) - y) > 1e-10) {
                    ok = false;
                    detail = "round trip off at y = " + std::to_string(y);
                }
            }
        }
        add("orlicz.validate_and_roundtrip", ok, detail);
    }

    {
        bool ok = true;
        for (const auto& M : descriptors) {
            for (int t = 0; t < 60 && ok; ++t) {
                std::vector<double> x(1 + t % 6);
                for (double& v : x) v = unit(rng) * 0.5;
                double budget = 0.0;
                for (double v : x) budget += M.value(v);
                const double norm = luxemburg_norm(M, x);
                if (budget <= 1.0 && norm > 1.0 + 1e-8) ok = false;
                if (budget > 1.0 + 1e-6 && norm <= 1.0) ok = false;
            }
        }
        add("orlicz.norm_membership", ok);
    }

    {
        bool ok = true;
        for (const auto& M : descriptors) {
            const double p = M.p();
            for (int t = 0; t < 200 && ok; ++t) {
                std::vector<double> x(4), y(4);
                for (int i = 0; i < 4; ++i) {
                    x[i] = (unit(rng) - 0.5);
                    y[i] = (unit(rng) - 0.5);
                }
                std::vector<double> s(4);
                for (int i = 0; i < 4; ++i) s[i] = x[i] + y[i];
                const double lhs = std::pow(luxemburg_norm(M, s), p);
                const double rhs = std::pow(luxemburg_norm(M, x), p) + std::pow(luxemburg_norm(M, y), p);
                if (lhs > rhs + 1e-8) ok = false;
                const double lam = 0.25 + unit(rng);
                std::vector<double> lx(4);
                for (int i = 0; i < 4; ++i) lx[i] = lam * x[i];
                const double a = luxemburg_norm(M, lx), b = lam * luxemburg_norm(M, x);
                if (std::abs(a - b) > 1e-10 * std::max(1.0, b)) ok = false;
            }
        }
        add("orlicz.p_norm_and_homogeneity", ok);
    }

    {
        bool ok = true;
        for (const auto& M : descriptors)
            for (double C : {2.0, 4.0, 10.0})
                for (double u = 0.0; u <= 40.0 && ok; u += 2.5) {
                    const double lo = M.log2_fundamental(u);
                    const double hi = M.log2_fundamental(u + std::log2(C));
                    if (hi < lo - 1e-9 || hi > lo + std::log2(C) / M.p() + 1e-9) ok = false;
                }
        add("orlicz.fundamental_doubling", ok);
    }

    {
        bool ok = true;
        const std::vector<DecaySequence> seqs = {
            DecaySequence::polynomial(1.0), DecaySequence::exp_log(1.0, 0.5),
            DecaySequence::log_decay(1.0), DecaySequence::constant_head(1.0, 8.0),
            DecaySequence::table({1.0, 0.5, 0.5, 0.25}, 0.1)};
        for (const auto& seq : seqs) {
            double prev = kInf;
            for (int i = 0; i < 4096 && ok; ++i) {
                const double u = 40.0 * i / 4095.0;
                const double a = seq.eval(u);
                if (a > prev * (1.0 + 1e-12) + 1e-300 || a < 0.0) ok = false;
                prev = a;
            }
        }
        for (double theta : {0.5, 1.0, 2.0}) {
            const auto rep = doubling_check(DecaySequence::polynomial(theta), std::exp2(theta), 40.0);
            if (!rep.pass || std::abs(rep.worst_ratio - std::exp2(theta)) > 1e-9) ok = false;
        }
        add("sequences.monotone_and_doubling", ok);
    }

    {
        bool ok = true;
        std::string detail;
        const std::vector<DecaySequence> seqs = {
            DecaySequence::polynomial(0.7), DecaySequence::exp_log(0.8, 0.4),
            DecaySequence::log_decay(1.5), DecaySequence::constant_head(2.0, 6.0)};
        for (double p : {1.0, 0.5}) {
            const auto M1 = OrliczFunction::power(p == 1.0 ? 1.0 : 0.5, p);
            const auto M2 = OrliczFunction::power(p == 1.0 ? 3.0 : 2.0, p);
            for (const auto& seq : seqs) {
                for (long k = 1; k <= 12 && ok; ++k) {
                    const auto th = theta_bound(seq, M1, M2, k);
                    const auto lm = lambda_bound(seq, M1, M2, k);
                    if (lm.log2 == -kInf && th.log2 == -kInf) continue;
                    if (th.log2 < lm.log2 - 2.0 / p - 1e-9 || th.log2 > lm.log2 + 1.0 / p + 1e-9) {
                        ok = false;
                        detail = "bracket broken at k = " + std::to_string(k);
                    }
                }
            }
        }
        add("bounds.theta_lambda_bracket", ok, detail);
    }

    {
        bool ok = true;
        for (auto [p0, q0] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
            const auto M1 = OrliczFunction::power(p0, std::min(1.0, p0));
            const auto M2 = OrliczFunction::power(q0, std::min(1.0, p0));
            for (int t = 0; t < 40 && ok; ++t) {
                const long n = 2 + static_cast<long>(unit(rng) * 1e5);
                const double l2n = 1.0 + std::log2(static_cast<double>(n));
                long k = static_cast<long>(std::ceil(l2n)) +
                         static_cast<long>(unit(rng) * (n - std::ceil(l2n)));
                k = std::min<long>(std::max<long>(k, static_cast<long>(std::ceil(l2n))), n);
                const auto A = schutt_A(n, k, M1, M2);
                if (A.regime != Regime::Middle) continue;
                const double zeta =
                    std::pow((l2n - std::log2(static_cast<double>(k))) / k, 1.0 / p0 - 1.0 / q0);
                if (std::abs(A.value - zeta) > 1e-12 * zeta) ok = false;
            }
        }
        add("bounds.schutt_zeta_agreement", ok);
    }

    {
        const auto failed = constants_cross_validate(
            [](double p, ConstantKind kind, double param) { return constants(p, kind, param); });
        add("bounds.constants_cross_validation", failed.empty(),
            failed.empty() ? "" : failed.front());
    }

    {
        bool ok = true;
        for (auto [p0, q0] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
            const auto M1 = OrliczFunction::power(p0, std::min(1.0, p0));
            const auto M2 = OrliczFunction::power(q0, std::min(1.0, p0));
            const double delta = 1.0 / p0 - 1.0 / q0;
            for (double theta : {0.5, delta, 3.0}) {
                const auto seq = DecaySequence::log_decay(theta);
                for (long k = 4; k <= (1L << 16) && ok; k *= 4) {
                    const double diff = lambda_bound(seq, M1, M2, k).log2 -
                                        closed_form_lpq(theta, p0, q0, k).log2;
                    if (std::abs(diff) > 4.0 / p0) ok = false;
                }
            }
        }
        add("bounds.closed_form_tracking", ok);
    }

    {
        bool ok = true;
        std::string detail;
        try {
            const auto fam = build_code_family(256, 36, seed);
            const auto chk = verify_code_family(fam);
            ok = chk.ok && fam.members.size() >= 512;
            if (!ok) detail = "family size " + std::to_string(fam.members.size());
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
        add("combinatorics.code_family", ok, detail);
    }

    {
        bool ok = true;
        for (int m : {5, 6, 13}) {
            const long n = 1L << m;
            for (int t = 0; t < 100 && ok; ++t) {
                std::vector<double> x(static_cast<std::size_t>(n), 0.0);
                const long support = m == 13 ? 64 : n;
                for (long r = 1; r <= support; ++r) {
                    const int level = detail::rank_level(r, m) >= 0 ? detail::rank_level(r, m) : m - 5;
                    const double cap = std::exp2(lattice_net_psi(m, level));
                    const long pos = m == 13 ? static_cast<long>(unit(rng) * n) : r - 1;
                    x[pos % n] = (unit(rng) * 2.0 - 1.0) * cap * unit(rng);
                }
                if (!threshold_class_membership(x, m)) {
                    ok = false;
                    break;
                }
                const auto z = lattice_net_quantize(x, m);
                double gap = 0.0;
                for (long i = 0; i < n; ++i) gap = std::max(gap, std::abs(x[i] - z[i]));
                if (gap > 4.0 || !lattice_net_membership(z, m)) ok = false;
            }
        }
        for (int m = 5; m <= 20 && ok; ++m)
            if (!lattice_net_log_card_bound(m).within) ok = false;
        add("combinatorics.lattice_net", ok);
    }

    {
        bool ok = true;
        const auto a = count_family_F(0, {1});
        const auto b = count_family_F(1, {2, 2});
        ok = a.count == BigUint(2) && b.count == BigUint(6) && a.within_bound && b.within_bound;
        add("combinatorics.family_count", ok);
    }

    {
        bool ok = true;
        const auto M1 = OrliczFunction::power(1.0);
        const auto M2 = OrliczFunction::power(2.0);
        const int m = 5;
        const auto omega = net_weights(M1, M2, m);
        for (int t = 0; t < 100 && ok; ++t) {
            BlockVector x(m + 2);
            std::vector<double> flat;
            for (int i = 0; i < m + 2; ++i) {
                x[i].resize(4);
                for (auto& v : x[i]) v = unit(rng) * 2.0 - 1.0;
            }
            for (auto& block : x) flat.insert(flat.end(), block.begin(), block.end());
            const double norm = luxemburg_norm(M1, flat);
            for (auto& block : x)
                for (auto& v : block) v /= norm * (1.0 + 1e-9);
            const auto split = split_decompose(x, m, M1);
            if (split_heavy_mass(split, m) > 1.0 + 1e-12) ok = false;
            std::vector<double> weighted;
            for (int i = 0; i < m + 2; ++i)
                for (double v : split.z[i]) weighted.push_back(omega[i] * v);
            if (luxemburg_norm(M2, weighted) > 1.0 + 1e-9) ok = false;
        }
        add("combinatorics.split_guarantees", ok);
    }

    {
        const auto rep = inequality_checks();
        add("combinatorics.lemma_suite", rep.all_pass);
    }

    {
        bool ok = true;
        const auto M = OrliczFunction::power(1.0);
        FiniteDiagonalInstance inst{M, M, {1.0}};
        EntropyOracle oracle(inst, 0.05);
        const auto rows = oracle.estimate_range(1, 4);
        for (const auto& iv : rows) {
            const double truth = std::exp2(1.0 - iv.k);
            if (iv.lower > truth + 1e-12 || iv.upper < truth - 1e-12) ok = false;
        }
        add("oracle.identity_1d", ok);
    }

    {
        const auto seq = DecaySequence::polynomial(1.0);
        const auto M1 = OrliczFunction::power(1.0);
        const auto M2 = OrliczFunction::power(2.0);
        const auto rep1 = sandwich_report(seq, M1, M2, 1.0, 8, false);
        const auto rep2 = sandwich_report(seq, M1, M2, 1.0, 8, false);
        add("io.deterministic_reports",
            bound_report_to_json(rep1).dump() == bound_report_to_json(rep2).dump());
    }

    return results;
}

} // namespace orlent
