// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "orlent/bounds.hpp"
#include "orlent/verify.hpp"

using namespace orlent;

namespace {

// Independent enumeration oracle for Lambda written in plain arithmetic:
// max over s of alpha(k 2^{s-1}) * (k/s)^{1/q0 - 1/p0} for power descriptors.
double lambda_oracle_power(const DecaySequence& seq, double p0, double q0, long k) {
    double best = 0.0;
    for (long s = 1; s <= k; ++s) {
        const double idx = std::log2(static_cast<double>(k)) + (s - 1);
        const double ratio = std::pow(static_cast<double>(k) / s, 1.0 / q0 - 1.0 / p0);
        best = std::max(best, seq.eval(idx) * ratio);
    }
    return best;
}

double theta_oracle_power(const DecaySequence& seq, double p0, double q0, long k) {
    double best = 0.0;
    for (long n = k; n <= (k == 1 ? 1 : (1L << (k - 1))); ++n) {
        const double L = std::log2(2.0 * n / k);
        const double ratio = std::pow(static_cast<double>(k) / L, 1.0 / q0 - 1.0 / p0);
        best = std::max(best, seq.eval(std::log2(static_cast<double>(n))) * ratio);
    }
    return best;
}

} // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("lambda examples") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);
    const auto poly = DecaySequence::polynomial(1.0);

    CHECK(lambda_bound(poly, M1, M2, 1).linear == doctest::Approx(1.0).epsilon(1e-12));

    const double lam4 = lambda_bound(poly, M1, M2, 4).linear;
    CHECK(lam4 == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(lam4 == doctest::Approx(lambda_oracle_power(poly, 1.0, 2.0, 4)).epsilon(1e-12));

    const auto zero = DecaySequence::constant_head(0.0, 1.0);
    CHECK(lambda_bound(zero, M1, M2, 4).linear == 0.0);
}

TEST_CASE("theta examples and exact mode") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);
    const auto poly = DecaySequence::polynomial(1.0);

    const auto t1 = theta_bound(poly, M1, M2, 1);
    CHECK(t1.mode == ThetaMode::Exact);
    CHECK(t1.linear == doctest::Approx(1.0).epsilon(1e-12));

    const auto t4 = theta_bound(poly, M1, M2, 4);
    CHECK(t4.linear == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(t4.linear == doctest::Approx(theta_oracle_power(poly, 1.0, 2.0, 4)).epsilon(1e-12));

    // independent oracle across families and small k
    const std::vector<DecaySequence> seqs = {DecaySequence::polynomial(0.5),
                                             DecaySequence::exp_log(1.0, 0.5),
                                             DecaySequence::log_decay(2.0)};
    for (const auto& seq : seqs)
        for (long k : {2L, 5L, 9L, 13L}) {
            const auto th = theta_bound(seq, M1, M2, k);
            CHECK(th.mode == ThetaMode::Exact);
            CHECK(th.linear ==
                  doctest::Approx(theta_oracle_power(seq, 1.0, 2.0, k)).epsilon(1e-11));
        }
}

TEST_CASE("theta grid mode stays inside the lambda bracket") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(3.0);
    const auto seq = DecaySequence::log_decay(1.5);
    for (long k : {30L, 60L, 200L}) {
        const auto th = theta_bound(seq, M1, M2, k);
        CHECK(th.mode == ThetaMode::Grid);
        const auto lm = lambda_bound(seq, M1, M2, k);
        CHECK(th.log2 >= lm.log2 - 2.0 - 1e-9);
        CHECK(th.log2 <= lm.log2 + 1.0 + 1e-9);
    }
}

TEST_CASE("theta/lambda bracket over randomized instances") {
    std::mt19937_64 rng(kDefaultSeed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 12; ++trial) {
        const double p = trial % 2 ? 0.5 : 1.0;
        const double q1 = p + unit(rng) * 3.0;
        const double q2 = q1 + unit(rng) * 3.0;
        const auto M1 = OrliczFunction::power(q1, p);
        const auto M2 = OrliczFunction::power(q2, p);
        DecaySequence seq = [&]() {
            switch (trial % 4) {
                case 0: return DecaySequence::polynomial(unit(rng) * 3.0);
                case 1: return DecaySequence::exp_log(0.2 + unit(rng), 0.1 + 0.8 * unit(rng));
                case 2: return DecaySequence::log_decay(0.2 + unit(rng) * 2.0);
                default: return DecaySequence::constant_head(0.1 + unit(rng), 12.0 * unit(rng));
            }
        }();
        for (long k = 1; k <= 14; ++k) {
            const auto th = theta_bound(seq, M1, M2, k);
            const auto lm = lambda_bound(seq, M1, M2, k);
            if (th.log2 == -kInf && lm.log2 == -kInf) continue;
            CHECK(th.log2 >= lm.log2 - 2.0 / p - 1e-9);
            CHECK(th.log2 <= lm.log2 + 1.0 / p + 1e-9);
        }
    }
}

TEST_CASE("phi bound for logarithmic decay") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);

    CHECK(phi_bound_logdecay(1.0, M1, M1, 1).linear == doctest::Approx(1.0).epsilon(1e-12));

    // hand enumeration over s in {4..8} for k = 8, theta = 1
    double expected = 0.0;
    for (long s = 4; s <= 8; ++s)
        expected = std::max(expected, std::pow(std::log2(std::exp2(s - 1) + 1.0), -1.0) *
                                          std::sqrt(s / 8.0));
    const double got = phi_bound_logdecay(1.0, M1, M2, 8).linear;
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
    // the s = 4 term wins
    CHECK(got == doctest::Approx(std::sqrt(0.5) / std::log2(9.0)).epsilon(1e-12));

    // large theta shifts the maximizer to the smallest admissible s
    double expected_steep = 0.0;
    for (long s = 4; s <= 8; ++s)
        expected_steep = std::max(expected_steep, std::pow(std::log2(std::exp2(s - 1) + 1.0), -6.0) *
                                                      std::sqrt(s / 8.0));
    CHECK(phi_bound_logdecay(6.0, M1, M2, 8).linear ==
          doctest::Approx(std::pow(std::log2(9.0), -6.0) * std::sqrt(0.5)).epsilon(1e-12));
    CHECK(phi_bound_logdecay(6.0, M1, M2, 8).linear == doctest::Approx(expected_steep).epsilon(1e-12));
}

TEST_CASE("schutt regimes") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);

    const auto small = schutt_A(4, 1, M1, M2);
    CHECK(small.regime == Regime::Small);
    CHECK(small.value == 1.0);

    const auto mid = schutt_A(16, 16, M1, M2); // k = n: log(2n/k) = 1, A = phi2(n)/phi1(n)
    CHECK(mid.regime == Regime::Middle);
    CHECK(mid.value == doctest::Approx(4.0 / 16.0).epsilon(1e-12));

    const auto large = schutt_A(4, 12, M1, M2);
    CHECK(large.regime == Regime::Large);
    CHECK(large.value == doctest::Approx(std::exp2(-3.0) * 2.0 / 4.0).epsilon(1e-12));

    // boundary k = log 2n resolves to the small regime
    const auto tie = schutt_A(8, 4, M1, M2); // log2(16) = 4 = k
    CHECK(tie.regime == Regime::Small);
}

TEST_CASE("schutt middle regime equals the lebesgue closed form") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto [p0, q0] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
        const double p = std::min(1.0, p0);
        const auto M1 = OrliczFunction::power(p0, p);
        const auto M2 = OrliczFunction::power(q0, p);
        int done = 0;
        while (done < 100) {
            const long n = 2 + static_cast<long>(unit(rng) * 1000000.0);
            const double l2n = 1.0 + std::log2(static_cast<double>(n));
            const long k_lo = static_cast<long>(std::ceil(l2n));
            if (k_lo > n) continue;
            const long k = k_lo + static_cast<long>(unit(rng) * static_cast<double>(n - k_lo));
            const auto A = schutt_A(n, k, M1, M2);
            if (A.regime != Regime::Middle) continue;
            const double zeta = std::pow(std::log2(2.0 * n / k) / k, 1.0 / p0 - 1.0 / q0);
            CHECK(A.value == doctest::Approx(zeta).epsilon(1e-12));
            ++done;
        }
    }
}

TEST_CASE("constants: frozen values") {
    const double l24 = std::log2(24.0);

    const auto main1 = constants(1.0, ConstantKind::ThetaForm);
    CHECK(main1.c2.linear == doctest::Approx(4.0 * std::exp2(19.0) * l24 * l24).epsilon(1e-12));
    CHECK(main1.c1.linear ==
          doctest::Approx(std::exp2(-4.0 - 19.0) / (l24 * l24)).epsilon(1e-12));

    const auto intro1 = constants(1.0, ConstantKind::LambdaForm);
    CHECK(intro1.c1.log2 == doctest::Approx(main1.c1.log2 - 2.0).epsilon(1e-12));
    CHECK(intro1.c2.log2 == doctest::Approx(main1.c2.log2 + 1.0).epsilon(1e-12));

    const auto poly0 = constants(1.0, ConstantKind::PolyDecay, 0.0);
    CHECK(poly0.c2.linear == doctest::Approx(4.0 * std::exp2(11.0) * l24 * l24).epsilon(1e-12));

    const auto net_half = constants(0.5, ConstantKind::DiagonalNet);
    const double l48 = std::log2(48.0);
    CHECK(net_half.c2.log2 ==
          doctest::Approx(std::log2(4.0) + 24.0 + 4.0 * std::log2(l48) + 2.0).epsilon(1e-12));

    CHECK(constants(1.0, ConstantKind::SchuttLower).c2.linear == doctest::Approx(0.5));
    CHECK_THROWS_AS((void)constants(0.0, ConstantKind::ThetaForm), Error);
    CHECK_THROWS_AS((void)constants(1.5, ConstantKind::ThetaForm), Error);
    CHECK_THROWS_AS((void)constants(1.0, ConstantKind::Doubling, 0.5), Error);
}

TEST_CASE("constants cross-validation accepts the real formulas") {
    const auto failed = constants_cross_validate(
        [](double p, ConstantKind kind, double param) { return constants(p, kind, param); });
    CHECK(failed.empty());
}

TEST_CASE("constants cross-validation trips on any seeded mutation") {
    struct Mutation {
        ConstantKind kind;
        bool hit_c1;
        const char* label;
    };
    const std::vector<Mutation> mutations = {
        {ConstantKind::ThetaForm, false, "theta c2: 2^{19/p} -> 2^{18/p}"},
        {ConstantKind::ThetaForm, true, "theta c1: 2^{-19/p} -> 2^{-18/p}"},
        {ConstantKind::LambdaForm, false, "lambda c2"},
        {ConstantKind::LambdaForm, true, "lambda c1"},
        {ConstantKind::SchuttLower, false, "schutt small-k"},
        {ConstantKind::SchuttLower, true, "schutt middle"},
        {ConstantKind::DiagonalNet, false, "diagonal net"},
        {ConstantKind::PolyDecay, false, "poly decay"},
        {ConstantKind::Doubling, false, "doubling c2"},
        {ConstantKind::Doubling, true, "doubling c1"},
    };
    for (const auto& mut : mutations) {
        const auto mutated = [&](double p, ConstantKind kind, double param) {
            auto pair = constants(p, kind, param);
            if (kind == mut.kind) {
                auto& target = mut.hit_c1 ? pair.c1 : pair.c2;
                target = Log2Value::from_log2(target.log2 + 1.0 / p); // one dyadic exponent off
            }
            return pair;
        };
        const auto failed = constants_cross_validate(mutated);
        INFO("mutation: ", mut.label);
        CHECK_FALSE(failed.empty());
    }
}

TEST_CASE("closed form for lp->lq log decay") {
    CHECK(closed_form_lpq(0.3, 1.0, 2.0, 64).linear ==
          doctest::Approx(std::pow(64.0, -0.3)).epsilon(1e-12));
    // boundary theta = 1/p0 - 1/q0: both branches agree
    const double at_boundary = closed_form_lpq(0.5, 1.0, 2.0, 37).linear;
    CHECK(at_boundary == doctest::Approx(std::pow(37.0, -0.5)).epsilon(1e-12));
    // frozen: p0=1, q0=2, theta=1, k=8 -> 8^{-1/2} (log 16)^{-1/2}
    CHECK(closed_form_lpq(1.0, 1.0, 2.0, 8).linear ==
          doctest::Approx(1.0 / (2.0 * std::sqrt(2.0)) * 0.5).epsilon(1e-12));
    CHECK_THROWS_AS((void)closed_form_lpq(1.0, 2.0, 1.0, 8), Error);
}

TEST_CASE("lambda tracks the polynomial anchor") {
    // Lambda(k) equals alpha_k phi2(k)/phi1(k) up to a (p,theta)-dependent factor
    for (auto [p0, q0] : {std::pair{1.0, 2.0}, std::pair{0.5, 1.0}}) {
        const double p = std::min(1.0, p0);
        const auto M1 = OrliczFunction::power(p0, p);
        const auto M2 = OrliczFunction::power(q0, p);
        for (double theta : {0.25, 1.0, 3.0}) {
            const auto seq = DecaySequence::polynomial(theta);
            for (long k = 2; k <= (1L << 14); k *= 8) {
                const double lk = std::log2(static_cast<double>(k));
                const double anchor_log2 = seq.log2_eval(lk) + M2.log2_fundamental(lk) -
                                           M1.log2_fundamental(lk);
                const double lam = lambda_bound(seq, M1, M2, k).log2;
                CHECK(lam >= anchor_log2 - 1e-9);          // s = 1 term
                CHECK(lam <= anchor_log2 + 4.0 / p0 + 1e-9);
            }
        }
    }
}

TEST_CASE("lambda tracks the exp-log anchor") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);
    for (auto [beta, vartheta] : {std::pair{1.0, 0.5}, std::pair{0.5, 0.3}}) {
        const auto seq = DecaySequence::exp_log(beta, vartheta);
        for (long k = 4; k <= (1L << 16); k *= 16) {
            const double lk = std::log2(static_cast<double>(k));
            const double l = std::pow(std::log2(static_cast<double>(k) + 1.0), 1.0 - vartheta);
            const double arg = lk - std::log2(l); // log2(k / log^{1-vt}(k+1))
            const double anchor_log2 = seq.log2_eval(lk) + M2.log2_fundamental(arg) -
                                       M1.log2_fundamental(arg);
            const double lam = lambda_bound(seq, M1, M2, k).log2;
            CHECK(lam >= anchor_log2 - 8.0 - 1e-9);
            CHECK(lam <= anchor_log2 + 8.0 + 1e-9);
        }
    }
}

TEST_CASE("sandwich report paths") {
    const auto M1 = OrliczFunction::power(1.0);
    const auto M2 = OrliczFunction::power(2.0);

    // flat head, identical spaces: Theta = 1, interval [c1, c2]
    const auto ones = DecaySequence::constant_head(1.0, 32.0);
    const auto rep = sandwich_report(ones, M1, M1, 1.0, 6, true);
    CHECK(rep.hypothesis_path == "head_condition");
    CHECK(rep.theta.linear == doctest::Approx(1.0).epsilon(1e-12));
    const auto main = constants(1.0, ConstantKind::ThetaForm);
    CHECK(rep.interval_lo.log2 == doctest::Approx(main.c1.log2).epsilon(1e-12));
    CHECK(rep.interval_hi.log2 == doctest::Approx(main.c2.log2).epsilon(1e-12));

    // polynomial decay goes through the doubling corollary
    const auto poly = DecaySequence::polynomial(1.0);
    const auto dbl = sandwich_report(poly, M1, M2, 1.0, 4, false);
    CHECK(dbl.hypothesis_path == "doubling");
    CHECK(dbl.doubling_C == doctest::Approx(2.0));
    CHECK(dbl.lambda.linear == doctest::Approx(0.125).epsilon(1e-12));
    const auto dc = constants(1.0, ConstantKind::Doubling, 2.0);
    CHECK(dbl.interval_lo.log2 == doctest::Approx(dc.c1.log2 + dbl.lambda.log2).epsilon(1e-12));
    CHECK(dbl.interval_hi.log2 == doctest::Approx(dc.c2.log2 + dbl.lambda.log2).epsilon(1e-12));

    // head requested but violated
    CHECK_THROWS_WITH_AS((void)sandwich_report(poly, M1, M2, 1.0, 4, true),
                         doctest::Contains("head condition"), Error);

    // decreasing fundamental-ratio pair is rejected outright
    CHECK_THROWS_WITH_AS((void)sandwich_report(poly, M2, M1, 1.0, 4, false),
                         doctest::Contains("non-decreasing"), Error);

    // head holds without being requested: prefer the sharper theta form
    const auto pref = sandwich_report(ones, M1, M2, 1.0, 4, false);
    CHECK(pref.hypothesis_path == "head_condition");
}

TEST_SUITE_END();
