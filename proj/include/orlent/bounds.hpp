// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "orlent/orlicz.hpp"
#include "orlent/sequences.hpp"

namespace orlent {

/// A non-negative quantity carried in both linear and log2 form. The log2
/// field is authoritative: theorem constants for small p overflow doubles.
struct Log2Value {
    double linear = 0.0;
    double log2 = -kInf;

    static Log2Value from_log2(double l2) { return {std::exp2(l2), l2}; }
    static Log2Value zero() { return {0.0, -kInf}; }
};

// ---------------------------------------------------------------------------
// Bound functionals
// ---------------------------------------------------------------------------

/// Lambda(k) = max over s in {1..k} of alpha_{k 2^{s-1}} phi2(k/s) / phi1(k/s).
/// Exact finite maximum, evaluated in the log2 domain.
inline Log2Value lambda_bound(const DecaySequence& seq, const OrliczFunction& M1,
                              const OrliczFunction& M2, long k) {
    if (k < 1) fail("OutOfDomain", "lambda_bound needs k >= 1");
    const double lk = std::log2(static_cast<double>(k));
    double best = -kInf;
    for (long s = 1; s <= k; ++s) {
        const double arg = lk - std::log2(static_cast<double>(s)); // log2(k/s)
        const double term = seq.log2_eval(lk + static_cast<double>(s - 1)) +
                            M2.log2_fundamental(arg) - M1.log2_fundamental(arg);
        best = std::max(best, term);
    }
    return Log2Value::from_log2(best);
}

enum class ThetaMode { Exact, Grid };

struct ThetaValue {
    double linear = 0.0;
    double log2 = -kInf;
    ThetaMode mode = ThetaMode::Exact;
    double grid_step = 0.0; // spacing in u = log2(n/k); 0 in exact mode
};

inline constexpr long kThetaExactLimit = 24; // 2^23 evaluations is the desk budget

/// Theta(k) = max over n in [k, 2^{k-1}] of
/// alpha_n phi2(k/log(2n/k)) / phi1(k/log(2n/k)).
/// Integer enumeration for k <= 24; for larger k a dense grid over
/// n = k 2^u (64 points per unit of u) plus every integer anchor u = s-1,
/// so the result never falls below the Lambda-derived terms.
inline ThetaValue theta_bound(const DecaySequence& seq, const OrliczFunction& M1,
                              const OrliczFunction& M2, long k) {
    if (k < 1) fail("OutOfDomain", "theta_bound needs k >= 1");
    const double lk = std::log2(static_cast<double>(k));
    ThetaValue out;

    const auto objective = [&](double log2_n) {
        const double L = std::max(1.0 + log2_n - lk, 1e-300); // log2(2n/k), >= 1 on range
        const double arg = lk - std::log2(L);
        return seq.log2_eval(log2_n) + M2.log2_fundamental(arg) - M1.log2_fundamental(arg);
    };

    double best = -kInf;
    if (k <= kThetaExactLimit) {
        const long n_hi = k == 1 ? 1 : (1L << (k - 1));
        for (long n = k; n <= n_hi; ++n)
            best = std::max(best, objective(std::log2(static_cast<double>(n))));
        out.mode = ThetaMode::Exact;
    } else {
        const double u_max = static_cast<double>(k - 1) - lk;
        const double step = 1.0 / 64.0;
        const auto points = static_cast<long>(std::ceil(u_max / step));
        for (long i = 0; i <= points; ++i)
            best = std::max(best, objective(lk + std::min(i * step, u_max)));
        for (long s = 1; static_cast<double>(s - 1) <= u_max && s <= k; ++s)
            best = std::max(best, objective(lk + static_cast<double>(s - 1)));
        out.mode = ThetaMode::Grid;
        out.grid_step = step;
    }
    out.log2 = best;
    out.linear = std::exp2(best);
    return out;
}

/// Phi(k) for logarithmic decay: exact max over integer s with
/// log(2k) <= s <= k of log2(2^{s-1}+1)^{-theta} phi2(k/s) / phi1(k/s).
inline Log2Value phi_bound_logdecay(double theta, const OrliczFunction& M1,
                                    const OrliczFunction& M2, long k) {
    if (!(theta > 0.0)) fail("OutOfDomain", "phi_bound_logdecay needs theta > 0");
    if (k < 1) fail("OutOfDomain", "phi_bound_logdecay needs k >= 1");
    const double lk = std::log2(static_cast<double>(k));
    long s_lo = static_cast<long>(std::ceil(lk + 1.0 - 1e-12)); // log(2k) = 1 + log2(k)
    s_lo = std::max(s_lo, 1L);
    const DecaySequence alpha = DecaySequence::log_decay(theta);
    double best = -kInf;
    if (s_lo > k) s_lo = k; // degenerate range falls back to s = k
    for (long s = s_lo; s <= k; ++s) {
        const double arg = lk - std::log2(static_cast<double>(s));
        const double term = alpha.log2_eval(static_cast<double>(s - 1)) +
                            M2.log2_fundamental(arg) - M1.log2_fundamental(arg);
        best = std::max(best, term);
    }
    return Log2Value::from_log2(best);
}

// ---------------------------------------------------------------------------
// Finite-dimensional embedding regimes
// ---------------------------------------------------------------------------

enum class Regime { Small, Middle, Large };

struct RegimeValue {
    long n = 0;
    long k = 0;
    double value = 0.0;
    double log2 = 0.0;
    Regime regime = Regime::Small;
};

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Small: return "small";
        case Regime::Middle: return "middle";
        default: return "large";
    }
}

/// The equivalence class A(n,k) of e_k(id : ell_M1^n -> ell_M2^n):
///   1                                   for 1 <= k <= log 2n,
///   phi2(k/log(2n/k)) / phi1(...)       for log 2n <= k <= n,
///   2^{-k/n} phi2(n) / phi1(n)          for k >= n.
/// Boundary ties resolve to the first matching case in this order.
inline RegimeValue schutt_A(long n, long k, const OrliczFunction& M1, const OrliczFunction& M2) {
    if (n < 1 || k < 1) fail("OutOfDomain", "schutt_A needs n, k >= 1");
    RegimeValue out;
    out.n = n;
    out.k = k;
    const double log2_2n = 1.0 + std::log2(static_cast<double>(n));
    if (static_cast<double>(k) <= log2_2n) {
        out.regime = Regime::Small;
        out.log2 = 0.0;
    } else if (k <= n) {
        out.regime = Regime::Middle;
        const double L = log2_2n - std::log2(static_cast<double>(k));
        const double arg = std::log2(static_cast<double>(k)) - std::log2(L);
        out.log2 = M2.log2_fundamental(arg) - M1.log2_fundamental(arg);
    } else {
        out.regime = Regime::Large;
        const double ln = std::log2(static_cast<double>(n));
        out.log2 = -static_cast<double>(k) / static_cast<double>(n) +
                   M2.log2_fundamental(ln) - M1.log2_fundamental(ln);
    }
    out.value = std::exp2(out.log2);
    return out;
}

// ---------------------------------------------------------------------------
// Explicit constants
// ---------------------------------------------------------------------------

enum class ConstantKind {
    ThetaForm,    // two-sided constants multiplying Theta(k)
    LambdaForm,   // two-sided constants multiplying Lambda(k)
    SchuttLower,  // c1: middle-regime lower constant, c2: small-k lower constant
    DiagonalNet,  // single covering constant (returned as c1 = c2)
    PolyDecay,    // single covering constant for power weights (n/i)^alpha, c1 = c2
    Doubling      // two-sided constants multiplying Lambda(k) under doubling with C
};

struct ConstantPair {
    Log2Value c1;
    Log2Value c2;
    ConstantKind kind = ConstantKind::ThetaForm;
    double param = 0.0; // alpha for PolyDecay, C for Doubling
};

/// Closed-form constants, assembled in log2 space. With L = log2(24/p):
///   ThetaForm:   c1 = 4^{-2} 2^{-19/p} L^{-2/p} (1/p)^{-1/p},  c2 = 4 2^{19/p} L^{2/p} (1/p)^{1/p}
///   LambdaForm:  c1 = 4^{-2} 2^{-21/p} L^{-2/p} (1/p)^{-1/p},  c2 = 4 2^{20/p} L^{2/p} (1/p)^{1/p}
///   SchuttLower: c1 as ThetaForm.c1, c2 = 2^{-1/p}
///   DiagonalNet: 4 2^{12/p} L^{2/p} (1/p)^{1/p}
///   PolyDecay:   with B = 1/p + alpha, 4 2^{11 B} log2(24 B)^{2 B} B^{B}
///   Doubling:    c1 as LambdaForm.c1,
///                c2 = 4 C 2^{22/p} 2^{14 C} log2(24(1/p+C))^{2(1/p+C)} (1/p+C)^{1/p+C}
inline ConstantPair constants(double p, ConstantKind kind, double param = 0.0) {
    if (!(p > 0.0) || p > 1.0) fail("OutOfDomain", "constants need p in (0,1]");
    const double ip = 1.0 / p;
    const double l2L = std::log2(std::log2(24.0 * ip));
    const double l2ip = std::log2(ip);
    const double core = 2.0 * ip * l2L + ip * l2ip; // log2(L^{2/p} (1/p)^{1/p})

    ConstantPair out;
    out.kind = kind;
    out.param = param;
    switch (kind) {
        case ConstantKind::ThetaForm:
            out.c1 = Log2Value::from_log2(-4.0 - 19.0 * ip - core);
            out.c2 = Log2Value::from_log2(2.0 + 19.0 * ip + core);
            break;
        case ConstantKind::LambdaForm:
            out.c1 = Log2Value::from_log2(-4.0 - 21.0 * ip - core);
            out.c2 = Log2Value::from_log2(2.0 + 20.0 * ip + core);
            break;
        case ConstantKind::SchuttLower:
            out.c1 = Log2Value::from_log2(-4.0 - 19.0 * ip - core);
            out.c2 = Log2Value::from_log2(-ip);
            break;
        case ConstantKind::DiagonalNet:
            out.c1 = out.c2 = Log2Value::from_log2(2.0 + 12.0 * ip + core);
            break;
        case ConstantKind::PolyDecay: {
            if (!(param >= 0.0)) fail("OutOfDomain", "PolyDecay constant needs alpha >= 0");
            const double B = ip + param;
            const double l2 = 2.0 + 11.0 * B + 2.0 * B * std::log2(std::log2(24.0 * B)) +
                              B * std::log2(B);
            out.c1 = out.c2 = Log2Value::from_log2(l2);
            break;
        }
        case ConstantKind::Doubling: {
            if (!(param >= 1.0)) fail("OutOfDomain", "Doubling constant needs C >= 1");
            const double B = ip + param;
            const double l2 = 2.0 + std::log2(param) + 22.0 * ip + 14.0 * param +
                              2.0 * B * std::log2(std::log2(24.0 * B)) + B * std::log2(B);
            out.c1 = Log2Value::from_log2(-4.0 - 21.0 * ip - core);
            out.c2 = Log2Value::from_log2(l2);
            break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed form for ell_p -> ell_q with logarithmic decay
// ---------------------------------------------------------------------------

/// k^{-theta} when theta <= 1/p0 - 1/q0, otherwise
/// k^{1/q0 - 1/p0} (log 2k)^{1/p0 - 1/q0 - theta}.
inline Log2Value closed_form_lpq(double theta, double p0, double q0, long k) {
    if (!(p0 > 0.0) || !(q0 > p0)) fail("OutOfDomain", "closed_form_lpq needs 0 < p0 < q0");
    if (!(theta > 0.0) || k < 1) fail("OutOfDomain", "closed_form_lpq needs theta > 0, k >= 1");
    const double delta = 1.0 / p0 - 1.0 / q0;
    const double lk = std::log2(static_cast<double>(k));
    if (theta <= delta) return Log2Value::from_log2(-theta * lk);
    return Log2Value::from_log2(-delta * lk + (delta - theta) * std::log2(1.0 + lk));
}

// ---------------------------------------------------------------------------
// Certified interval assembly
// ---------------------------------------------------------------------------

struct BoundReport {
    long k = 0;
    ThetaValue theta;
    Log2Value lambda;
    ConstantPair consts;
    std::string hypothesis_path; // "head_condition" | "doubling"
    double doubling_C = 0.0;     // 0 when the head path was taken
    Log2Value interval_lo;
    Log2Value interval_hi;
};

/// Assembles Theta, Lambda, the applicable constants and the certified
/// interval for e_k of the diagonal operator generated by `seq`.
///
/// With use_head_condition the flat-head hypothesis alpha_1 = alpha_k is
/// verified and the Theta-form constants apply. Otherwise a doubling
/// constant is required; if the head condition happens to hold as well, the
/// sharper Theta-form constants are preferred.
inline BoundReport sandwich_report(const DecaySequence& seq, const OrliczFunction& M1,
                                   const OrliczFunction& M2, double p, long k,
                                   bool use_head_condition) {
    if (k < 1) fail("OutOfDomain", "sandwich_report needs k >= 1");
    const auto ratio = ratio_monotone_check(M1, M2);
    if (!ratio.non_decreasing)
        fail("HypothesisViolated", "phi_M1/phi_M2 is not non-decreasing (decrease near log2 t = " +
                                       std::to_string(ratio.witness_log2_t) + ")");

    const double lk = std::log2(static_cast<double>(k));
    const double a1 = seq.eval(0.0);
    const double ak = seq.eval(lk);
    const bool head_holds = a1 <= ak * (1.0 + 1e-12) + 1e-300;

    BoundReport rep;
    rep.k = k;
    rep.theta = theta_bound(seq, M1, M2, k);
    rep.lambda = lambda_bound(seq, M1, M2, k);

    if (use_head_condition && !head_holds)
        fail("HypothesisViolated", "head condition alpha_1 = alpha_k fails at k = " +
                                       std::to_string(k) + " (alpha_1 = " + std::to_string(a1) +
                                       ", alpha_k = " + std::to_string(ak) + ")");

    if (head_holds) {
        rep.hypothesis_path = "head_condition";
        rep.consts = constants(p, ConstantKind::ThetaForm);
        rep.interval_lo = Log2Value::from_log2(rep.consts.c1.log2 + rep.theta.log2);
        rep.interval_hi = Log2Value::from_log2(rep.consts.c2.log2 + rep.theta.log2);
    } else {
        const auto C = seq.doubling_constant();
        if (!C)
            fail("HypothesisViolated",
                 "no doubling constant available for family " + std::string(seq.family_name()));
        const auto dbl = doubling_check(seq, *C, lk + 40.0);
        if (!dbl.pass)
            fail("HypothesisViolated", "doubling check failed: worst ratio " +
                                           std::to_string(dbl.worst_ratio) + " > C = " +
                                           std::to_string(*C));
        rep.hypothesis_path = "doubling";
        rep.doubling_C = *C;
        rep.consts = constants(p, ConstantKind::Doubling, *C);
        rep.interval_lo = Log2Value::from_log2(rep.consts.c1.log2 + rep.lambda.log2);
        rep.interval_hi = Log2Value::from_log2(rep.consts.c2.log2 + rep.lambda.log2);
    }

    // Theta and Lambda always bracket each other (with the descriptors' own
    // convexity exponent); a violation is a bug.
    const double pp = pair_p(M1, M2);
    const double slack = 1e-9;
    if (rep.theta.log2 != -kInf || rep.lambda.log2 != -kInf) {
        if (rep.theta.log2 < rep.lambda.log2 - 2.0 / pp - slack ||
            rep.theta.log2 > rep.lambda.log2 + 1.0 / pp + slack)
            fail("Inconsistent", "Theta/Lambda bracket violated at k = " + std::to_string(k));
    }
    return rep;
}

} // namespace orlent
