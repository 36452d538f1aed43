// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlent/orlicz.hpp"

namespace orlent {

// Index arguments travel as log2(i) so indices up to 2^(k-1) never overflow.

struct ConstantHeadSeq {
    double value;         // alpha_i = value for log2(i) <= head_len_log2, 0 beyond
    double head_len_log2;
};

struct PolynomialSeq {
    double theta; // alpha_i = i^{-theta}
};

struct ExpLogSeq {
    double beta; // alpha_i = exp(-beta * log2(i+1)^vartheta)
    double vartheta;
};

struct LogDecaySeq {
    double theta; // alpha_i = log2(i+1)^{-theta}
};

struct TableSeq {
    std::vector<double> values; // alpha_i = values[i-1] for i <= size, tail beyond
    double tail = 0.0;
};

struct MajorantSeq {
    // Three-regime majorant: constant 2^{-7/p} phi1(k)/phi2(k) up to index k,
    // then 2^{-7/p} phi1(k/log(2j/k)) / phi2(k/log(2j/k)), frozen past 2^{k-1}.
    long k;
    OrliczFunction M1;
    OrliczFunction M2;
    double p;
};

class DecaySequence {
public:
    using Spec = std::variant<ConstantHeadSeq, PolynomialSeq, ExpLogSeq, LogDecaySeq, TableSeq, MajorantSeq>;

    static DecaySequence constant_head(double value, double head_len_log2) {
        if (!(value >= 0.0) || !(head_len_log2 >= 0.0))
            fail("OutOfDomain", "constant_head needs value >= 0 and head length >= 0");
        return DecaySequence(ConstantHeadSeq{value, head_len_log2});
    }

    static DecaySequence polynomial(double theta) {
        if (!(theta >= 0.0)) fail("OutOfDomain", "polynomial decay needs theta >= 0");
        return DecaySequence(PolynomialSeq{theta});
    }

    static DecaySequence exp_log(double beta, double vartheta) {
        if (!(beta > 0.0) || !(vartheta > 0.0) || !(vartheta < 1.0))
            fail("OutOfDomain", "exp_log needs beta > 0 and vartheta in (0,1)");
        return DecaySequence(ExpLogSeq{beta, vartheta});
    }

    static DecaySequence log_decay(double theta) {
        if (!(theta > 0.0)) fail("OutOfDomain", "log_decay needs theta > 0");
        return DecaySequence(LogDecaySeq{theta});
    }

    static DecaySequence table(std::vector<double> values, double tail = 0.0) {
        if (values.empty()) fail("OutOfDomain", "table sequence needs at least one value");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (!(values[i] >= 0.0)) fail("OutOfDomain", "table values must be non-negative");
            if (i > 0 && values[i] > values[i - 1] * (1.0 + 1e-12))
                fail("NonMonotone", "table values must be non-increasing");
        }
        if (!(tail >= 0.0) || tail > values.back() * (1.0 + 1e-12))
            fail("NonMonotone", "table tail must be non-negative and <= last value");
        return DecaySequence(TableSeq{std::move(values), tail});
    }

    /// alpha at index 2^{log2_index}.
    double eval(double log2_index) const {
        check_index(log2_index);
        if (log2_index < 0.0) log2_index = 0.0;
        if (const auto* ch = std::get_if<ConstantHeadSeq>(&spec_))
            return log2_index <= ch->head_len_log2 + 1e-12 ? ch->value : 0.0;
        if (const auto* tb = std::get_if<TableSeq>(&spec_)) return table_value(*tb, log2_index);
        return std::exp2(log2_eval_nonneg(log2_index));
    }

    /// log2(alpha) at index 2^{log2_index}; -inf where alpha vanishes.
    double log2_eval(double log2_index) const {
        check_index(log2_index);
        if (log2_index < 0.0) log2_index = 0.0;
        if (const auto* ch = std::get_if<ConstantHeadSeq>(&spec_)) {
            const double v = log2_index <= ch->head_len_log2 + 1e-12 ? ch->value : 0.0;
            return v > 0.0 ? std::log2(v) : -kInf;
        }
        if (const auto* tb = std::get_if<TableSeq>(&spec_)) {
            const double v = table_value(*tb, log2_index);
            return v > 0.0 ? std::log2(v) : -kInf;
        }
        return log2_eval_nonneg(log2_index);
    }

    /// Smallest C with alpha_i <= C alpha_{2i} for all i, when the family has
    /// one in closed form (or exactly computable); nullopt otherwise.
    std::optional<double> doubling_constant() const {
        if (const auto* ch = std::get_if<ConstantHeadSeq>(&spec_))
            return ch->value == 0.0 ? std::optional<double>(1.0) : std::nullopt;
        if (const auto* po = std::get_if<PolynomialSeq>(&spec_)) return std::exp2(po->theta);
        if (const auto* el = std::get_if<ExpLogSeq>(&spec_))
            return std::exp2(el->beta * el->vartheta * kLog2E);
        if (const auto* ld = std::get_if<LogDecaySeq>(&spec_)) return std::exp2(ld->theta);
        if (const auto* tb = std::get_if<TableSeq>(&spec_)) {
            if (tb->tail <= 0.0) return std::nullopt;
            double worst = 1.0;
            for (std::size_t i = 1; i <= tb->values.size(); ++i) {
                const double a2i = 2 * i <= tb->values.size() ? tb->values[2 * i - 1] : tb->tail;
                if (tb->values[i - 1] > 0.0 && a2i <= 0.0) return std::nullopt;
                if (a2i > 0.0) worst = std::max(worst, tb->values[i - 1] / a2i);
            }
            return worst;
        }
        return std::nullopt;
    }

    const char* family_name() const {
        struct Visitor {
            const char* operator()(const ConstantHeadSeq&) const { return "constant_head"; }
            const char* operator()(const PolynomialSeq&) const { return "polynomial"; }
            const char* operator()(const ExpLogSeq&) const { return "exp_log"; }
            const char* operator()(const LogDecaySeq&) const { return "log_decay"; }
            const char* operator()(const TableSeq&) const { return "table"; }
            const char* operator()(const MajorantSeq&) const { return "majorant"; }
        };
        return std::visit(Visitor{}, spec_);
    }

    const Spec& spec() const { return spec_; }

    friend DecaySequence majorant_sigma(long k, const OrliczFunction& M1, const OrliczFunction& M2);

private:
    explicit DecaySequence(Spec spec) : spec_(std::move(spec)) {}

    static void check_index(double log2_index) {
        if (log2_index < -1e-9) fail("NegativeIndex", "sequence index must be >= 1");
    }

    static double table_value(const TableSeq& tb, double log2_index) {
        if (log2_index > 62.0) return tb.tail;
        const double idx = std::exp2(log2_index);
        const auto i = static_cast<long long>(std::llround(idx));
        if (i < 1 || static_cast<std::size_t>(i) > tb.values.size()) return tb.tail;
        return tb.values[static_cast<std::size_t>(i) - 1];
    }

    // Families with alpha > 0 everywhere, evaluated in the log2 domain.
    double log2_eval_nonneg(double u) const {
        if (const auto* po = std::get_if<PolynomialSeq>(&spec_)) return -po->theta * u;
        // log2(i+1) = u + log2(1 + 2^{-u}), stable for large u.
        const double log2_ip1 = u + std::log1p(std::exp2(-u)) * kLog2E;
        if (const auto* el = std::get_if<ExpLogSeq>(&spec_))
            return -el->beta * std::pow(log2_ip1, el->vartheta) * kLog2E;
        if (const auto* ld = std::get_if<LogDecaySeq>(&spec_)) return -ld->theta * std::log2(log2_ip1);
        const auto& mj = std::get<MajorantSeq>(spec_);
        const double lk = std::log2(static_cast<double>(mj.k));
        double L = 1.0 + u - lk;
        L = std::min(std::max(L, 1.0), static_cast<double>(mj.k) - lk);
        const double arg = lk - std::log2(L);
        return -7.0 / mj.p + mj.M1.log2_fundamental(arg) - mj.M2.log2_fundamental(arg);
    }

    Spec spec_;
};

/// Builds the non-increasing majorant sequence used by the certified upper
/// bound at level k. Requires phi_{M1}/phi_{M2} non-decreasing.
inline DecaySequence majorant_sigma(long k, const OrliczFunction& M1, const OrliczFunction& M2) {
    if (k < 1) fail("OutOfDomain", "majorant level k must be >= 1");
    const auto ratio = ratio_monotone_check(M1, M2);
    if (!ratio.non_decreasing)
        fail("RatioNotMonotone", "phi_M1/phi_M2 decreases near log2 t = " +
                                     std::to_string(ratio.witness_log2_t));
    return DecaySequence(DecaySequence::Spec(MajorantSeq{k, M1, M2, pair_p(M1, M2)}));
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct DoublingReport {
    bool pass = false;
    double claimed_C = 1.0;
    double worst_ratio = 1.0;      // sup alpha_i / alpha_{2i} over the grid
    double worst_log2_index = 0.0;
};

/// Verifies alpha(u) <= C alpha(u+1) on a dense grid of log2-indices in
/// [0, log2_range].
inline DoublingReport doubling_check(const DecaySequence& seq, double claimed_C, double log2_range,
                                     int grid_size = 4096) {
    if (!(claimed_C >= 1.0)) fail("OutOfDomain", "doubling constant must be >= 1");
    if (!(log2_range > 0.0)) fail("OutOfDomain", "doubling range must be positive");
    DoublingReport rep;
    rep.claimed_C = claimed_C;
    double worst_log2_ratio = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        const double u = log2_range * i / (grid_size - 1);
        const double la = seq.log2_eval(u);
        const double lb = seq.log2_eval(u + 1.0);
        double lr;
        if (la == -kInf)
            lr = 0.0; // 0 <= C * anything
        else if (lb == -kInf)
            lr = kInf;
        else
            lr = la - lb;
        if (lr > worst_log2_ratio) {
            worst_log2_ratio = lr;
            rep.worst_log2_index = u;
        }
    }
    rep.worst_ratio = std::exp2(worst_log2_ratio);
    rep.pass = rep.worst_ratio <= claimed_C * (1.0 + 1e-9);
    return rep;
}

struct NetConditionRow {
    int i = 0;              // 0 is the head condition, 1..m the tail conditions
    double log2_index = 0.0;
    double alpha = 0.0;
    double bound = 0.0;     // phi1(2^{m-i}) / phi2(2^{m-i})
    bool pass = false;
};

struct NetConditionReport {
    bool all_pass = true;
    std::vector<NetConditionRow> rows;
};

/// Checks the cutoff conditions under which the diagonal-net covering bound
/// applies at scale m: alpha_1 <= phi1(2^m)/phi2(2^m) and
/// alpha_{2^{m+2^{i-1}}} <= phi1(2^{m-i})/phi2(2^{m-i}) for i = 1..m.
inline NetConditionReport verify_net_conditions(const DecaySequence& seq, int m,
                                                const OrliczFunction& M1, const OrliczFunction& M2) {
    if (m < 5) fail("OutOfDomain", "net conditions need m >= 5");
    NetConditionReport rep;
    for (int i = 0; i <= m; ++i) {
        NetConditionRow row;
        row.i = i;
        row.log2_index = i == 0 ? 0.0 : static_cast<double>(m) + std::exp2(i - 1);
        const double scale = static_cast<double>(m - i);
        const double bound_log2 = M1.log2_fundamental(scale) - M2.log2_fundamental(scale);
        const double alpha_log2 = seq.log2_eval(row.log2_index);
        row.alpha = std::exp2(alpha_log2);
        row.bound = std::exp2(bound_log2);
        row.pass = alpha_log2 <= bound_log2 + 1e-9;
        rep.all_pass = rep.all_pass && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace orlent
