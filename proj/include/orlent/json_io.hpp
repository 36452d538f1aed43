// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlent/bounds.hpp"
#include "orlent/combinatorics.hpp"
#include "orlent/entropy_oracle.hpp"
#include "orlent/orlicz.hpp"
#include "orlent/sequences.hpp"

namespace orlent {

// Insertion-ordered JSON keeps emitted reports byte-stable.
using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Descriptor serialization: {family, params, p}
// ---------------------------------------------------------------------------

inline json orlicz_to_json(const OrliczFunction& M) {
    json params;
    if (const auto* pw = std::get_if<PowerParams>(&M.params())) {
        params["q"] = pw->q;
    } else if (const auto* pl = std::get_if<PowerLogParams>(&M.params())) {
        params["q"] = pl->q;
        params["r"] = pl->r;
    } else {
        const auto& tb = std::get<TabulatedParams>(M.params());
        json knots = json::array();
        for (const auto& [t, v] : tb.knots) knots.push_back(json::array({t, v}));
        params["knots"] = std::move(knots);
    }
    return json{{"family", M.family_name()}, {"params", std::move(params)}, {"p", M.p()}};
}

inline OrliczFunction orlicz_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    const double p = j.value("p", 1.0);
    const auto& params = j.at("params");
    if (family == "power") return OrliczFunction::power(params.at("q").get<double>(), p);
    if (family == "powerlog")
        return OrliczFunction::power_log(params.at("q").get<double>(), params.at("r").get<double>(), p);
    if (family == "tabulated") {
        std::vector<std::pair<double, double>> knots;
        for (const auto& kn : params.at("knots"))
            knots.emplace_back(kn.at(0).get<double>(), kn.at(1).get<double>());
        return OrliczFunction::tabulated(std::move(knots), p);
    }
    fail("ConfigError", "unknown descriptor family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Sequence serialization: {family, params}
// ---------------------------------------------------------------------------

inline json sequence_to_json(const DecaySequence& seq) {
    json params;
    if (const auto* ch = std::get_if<ConstantHeadSeq>(&seq.spec())) {
        params["value"] = ch->value;
        params["head_len_log2"] = ch->head_len_log2;
    } else if (const auto* po = std::get_if<PolynomialSeq>(&seq.spec())) {
        params["theta"] = po->theta;
    } else if (const auto* el = std::get_if<ExpLogSeq>(&seq.spec())) {
        params["beta"] = el->beta;
        params["vartheta"] = el->vartheta;
    } else if (const auto* ld = std::get_if<LogDecaySeq>(&seq.spec())) {
        params["theta"] = ld->theta;
    } else if (const auto* tb = std::get_if<TableSeq>(&seq.spec())) {
        params["values"] = tb->values;
        params["tail"] = tb->tail;
    } else {
        fail("ConfigError", "majorant sequences are derived objects and do not serialize");
    }
    return json{{"family", seq.family_name()}, {"params", std::move(params)}};
}

inline DecaySequence sequence_from_json(const json& j) {
    const std::string family = j.at("family").get<std::string>();
    const auto& params = j.at("params");
    if (family == "constant_head")
        return DecaySequence::constant_head(params.at("value").get<double>(),
                                            params.at("head_len_log2").get<double>());
    if (family == "polynomial") return DecaySequence::polynomial(params.at("theta").get<double>());
    if (family == "exp_log")
        return DecaySequence::exp_log(params.at("beta").get<double>(),
                                      params.at("vartheta").get<double>());
    if (family == "log_decay") return DecaySequence::log_decay(params.at("theta").get<double>());
    if (family == "table")
        return DecaySequence::table(params.at("values").get<std::vector<double>>(),
                                    params.value("tail", 0.0));
    fail("ConfigError", "unknown sequence family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Flag mini-language: power:q | powerlog:q,r | table:@file.json and
//                     poly:t | explog:b,v | logdecay:t | consthead:v,h | table:@file
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> parse_numbers(const std::string& body, const char* what) {
    std::vector<double> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            fail("ConfigError", std::string("bad numeric argument for ") + what + ": '" + item + "'");
        }
    }
    if (out.empty()) fail("ConfigError", std::string(what) + " needs numeric arguments");
    return out;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("ConfigError", "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail("ConfigError", "cannot parse '" + path + "': " + e.what());
    }
    return j;
}

inline std::pair<std::string, std::string> split_spec(const std::string& text, const char* what) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        fail("ConfigError", std::string("expected '<family>:<params>' for ") + what + ", got '" + text + "'");
    return {text.substr(0, colon), text.substr(colon + 1)};
}

} // namespace detail

/// Parses a descriptor spec such as "power:2" or "table:@knots.json".
/// p = 0 picks the family default (min(1, q) for powers, 1 otherwise).
inline OrliczFunction parse_orlicz(const std::string& text, double p = 0.0) {
    const auto [family, body] = detail::split_spec(text, "descriptor");
    if (family == "power") {
        const auto args = detail::parse_numbers(body, "power");
        return OrliczFunction::power(args.at(0), p);
    }
    if (family == "powerlog") {
        const auto args = detail::parse_numbers(body, "powerlog");
        if (args.size() != 2) fail("ConfigError", "powerlog needs q,r");
        return OrliczFunction::power_log(args[0], args[1], p == 0.0 ? 1.0 : p);
    }
    if (family == "table" || family == "tabulated") {
        if (body.empty() || body[0] != '@') fail("ConfigError", "table descriptor needs @file.json");
        json j = detail::load_json_file(body.substr(1));
        if (j.contains("family")) return orlicz_from_json(j);
        std::vector<std::pair<double, double>> knots;
        for (const auto& kn : j) knots.emplace_back(kn.at(0).get<double>(), kn.at(1).get<double>());
        return OrliczFunction::tabulated(std::move(knots), p == 0.0 ? 1.0 : p);
    }
    fail("ConfigError", "unknown descriptor family '" + family + "'");
}

/// Parses a sequence spec such as "poly:1", "explog:1,0.5", "consthead:1,4".
inline DecaySequence parse_sequence(const std::string& text) {
    const auto [family, body] = detail::split_spec(text, "sequence");
    if (family == "poly") return DecaySequence::polynomial(detail::parse_numbers(body, "poly").at(0));
    if (family == "logdecay")
        return DecaySequence::log_decay(detail::parse_numbers(body, "logdecay").at(0));
    if (family == "explog") {
        const auto args = detail::parse_numbers(body, "explog");
        if (args.size() != 2) fail("ConfigError", "explog needs beta,vartheta");
        return DecaySequence::exp_log(args[0], args[1]);
    }
    if (family == "consthead") {
        const auto args = detail::parse_numbers(body, "consthead");
        if (args.size() != 2) fail("ConfigError", "consthead needs value,head_len_log2");
        return DecaySequence::constant_head(args[0], args[1]);
    }
    if (family == "table") {
        if (!body.empty() && body[0] == '@') {
            json j = detail::load_json_file(body.substr(1));
            if (j.contains("family")) return sequence_from_json(j);
            return DecaySequence::table(j.get<std::vector<double>>());
        }
        return DecaySequence::table(detail::parse_numbers(body, "table"));
    }
    fail("ConfigError", "unknown sequence family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

inline json bound_report_to_json(const BoundReport& rep) {
    return json{{"k", rep.k},
                {"theta", rep.theta.linear},
                {"theta_mode", rep.theta.mode == ThetaMode::Exact ? "exact" : "grid"},
                {"lambda", rep.lambda.linear},
                {"c1_log2", rep.consts.c1.log2},
                {"c2_log2", rep.consts.c2.log2},
                {"interval_lo_log2", rep.interval_lo.log2},
                {"interval_hi_log2", rep.interval_hi.log2},
                {"hypothesis_path", rep.hypothesis_path}};
}

inline std::string bound_report_csv_header() {
    return "k,theta,theta_mode,lambda,c1_log2,c2_log2,interval_lo_log2,interval_hi_log2,hypothesis_path";
}

inline std::string bound_report_to_csv(const BoundReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << rep.k << ',' << rep.theta.linear << ','
       << (rep.theta.mode == ThetaMode::Exact ? "exact" : "grid") << ',' << rep.lambda.linear << ','
       << rep.consts.c1.log2 << ',' << rep.consts.c2.log2 << ',' << rep.interval_lo.log2 << ','
       << rep.interval_hi.log2 << ',' << rep.hypothesis_path;
    return os.str();
}

inline json entropy_interval_to_json(const EntropyInterval& iv) {
    return json{{"k", iv.k},
                {"lower", iv.lower},
                {"upper", iv.upper},
                {"delta", iv.method.grid_delta},
                {"points", iv.method.image_points},
                {"centers", iv.method.cover_centers}};
}

inline std::string entropy_interval_to_csv(const std::string& instance_id, const EntropyInterval& iv) {
    std::ostringstream os;
    os.precision(17);
    os << instance_id << ',' << iv.k << ',' << iv.lower << ',' << iv.upper;
    return os.str();
}

inline json code_family_to_json(const CodeFamily& fam) {
    json members = json::array();
    for (const auto& m : fam.members) members.push_back(m);
    return json{{"n", fam.n}, {"s", fam.s}, {"members", std::move(members)}};
}

inline json code_family_check_to_json(const CodeFamilyCheck& chk, const CodeFamily& fam) {
    return json{{"pass", chk.ok},
                {"size", fam.members.size()},
                {"min_symmetric_difference", chk.min_delta},
                {"worst_pair", json::array({chk.worst_pair.first, chk.worst_pair.second})}};
}

} // namespace orlent
