#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "error.hpp"
#include "extension.hpp"
#include "laurent.hpp"
#include "masks.hpp"

namespace framekit {

using json = nlohmann::json;

namespace detail {

inline int parse_exponent(const std::string& key) {
    int n = 0;
    const char* first = key.data();
    const char* last = key.data() + key.size();
    if (!key.empty() && key[0] == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr != last || first == last)
        throw Error(Errc::parse_error, "exponent key '" + key + "' is not an integer");
    return n;
}

inline GaussianRational coeff_from_json(const json& v) {
    if (v.is_string())
        return parse_gaussian(v.get<std::string>());
    if (v.is_number_integer())
        return GaussianRational(v.get<long>());
    throw Error(Errc::parse_error, "coefficient must be a string such as \"1/2\" or an integer, got " + v.dump());
}

} // namespace detail

/// {"exp": "coeff", ...}; exponents as decimal strings, coefficients in the
/// "a/b+c/d*i" form.
inline json to_json(const LaurentPoly& p) {
    json j = json::object();
    for (const auto& [n, c] : p.terms())
        j[std::to_string(n)] = c.to_string();
    return j;
}

inline LaurentPoly poly_from_json(const json& j) {
    if (!j.is_object())
        throw Error(Errc::parse_error, "polynomial must be a JSON object, got " + j.dump());
    LaurentPoly p;
    for (const auto& [key, value] : j.items())
        p.add_to(detail::parse_exponent(key), detail::coeff_from_json(value));
    return p;
}

inline json to_json(const Mask& m) { return {{"label", m.label}, {"poly", to_json(m.poly)}}; }

inline Mask mask_from_json(const json& j) {
    if (!j.is_object())
        throw Error(Errc::parse_error, "mask must be a JSON object");
    if (!j.contains("poly"))
        return {poly_from_json(j), {}};
    Mask m{poly_from_json(j.at("poly")), {}};
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw Error(Errc::parse_error, "mask label must be a string");
        m.label = j.at("label").get<std::string>();
    }
    return m;
}

inline json to_json(const TimeCoeffs& c) {
    json coeffs = json::object();
    for (const auto& [k, v] : c.coeffs)
        coeffs[std::to_string(k)] = v.to_string();
    return {{"coeffs", coeffs}};
}

inline TimeCoeffs time_coeffs_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_object())
        throw Error(Errc::parse_error, "time coefficients must look like {\"coeffs\": {...}}");
    TimeCoeffs c;
    for (const auto& [key, value] : j.at("coeffs").items()) {
        GaussianRational v = detail::coeff_from_json(value);
        if (!v.is_zero())
            c.coeffs[detail::parse_exponent(key)] += v;
    }
    return c;
}

inline json to_json(const MaskSystem& s) {
    json gens = json::array(), tgens = json::array();
    for (const auto& m : s.gens)
        gens.push_back(to_json(m));
    for (const auto& m : s.tgens)
        tgens.push_back(to_json(m));
    return {{"m0", to_json(s.m0)}, {"mt0", to_json(s.mt0)}, {"gens", gens}, {"tgens", tgens}};
}

inline MaskSystem system_from_json(const json& j) {
    try {
        if (!j.is_object())
            throw Error(Errc::parse_error, "mask system must be a JSON object");
        for (const char* key : {"m0", "mt0", "gens", "tgens"})
            if (!j.contains(key))
                throw Error(Errc::parse_error, std::string("mask system is missing \"") + key + "\"");
        MaskSystem s{mask_from_json(j.at("m0")), mask_from_json(j.at("mt0")), {}, {}};
        if (!j.at("gens").is_array() || !j.at("tgens").is_array())
            throw Error(Errc::parse_error, "\"gens\" and \"tgens\" must be arrays");
        for (const auto& m : j.at("gens"))
            s.gens.push_back(mask_from_json(m));
        for (const auto& m : j.at("tgens"))
            s.tgens.push_back(mask_from_json(m));
        if (s.gens.empty() || s.tgens.empty())
            throw Error(Errc::parse_error, "mask system needs at least one generator pair");
        if (s.gens.size() != s.tgens.size())
            throw Error(Errc::parse_error, "\"gens\" and \"tgens\" differ in length");
        return s;
    } catch (const json::exception& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse_error, e.what());
    }
}

inline MaskSystem load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::io_error, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return system_from_json(parse_json_text(ss.str()));
}

inline json to_json(const NecessaryReport& r) {
    json a_m = json::array(), a_mt = json::array();
    for (const auto& v : r.cond_a.m_at_0)
        a_m.push_back(v.to_string());
    for (const auto& v : r.cond_a.mt_at_0)
        a_mt.push_back(v.to_string());
    return {
        {"setup_ok", r.setup_ok},
        {"m0_at_0", r.m0_at_0.to_string()},
        {"mt0_at_0", r.mt0_at_0.to_string()},
        {"cond_a", {{"pass", r.cond_a.pass}, {"m_at_0", a_m}, {"mt_at_0", a_mt}}},
        {"cond_b",
         {{"pass", r.cond_b.pass},
          {"m0_at_half", r.cond_b.m0_at_half.to_string()},
          {"mt0_at_half", r.cond_b.mt0_at_half.to_string()}}},
        {"cond_c", {{"pass", r.cond_c.pass}, {"lambda", r.cond_c.lambda ? to_json(*r.cond_c.lambda) : json(nullptr)}}},
        {"all_pass", r.all_pass()},
    };
}

inline json to_json(const VerifyReport& r) {
    json bessel = json::array();
    for (const auto& b : r.bessel)
        bessel.push_back({{"m_ok", b.m_ok}, {"mt_ok", b.mt_ok}});
    return {
        {"setup_ok", r.setup_ok},
        {"bessel", bessel},
        {"identity_row1", to_json(r.identity_row1)},
        {"identity_row2", to_json(r.identity_row2)},
        {"identity_row2b", to_json(r.identity_row2b)},
        {"verdict", std::string(to_string(r.verdict))},
    };
}

inline json to_json(const ExtensionOutcome& o) {
    const auto& a = o.artifacts;
    json j = {
        {"m2", to_json(o.m2)},
        {"mt2", to_json(o.mt2)},
        {"m3", o.m3 ? to_json(*o.m3) : json(nullptr)},
        {"mt3", o.mt3 ? to_json(*o.mt3) : json(nullptr)},
        {"time_coeffs",
         {{"m2", to_json(time_coeffs_from_mask(o.m2))}, {"mt2", to_json(time_coeffs_from_mask(o.mt2))}}},
        {"artifacts",
         {{"lambda_alpha", to_json(a.lambda_alpha)},
          {"lambda_beta", to_json(a.lambda_beta)},
          {"gamma", to_json(a.gamma)},
          {"gamma_alpha", to_json(a.gamma_alpha)},
          {"gamma_beta", to_json(a.gamma_beta)},
          {"sign_unit_applied", a.sign_unit_applied},
          {"degenerate_zero_masks", a.degenerate_zero_masks},
          {"presentation_unit", a.presentation_unit.to_string()},
          {"presentation_shift", a.presentation_shift}}},
        {"system", to_json(o.system)},
        {"report", to_json(o.report)},
    };
    if (o.m3) {
        j["time_coeffs"]["m3"] = to_json(time_coeffs_from_mask(*o.m3));
        j["time_coeffs"]["mt3"] = to_json(time_coeffs_from_mask(*o.mt3));
    }
    return j;
}

} // namespace framekit
