#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <curvecount/curvecount.hpp>

namespace cli {

using namespace curvecount;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Format { Csv, Json };

struct RunConfig {
    SurfaceSignature signature{0, 4, 0};
    double lmax = 64;
    std::optional<double> lmin;
    LengthModel model;
    Format format = Format::Csv;
    std::string out;
    bool include_boundary = false;
    int dyadic_samples = 7;
    FuchsianTorus torus;
    double tolerance = 0.5;
};

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline double parse_real(const std::string& key, const std::string& v) {
    std::string t = trim(v);
    double x = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size() || !std::isfinite(x))
        throw UsageError(key + ": not a number: '" + v + "'");
    return x;
}

inline long parse_int(const std::string& key, const std::string& v) {
    std::string t = trim(v);
    long x = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), x);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) throw UsageError(key + ": not an integer: '" + v + "'");
    return x;
}

inline std::vector<std::string> split(const std::string& s, const std::string& seps) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (seps.find(c) != std::string::npos) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else
            cur += c;
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

inline SurfaceSignature parse_signature(const std::string& s) {
    auto parts = split(s, ",");
    if (parts.size() != 3) throw UsageError("signature must be g,b,c");
    SurfaceSignature sig;
    long v[3];
    for (int i = 0; i < 3; ++i) {
        v[i] = parse_int("signature", parts[i]);
        if (v[i] < 0) throw UsageError("signature entries must be nonnegative");
    }
    sig.genus = static_cast<int>(v[0]);
    sig.boundary = static_cast<int>(v[1]);
    sig.cusps = static_cast<int>(v[2]);
    return sig;
}

// Eight numbers, row-major: both generators.
inline FuchsianTorus parse_generators(const std::string& s) {
    auto parts = split(s, " ,;\t");
    if (parts.size() != 8) throw UsageError("generators need eight numbers (two 2x2 matrices, row-major)");
    FuchsianTorus t;
    for (int i = 0; i < 4; ++i) t.a[i] = parse_real("generators", parts[i]);
    for (int i = 0; i < 4; ++i) t.b[i] = parse_real("generators", parts[4 + i]);
    return t;
}

inline bool parse_bool(const std::string& key, const std::string& v) {
    auto t = trim(v);
    if (t == "true" || t == "1" || t == "yes") return true;
    if (t == "false" || t == "0" || t == "no") return false;
    throw UsageError(key + ": expected true or false");
}

// One key = value setting; model weights use `alpha`, `base_length`,
// `default_weight` and `weight.<curve>`.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
    if (key == "signature")
        c.signature = parse_signature(value);
    else if (key == "lmax")
        c.lmax = parse_real(key, value);
    else if (key == "lmin")
        c.lmin = parse_real(key, value);
    else if (key == "alpha")
        c.model.alpha = parse_real(key, value);
    else if (key == "base_length")
        c.model.base_length = parse_real(key, value);
    else if (key == "default_weight")
        c.model.default_weight = parse_real(key, value);
    else if (key.rfind("weight.", 0) == 0 && key.size() > 7)
        c.model.curve_weights[key.substr(7)] = parse_real(key, value);
    else if (key == "format") {
        auto f = trim(value);
        if (f == "csv")
            c.format = Format::Csv;
        else if (f == "json")
            c.format = Format::Json;
        else
            throw UsageError("format must be csv or json");
    } else if (key == "out")
        c.out = trim(value);
    else if (key == "include_boundary")
        c.include_boundary = parse_bool(key, value);
    else if (key == "dyadic_samples")
        c.dyadic_samples = static_cast<int>(parse_int(key, value));
    else if (key == "generators")
        c.torus = parse_generators(value);
    else if (key == "tolerance")
        c.tolerance = parse_real(key, value);
    else
        throw UsageError("unknown setting '" + key + "'");
}

inline void apply_config_text(RunConfig& c, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (trim(line).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        apply_setting(c, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
}

inline void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    apply_config_text(c, ss.str());
}

// --weights alpha=1,E=2,base=1,default=1: short keys, bare curve labels.
inline void apply_weights(RunConfig& c, const std::string& text) {
    for (const auto& item : split(text, ",")) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("weights: expected key=value, got '" + item + "'");
        auto key = trim(item.substr(0, eq));
        auto value = item.substr(eq + 1);
        if (key == "alpha")
            apply_setting(c, "alpha", value);
        else if (key == "base")
            apply_setting(c, "base_length", value);
        else if (key == "default")
            apply_setting(c, "default_weight", value);
        else
            apply_setting(c, "weight." + key, value);
    }
}

inline void validate(const RunConfig& c, bool fitting) {
    try {
        c.model.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!(c.lmax > 0)) throw UsageError("lmax must be positive");
    if (fitting && c.dyadic_samples < 4) throw UsageError("dyadic_samples must be at least 4 for a fit");
}

// Dyadic sample lengths ending at lmax.
inline std::vector<double> sample_lengths(const RunConfig& c) {
    std::vector<double> out;
    if (c.lmin) {
        for (double L = *c.lmin; L <= c.lmax * (1 + 1e-12); L *= 2) out.push_back(L);
        return out;
    }
    for (int i = c.dyadic_samples - 1; i >= 0; --i) out.push_back(std::ldexp(c.lmax, -i));
    return out;
}

}  // namespace cli
