#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "checks.hpp"
#include "config.hpp"

namespace {

using namespace cli;

// Writes atomically: temporary file, then rename.
void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::string tmp = c.out + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw UsageError("cannot write " + c.out);
        f << text;
    }
    std::filesystem::rename(tmp, c.out);
}

std::string render_table(const RunConfig& c, const std::vector<std::pair<double, std::uint64_t>>& rows) {
    if (c.format == Format::Json) {
        auto arr = nlohmann::json::array();
        for (auto [L, n] : rows) arr.push_back({{"L", L}, {"count", n}});
        return arr.dump(2) + "\n";
    }
    std::string out = "L,count\n";
    for (auto [L, n] : rows) out += format_real(L) + "," + std::to_string(n) + "\n";
    return out;
}

// Fit over the samples with a nonzero count, if enough remain.
std::optional<double> fit_rows(const std::vector<std::pair<double, std::uint64_t>>& rows) {
    std::vector<double> pts;
    std::map<double, double> value;
    for (auto [L, n] : rows)
        if (n > 0) {
            pts.push_back(L);
            value[L] = static_cast<double>(n);
        }
    if (pts.size() < 4) return std::nullopt;
    return fit_exponent_at([&](double L) { return value.at(L); }, pts);
}

void summary(std::ostream& os, const std::string& key, const std::string& value) {
    os << "# " << key << ": " << value << "\n";
}

int cmd_count(const RunConfig& c) {
    validate(c, false);
    const auto& s = c.signature;
    if (!s.hyperbolic())
        throw UsageError("signature (" + std::to_string(s.genus) + "," + std::to_string(s.boundary) + "," +
                         std::to_string(s.cusps) + ") has Euler characteristic " +
                         std::to_string(s.euler_characteristic()) + " >= 0 and carries no hyperbolic structure");
    auto Ls = sample_lengths(c);
    FamilyCounter counter(s, c.model, Ls.back());
    std::vector<std::pair<double, std::uint64_t>> rows;
    for (double L : Ls) {
        std::uint64_t n = counter(L);
        if (c.include_boundary && L >= c.model.base_length) n += static_cast<std::uint64_t>(s.boundary);
        rows.emplace_back(L, n);
    }
    emit(c, render_table(c, rows));
    std::ostream& os = c.out.empty() ? std::cerr : std::cout;
    summary(os, "construction", counter.construction());
    auto e = fit_rows(rows);
    summary(os, "fitted exponent", e ? format_real(*e) : "n/a (fewer than four nonzero samples)");
    summary(os, "predicted exponent", std::to_string(s.dimension()));
    if (s.genus == 0 && s.holes() == 3)
        summary(os, "note", "a pair of pants is rigid: every simple closed geodesic is a boundary component");
    return 0;
}

int cmd_fit(const RunConfig& c, bool subcone) {
    validate(c, true);
    auto Ls = sample_lengths(c);
    if (Ls.size() < 4) throw UsageError("fit needs at least four dyadic samples");
    std::function<double(double)> f;
    int target;
    std::unique_ptr<FamilyCounter> counter;
    std::unique_ptr<SubconeCounter> cone;
    if (subcone) {
        cone = std::make_unique<SubconeCounter>(c.model, Ls.back());
        f = [&](double L) { return static_cast<double>((*cone)(L)); };
        target = 5;
    } else {
        if (!c.signature.hyperbolic()) throw UsageError("signature carries no hyperbolic structure");
        counter = std::make_unique<FamilyCounter>(c.signature, c.model, Ls.back());
        f = [&](double L) { return static_cast<double>((*counter)(L)); };
        target = c.signature.dimension();
    }
    std::vector<std::pair<double, std::uint64_t>> rows;
    for (double L : Ls) rows.emplace_back(L, static_cast<std::uint64_t>(f(L)));
    auto e = fit_rows(rows);
    bool ok = e && std::abs(*e - target) <= c.tolerance;
    nlohmann::json j = {{"fitted_exponent", e ? nlohmann::json(*e) : nlohmann::json(nullptr)},
                        {"predicted_exponent", target},
                        {"tolerance", c.tolerance},
                        {"within_tolerance", ok},
                        {"samples", rows.size()}};
    if (!c.out.empty()) emit(c, render_table(c, rows));
    std::cout << j.dump() << "\n";
    return ok ? 0 : 1;
}

int cmd_torus(const RunConfig& c) {
    if (!(c.lmax > 0)) throw UsageError("lmax must be positive");
    try {
        c.torus.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("invalid torus: ") + e.what());
    }
    auto census = torus_census(c.lmax, c.torus);
    std::string text;
    if (c.format == Format::Json) {
        auto arr = nlohmann::json::array();
        for (const auto& e : census.entries)
            arr.push_back({{"p", e.slope.p}, {"q", e.slope.q}, {"trace", e.trace}, {"length", e.length}});
        text = arr.dump(2) + "\n";
    } else
        text = census_csv(census);
    emit(c, text);
    std::ostream& os = c.out.empty() ? std::cerr : std::cout;
    summary(os, "geodesics", std::to_string(census.entries.size()));
    summary(os, "enumeration", census.pruned ? "Stern-Brocot descent" : "box scan");
    auto table = census.table();
    std::optional<double> e;
    double lo = 0.375 * c.lmax;
    if (!census.entries.empty() && table(lo) > 0)
        e = fit_exponent_at([&](double L) { return static_cast<double>(table(L)); }, geometric_points(lo, c.lmax, 11));
    summary(os, "fitted exponent", e ? format_real(*e) : "n/a");
    summary(os, "predicted exponent", "2");
    return 0;
}

int cmd_check(const std::string& suite) {
    CheckReport r;
    if (suite == "totient")
        r = check_totient();
    else if (suite == "connectivity")
        r = check_connectivity();
    else if (suite == "pants")
        r = check_pants();
    else if (suite == "recursion")
        r = check_recursion();
    else
        throw UsageError("unknown suite '" + suite + "' (totient, connectivity, pants, recursion)");
    std::cout << r.to_json().dump() << "\n";
    return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lower-bound counts of simple closed curves on hyperbolic surfaces"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path, signature, weights, format, out, suite;
    std::optional<double> lmax, lmin;
    bool include_boundary = false, subcone = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key = value file");
        sub->add_option("--lmax", lmax, "largest length");
        sub->add_option("--format", format, "csv or json");
        sub->add_option("--out", out, "output path (default stdout)");
    };
    auto modelled = [&](CLI::App* sub) {
        sub->add_option("--signature", signature, "g,b,c");
        sub->add_option("--weights", weights, "alpha=..,base=..,default=..,<curve>=..");
        sub->add_option("--lmin", lmin, "smallest dyadic length");
    };
    auto* count = app.add_subcommand("count", "lower-bound counts at dyadic lengths");
    common(count);
    modelled(count);
    count->add_flag("--include-boundary", include_boundary, "count boundary curves too");
    auto* fit = app.add_subcommand("fit", "fit the growth exponent and compare with the prediction");
    common(fit);
    modelled(fit);
    fit->add_flag("--subcone", subcone, "fit the genus-two configurations before the closing twist");
    auto* torus = app.add_subcommand("torus-census", "exact census of simple geodesics on a punctured torus");
    common(torus);
    auto* check = app.add_subcommand("check", "run a property suite");
    check->add_option("suite", suite, "totient | connectivity | pants | recursion")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        if (check->parsed()) return cmd_check(suite);
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        if (!signature.empty()) apply_setting(cfg, "signature", signature);
        if (!weights.empty()) apply_weights(cfg, weights);
        if (!format.empty()) apply_setting(cfg, "format", format);
        if (!out.empty()) cfg.out = out;
        if (lmax) cfg.lmax = *lmax;
        if (lmin) cfg.lmin = *lmin;
        if (include_boundary) cfg.include_boundary = true;
        if (count->parsed()) return cmd_count(cfg);
        if (fit->parsed()) return cmd_fit(cfg, subcone);
        return cmd_torus(cfg);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
