#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace curvecount {

inline bool same_length(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

inline std::string format_real(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// Right-continuous nondecreasing step function L -> N(L).
class CountTable {
public:
    using Jump = std::pair<double, std::uint64_t>;

    CountTable() = default;

    // Jumps may come unsorted and repeated; equal positions are merged.
    static CountTable from_jumps(std::vector<Jump> jumps) {
        std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.first < b.first; });
        CountTable t;
        std::uint64_t total = 0;
        for (const auto& [x, d] : jumps) {
            if (d == 0) continue;
            if (x < 0) throw std::invalid_argument("count table breakpoints must be nonnegative");
            total += d;
            if (!t.breaks_.empty() && same_length(t.breaks_.back(), x))
                t.counts_.back() = total;
            else {
                t.breaks_.push_back(x);
                t.counts_.push_back(total);
            }
        }
        return t;
    }

    static CountTable step(double at, std::uint64_t height = 1) { return from_jumps({{at, height}}); }

    std::uint64_t operator()(double L) const {
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), L + 1e-9 * std::max(1.0, std::abs(L)));
        if (it == breaks_.begin()) return 0;
        return counts_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    }

    std::vector<Jump> jumps() const {
        std::vector<Jump> out;
        out.reserve(breaks_.size());
        std::uint64_t prev = 0;
        for (std::size_t i = 0; i < breaks_.size(); ++i) {
            out.emplace_back(breaks_[i], counts_[i] - prev);
            prev = counts_[i];
        }
        return out;
    }

    std::span<const double> breakpoints() const { return breaks_; }
    std::span<const std::uint64_t> counts() const { return counts_; }
    bool empty() const { return breaks_.empty(); }
    std::size_t size() const { return breaks_.size(); }
    std::uint64_t total() const { return counts_.empty() ? 0 : counts_.back(); }

    bool valid() const {
        for (std::size_t i = 1; i < breaks_.size(); ++i)
            if (!(breaks_[i] > breaks_[i - 1]) || counts_[i] < counts_[i - 1]) return false;
        return breaks_.empty() || counts_[0] > 0;
    }

    CountTable truncated(double Lmax) const {
        CountTable t;
        for (std::size_t i = 0; i < breaks_.size() && breaks_[i] <= Lmax + 1e-9 * std::max(1.0, Lmax); ++i) {
            t.breaks_.push_back(breaks_[i]);
            t.counts_.push_back(counts_[i]);
        }
        return t;
    }

    friend bool operator==(const CountTable&, const CountTable&) = default;

private:
    std::vector<double> breaks_;
    std::vector<std::uint64_t> counts_;
};

inline CountTable operator+(const CountTable& a, const CountTable& b) {
    auto j = a.jumps();
    auto jb = b.jumps();
    j.insert(j.end(), jb.begin(), jb.end());
    return CountTable::from_jumps(std::move(j));
}

inline CountTable scaled(const CountTable& a, std::uint64_t factor) {
    auto j = a.jumps();
    for (auto& [x, d] : j) d *= factor;
    return CountTable::from_jumps(std::move(j));
}

// Table of x + y for independent choices from both tables, cut at Lmax.
inline CountTable length_convolve(const CountTable& a, const CountTable& b, double Lmax) {
    std::vector<CountTable::Jump> out;
    auto jb = b.jumps();
    for (const auto& [x, dx] : a.jumps())
        for (const auto& [y, dy] : jb) {
            if (x + y > Lmax + 1e-9 * std::max(1.0, Lmax)) break;
            out.emplace_back(x + y, dx * dy);
        }
    return CountTable::from_jumps(std::move(out));
}

// g(L) = sum_x dN(x) * max(0, floor((L - x) / w)): every configuration of
// length x is extended by t >= 1 full twists of cost w.
inline CountTable stieltjes_convolve(const CountTable& inner, double twist_weight, double Lmax) {
    if (!(twist_weight > 0)) throw std::invalid_argument("stieltjes_convolve: twist weight must be positive");
    std::vector<CountTable::Jump> out;
    if (inner.empty()) return {};
    double tol = 1e-9 * std::max(1.0, Lmax);
    auto jumps = inner.jumps();
    double x0 = jumps.front().first;

    // Breakpoints on the lattice x0 + w Z make the output a shifted prefix sum.
    std::vector<std::uint64_t> grid(jumps.size());
    bool on_grid = true;
    for (std::size_t i = 0; i < jumps.size() && on_grid; ++i) {
        double steps = std::round((jumps[i].first - x0) / twist_weight);
        grid[i] = static_cast<std::uint64_t>(steps);
        on_grid = std::abs(jumps[i].first - (x0 + steps * twist_weight)) <= tol;
    }
    if (on_grid) {
        if (x0 + twist_weight > Lmax + tol) return {};
        auto top = static_cast<std::uint64_t>(std::floor((Lmax - x0) / twist_weight + 1e-9));
        std::uint64_t cum = 0;
        std::size_t i = 0;
        for (std::uint64_t n = 1; n <= top; ++n) {
            while (i < jumps.size() && grid[i] <= n - 1) cum += jumps[i++].second;
            out.emplace_back(x0 + static_cast<double>(n) * twist_weight, cum);
        }
        return CountTable::from_jumps(std::move(out));
    }
    for (const auto& [x, d] : jumps)
        for (std::uint64_t t = 1;; ++t) {
            double at = x + static_cast<double>(t) * twist_weight;
            if (at > Lmax + tol) break;
            out.emplace_back(at, d);
        }
    return CountTable::from_jumps(std::move(out));
}

inline std::vector<double> dyadic_points(double Lmin, double Lmax) {
    std::vector<double> out;
    for (double L = Lmin; L <= Lmax * (1 + 1e-12); L *= 2) out.push_back(L);
    return out;
}

// Least-squares slope of log N against log L at the given points.
inline double fit_exponent_at(const std::function<double(double)>& count, const std::vector<double>& pts) {
    if (pts.size() < 4) throw std::invalid_argument("fit_exponent_at: need at least four sample points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double L : pts) {
        double n = count(L);
        if (!(L > 0) || !(n > 0)) throw std::invalid_argument("fit: count vanishes at L = " + format_real(L));
        double x = std::log(L), y = std::log(n);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double m = static_cast<double>(pts.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// Same slope over the dyadic points of [Lmin, Lmax].
inline double fit_growth_exponent(const std::function<double(double)>& count, double Lmin, double Lmax) {
    if (!(Lmin > 0) || Lmax / Lmin < 16 * (1 - 1e-12))
        throw std::invalid_argument("fit_growth_exponent: need Lmin > 0 and Lmax/Lmin >= 16");
    return fit_exponent_at(count, dyadic_points(Lmin, Lmax));
}

// n geometrically spaced points from Lmin to Lmax inclusive.
inline std::vector<double> geometric_points(double Lmin, double Lmax, int n) {
    if (n < 2 || !(Lmin > 0) || !(Lmax > Lmin)) throw std::invalid_argument("geometric_points: bad range");
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(Lmin * std::pow(Lmax / Lmin, static_cast<double>(i) / (n - 1)));
    return out;
}

inline double fit_growth_exponent(const CountTable& table, double Lmin, double Lmax) {
    return fit_growth_exponent([&](double L) { return static_cast<double>(table(L)); }, Lmin, Lmax);
}

inline std::string to_csv(const CountTable& t) {
    std::string out = "L,count\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        out += format_real(t.breakpoints()[i]) + "," + std::to_string(t.counts()[i]) + "\n";
    return out;
}

inline nlohmann::json to_json(const CountTable& t) {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < t.size(); ++i) arr.push_back({{"L", t.breakpoints()[i]}, {"count", t.counts()[i]}});
    return arr;
}

}  // namespace curvecount
