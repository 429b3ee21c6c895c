#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "count_table.hpp"

namespace curvecount {

// Primitive slope p/q up to sign, normalized to q > 0 or (p, q) = (1, 0).
struct Slope {
    std::int64_t p = 0;
    std::int64_t q = 1;

    static Slope canonical(std::int64_t p, std::int64_t q) {
        if (p == 0 && q == 0) throw std::invalid_argument("slope (0, 0) is not primitive");
        if (std::gcd(p, q) != 1) throw std::invalid_argument("slope is not primitive");
        if (q < 0 || (q == 0 && p < 0)) {
            p = -p;
            q = -q;
        }
        return {p, q};
    }
    bool is_canonical() const { return std::gcd(p, q) == 1 && (q > 0 || (q == 0 && p == 1)); }
    friend bool operator==(const Slope&, const Slope&) = default;
};

using Mat2 = std::array<double, 4>;  // row-major

inline Mat2 mul(const Mat2& x, const Mat2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}
inline Mat2 inverse_sl2(const Mat2& x) { return {x[3], -x[1], -x[2], x[0]}; }
inline double trace(const Mat2& x) { return x[0] + x[3]; }
inline double det(const Mat2& x) { return x[0] * x[3] - x[1] * x[2]; }

// Once-cusped hyperbolic torus given by holonomies of the two generators.
struct FuchsianTorus {
    Mat2 a{1, 1, 1, 2};
    Mat2 b{1, -1, -1, 2};

    double commutator_trace() const { return trace(mul(mul(a, b), mul(inverse_sl2(a), inverse_sl2(b)))); }

    void validate(double tol = 1e-9) const {
        if (std::abs(det(a) - 1) > tol || std::abs(det(b) - 1) > tol)
            throw std::invalid_argument("generators must have determinant 1");
        if (std::abs(commutator_trace() + 2) > tol)
            throw std::invalid_argument("commutator trace is " + format_real(commutator_trace()) + ", expected -2");
    }
};

// Christoffel word with q letters a and |p| letters b (b^-1, written B, when
// p < 0), letters in balanced order.
inline std::string slope_word(const Slope& s) {
    if (!s.is_canonical()) throw std::invalid_argument("slope_word: slope not canonical");
    std::int64_t q = s.q, p = std::abs(s.p), n = p + q;
    char bl = s.p < 0 ? 'B' : 'b';
    std::string w;
    w.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) w += (i * p / n - (i - 1) * p / n) ? bl : 'a';
    return w;
}

inline Mat2 word_matrix(const std::string& w, const FuchsianTorus& t) {
    Mat2 m{1, 0, 0, 1};
    Mat2 binv = inverse_sl2(t.b);
    for (char c : w) m = mul(m, c == 'a' ? t.a : c == 'b' ? t.b : binv);
    return m;
}

inline double slope_trace(const Slope& s, const FuchsianTorus& t) {
    return std::abs(trace(word_matrix(slope_word(s), t)));
}

inline double length_from_trace(double tr) {
    if (!(tr > 2)) throw std::domain_error("element is not hyperbolic (|trace| <= 2)");
    return 2 * std::acosh(tr / 2);
}

inline double geodesic_length(const Slope& s, const FuchsianTorus& t) { return length_from_trace(slope_trace(s, t)); }

struct CensusEntry {
    Slope slope;
    double trace;
    double length;
};

struct TorusCensus {
    std::vector<CensusEntry> entries;  // sorted by length, then slope
    bool pruned = true;                // false when the box scan was used
    CountTable table() const {
        std::vector<CountTable::Jump> j;
        for (const auto& e : entries) j.emplace_back(e.length, 1);
        return CountTable::from_jumps(std::move(j));
    }
};

// Whether trace is nondecreasing from every Stern-Brocot node to its children
// for slopes with |p| + |q| <= limit.
inline bool stern_brocot_monotone(const FuchsianTorus& t, std::int64_t limit = 64) {
    struct Node {
        Slope l, r;
    };
    std::deque<Node> queue{{{0, 1}, {1, 0}}, {{-1, 0}, {0, 1}}};
    while (!queue.empty()) {
        auto [l, r] = queue.front();
        queue.pop_front();
        Slope m{l.p + r.p, l.q + r.q};
        if (std::abs(m.p) + m.q > limit) continue;
        double tm = slope_trace(Slope::canonical(m.p, m.q), t);
        for (const Slope& parent : {l, r}) {
            if (parent.p == -1 && parent.q == 0) continue;
            if (tm + 1e-9 * tm < slope_trace(Slope::canonical(parent.p, parent.q), t)) return false;
        }
        queue.push_back({l, m});
        queue.push_back({m, r});
    }
    return true;
}

inline void sort_census(std::vector<CensusEntry>& e) {
    std::sort(e.begin(), e.end(), [](const CensusEntry& x, const CensusEntry& y) {
        if (x.length != y.length) return x.length < y.length;
        return std::pair{x.slope.p, x.slope.q} < std::pair{y.slope.p, y.slope.q};
    });
}

// Exact list of canonical primitive slopes of geodesic length <= L.
inline TorusCensus torus_census(double L, const FuchsianTorus& t = {}) {
    t.validate();
    if (!(L > 0)) throw std::invalid_argument("torus_census: L must be positive");
    TorusCensus out;
    auto consider = [&](Slope s) {
        double tr = slope_trace(s, t);
        double len = length_from_trace(tr);
        if (len <= L * (1 + 1e-12)) out.entries.push_back({s, tr, len});
        return len <= L * (1 + 1e-12);
    };
    if (stern_brocot_monotone(t)) {
        consider({0, 1});
        consider({1, 0});
        struct Node {
            Slope l, r;
        };
        std::deque<Node> queue{{{0, 1}, {1, 0}}, {{-1, 0}, {0, 1}}};
        while (!queue.empty()) {
            auto [l, r] = queue.front();
            queue.pop_front();
            Slope m{l.p + r.p, l.q + r.q};
            if (!consider(Slope::canonical(m.p, m.q))) continue;
            queue.push_back({l, m});
            queue.push_back({m, r});
        }
    } else {
        // Grow the box ring by ring until two consecutive rings add nothing.
        out.pruned = false;
        int empty_rings = 0;
        for (std::int64_t B = 1; empty_rings < 2; ++B) {
            if (B > 4096) throw std::runtime_error("torus_census: box scan did not terminate");
            bool any = false;
            for (std::int64_t p = -B; p <= B; ++p)
                for (std::int64_t q = 0; q <= B; ++q) {
                    if (std::max(std::abs(p), q) != B || std::gcd(p, q) != 1) continue;
                    if (q == 0 && p != 1) continue;
                    any = consider({p, q}) || any;
                }
            empty_rings = any ? 0 : empty_rings + 1;
        }
    }
    sort_census(out.entries);
    return out;
}

inline std::string census_csv(const TorusCensus& c) {
    std::string out = "p,q,trace,length\n";
    for (const auto& e : c.entries)
        out += std::to_string(e.slope.p) + "," + std::to_string(e.slope.q) + "," + format_real(e.trace) + "," +
               format_real(e.length) + "\n";
    return out;
}

}  // namespace curvecount
