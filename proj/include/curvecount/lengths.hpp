#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "gluing.hpp"

namespace curvecount {

// Combinatorial stand-in for hyperbolic length. `alpha` is paid per strand
// endpoint on a cut curve, `weight(curve)` per full twist about that curve,
// and half of it per endpoint position for position-charged gluings.
struct LengthModel {
    double alpha = 1.0;
    double default_weight = 1.0;
    std::map<std::string, double> curve_weights;
    double base_length = 1.0;

    double weight(const std::string& curve) const {
        auto it = curve_weights.find(curve);
        return it == curve_weights.end() ? default_weight : it->second;
    }

    void validate() const {
        if (!(alpha > 0) || !(default_weight > 0) || !(base_length > 0))
            throw std::invalid_argument("length model weights must be positive");
        for (const auto& [name, w] : curve_weights)
            if (!(w > 0)) throw std::invalid_argument("curve weight for " + name + " must be positive");
    }

    LengthModel scaled(double s) const {
        LengthModel m = *this;
        m.alpha *= s;
        m.default_weight *= s;
        m.base_length *= s;
        for (auto& [name, w] : m.curve_weights) w *= s;
        return m;
    }
};

inline double twist_charge(const TwistGluing& g, double w) {
    if (g.charge == TwistCharge::Positions) return 0.5 * w * static_cast<double>(g.twist);
    return w * static_cast<double>(g.full_turns());
}

inline double combinatorial_length(const CurveSystem& s, const LengthModel& m) {
    double len = m.alpha * static_cast<double>(s.endpoint_count());
    for (const auto& g : s.gluings()) len += twist_charge(g.twist, m.weight(g.curve));
    return len;
}

// Iterated Dehn-twist bound: each twist about a curve of length l that the
// curve meets i times adds at most i * l.
inline double twist_length_bound(double base, std::uint64_t intersections, double twist_curve_length,
                                 std::uint64_t twists) {
    if (base < 0 || twist_curve_length < 0) throw std::invalid_argument("twist_length_bound: negative input");
    return base + static_cast<double>(twists) * static_cast<double>(intersections) * twist_curve_length;
}

}  // namespace curvecount
