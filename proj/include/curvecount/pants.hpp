#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvecount {

struct SurfaceSignature {
    int genus = 0;
    int boundary = 0;
    int cusps = 0;

    int euler_characteristic() const { return 2 - 2 * genus - boundary - cusps; }
    bool hyperbolic() const { return genus >= 0 && boundary >= 0 && cusps >= 0 && euler_characteristic() < 0; }
    int holes() const { return boundary + cusps; }
    int dimension() const { return 6 * genus - 6 + 2 * boundary + 2 * cusps; }

    friend bool operator==(const SurfaceSignature&, const SurfaceSignature&) = default;
};

// Boundary labels of a pair of pants; cyclic order A -> B -> C.
enum class Side : int { A = 0, B = 1, C = 2 };

inline constexpr int index(Side s) { return static_cast<int>(s); }
inline constexpr Side side_at(int i) { return static_cast<Side>(((i % 3) + 3) % 3); }
inline constexpr Side next(Side s) { return side_at(index(s) + 1); }
inline constexpr Side prev(Side s) { return side_at(index(s) + 2); }
inline constexpr char letter(Side s) { return "ABC"[index(s)]; }

// Multiplicities of the essential arc classes on one pair of pants.
// cross[0] joins A-B, cross[1] joins B-C, cross[2] joins C-A.
struct PantsConfig {
    std::array<std::uint64_t, 3> same{};
    std::array<std::uint64_t, 3> cross{};

    // Cross arcs between s and next(s).
    std::uint64_t to_next(Side s) const { return cross[index(s)]; }
    // Cross arcs between s and prev(s).
    std::uint64_t to_prev(Side s) const { return cross[index(prev(s))]; }

    bool valid() const {
        int nonzero = 0;
        for (int i = 0; i < 3; ++i) {
            if (same[i] == 0) continue;
            ++nonzero;
            // an arc from s back to s separates the other two boundaries
            if (to_next(next(side_at(i))) != 0) return false;
        }
        return nonzero <= 1;
    }

    friend bool operator==(const PantsConfig&, const PantsConfig&) = default;
};

inline std::array<std::uint64_t, 3> boundary_counts(const PantsConfig& c) {
    std::array<std::uint64_t, 3> x{};
    for (int i = 0; i < 3; ++i) {
        Side s = side_at(i);
        x[i] = 2 * c.same[i] + c.to_next(s) + c.to_prev(s);
    }
    return x;
}

inline PantsConfig arc_config_from_boundary_counts(std::uint64_t xa, std::uint64_t xb, std::uint64_t xc) {
    if ((xa + xb + xc) % 2 != 0) throw std::invalid_argument("boundary counts have odd sum");
    std::array<std::uint64_t, 3> x{xa, xb, xc};
    PantsConfig c;
    for (int i = 0; i < 3; ++i) {
        std::uint64_t others = x[(i + 1) % 3] + x[(i + 2) % 3];
        if (x[i] > others) {
            Side s = side_at(i);
            c.same[i] = (x[i] - others) / 2;
            c.cross[index(s)] = x[index(next(s))];
            c.cross[index(prev(s))] = x[index(prev(s))];
            return c;
        }
    }
    c.cross[0] = (xa + xb - xc) / 2;
    c.cross[1] = (xb + xc - xa) / 2;
    c.cross[2] = (xc + xa - xb) / 2;
    return c;
}

// One endpoint on a boundary in planar position.
struct EndpointLabel {
    enum class Kind { Outer, Inner, Cross } kind;
    Side partner;         // the other end's boundary (same boundary for nests)
    std::uint64_t number; // 1-based strand number within its nest or block

    std::string str() const {
        switch (kind) {
            case Kind::Outer: return std::to_string(number);
            case Kind::Inner: return std::to_string(number) + "'";
            case Kind::Cross: break;
        }
        return std::string(1, static_cast<char>('a' + index(partner))) + std::to_string(number);
    }
    friend bool operator==(const EndpointLabel&, const EndpointLabel&) = default;
};

// Counterclockwise order 1..s, [block to next], s'..1', [block to prev]; the
// block towards the cyclic successor sits inside the nest.
inline std::vector<EndpointLabel> canonical_endpoint_order(const PantsConfig& c, Side s) {
    if (!c.valid()) throw std::invalid_argument("invalid pants configuration");
    using K = EndpointLabel::Kind;
    std::vector<EndpointLabel> out;
    std::uint64_t nest = c.same[index(s)];
    for (std::uint64_t i = 1; i <= nest; ++i) out.push_back({K::Outer, s, i});
    for (std::uint64_t i = 1; i <= c.to_next(s); ++i) out.push_back({K::Cross, next(s), i});
    for (std::uint64_t i = nest; i >= 1; --i) out.push_back({K::Inner, s, i});
    for (std::uint64_t i = 1; i <= c.to_prev(s); ++i) out.push_back({K::Cross, prev(s), i});
    return out;
}

// Nesting check on a linear order: every strand's endpoints enclose those of
// higher-numbered strands, and chords never cross.
inline bool is_non_crossing(const std::vector<EndpointLabel>& order) {
    std::vector<std::uint64_t> stack;
    for (const auto& e : order) {
        if (e.kind == EndpointLabel::Kind::Outer) {
            if (!stack.empty() && e.number <= stack.back()) return false;
            stack.push_back(e.number);
        } else if (e.kind == EndpointLabel::Kind::Inner) {
            if (stack.empty() || stack.back() != e.number) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

// An arc described before it is turned into a PantsConfig. For an arc with
// both ends on the same boundary, `enclosed` lists the boundaries on one side.
struct RawArc {
    Side from;
    Side to;
    std::vector<Side> enclosed;
};

// A same-boundary arc is essential iff it separates the two other boundaries.
inline bool is_boundary_parallel_free(const std::vector<RawArc>& arcs) {
    for (const auto& a : arcs) {
        if (a.from != a.to) continue;
        int others = 0;
        for (Side s : a.enclosed) {
            if (s == a.from) return false;
            ++others;
        }
        if (others != 1) return false;
    }
    return true;
}

inline std::optional<PantsConfig> config_from_raw_arcs(const std::vector<RawArc>& arcs) {
    if (!is_boundary_parallel_free(arcs)) return std::nullopt;
    PantsConfig c;
    for (const auto& a : arcs) {
        if (a.from == a.to)
            ++c.same[index(a.from)];
        else if (a.to == next(a.from))
            ++c.cross[index(a.from)];
        else
            ++c.cross[index(a.to)];
    }
    if (!c.valid()) return std::nullopt;
    return c;
}

}  // namespace curvecount
