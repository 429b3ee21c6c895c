#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "numtheory.hpp"
#include "pants.hpp"

namespace curvecount {

// How a gluing's twist enters the combinatorial length: per full turn (the
// fractional residue is free) or per endpoint position moved.
enum class TwistCharge { FullTurns, Positions };

// Identification of two boundaries carrying `points` endpoints each, rotated
// by `twist` positions. For a curve meeting the gluing curve 2k times,
// points = 2k and full_turns() is the Dehn-twist count.
struct TwistGluing {
    std::uint64_t points = 0;
    std::uint64_t twist = 0;
    TwistCharge charge = TwistCharge::FullTurns;

    static TwistGluing half_count(std::uint64_t k, std::uint64_t p, TwistCharge c = TwistCharge::FullTurns) {
        return {2 * k, p, c};
    }
    std::uint64_t full_turns() const { return points == 0 ? 0 : twist / points; }
    std::uint64_t residue() const { return points == 0 ? 0 : twist % points; }
};

// Rotation of the canonical cyclic labels 1..k, k'..1' by p positions, read in
// the frame of the first side: label index j goes to label index j + p.
inline std::vector<std::uint32_t> gluing_permutation(std::uint64_t k, std::uint64_t p) {
    if (k == 0) throw std::invalid_argument("gluing_permutation: k must be positive");
    std::uint64_t n = 2 * k;
    std::vector<std::uint32_t> perm(n);
    for (std::uint64_t j = 0; j < n; ++j) perm[j] = static_cast<std::uint32_t>((j + p) % n);
    return perm;
}

using BoundaryId = std::size_t;

// Strand endpoints joined by arcs inside pieces and by gluing links across
// boundaries. Every endpoint has exactly one arc partner and at most one link.
class CurveSystem {
public:
    static constexpr std::uint32_t none = 0xffffffffu;

    struct Boundary {
        std::string name;
        std::vector<std::uint32_t> ids;  // counterclockwise positions
        bool attached = false;
    };
    struct Gluing {
        BoundaryId first, second;
        TwistGluing twist;
        std::string curve;
    };

    std::size_t endpoint_count() const { return mate_.size(); }
    const Boundary& boundary(BoundaryId b) const { return boundaries_.at(b); }
    std::size_t boundary_count() const { return boundaries_.size(); }
    const std::vector<Gluing>& gluings() const { return gluings_; }
    std::uint32_t mate(std::uint32_t e) const { return mate_[e]; }
    std::uint32_t link(std::uint32_t e) const { return link_[e]; }

    BoundaryId find(const std::string& name) const {
        for (BoundaryId b = 0; b < boundaries_.size(); ++b)
            if (boundaries_[b].name == name) return b;
        throw std::invalid_argument("unknown boundary " + name);
    }

    // Adds the planar strand diagram of a pants configuration. Band arcs run
    // in reverse order between the two blocks; nests pair left with right.
    std::array<BoundaryId, 3> add_pants(const PantsConfig& c, const std::array<std::string, 3>& names) {
        if (!c.valid()) throw std::invalid_argument("invalid pants configuration");
        auto x = boundary_counts(c);
        std::array<BoundaryId, 3> ids{};
        struct Blocks {
            std::vector<std::uint32_t> left, to_next, right, to_prev;
        };
        std::array<Blocks, 3> blocks;
        for (int i = 0; i < 3; ++i) {
            ids[i] = new_boundary(names[i], x[i]);
            const auto& pos = boundaries_[ids[i]].ids;
            Side s = side_at(i);
            auto nest = c.same[i];
            auto it = pos.begin();
            auto take = [&](std::uint64_t n) {
                std::vector<std::uint32_t> out(it, it + static_cast<std::ptrdiff_t>(n));
                it += static_cast<std::ptrdiff_t>(n);
                return out;
            };
            blocks[i].left = take(nest);
            blocks[i].to_next = take(c.to_next(s));
            blocks[i].right = take(nest);
            blocks[i].to_prev = take(c.to_prev(s));
        }
        for (int i = 0; i < 3; ++i) {
            const auto& l = blocks[i].left;
            const auto& r = blocks[i].right;
            for (std::size_t j = 0; j < l.size(); ++j) join(l[j], r[r.size() - 1 - j]);
            const auto& a = blocks[i].to_next;
            const auto& b = blocks[(i + 1) % 3].to_prev;
            for (std::size_t j = 0; j < a.size(); ++j) join(a[j], b[b.size() - 1 - j]);
        }
        return ids;
    }

    // Position j of `u` meets position (n - 1 - j - p) mod n of `v`.
    void glue(BoundaryId u, BoundaryId v, TwistGluing g, std::string curve = {}) {
        auto& bu = boundaries_.at(u);
        auto& bv = boundaries_.at(v);
        if (u == v || bu.attached || bv.attached) throw std::invalid_argument("boundary already attached");
        std::uint64_t n = bu.ids.size();
        if (bv.ids.size() != n || g.points != n) throw std::invalid_argument("endpoint counts disagree across gluing");
        for (std::uint64_t j = 0; j < n; ++j) {
            std::uint64_t y = (2 * n - 1 - j - g.twist % n) % n;
            link_[bu.ids[j]] = bv.ids[y];
            link_[bv.ids[y]] = bu.ids[j];
        }
        bu.attached = bv.attached = true;
        gluings_.push_back({u, v, g, std::move(curve)});
    }

    // Joins position i to position 2k-1-i along a disk glued into `b`.
    void cap_with_disk(BoundaryId b) {
        auto& bb = boundaries_.at(b);
        if (bb.attached) throw std::invalid_argument("boundary already attached");
        std::size_t n = bb.ids.size();
        if (n % 2 != 0) throw std::invalid_argument("disk cap needs an even endpoint count");
        for (std::size_t i = 0; i < n; ++i) link_[bb.ids[i]] = bb.ids[n - 1 - i];
        bb.attached = true;
    }

    // Connected components of the strand graph (closed curves and open paths).
    std::size_t component_count() const {
        std::vector<bool> seen(mate_.size());
        std::size_t comps = 0;
        for (std::uint32_t s = 0; s < mate_.size(); ++s) {
            if (seen[s]) continue;
            ++comps;
            walk(s, seen);
        }
        return comps;
    }

    // Components without free endpoints.
    std::size_t closed_loop_count() const {
        std::vector<bool> seen(mate_.size());
        std::size_t loops = 0;
        for (std::uint32_t s = 0; s < mate_.size(); ++s)
            if (link_[s] == none && !seen[s]) walk(s, seen);
        for (std::uint32_t s = 0; s < mate_.size(); ++s) {
            if (seen[s]) continue;
            ++loops;
            walk(s, seen);
        }
        return loops;
    }

    // For each free endpoint, the free endpoint at the other end of its path.
    std::vector<std::uint32_t> free_matching() const {
        std::vector<std::uint32_t> out(mate_.size(), none);
        for (std::uint32_t s = 0; s < mate_.size(); ++s) {
            if (link_[s] != none || out[s] != none) continue;
            std::uint32_t e = mate_[s];
            while (link_[e] != none) e = mate_[link_[e]];
            out[s] = e;
            out[e] = s;
        }
        return out;
    }

    // Partner position on the same boundary, or `none` if the path ends elsewhere.
    std::vector<std::uint32_t> boundary_matching(BoundaryId b) const {
        const auto& ids = boundaries_.at(b).ids;
        auto fm = free_matching();
        std::vector<std::uint32_t> pos_of(mate_.size(), none);
        for (std::uint32_t i = 0; i < ids.size(); ++i) pos_of[ids[i]] = i;
        std::vector<std::uint32_t> out(ids.size(), none);
        for (std::uint32_t i = 0; i < ids.size(); ++i) {
            auto e = fm[ids[i]];
            if (e != none) out[i] = pos_of[e];
        }
        return out;
    }

private:
    BoundaryId new_boundary(std::string name, std::uint64_t n) {
        Boundary b{std::move(name), {}, false};
        b.ids.resize(n);
        for (auto& id : b.ids) {
            id = static_cast<std::uint32_t>(mate_.size());
            mate_.push_back(none);
            link_.push_back(none);
        }
        boundaries_.push_back(std::move(b));
        return boundaries_.size() - 1;
    }
    void join(std::uint32_t a, std::uint32_t b) {
        mate_[a] = b;
        mate_[b] = a;
    }
    void walk(std::uint32_t s, std::vector<bool>& seen) const {
        std::vector<std::uint32_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto v : {mate_[u], link_[u]})
                if (v != none && !seen[v]) {
                    seen[v] = true;
                    stack.push_back(v);
                }
        }
    }

    std::vector<std::uint32_t> mate_, link_;
    std::vector<Boundary> boundaries_;
    std::vector<Gluing> gluings_;
};

inline std::size_t component_count(const CurveSystem& s) { return s.component_count(); }

// Two planar k-strand nests (the only essential k-arc system on a pants with
// all endpoints on one boundary) glued along that boundary with twist p.
inline CurveSystem nested_gluing_system(std::uint64_t k, std::uint64_t p, TwistCharge charge = TwistCharge::FullTurns) {
    CurveSystem s;
    auto a = s.add_pants(arc_config_from_boundary_counts(0, 0, 2 * k), {"A", "B", "E"});
    auto b = s.add_pants(arc_config_from_boundary_counts(0, 0, 2 * k), {"C", "D", "E'"});
    s.glue(a[2], b[2], TwistGluing::half_count(k, p, charge), "E");
    return s;
}

inline bool is_connected_twist(std::uint64_t k, std::uint64_t p) {
    if (k == 0) throw std::invalid_argument("is_connected_twist: k must be positive");
    return nested_gluing_system(k, p % (2 * k)).component_count() == 1;
}

// #{p in [1, 2kN] : gcd(p, 2k) = 1}, by periodicity N * phi(2k).
inline std::uint64_t coprime_twist_count(std::uint64_t k, std::uint64_t N) {
    if (k == 0 || N == 0) throw std::invalid_argument("coprime_twist_count: k and N must be positive");
    return N * euler_phi(2 * k);
}

inline bool is_canonical_nest(const std::vector<std::uint32_t>& matching) {
    std::size_t n = matching.size();
    for (std::size_t i = 0; i < n; ++i)
        if (matching[i] != n - 1 - i) return false;
    return true;
}

// Caps `b` with a disk joining position i to its mirror 2k-1-i, the order
// induced by a planar nest on the far side.
inline CurveSystem disk_trick_closure(CurveSystem s, BoundaryId b) {
    if (s.boundary(b).attached) throw std::invalid_argument("disk trick: boundary already attached");
    s.cap_with_disk(b);
    return s;
}

// Replaces the piece `far` (attached along `far_b` with zero twist) by a disk.
// Valid only when `far` carries no loops and induces the canonical nest on
// `far_b`; then the capped system has the same components as the glued one.
inline CurveSystem disk_trick_closure(CurveSystem s, BoundaryId b, const CurveSystem& far, BoundaryId far_b) {
    if (far.boundary(far_b).ids.size() != s.boundary(b).ids.size())
        throw std::invalid_argument("disk trick: endpoint counts disagree");
    if (far.closed_loop_count() != 0 || !is_canonical_nest(far.boundary_matching(far_b)))
        throw std::invalid_argument("disk trick: boundary does not carry the nested order");
    return disk_trick_closure(std::move(s), b);
}

}  // namespace curvecount
