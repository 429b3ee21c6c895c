#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "gluing.hpp"

namespace curvecount {

// Which residues p mod n close a system into a single curve, with prefix
// sums so that #{p in [0, P] : connected(p + shift)} is O(1).
class ResidueSet {
public:
    ResidueSet() = default;
    explicit ResidueSet(std::vector<bool> connected) : connected_(std::move(connected)) {
        prefix_.assign(connected_.size() + 1, 0);
        for (std::size_t i = 0; i < connected_.size(); ++i) prefix_[i + 1] = prefix_[i] + (connected_[i] ? 1 : 0);
    }

    std::uint64_t period() const { return connected_.size(); }
    bool contains(std::uint64_t p) const { return connected_[p % period()]; }
    std::uint64_t per_period() const { return prefix_.back(); }

    // #{p in [0, P] : residue (p + shift) mod n connected}.
    std::uint64_t count_upto(std::uint64_t P, std::uint64_t shift = 0) const {
        std::uint64_t n = period();
        shift %= n;
        // residues shift .. shift + P, i.e. the window [shift, shift + P]
        return cumulative(shift + P + 1) - cumulative(shift);
    }

private:
    // #{q in [0, Q) : connected(q mod n)}
    std::uint64_t cumulative(std::uint64_t Q) const {
        std::uint64_t n = period();
        return (Q / n) * prefix_.back() + prefix_[Q % n];
    }

    std::vector<bool> connected_;
    std::vector<std::uint64_t> prefix_;
};

// A system whose only free endpoints lie on two boundaries of equal size,
// to be glued to each other with a free twist.
class ClosingProblem {
public:
    ClosingProblem(const CurveSystem& s, BoundaryId u, BoundaryId v) {
        const auto& bu = s.boundary(u);
        const auto& bv = s.boundary(v);
        n_ = bu.ids.size();
        if (bv.ids.size() != n_ || bu.attached || bv.attached)
            throw std::invalid_argument("closing boundaries must be free and of equal size");
        if (s.closed_loop_count() != 0) throw std::invalid_argument("closing problem has closed loops before gluing");
        std::vector<std::uint32_t> slot(s.endpoint_count(), CurveSystem::none);
        for (std::uint32_t j = 0; j < n_; ++j) {
            slot[bu.ids[j]] = j;
            slot[bv.ids[j]] = static_cast<std::uint32_t>(n_ + j);
        }
        auto fm = s.free_matching();
        mu_.assign(2 * n_, 0);
        for (std::uint32_t e = 0; e < s.endpoint_count(); ++e) {
            if (s.link(e) != CurveSystem::none) continue;
            if (slot[e] == CurveSystem::none) throw std::invalid_argument("free endpoint off the closing boundaries");
            mu_[slot[e]] = slot[fm[e]];
        }
    }

    std::uint64_t size() const { return n_; }
    const std::vector<std::uint32_t>& internal_matching() const { return mu_; }

    // Components after gluing slot j of u to slot n-1-j-p of v.
    std::size_t components(std::uint64_t p) const {
        std::uint64_t n = n_;
        if (n == 0) return 0;
        p %= n;
        std::vector<bool> seen(2 * n);
        std::size_t comps = 0;
        for (std::uint64_t s = 0; s < 2 * n; ++s) {
            if (seen[s]) continue;
            ++comps;
            std::uint64_t e = s;
            do {
                seen[e] = true;
                std::uint64_t m = mu_[e];
                seen[m] = true;
                e = m < n ? n + (2 * n - 1 - m - p) % n : (2 * n - 1 - (m - n) - p) % n;
            } while (e != s);
        }
        return comps;
    }

    // Single-component test: walk the cycle through slot 0 only.
    bool connected(std::uint64_t p) const {
        std::uint64_t n = n_;
        if (n == 0) return false;
        p %= n;
        std::uint64_t e = 0, visited = 0;
        do {
            std::uint64_t m = mu_[e];
            visited += 2;
            e = m < n ? n + (2 * n - 1 - m - p) % n : (2 * n - 1 - (m - n) - p) % n;
        } while (e != 0);
        return visited == 2 * n;
    }

    ResidueSet connected_residues() const {
        std::vector<bool> c(n_);
        for (std::uint64_t p = 0; p < n_; ++p) c[p] = connected(p);
        return ResidueSet(std::move(c));
    }

private:
    std::uint64_t n_ = 0;
    std::vector<std::uint32_t> mu_;
};

// Two nests of k strands on either side of a separating curve.
inline CurveSystem nested_sides(std::uint64_t k) {
    CurveSystem s;
    s.add_pants(arc_config_from_boundary_counts(0, 0, 2 * k), {"A", "B", "E"});
    s.add_pants(arc_config_from_boundary_counts(0, 0, 2 * k), {"C", "D", "E'"});
    return s;
}

// Cut-open genus-one chain: pants (E1, A1, F1), (F1', A2, F2), ..., ending at
// E2, with intermediate counts `inner` and residue-zero gluings.
inline CurveSystem genus_one_chain(std::uint64_t k, const std::vector<std::uint64_t>& inner) {
    CurveSystem s;
    std::uint64_t prev = k;
    std::string prev_name = "E1";
    std::vector<std::uint64_t> counts = inner;
    counts.push_back(k);
    BoundaryId open = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        bool last = i + 1 == counts.size();
        std::string out = last ? "E2" : "F" + std::to_string(i + 1);
        auto ids = s.add_pants(arc_config_from_boundary_counts(prev, 0, counts[i]),
                               {i == 0 ? "E1" : prev_name + "'", "A" + std::to_string(i + 1), out});
        if (i > 0) s.glue(open, ids[0], TwistGluing{prev, 0}, prev_name);
        open = ids[2];
        prev = counts[i];
        prev_name = out;
    }
    return s;
}

// One-holed torus carrying k parallel arcs that cross the core curve v times
// each: pants (E, P, Q) with counts (2k, kv, kv), P glued to Q with twist
// k mod kv. Returns the system with E free.
inline CurveSystem torus_cap(std::uint64_t k, std::uint64_t v, std::uint64_t full_turns = 0) {
    CurveSystem s;
    auto ids = s.add_pants(arc_config_from_boundary_counts(2 * k, k * v, k * v), {"E", "P", "Q"});
    std::uint64_t n = k * v;
    s.glue(ids[1], ids[2], TwistGluing{n, k % n + full_turns * n}, "C");
    return s;
}

// Pants (E, F, A) with counts (2k, 2m, 0) whose F side is closed off by a
// nest of m strands glued with zero twist. The F block sits inside the E nest.
inline CurveSystem nest_extension(std::uint64_t k, std::uint64_t m, std::uint64_t full_turns = 0) {
    CurveSystem s;
    auto outer = s.add_pants(arc_config_from_boundary_counts(2 * k, 2 * m, 0), {"E", "F", "A"});
    auto inner = s.add_pants(arc_config_from_boundary_counts(2 * m, 0, 0), {"F'", "B", "C"});
    s.glue(outer[1], inner[0], TwistGluing{2 * m, full_turns * 2 * m}, "F");
    return s;
}

inline bool carries_canonical_nest(const CurveSystem& s, BoundaryId b) {
    return s.closed_loop_count() == 0 && is_canonical_nest(s.boundary_matching(b));
}

// Traversal results shared across counts. Thread-safe memoization.
class ConnectivityCache {
public:
    // Residues over 2k for two nested sides.
    std::shared_ptr<const ResidueSet> nested(std::uint64_t k) {
        return memo(nested_, k, [&] {
            auto s = nested_sides(k);
            return ClosingProblem(s, s.find("E"), s.find("E'")).connected_residues();
        });
    }

    // Residues over k for closing the genus-one chain E1 -> E2.
    std::shared_ptr<const ResidueSet> genus_one(std::uint64_t k, const std::vector<std::uint64_t>& inner) {
        std::vector<std::uint64_t> key = inner;
        key.insert(key.begin(), k);
        return memo(genus_one_, key, [&] {
            auto s = genus_one_chain(k, inner);
            return ClosingProblem(s, s.find("E1"), s.find("E2")).connected_residues();
        });
    }

    // Whether the torus cap (k, v) is loop free and nested on E.
    bool cap_nested(std::uint64_t k, std::uint64_t v) {
        return *memo(caps_, std::pair{k, v}, [&] {
            auto s = torus_cap(k, v);
            return carries_canonical_nest(s, s.find("E"));
        });
    }

    // Whether a nest of m strands pushed through (E, F, A) stays a nest on E.
    bool extension_nested(std::uint64_t k, std::uint64_t m) {
        return *memo(extensions_, std::pair{k, m}, [&] {
            auto s = nest_extension(k, m);
            return carries_canonical_nest(s, s.find("E"));
        });
    }

private:
    template <class Map, class Key, class F>
    auto memo(Map& map, const Key& key, F&& make) -> typename Map::mapped_type {
        {
            std::lock_guard lock(mutex_);
            auto it = map.find(key);
            if (it != map.end()) return it->second;
        }
        auto value = std::make_shared<const typename Map::mapped_type::element_type>(make());
        std::lock_guard lock(mutex_);
        return map.emplace(key, value).first->second;
    }

    std::mutex mutex_;
    std::map<std::uint64_t, std::shared_ptr<const ResidueSet>> nested_;
    std::map<std::vector<std::uint64_t>, std::shared_ptr<const ResidueSet>> genus_one_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const bool>> caps_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const bool>> extensions_;
};

}  // namespace curvecount
