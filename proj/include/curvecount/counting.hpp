#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "closing.hpp"
#include "count_table.hpp"
#include "lengths.hpp"
#include "pants.hpp"

namespace curvecount {

// Runs f(0..n-1) on a small thread pool; callers write results into
// per-index slots so the reduction order stays fixed.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                try {
                    for (std::size_t i; (i = next++) < n;) f(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = n;
                }
            });
    }
    if (failure) std::rethrow_exception(failure);
}

inline CountTable base_pants_table(const LengthModel& m) { return CountTable::step(m.base_length); }

// Curve labels used for twist weights.
namespace curve {
inline const std::string closing = "E";
inline const std::string inner = "F";
inline const std::string core = "C";
inline const std::string handle = "G";
inline const std::string rest = "H";
}  // namespace curve

// Arc systems with k strands ending on one boundary of a sphere with
// `boundaries` holes in total: the base pants step, then
// T(c, k) = sum_{m <= k} stieltjes(T(c - 1, m)).
class SphereTables {
public:
    SphereTables(LengthModel model, double Lmax) : model_(std::move(model)), Lmax_(Lmax) {}

    const CountTable& operator()(int boundaries, std::uint64_t k) {
        if (boundaries < 3) throw std::invalid_argument("sphere tables need at least three boundaries");
        static const CountTable empty;
        if (k == 0) return empty;
        auto key = std::pair{boundaries, k};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        CountTable t;
        if (boundaries == 3)
            t = base_pants_table(model_);
        else
            t = (*this)(boundaries, k - 1) +
                stieltjes_convolve((*this)(boundaries - 1, k), model_.weight(curve::inner), Lmax_);
        return memo_.emplace(key, std::move(t)).first->second;
    }

private:
    LengthModel model_;
    double Lmax_;
    std::map<std::pair<int, std::uint64_t>, CountTable> memo_;
};

inline CountTable sphere_multicurve_table(int boundaries, std::uint64_t k, const LengthModel& model, double Lmax) {
    SphereTables tables(model, Lmax);
    for (std::uint64_t j = 1; j < k; ++j) tables(boundaries, j);
    return tables(boundaries, k);
}

// Cut-open genus-one surface with `holes` holes, k strands on E1, l on E2:
// a chain of pants whose intermediate counts m_1 <= ... <= m_{c-1} <= l share
// the parity of l and are advanced by full twists.
inline CountTable genus_one_table(int holes, std::uint64_t k, std::uint64_t l, const LengthModel& model, double Lmax) {
    if (holes < 1) throw std::invalid_argument("genus_one_table: need at least one hole");
    if ((k + l) % 2 != 0 || k + l == 0) return {};
    if (holes == 1) return base_pants_table(model);
    CountTable out;
    for (std::uint64_t m = (l % 2 == 0 ? 2 : 1); m <= l; m += 2)
        out = out + stieltjes_convolve(genus_one_table(holes - 1, k, m, model, Lmax), model.weight(curve::inner), Lmax);
    return out;
}

// Intermediate count sequences of the genus-one chain closing up at k.
inline std::vector<std::vector<std::uint64_t>> genus_one_sequences(int holes, std::uint64_t k) {
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur;
    auto rec = [&](auto&& self, std::uint64_t upper) -> void {
        if (static_cast<int>(cur.size()) == holes - 1) {
            out.emplace_back(cur.rbegin(), cur.rend());
            return;
        }
        for (std::uint64_t m = (k % 2 == 0 ? 2 : 1); m <= upper; m += 2) {
            cur.push_back(m);
            self(self, m);
            cur.pop_back();
        }
    };
    rec(rec, k);
    return out;
}

struct GenusPieceParams {
    std::uint64_t k, l, m, n;
    std::uint64_t k1, k2, k3;  // strand classes of the pants meeting E
    std::uint64_t l1, l2, l3;  // strand classes of the pants meeting F
};

// Two-holed torus piece cut along C1, C2 into pants (E, C1, C2) and (F, C1, C2)
// meeting E, F, C1, C2 in k, l, m, n points.
inline std::optional<GenusPieceParams> genus_piece_admissible(std::uint64_t k, std::uint64_t l, std::uint64_t m,
                                                              std::uint64_t n) {
    auto split = [](std::uint64_t a, std::uint64_t b, std::uint64_t c) -> std::optional<std::array<std::uint64_t, 3>> {
        if ((a + b + c) % 2 != 0 || a > b + c || b > a + c || c > a + b) return std::nullopt;
        return std::array{(b + c - a) / 2, (a + b - c) / 2, (a + c - b) / 2};
    };
    auto e = split(k, m, n);
    auto f = split(l, m, n);
    if (!e || !f) return std::nullopt;
    auto [k1, k2, k3] = *e;
    auto [l1, l2, l3] = *f;
    if (2 * k1 > l1 || 2 * l1 > std::min(m, n)) return std::nullopt;
    return GenusPieceParams{k, l, m, n, k1, k2, k3, l1, l2, l3};
}

// One closing gluing: inner configurations of length x, charged `fixed` for
// the endpoints on the closing curve and w/2 per twist position p; p counts
// when residue (p + shift) is connected.
struct ClosingTerm {
    std::shared_ptr<const std::vector<CountTable::Jump>> inner;
    std::shared_ptr<const ResidueSet> residues;
    double fixed = 0;
    std::uint64_t shift = 0;
    std::uint64_t multiplicity = 1;
};

inline std::uint64_t closing_sum(const std::vector<ClosingTerm>& terms, double half_weight, double L) {
    unsigned __int128 total = 0;
    for (const auto& t : terms) {
        unsigned __int128 sub = 0;
        for (const auto& [x, d] : *t.inner) {
            double room = L - t.fixed - x;
            if (room < -1e-9 * std::max(1.0, L)) break;
            auto P = static_cast<std::uint64_t>(std::floor(std::max(0.0, room) / half_weight + 1e-9));
            sub += static_cast<unsigned __int128>(d) * t.residues->count_upto(P, t.shift);
        }
        total += sub * t.multiplicity;
    }
    if (total > static_cast<unsigned __int128>(UINT64_MAX)) throw std::overflow_error("curve count exceeds 64 bits");
    return static_cast<std::uint64_t>(total);
}

inline std::shared_ptr<const std::vector<CountTable::Jump>> share_jumps(const CountTable& t) {
    return std::make_shared<const std::vector<CountTable::Jump>>(t.jumps());
}

// Lower-bound family count for a signature, prepared once up to Lmax and then
// evaluated at any L <= Lmax.
class FamilyCounter {
public:
    FamilyCounter(SurfaceSignature sig, LengthModel model, double Lmax, std::shared_ptr<ConnectivityCache> cache = nullptr)
        : sig_(sig), model_(std::move(model)), Lmax_(Lmax),
          cache_(cache ? std::move(cache) : std::make_shared<ConnectivityCache>()) {
        if (!sig_.hyperbolic()) throw std::invalid_argument("signature does not admit a hyperbolic structure");
        model_.validate();
        half_weight_ = 0.5 * model_.weight(curve::closing);
        int holes = sig_.holes();
        if (sig_.genus == 0 && holes == 3)
            construction_ = "pair of pants: only boundary curves";
        else if (sig_.genus == 0)
            build_sphere(holes);
        else if (sig_.genus == 1)
            build_genus_one(holes);
        else if (sig_.genus == 2 && holes == 0)
            build_genus_two();
        else
            build_sides();
    }

    std::uint64_t operator()(double L) const {
        if (L > Lmax_ * (1 + 1e-12)) throw std::invalid_argument("evaluation beyond the prepared length");
        return closing_sum(terms_, half_weight_, L);
    }

    const SurfaceSignature& signature() const { return sig_; }
    const std::string& construction() const { return construction_; }
    std::size_t term_count() const { return terms_.size(); }
    std::uint64_t verified_pieces() const { return verified_; }
    const std::vector<ClosingTerm>& terms() const { return terms_; }

private:
    double alpha() const { return model_.alpha; }
    double L0() const { return model_.base_length; }

    // Largest k with fixed(k) + floor <= Lmax.
    std::uint64_t max_k(double per_k, double floor_cost) const {
        if (Lmax_ < floor_cost + per_k) return 0;
        return static_cast<std::uint64_t>(std::floor((Lmax_ - floor_cost) / per_k + 1e-9));
    }

    void require(bool ok, const std::string& what) {
        if (!ok) throw std::logic_error("traversal check failed: " + what);
        ++verified_;
    }

    std::vector<std::shared_ptr<const ResidueSet>> nested_residues(std::uint64_t K) {
        std::vector<std::shared_ptr<const ResidueSet>> r(K + 1);
        parallel_for(K, [&](std::size_t i) { r[i + 1] = cache_->nested(i + 1); });
        return r;
    }

    // Every pants (E, F, A) with counts (2a, 2b, 0), b <= a <= K, keeps a nest.
    void verify_extensions(std::uint64_t K) {
        std::vector<char> ok(K);
        parallel_for(K, [&](std::size_t i) {
            bool all = true;
            for (std::uint64_t b = 1; b <= i + 1; ++b) all = all && cache_->extension_nested(i + 1, b);
            ok[i] = all;
        });
        for (std::uint64_t a = 1; a <= K; ++a) require(ok[a - 1], "nest extension at " + std::to_string(a));
    }

    // Every torus cap (k, v), v <= k <= K, is loop free and nested on E.
    void verify_caps(std::uint64_t K) {
        std::vector<char> ok(K);
        parallel_for(K, [&](std::size_t i) {
            bool all = true;
            for (std::uint64_t v = 1; v <= i + 1; ++v) all = all && cache_->cap_nested(i + 1, v);
            ok[i] = all;
        });
        for (std::uint64_t k = 1; k <= K; ++k) require(ok[k - 1], "torus cap at " + std::to_string(k));
    }

    void build_sphere(int holes) {
        construction_ = "sphere: pants (A1, A2, E) glued along E to a nested chain of " + std::to_string(holes - 2) +
                        " further holes";
        double per_k = 4 * alpha();
        double floor_cost = L0() + (holes - 4) * model_.weight(curve::inner);
        std::uint64_t K = max_k(per_k, floor_cost);
        if (K == 0) return;
        if (holes >= 5) verify_extensions(K);
        auto residues = nested_residues(K);
        SphereTables tables(model_, Lmax_);
        for (std::uint64_t k = 1; k <= K; ++k) {
            auto inner = tables(holes - 1, k).truncated(Lmax_ - per_k * static_cast<double>(k));
            if (inner.empty()) continue;
            terms_.push_back({share_jumps(inner), residues[k], per_k * static_cast<double>(k), 0, 1});
        }
    }

    void build_genus_one(int holes) {
        construction_ = "genus one: chain of " + std::to_string(holes) +
                        " pants from E1 to E2, closed up along E with a free twist";
        double per_k = 2 * alpha();
        double floor_cost = L0() + (holes - 1) * model_.weight(curve::inner);
        std::uint64_t K = max_k(per_k, floor_cost);
        if (K == 0) return;
        CountTable inner = base_pants_table(model_);
        for (int i = 1; i < holes; ++i) inner = stieltjes_convolve(inner, model_.weight(curve::inner), Lmax_);
        auto jumps = share_jumps(inner);
        struct Key {
            std::uint64_t k;
            std::vector<std::uint64_t> seq;
        };
        std::vector<Key> keys;
        for (std::uint64_t k = 1; k <= K; ++k)
            for (auto& s : genus_one_sequences(holes, k)) keys.push_back({k, std::move(s)});
        std::vector<std::shared_ptr<const ResidueSet>> res(keys.size());
        parallel_for(keys.size(), [&](std::size_t i) { res[i] = cache_->genus_one(keys[i].k, keys[i].seq); });
        verified_ += keys.size();
        for (std::size_t i = 0; i < keys.size(); ++i)
            terms_.push_back({jumps, res[i], per_k * static_cast<double>(keys[i].k), 0, 1});
    }

    // Table of one torus cap's own parameters: v <= k core crossings per
    // strand and t >= 1 full twists about the core, cost L0 + t w.
    CountTable cap_unit() const {
        return stieltjes_convolve(base_pants_table(model_), model_.weight(curve::core), Lmax_);
    }

    void build_genus_two() {
        construction_ = "genus two: two one-holed tori, each carrying a band of parallel arcs, glued along E";
        double per_k = 4 * alpha();
        CountTable unit = cap_unit();
        if (unit.empty()) return;
        double floor_cost = 2 * unit.breakpoints()[0];
        std::uint64_t K = max_k(per_k, floor_cost);
        if (K == 0) return;
        verify_caps(K);
        auto residues = nested_residues(K);
        auto pair = share_jumps(length_convolve(unit, unit, Lmax_ - per_k));
        for (std::uint64_t k = 1; k <= K; ++k)
            terms_.push_back({pair, residues[k], per_k * static_cast<double>(k), 0, k * k});
    }

    // Surfaces of genus g >= 2 with holes, or genus >= 3: a torus cap glued
    // along E to a side of genus g - 1 carrying the holes.
    void build_sides() {
        construction_ = "genus " + std::to_string(sig_.genus) +
                        ": torus cap glued along E to a side built from pants, caps and nested spheres";
        double per_k = 4 * alpha();
        std::uint64_t K = max_k(per_k, 2 * L0());
        if (K == 0) return;
        verify_caps(K);
        if (sig_.holes() >= 3) verify_extensions(K);
        auto residues = nested_residues(K);
        sides_ = std::make_unique<SphereTables>(model_, Lmax_);
        for (std::uint64_t k = 1; k <= K; ++k) {
            double room = Lmax_ - per_k * static_cast<double>(k);
            CountTable cap = cap_table(k);
            for (const auto& [h, table] : side(sig_.genus - 1, sig_.holes(), k)) {
                auto inner = length_convolve(cap, table, room);
                if (inner.empty()) continue;
                std::uint64_t n = 2 * k;
                terms_.push_back({share_jumps(inner), residues[k], per_k * static_cast<double>(k), (n - h % n) % n, 1});
            }
        }
    }

    CountTable cap_table(std::uint64_t k) { return scaled(cap_unit(), k); }

    // Systems on a genus-g surface with j holes and one extra boundary E,
    // grouped by the rotation h of the nest they induce on E.
    const std::map<std::uint64_t, CountTable>& side(int g, int j, std::uint64_t k) {
        auto key = std::tuple{g, j, k};
        if (auto it = side_memo_.find(key); it != side_memo_.end()) return it->second;
        std::map<std::uint64_t, CountTable> out;
        if (g == 0) {
            if (j < 2) throw std::logic_error("a disk or annulus cannot carry a side");
            out[0] = (*sides_)(j + 1, k);
        } else if (g == 1 && j == 0) {
            out[0] = cap_table(k);
        } else if (g == 1 && j == 1) {
            // pants (E, G, A): handle block inside the E nest
            CountTable acc;
            for (std::uint64_t a = 1; a <= k; ++a)
                acc = acc + stieltjes_convolve(cap_table(a), model_.weight(curve::handle), Lmax_);
            out[0] = acc;
        } else {
            // pants (E, G, H): the H block sits outside the nest, rotating it by
            // the H count; the H side is glued with residue equal to its own
            // rotation so that it presents a nest.
            for (std::uint64_t b = 1; b < k; ++b) {
                CountTable rest;
                for (const auto& [h, t] : side(g - 1, j, b))
                    rest = rest + stieltjes_convolve(t, model_.weight(curve::rest), Lmax_);
                if (rest.empty()) continue;
                CountTable handles;
                for (std::uint64_t a = 1; a + b <= k; ++a)
                    handles = handles + stieltjes_convolve(cap_table(a), model_.weight(curve::handle), Lmax_);
                auto t = length_convolve(handles, rest, Lmax_);
                if (!t.empty()) out[b] = std::move(t);
            }
        }
        return side_memo_.emplace(key, std::move(out)).first->second;
    }

    SurfaceSignature sig_;
    LengthModel model_;
    double Lmax_;
    double half_weight_ = 0.5;
    std::shared_ptr<ConnectivityCache> cache_;
    std::string construction_;
    std::vector<ClosingTerm> terms_;
    std::uint64_t verified_ = 0;
    std::unique_ptr<SphereTables> sides_;
    std::map<std::tuple<int, int, std::uint64_t>, std::map<std::uint64_t, CountTable>> side_memo_;
};

inline std::uint64_t four_sphere_curve_count(const LengthModel& model, double L) {
    return FamilyCounter({0, 4, 0}, model, L)(L);
}

inline std::uint64_t closed_surface_lower_bound(int genus, const LengthModel& model, double L) {
    if (genus < 2) throw std::invalid_argument("closed_surface_lower_bound: genus must be at least 2");
    return FamilyCounter({genus, 0, 0}, model, L)(L);
}

// Genus-two configurations before the closing twist: the E count k and both
// caps' core crossings and twists, five parameters, charged 4 alpha k plus
// the caps' own costs.
class SubconeCounter {
public:
    SubconeCounter(LengthModel model, double xmax) : model_(std::move(model)), xmax_(xmax) {
        model_.validate();
        auto unit = stieltjes_convolve(base_pants_table(model_), model_.weight(curve::core), xmax_);
        pair_ = length_convolve(unit, unit, xmax_);
    }
    std::uint64_t operator()(double x) const {
        unsigned __int128 total = 0;
        double per_k = 4 * model_.alpha;
        for (std::uint64_t k = 1; per_k * static_cast<double>(k) <= x; ++k)
            total += static_cast<unsigned __int128>(k * k) * pair_(x - per_k * static_cast<double>(k));
        if (total > static_cast<unsigned __int128>(UINT64_MAX)) throw std::overflow_error("count exceeds 64 bits");
        return static_cast<std::uint64_t>(total);
    }

private:
    LengthModel model_;
    double xmax_;
    CountTable pair_;
};

inline std::uint64_t general_signature_lower_bound(const SurfaceSignature& sig, const LengthModel& model, double L,
                                                   bool include_boundary = false) {
    std::uint64_t n = FamilyCounter(sig, model, L)(L);
    if (include_boundary && L >= model.base_length) n += static_cast<std::uint64_t>(sig.boundary);
    return n;
}

}  // namespace curvecount
