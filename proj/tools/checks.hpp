#pragma once

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <curvecount/curvecount.hpp>
#include <json.hpp>

#include "oracles.hpp"

namespace cli {

using namespace curvecount;

struct CheckReport {
    std::string suite;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::vector<std::string> notes;

    bool passed() const { return failures == 0; }
    void expect(bool ok, const std::string& what) {
        ++cases;
        if (!ok) {
            ++failures;
            if (notes.size() < 8) notes.push_back(what);
        }
    }
    nlohmann::json to_json() const {
        return {{"suite", suite}, {"passed", passed()}, {"cases", cases}, {"failures", failures}, {"notes", notes}};
    }
};

inline std::uint64_t coprime_count_brute(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t i = 1; i <= n; ++i) c += std::gcd(i, n) == 1;
    return c;
}

inline CheckReport check_totient(std::uint64_t nmax = 10000, std::uint64_t smax = 100000) {
    CheckReport r;
    r.suite = "totient";
    ArithmeticSieve sieve(nmax);
    for (std::uint64_t n = 1; n <= nmax; ++n) {
        auto phi = euler_phi(n);
        r.expect(phi == coprime_count_brute(n) && phi == sieve.phi[n], "phi(" + std::to_string(n) + ")");
        r.expect(divisor_totient_check(n), "divisor sum at " + std::to_string(n));
        r.expect(moebius_inversion_check(n), "inversion at " + std::to_string(n));
    }
    auto err = totient_ratio_errors(smax);
    for (std::uint64_t n = 2; n <= smax; ++n)
        r.expect(std::abs(err[n]) <= totient_error_envelope(n), "S(n) envelope at " + std::to_string(n));
    auto exact = totient_ratio_sum(smax);
    r.expect(std::abs(exact.error - err[smax]) <= 1e-6, "exact and floating S(n) disagree");
    return r;
}

// The criterion as printed: one component exactly when gcd(p, 2k) = 1.
// Traversal and is_connected_twist are compared against it and each other.
inline CheckReport check_connectivity(std::uint64_t kmax = 64) {
    CheckReport r;
    r.suite = "connectivity";
    std::uint64_t printed_mismatch = 0;
    for (std::uint64_t k = 1; k <= kmax; ++k)
        for (std::uint64_t p = 0; p < 2 * k; ++p) {
            bool traversal = nested_gluing_system(k, p).component_count() == 1;
            bool twist = is_connected_twist(k, p);
            bool printed = std::gcd(p, 2 * k) == 1;
            r.expect(traversal == twist, "traversal vs is_connected_twist at k=" + std::to_string(k));
            if (traversal != printed) ++printed_mismatch;
            r.expect(traversal == printed,
                     "gcd(p, 2k) test disagrees with traversal at k=" + std::to_string(k) + " p=" + std::to_string(p));
        }
    if (printed_mismatch)
        r.notes.push_back("traversal matches gcd(p, k) = 1; " + std::to_string(printed_mismatch) +
                          " cells differ from gcd(p, 2k) = 1");
    return r;
}

inline CheckReport check_pants(std::uint64_t xmax = 40) {
    CheckReport r;
    r.suite = "pants";
    for (std::uint64_t a = 0; a <= xmax; ++a)
        for (std::uint64_t b = 0; b <= xmax; ++b)
            for (std::uint64_t c = 0; c <= xmax; ++c) {
                if ((a + b + c) % 2) continue;
                auto cfg = arc_config_from_boundary_counts(a, b, c);
                r.expect(cfg.valid() && boundary_counts(cfg) == std::array{a, b, c},
                         "round trip at " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
                for (Side s : {Side::A, Side::B, Side::C})
                    r.expect(is_non_crossing(canonical_endpoint_order(cfg, s)), "crossing endpoint order");
            }
    FamilyCounter rigid({0, 3, 0}, LengthModel{}, 1024);
    for (double L : {0.5, 1.0, 64.0, 1024.0}) r.expect(rigid(L) == 0, "pants carries a non-boundary curve");
    return r;
}

inline CheckReport check_recursion(int cmax = 5, std::uint64_t kmax = 4, double Lmax = 32) {
    CheckReport r;
    r.suite = "recursion";
    LengthModel m;
    for (int c = 3; c <= cmax; ++c) {
        SphereTables tables(m, Lmax);
        for (std::uint64_t k = 1; k <= kmax; ++k) {
            auto costs = oracle::sphere_costs(c, k, m, Lmax);
            for (double L = 0.5; L <= Lmax; L += 0.5)
                r.expect(tables(c, k)(L) == oracle::count_upto(costs, L),
                         "sphere table (" + std::to_string(c) + "," + std::to_string(k) + ") at L=" + format_real(L));
        }
    }
    return r;
}

}  // namespace cli
