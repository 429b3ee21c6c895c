#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace curvecount {

// Prime factorization by trial division; returns (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t r = n;
    for (auto [p, e] : factorize(n)) r -= r / p;
    return r;
}

inline int moebius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("moebius: n must be positive");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

// Sum over divisors of phi(d) reproduces n.
inline bool divisor_totient_check(std::uint64_t n) {
    std::uint64_t s = 0;
    for (auto d : divisors(n)) s += euler_phi(d);
    return s == n;
}

// phi(n) = sum_{d | n} mu(d) n/d, checked in integers.
inline bool moebius_inversion_check(std::uint64_t n) {
    std::int64_t s = 0;
    for (auto d : divisors(n)) s += moebius(d) * static_cast<std::int64_t>(n / d);
    return s == static_cast<std::int64_t>(euler_phi(n));
}

// Linear sieve of phi and mu on [0, n].
struct ArithmeticSieve {
    std::vector<std::uint64_t> phi;
    std::vector<int> mu;

    explicit ArithmeticSieve(std::size_t n) : phi(n + 1), mu(n + 1) {
        std::vector<std::uint64_t> primes;
        std::vector<bool> composite(n + 1);
        if (n >= 1) {
            phi[1] = 1;
            mu[1] = 1;
        }
        for (std::size_t i = 2; i <= n; ++i) {
            if (!composite[i]) {
                primes.push_back(i);
                phi[i] = i - 1;
                mu[i] = -1;
            }
            for (auto p : primes) {
                std::size_t ip = i * p;
                if (ip > n) break;
                composite[ip] = true;
                if (i % p == 0) {
                    phi[ip] = phi[i] * p;
                    mu[ip] = 0;
                    break;
                }
                phi[ip] = phi[i] * (p - 1);
                mu[ip] = -mu[i];
            }
        }
    }
};

inline constexpr double six_over_pi_squared = 6.0 / (std::numbers::pi * std::numbers::pi);

struct TotientSum {
    std::uint64_t n = 0;
    mpq_class value;  // sum_{m <= n} phi(m)/m, exact
    double error = 0; // value - 6n/pi^2
};

// Exact S(n). Uses S(n) = sum over squarefree d of mu(d) floor(n/d) / d, put
// over the common denominator prod_{p <= n} p so only one big gcd is needed.
inline TotientSum totient_ratio_sum(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("totient_ratio_sum: n must be positive");
    ArithmeticSieve sieve(n);
    mpz_class denom = 1;
    for (std::uint64_t p = 2; p <= n; ++p)
        if (sieve.mu[p] == -1 && sieve.phi[p] == p - 1) denom *= static_cast<unsigned long>(p);
    mpz_class num = 0, term;
    for (std::uint64_t d = 1; d <= n; ++d) {
        int mu = sieve.mu[d];
        if (mu == 0) continue;
        mpz_divexact_ui(term.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(d));
        term *= static_cast<unsigned long>(n / d);
        if (mu > 0)
            num += term;
        else
            num -= term;
    }
    TotientSum out;
    out.n = n;
    out.value = mpq_class(num, denom);
    out.value.canonicalize();
    out.error = out.value.get_d() - six_over_pi_squared * static_cast<double>(n);
    return out;
}

// Floating sweep of S(n) - 6n/pi^2 for n = 1..nmax (index n).
inline std::vector<double> totient_ratio_errors(std::size_t nmax) {
    ArithmeticSieve sieve(nmax);
    std::vector<double> err(nmax + 1);
    long double s = 0;
    for (std::size_t m = 1; m <= nmax; ++m) {
        s += static_cast<long double>(sieve.phi[m]) / static_cast<long double>(m);
        err[m] = static_cast<double>(s - static_cast<long double>(six_over_pi_squared) * m);
    }
    return err;
}

inline double totient_error_envelope(std::uint64_t n) { return 2.0 * std::log(static_cast<double>(n)) + 4.0; }

// Partial sums of mu(j)/j^2, index n holds the sum over j <= n.
inline std::vector<double> moebius_square_partial_sums(std::size_t nmax) {
    ArithmeticSieve sieve(nmax);
    std::vector<double> out(nmax + 1);
    long double s = 0;
    for (std::size_t j = 1; j <= nmax; ++j) {
        s += static_cast<long double>(sieve.mu[j]) / (static_cast<long double>(j) * j);
        out[j] = static_cast<double>(s);
    }
    return out;
}

}  // namespace curvecount
