#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace initdeg {

/// Arbitrary-precision integer (GMP-backed).
using Int = boost::multiprecision::mpz_int;

/// Arbitrary-precision rational, always canonical: reduced, denominator > 0.
using Rat = boost::multiprecision::mpq_rational;

inline const char* version_tag() { return "initdeg 0.1.0"; }

/// binomial(n, k) as an exact big integer; 0 when k > n.
Int binomial(std::uint64_t n, std::uint64_t k);

/// base^exp for big integers, exp >= 0.
Int int_pow(const Int& base, std::uint64_t exp);

/// Largest k >= 0 with k^n <= s (s >= 0, n >= 1). Pure integer arithmetic.
Int floor_nth_root(const Int& s, int n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Inverse of a mod p, requires gcd(a, p) = 1; throws MathError otherwise.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Deterministic Miller-Rabin, valid for the full 64-bit range.
bool is_prime_u64(std::uint64_t n);

/// Sorted distinct prime factors (trial division + Pollard rho).
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);

/// Smallest generator of the multiplicative group of F_p.
std::uint64_t smallest_primitive_root(std::uint64_t p);

/// Deterministic pseudorandom stream used by every generator in this
/// project. splitmix64: state advances by 0x9e3779b97f4a7c15 and each
/// output is the finalized mix of the new state, so identical seeds give
/// identical streams on every platform. bounded(n) draws by rejection.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n), n >= 1, by rejection sampling.
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t in_range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        bounded(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

/// Per-trial seed derivation for batch scans: mix(seed, salt) feeds both
/// through the splitmix64 finalizer so nearby trial indices decorrelate.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// FNV-1a 64-bit hash, used for content hashes in reports.
std::uint64_t fnv1a64(std::string_view data);

} // namespace initdeg
