#include "initdeg/numeric.hpp"

#include "initdeg/errors.hpp"

#include <algorithm>

namespace initdeg {

Int binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    Int out;
    mpz_bin_uiui(out.backend().data(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return out;
}

Int int_pow(const Int& base, std::uint64_t exp) {
    Int out;
    mpz_pow_ui(out.backend().data(), base.backend().data(),
               static_cast<unsigned long>(exp));
    return out;
}

Int floor_nth_root(const Int& s, int n) {
    if (s < 0 || n < 1) throw MathError("floor_nth_root: need s >= 0, n >= 1");
    if (s == 0) return 0;
    Int lo = 1, hi = 1;
    while (int_pow(hi, static_cast<std::uint64_t>(n)) <= s) hi <<= 1;
    // invariant: lo^n <= s < hi^n
    while (hi - lo > 1) {
        Int mid = (lo + hi) >> 1;
        if (int_pow(mid, static_cast<std::uint64_t>(n)) <= s)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw MathError("inv_mod: zero has no inverse");
    // extended Euclid over signed 128-bit to avoid overflow
    __int128 t = 0, new_t = 1;
    std::uint64_t r = p, new_r = a;
    while (new_r != 0) {
        std::uint64_t q = r / new_r;
        __int128 tmp_t = t - static_cast<__int128>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        std::uint64_t tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw MathError("inv_mod: operand not coprime to modulus");
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic witness set for the 64-bit range
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_rho(std::uint64_t n) {
    if ((n & 1) == 0) return 2;
    SplitMix64 rng(n);
    while (true) {
        std::uint64_t x = rng.bounded(n - 2) + 2;
        std::uint64_t y = x;
        std::uint64_t c = rng.bounded(n - 1) + 1;
        std::uint64_t d = 1;
        while (d == 1) {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            std::uint64_t diff = x > y ? x - y : y - x;
            if (diff == 0) break;
            std::uint64_t a = diff, b = n;
            while (b) {
                std::uint64_t t = a % b;
                a = b;
                b = t;
            }
            d = a;
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    std::uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q < 100 && q * q <= n; ++q) {
        if (n % q == 0) {
            out.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) factor_rec(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t smallest_primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    const auto qs = distinct_prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (std::uint64_t q : qs) {
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw MathError("smallest_primitive_root: no generator found (modulus not prime?)");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    SplitMix64 a(salt);
    SplitMix64 b(seed ^ a.next());
    return b.next();
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

} // namespace initdeg
