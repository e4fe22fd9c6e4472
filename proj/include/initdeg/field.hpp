#pragma once

#include "initdeg/errors.hpp"
#include "initdeg/numeric.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace initdeg {

enum class FieldKind { rational, eisenstein, prime };

/// Scalar domain tag. Prime specs carry their modulus. The library accepts
/// any prime >= 2 so small fields stay testable; the CLI additionally
/// requires p > 2^20 for configuration fields.
struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    std::uint64_t p = 0;

    static FieldSpec rational() { return {FieldKind::rational, 0}; }
    static FieldSpec eisenstein() { return {FieldKind::eisenstein, 0}; }
    static FieldSpec prime(std::uint64_t p);

    /// eisenstein always; prime iff p = 1 (mod 3).
    bool has_cube_root_of_unity() const;

    std::string describe() const; // "rational" | "eisenstein" | "prime:65537"
    static FieldSpec parse(std::string_view text); // inverse of describe()

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Element a + b*w of Q(w) with w^2 = -1 - w (w a primitive cube root of
/// unity). Components are canonical rationals, so equality is structural.
struct Eisenstein {
    Rat a, b;
    friend bool operator==(const Eisenstein&, const Eisenstein&) = default;
};

/// Residue in [0, p), modulus carried alongside.
struct ModularResidue {
    std::uint64_t value = 0;
    std::uint64_t p = 0;
    friend bool operator==(const ModularResidue&, const ModularResidue&) = default;
};

/// Immutable exact scalar in one of the three supported fields. All
/// operations are pure; results are always canonical, so equality is
/// structural. Mixing operands from different fields throws MathError.
class FieldElement {
public:
    FieldElement() : v_(Rat(0)) {}
    explicit FieldElement(Rat r) : v_(std::move(r)) {}
    explicit FieldElement(Eisenstein e) : v_(std::move(e)) {}
    explicit FieldElement(ModularResidue m);

    static FieldElement zero(const FieldSpec& spec);
    static FieldElement one(const FieldSpec& spec);
    static FieldElement from_integer(const FieldSpec& spec, const Int& n);

    FieldKind kind() const;
    bool is_zero() const;
    bool is_one() const;

    const Rat& rational() const;
    const Eisenstein& eisenstein() const;
    const ModularResidue& residue() const;

    FieldElement operator-() const;
    friend FieldElement operator+(const FieldElement&, const FieldElement&);
    friend FieldElement operator-(const FieldElement&, const FieldElement&);
    friend FieldElement operator*(const FieldElement&, const FieldElement&);
    friend FieldElement operator/(const FieldElement&, const FieldElement&);
    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const;

    friend bool operator==(const FieldElement&, const FieldElement&) = default;

    /// Textual encoding used in every file format: rationals "a" or "a/b",
    /// eisenstein "a+b*w" (also printed "a-b*w" for negative b), prime
    /// residues as base-10 integers.
    std::string to_string() const;
    static FieldElement parse(const FieldSpec& spec, std::string_view text);

private:
    std::variant<Rat, Eisenstein, ModularResidue> v_;
};

/// Deterministic primitive cube root of unity: w itself for eisenstein;
/// for prime p = 1 (mod 3) the residue g^((p-1)/3) where g is the smallest
/// primitive root of F_p. Throws MathError for rational specs and for
/// p != 1 (mod 3).
FieldElement cube_root_of_unity(const FieldSpec& spec);

/// The four largest primes below 2^31 congruent to 1 mod 3; the default
/// modulus set for multi-prime consensus runs. The congruence lets w embed,
/// so one set serves rational and eisenstein matrices alike.
const std::vector<std::uint64_t>& default_consensus_primes();

/// Image of x in F_p. Rational and eisenstein elements reduce via modular
/// inverses of their denominators (eisenstein additionally maps w to the
/// deterministic cube root mod p, so p must be 1 mod 3). Throws MathError
/// when a denominator vanishes mod p.
std::uint64_t reduce_mod_p(const FieldElement& x, std::uint64_t p);

/// Rational parsing helper shared by the loaders ("a" or "a/b").
Rat parse_rational(std::string_view text);

} // namespace initdeg
