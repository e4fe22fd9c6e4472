#include "initdeg/field.hpp"

#include <doctest.h>

using namespace initdeg;

namespace {

FieldElement random_element(const FieldSpec& spec, SplitMix64& rng) {
    switch (spec.kind) {
    case FieldKind::rational: {
        Int num(rng.in_range(-50, 50));
        Int den(rng.in_range(1, 30));
        return FieldElement(Rat(num, den));
    }
    case FieldKind::eisenstein: {
        Rat a(Int(rng.in_range(-20, 20)), Int(rng.in_range(1, 9)));
        Rat b(Int(rng.in_range(-20, 20)), Int(rng.in_range(1, 9)));
        return FieldElement(Eisenstein{a, b});
    }
    case FieldKind::prime:
        return FieldElement(ModularResidue{rng.bounded(spec.p), spec.p});
    }
    throw Error("unreachable");
}

} // namespace

TEST_CASE("rational arithmetic examples") {
    const FieldSpec q = FieldSpec::rational();
    const FieldElement half = FieldElement::parse(q, "1/2");
    const FieldElement third = FieldElement::parse(q, "1/3");
    CHECK((half + third).to_string() == "5/6");
    CHECK((half - third).to_string() == "1/6");
    CHECK((half * third).to_string() == "1/6");
    CHECK((half / third).to_string() == "3/2");
    // canonical form is unique
    CHECK(FieldElement::parse(q, "4/6") == FieldElement::parse(q, "2/3"));
    CHECK(FieldElement::parse(q, "-6/4").to_string() == "-3/2");
}

TEST_CASE("eisenstein defining relation w^2 = -1 - w") {
    const FieldSpec e = FieldSpec::eisenstein();
    const FieldElement w = FieldElement::parse(e, "w");
    const FieldElement minus_one_minus_w = FieldElement::parse(e, "-1-1*w");
    CHECK(w * w == minus_one_minus_w);
    CHECK((w * w).to_string() == "-1-1*w");
    CHECK(w.pow(3) == FieldElement::one(e));
    // 1 + w + w^2 = 0
    CHECK((FieldElement::one(e) + w + w * w).is_zero());
}

TEST_CASE("prime field arithmetic: 3/5 = 2 mod 7") {
    const FieldSpec f7 = FieldSpec::prime(7);
    const FieldElement three = FieldElement::from_integer(f7, 3);
    const FieldElement five = FieldElement::from_integer(f7, 5);
    CHECK((three / five).residue().value == 2);
    CHECK((five * (three / five)) == three);
}

TEST_CASE("division by zero and mixed operands are explicit errors") {
    const FieldSpec q = FieldSpec::rational();
    CHECK_THROWS_AS(FieldElement::one(q) / FieldElement::zero(q), MathError);
    CHECK_THROWS_AS(
        FieldElement::one(q) + FieldElement::one(FieldSpec::eisenstein()), MathError);
    CHECK_THROWS_AS(FieldElement::one(FieldSpec::prime(7)) *
                        FieldElement::one(FieldSpec::prime(11)),
                    MathError);
}

TEST_CASE("cube roots of unity") {
    SUBCASE("eisenstein: w itself") {
        const FieldElement e = cube_root_of_unity(FieldSpec::eisenstein());
        CHECK(e == FieldElement::parse(FieldSpec::eisenstein(), "0+1*w"));
        CHECK(e.pow(3).is_one());
        CHECK_FALSE(e.is_one());
    }
    SUBCASE("p = 7 picks 2 (smallest primitive root is 3, 3^2 = 2)") {
        const FieldElement e = cube_root_of_unity(FieldSpec::prime(7));
        CHECK(e.residue().value == 2);
        CHECK(e.pow(3).is_one());
    }
    SUBCASE("unavailable") {
        CHECK_THROWS_AS(cube_root_of_unity(FieldSpec::prime(5)), MathError);
        CHECK_THROWS_AS(cube_root_of_unity(FieldSpec::rational()), MathError);
    }
    SUBCASE("1 + e + e^2 = 0 in every supporting field") {
        for (const FieldSpec spec :
             {FieldSpec::eisenstein(), FieldSpec::prime(7), FieldSpec::prime(2147483647ull)}) {
            const FieldElement e = cube_root_of_unity(spec);
            const FieldElement sum = FieldElement::one(spec) + e + e * e;
            CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("field axioms on random triples in every kind") {
    SplitMix64 rng(20240817);
    for (const FieldSpec spec :
         {FieldSpec::rational(), FieldSpec::eisenstein(), FieldSpec::prime(1009)}) {
        for (int iter = 0; iter < 1000; ++iter) {
            const FieldElement x = random_element(spec, rng);
            const FieldElement y = random_element(spec, rng);
            const FieldElement z = random_element(spec, rng);
            REQUIRE((x + y) + z == x + (y + z));
            REQUIRE(x * (y + z) == x * y + x * z);
            REQUIRE((x * y) * z == x * (y * z));
            if (!x.is_zero()) {
                REQUIRE((x * x.inverse()).is_one());
                REQUIRE(x / x == FieldElement::one(spec));
            }
        }
    }
}

TEST_CASE("textual round trip is the identity on canonical strings") {
    SplitMix64 rng(7);
    for (const FieldSpec spec :
         {FieldSpec::rational(), FieldSpec::eisenstein(), FieldSpec::prime(65537)}) {
        for (int iter = 0; iter < 200; ++iter) {
            const FieldElement x = random_element(spec, rng);
            const FieldElement back = FieldElement::parse(spec, x.to_string());
            REQUIRE(back == x);
            REQUIRE(back.to_string() == x.to_string());
        }
    }
    // loose input forms
    const FieldSpec e = FieldSpec::eisenstein();
    CHECK(FieldElement::parse(e, "w") == FieldElement::parse(e, "0+1*w"));
    CHECK(FieldElement::parse(e, "-w") == FieldElement::parse(e, "0-1*w"));
    CHECK(FieldElement::parse(e, "3*w") == FieldElement::parse(e, "0+3*w"));
    CHECK(FieldElement::parse(e, "1/2-3/4*w").to_string() == "1/2-3/4*w");
    CHECK(FieldElement::parse(e, "5") == FieldElement::from_integer(e, 5));
    CHECK_THROWS_AS(FieldElement::parse(e, "1+*w"), UsageError);
    CHECK_THROWS_AS(FieldElement::parse(FieldSpec::rational(), "1/0"), UsageError);
    CHECK_THROWS_AS(FieldElement::parse(FieldSpec::rational(), "abc"), UsageError);
}

TEST_CASE("default consensus primes are prime and 1 mod 3, near 2^31") {
    const auto& ps = default_consensus_primes();
    REQUIRE(ps.size() == 4);
    CHECK(ps[0] == 2147483647ull);
    for (auto p : ps) {
        CHECK(is_prime_u64(p));
        CHECK(p % 3 == 1);
        CHECK(p > (1ull << 31) - 200);
        CHECK(p < (1ull << 31));
    }
}

TEST_CASE("FieldSpec validation") {
    CHECK_THROWS_AS(FieldSpec::prime(6), MathError);
    CHECK(FieldSpec::prime(2147483647ull).p == 2147483647ull);
    CHECK(FieldSpec::parse("prime:65537") == FieldSpec::prime(65537));
    CHECK_THROWS_AS(FieldSpec::parse("gaussian"), UsageError);
    CHECK(FieldSpec::eisenstein().has_cube_root_of_unity());
    CHECK(FieldSpec::prime(7).has_cube_root_of_unity());
    CHECK_FALSE(FieldSpec::prime(5).has_cube_root_of_unity());
    CHECK_FALSE(FieldSpec::rational().has_cube_root_of_unity());
}

TEST_CASE("reduce_mod_p embeds w as a cube root") {
    const FieldSpec e = FieldSpec::eisenstein();
    const std::uint64_t p = 2147483647ull;
    const FieldElement w = cube_root_of_unity(e);
    const std::uint64_t ew = reduce_mod_p(w, p);
    CHECK(pow_mod(ew, 3, p) == 1);
    CHECK(ew != 1);
    // homomorphism on a product
    const FieldElement x = FieldElement::parse(e, "2/3+5*w");
    const FieldElement y = FieldElement::parse(e, "-1+1/2*w");
    CHECK(reduce_mod_p(x * y, p) == mul_mod(reduce_mod_p(x, p), reduce_mod_p(y, p), p));
}
