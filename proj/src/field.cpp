#include "initdeg/field.hpp"

#include <charconv>

namespace initdeg {

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (!is_prime_u64(p)) {
        throw MathError("FieldSpec::prime: " + std::to_string(p) + " is not prime");
    }
    return {FieldKind::prime, p};
}

bool FieldSpec::has_cube_root_of_unity() const {
    if (kind == FieldKind::eisenstein) return true;
    if (kind == FieldKind::prime) return p % 3 == 1;
    return false;
}

std::string FieldSpec::describe() const {
    switch (kind) {
    case FieldKind::rational: return "rational";
    case FieldKind::eisenstein: return "eisenstein";
    case FieldKind::prime: return "prime:" + std::to_string(p);
    }
    throw Error("FieldSpec: corrupt kind");
}

FieldSpec FieldSpec::parse(std::string_view text) {
    if (text == "rational") return rational();
    if (text == "eisenstein") return eisenstein();
    if (text.rfind("prime:", 0) == 0) {
        std::uint64_t p = 0;
        auto digits = text.substr(6);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
            throw UsageError("field: bad prime modulus in '" + std::string(text) + "'");
        }
        return prime(p);
    }
    throw UsageError("field: expected rational, eisenstein or prime:P, got '" +
                     std::string(text) + "'");
}

namespace {

[[noreturn]] void mixed_operands(const char* op) {
    throw MathError(std::string("field arithmetic: mixed-field operands in ") + op);
}

void check_same_modulus(const ModularResidue& x, const ModularResidue& y, const char* op) {
    if (x.p != y.p) mixed_operands(op);
}

Eisenstein eis_mul(const Eisenstein& x, const Eisenstein& y) {
    // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w   since w^2 = -1 - w
    Rat ac = x.a * y.a, bd = x.b * y.b;
    return {ac - bd, x.a * y.b + x.b * y.a - bd};
}

Rat eis_norm(const Eisenstein& x) {
    // N(a + bw) = a^2 - ab + b^2, zero only at zero
    return x.a * x.a - x.a * x.b + x.b * x.b;
}

} // namespace

FieldElement::FieldElement(ModularResidue m) : v_(m) {
    if (m.p < 2) throw MathError("ModularResidue: modulus must be >= 2");
    auto& r = std::get<ModularResidue>(v_);
    r.value %= r.p;
}

FieldElement FieldElement::zero(const FieldSpec& spec) {
    return from_integer(spec, 0);
}

FieldElement FieldElement::one(const FieldSpec& spec) {
    return from_integer(spec, 1);
}

FieldElement FieldElement::from_integer(const FieldSpec& spec, const Int& n) {
    switch (spec.kind) {
    case FieldKind::rational: return FieldElement(Rat(n));
    case FieldKind::eisenstein: return FieldElement(Eisenstein{Rat(n), Rat(0)});
    case FieldKind::prime: {
        Int r = n % Int(spec.p);
        if (r < 0) r += Int(spec.p);
        return FieldElement(ModularResidue{r.convert_to<std::uint64_t>(), spec.p});
    }
    }
    throw Error("FieldSpec: corrupt kind");
}

FieldKind FieldElement::kind() const {
    if (std::holds_alternative<Rat>(v_)) return FieldKind::rational;
    if (std::holds_alternative<Eisenstein>(v_)) return FieldKind::eisenstein;
    return FieldKind::prime;
}

bool FieldElement::is_zero() const {
    if (auto* r = std::get_if<Rat>(&v_)) return *r == 0;
    if (auto* e = std::get_if<Eisenstein>(&v_)) return e->a == 0 && e->b == 0;
    return std::get<ModularResidue>(v_).value == 0;
}

bool FieldElement::is_one() const {
    if (auto* r = std::get_if<Rat>(&v_)) return *r == 1;
    if (auto* e = std::get_if<Eisenstein>(&v_)) return e->a == 1 && e->b == 0;
    return std::get<ModularResidue>(v_).value == 1;
}

const Rat& FieldElement::rational() const {
    if (auto* r = std::get_if<Rat>(&v_)) return *r;
    throw MathError("FieldElement: not a rational");
}

const Eisenstein& FieldElement::eisenstein() const {
    if (auto* e = std::get_if<Eisenstein>(&v_)) return *e;
    throw MathError("FieldElement: not an eisenstein element");
}

const ModularResidue& FieldElement::residue() const {
    if (auto* m = std::get_if<ModularResidue>(&v_)) return *m;
    throw MathError("FieldElement: not a prime-field residue");
}

FieldElement FieldElement::operator-() const {
    if (auto* r = std::get_if<Rat>(&v_)) return FieldElement(Rat(-*r));
    if (auto* e = std::get_if<Eisenstein>(&v_))
        return FieldElement(Eisenstein{-e->a, -e->b});
    const auto& m = std::get<ModularResidue>(v_);
    return FieldElement(ModularResidue{m.value == 0 ? 0 : m.p - m.value, m.p});
}

FieldElement operator+(const FieldElement& x, const FieldElement& y) {
    if (auto* a = std::get_if<Rat>(&x.v_)) {
        auto* b = std::get_if<Rat>(&y.v_);
        if (!b) mixed_operands("+");
        return FieldElement(Rat(*a + *b));
    }
    if (auto* a = std::get_if<Eisenstein>(&x.v_)) {
        auto* b = std::get_if<Eisenstein>(&y.v_);
        if (!b) mixed_operands("+");
        return FieldElement(Eisenstein{a->a + b->a, a->b + b->b});
    }
    const auto& a = std::get<ModularResidue>(x.v_);
    auto* b = std::get_if<ModularResidue>(&y.v_);
    if (!b) mixed_operands("+");
    check_same_modulus(a, *b, "+");
    std::uint64_t s = a.value + b->value;
    if (s >= a.p) s -= a.p;
    return FieldElement(ModularResidue{s, a.p});
}

FieldElement operator-(const FieldElement& x, const FieldElement& y) {
    return x + (-y);
}

FieldElement operator*(const FieldElement& x, const FieldElement& y) {
    if (auto* a = std::get_if<Rat>(&x.v_)) {
        auto* b = std::get_if<Rat>(&y.v_);
        if (!b) mixed_operands("*");
        return FieldElement(Rat(*a * *b));
    }
    if (auto* a = std::get_if<Eisenstein>(&x.v_)) {
        auto* b = std::get_if<Eisenstein>(&y.v_);
        if (!b) mixed_operands("*");
        return FieldElement(eis_mul(*a, *b));
    }
    const auto& a = std::get<ModularResidue>(x.v_);
    auto* b = std::get_if<ModularResidue>(&y.v_);
    if (!b) mixed_operands("*");
    check_same_modulus(a, *b, "*");
    return FieldElement(ModularResidue{mul_mod(a.value, b->value, a.p), a.p});
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw MathError("field arithmetic: division by zero");
    if (auto* r = std::get_if<Rat>(&v_)) return FieldElement(Rat(1 / *r));
    if (auto* e = std::get_if<Eisenstein>(&v_)) {
        // 1/(a+bw) = conj/norm with conj(a+bw) = (a-b) - bw
        Rat n = eis_norm(*e);
        return FieldElement(Eisenstein{(e->a - e->b) / n, -e->b / n});
    }
    const auto& m = std::get<ModularResidue>(v_);
    return FieldElement(ModularResidue{inv_mod(m.value, m.p), m.p});
}

FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    if (x.kind() != y.kind()) mixed_operands("/");
    return x * y.inverse();
}

FieldElement FieldElement::pow(std::uint64_t e) const {
    FieldElement base = *this;
    FieldElement acc;
    switch (kind()) {
    case FieldKind::rational: acc = FieldElement(Rat(1)); break;
    case FieldKind::eisenstein: acc = FieldElement(Eisenstein{Rat(1), Rat(0)}); break;
    case FieldKind::prime:
        acc = FieldElement(ModularResidue{1, residue().p});
        break;
    }
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

namespace {

std::string rat_to_string(const Rat& r) { return r.str(); }

} // namespace

std::string FieldElement::to_string() const {
    if (auto* r = std::get_if<Rat>(&v_)) return rat_to_string(*r);
    if (auto* e = std::get_if<Eisenstein>(&v_)) {
        std::string out = rat_to_string(e->a);
        if (e->b < 0) {
            out += "-" + rat_to_string(Rat(-e->b)) + "*w";
        } else {
            out += "+" + rat_to_string(e->b) + "*w";
        }
        return out;
    }
    return std::to_string(std::get<ModularResidue>(v_).value);
}

Rat parse_rational(std::string_view text) {
    if (text.empty()) throw UsageError("scalar: empty rational");
    auto validate_int = [](std::string_view s) {
        if (s.empty()) return false;
        std::size_t i = s[0] == '-' ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') return false;
        }
        return true;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!validate_int(text)) {
            throw UsageError("scalar: invalid integer '" + std::string(text) + "'");
        }
        return Rat(Int(std::string(text)));
    }
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!validate_int(num) || !validate_int(den)) {
        throw UsageError("scalar: invalid rational '" + std::string(text) + "'");
    }
    Int d{std::string(den)};
    if (d == 0) throw UsageError("scalar: zero denominator in '" + std::string(text) + "'");
    return Rat(Int(std::string(num)), d);
}

FieldElement FieldElement::parse(const FieldSpec& spec, std::string_view text) {
    switch (spec.kind) {
    case FieldKind::rational: return FieldElement(parse_rational(text));
    case FieldKind::eisenstein: {
        // forms: "A", "A+B*w", "A-B*w", "B*w", "w", "-w"
        std::string_view s = text;
        if (s.empty()) throw UsageError("scalar: empty eisenstein value");
        // locate the separating sign: the first +/- at position >= 1
        // (component rationals only carry a sign at their front)
        std::size_t sep = std::string_view::npos;
        for (std::size_t i = 1; i < s.size(); ++i) {
            if (s[i] == '+' || s[i] == '-') {
                sep = i;
                break;
            }
        }
        auto parse_w_term = [](std::string_view t) -> Rat {
            if (t == "w") return Rat(1);
            if (t.size() < 2 || t.substr(t.size() - 2) != "*w") {
                throw UsageError("scalar: invalid eisenstein term '" + std::string(t) + "'");
            }
            return parse_rational(t.substr(0, t.size() - 2));
        };
        const bool has_w = !s.empty() && s.back() == 'w';
        if (!has_w) return FieldElement(Eisenstein{parse_rational(s), Rat(0)});
        if (sep == std::string_view::npos) {
            if (s == "w") return FieldElement(Eisenstein{Rat(0), Rat(1)});
            if (s == "-w") return FieldElement(Eisenstein{Rat(0), Rat(-1)});
            return FieldElement(Eisenstein{Rat(0), parse_w_term(s)});
        }
        Rat a = parse_rational(s.substr(0, sep));
        std::string_view rest = s.substr(sep + 1);
        Rat b;
        if (rest == "w") {
            b = Rat(1);
        } else {
            b = parse_w_term(rest);
        }
        if (s[sep] == '-') b = -b;
        return FieldElement(Eisenstein{a, b});
    }
    case FieldKind::prime: {
        std::string t(text);
        if (t.empty()) throw UsageError("scalar: empty residue");
        Int n;
        try {
            n = Int(t);
        } catch (const std::exception&) {
            throw UsageError("scalar: invalid residue '" + t + "'");
        }
        return from_integer(spec, n);
    }
    }
    throw Error("FieldSpec: corrupt kind");
}

FieldElement cube_root_of_unity(const FieldSpec& spec) {
    if (spec.kind == FieldKind::eisenstein) {
        return FieldElement(Eisenstein{Rat(0), Rat(1)});
    }
    if (spec.kind == FieldKind::prime && spec.p % 3 == 1) {
        std::uint64_t g = smallest_primitive_root(spec.p);
        return FieldElement(ModularResidue{pow_mod(g, (spec.p - 1) / 3, spec.p), spec.p});
    }
    throw MathError("no cube root of unity in " + spec.describe());
}

const std::vector<std::uint64_t>& default_consensus_primes() {
    static const std::vector<std::uint64_t> primes = {
        2147483647ull, 2147483629ull, 2147483587ull, 2147483563ull};
    return primes;
}

std::uint64_t reduce_mod_p(const FieldElement& x, std::uint64_t p) {
    auto reduce_rat = [p](const Rat& r) -> std::uint64_t {
        Int num = numerator(r) % Int(p);
        if (num < 0) num += Int(p);
        Int den = denominator(r) % Int(p);
        if (den == 0) {
            throw MathError("reduce_mod_p: denominator vanishes mod " + std::to_string(p));
        }
        return mul_mod(num.convert_to<std::uint64_t>(),
                       inv_mod(den.convert_to<std::uint64_t>(), p), p);
    };
    switch (x.kind()) {
    case FieldKind::rational: return reduce_rat(x.rational());
    case FieldKind::eisenstein: {
        const auto e = cube_root_of_unity(FieldSpec::prime(p)).residue().value;
        const auto& v = x.eisenstein();
        return (reduce_rat(v.a) + mul_mod(reduce_rat(v.b), e, p)) % p;
    }
    case FieldKind::prime: {
        const auto& m = x.residue();
        if (m.p != p) throw MathError("reduce_mod_p: residue carries a different modulus");
        return m.value;
    }
    }
    throw Error("FieldSpec: corrupt kind");
}

} // namespace initdeg
