#include "initdeg/linalg.hpp"

#include "initdeg/errors.hpp"

#include <algorithm>
#include <sstream>

namespace initdeg {

std::string Provenance::to_string() const {
    if (!modular) return "exact";
    std::ostringstream os;
    os << "modular-consensus(";
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (i) os << ",";
        os << primes[i];
    }
    os << ")";
    return os.str();
}

namespace {

// ---------------------------------------------------------------- Bareiss

EisInt eis_mul(const EisInt& x, const EisInt& y) {
    Int ac = x.a * y.a, bd = x.b * y.b;
    return {ac - bd, x.a * y.b + x.b * y.a - bd};
}

Int eis_norm(const EisInt& x) { return x.a * x.a - x.a * x.b + x.b * x.b; }

// exact division in Z[w]: x / y = x * conj(y) / N(y), conj(a+bw) = (a-b) - bw
EisInt eis_divexact(const EisInt& x, const EisInt& y) {
    EisInt num = eis_mul(x, EisInt{y.a - y.b, -y.b});
    Int n = eis_norm(y);
    return {num.a / n, num.b / n};
}

struct IntOps {
    using Elem = Int;
    static bool is_zero(const Int& x) { return x == 0; }
    static Int measure(const Int& x) { return abs(x); }
    static Int mul(const Int& x, const Int& y) { return x * y; }
    static Int sub(const Int& x, const Int& y) { return x - y; }
    static Int divexact(const Int& x, const Int& y) { return x / y; }
    static Int one() { return 1; }
};

struct EisOps {
    using Elem = EisInt;
    static bool is_zero(const EisInt& x) { return x.is_zero(); }
    static Int measure(const EisInt& x) { return eis_norm(x); }
    static EisInt mul(const EisInt& x, const EisInt& y) { return eis_mul(x, y); }
    static EisInt sub(const EisInt& x, const EisInt& y) { return {x.a - y.a, x.b - y.b}; }
    static EisInt divexact(const EisInt& x, const EisInt& y) { return eis_divexact(x, y); }
    static EisInt one() { return {1, 0}; }
};

template <typename Ops>
struct Echelon {
    std::vector<std::vector<typename Ops::Elem>> rows;
    std::vector<int> pivot_cols;
    int cols = 0;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

// Fraction-free elimination. Each update divides exactly by the previous
// pivot (Sylvester identity), so every intermediate entry stays a minor of
// the input matrix.
template <typename Ops>
Echelon<Ops> bareiss(std::vector<std::vector<typename Ops::Elem>> m, int cols) {
    Echelon<Ops> ech;
    ech.cols = cols;
    const int rows = static_cast<int>(m.size());
    typename Ops::Elem prev = Ops::one();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        Int best;
        for (int i = r; i < rows; ++i) {
            if (Ops::is_zero(m[i][c])) continue;
            Int meas = Ops::measure(m[i][c]);
            if (piv < 0 || meas > best) {
                piv = i;
                best = meas;
            }
        }
        if (piv < 0) continue; // free column
        if (piv != r) std::swap(m[piv], m[r]);
        for (int i = r + 1; i < rows; ++i) {
            if (Ops::is_zero(m[i][c]) ) {
                // still rescale the tail so later exact divisions line up
                for (int j = c + 1; j < cols; ++j) {
                    m[i][j] = Ops::divexact(Ops::mul(m[r][c], m[i][j]), prev);
                }
                continue;
            }
            for (int j = c + 1; j < cols; ++j) {
                m[i][j] = Ops::divexact(
                    Ops::sub(Ops::mul(m[r][c], m[i][j]), Ops::mul(m[i][c], m[r][j])),
                    prev);
            }
            m[i][c] = typename Ops::Elem{};
        }
        prev = m[r][c];
        ech.pivot_cols.push_back(c);
        ++r;
    }
    ech.rows = std::move(m);
    return ech;
}

// ---------------------------------------------------------------- mod p

struct Barrett {
    std::uint64_t p = 0;
    std::uint64_t magic = 0; // floor(2^64 / p), valid for p < 2^32

    explicit Barrett(std::uint64_t p) : p(p) {
        // floor(2^64 / p) for odd p; quotient error is at most 1, so one
        // conditional subtract corrects the remainder
        magic = ~0ull / p;
    }

    // reduce x < 2^64 (exact for p < 2^32 since quotient error is <= 1)
    std::uint64_t reduce(std::uint64_t x) const {
        std::uint64_t q = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(x) * magic) >> 64);
        std::uint64_t r = x - q * p;
        if (r >= p) r -= p;
        return r;
    }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        if (p < (1ull << 32)) return reduce(a * b);
        return mul_mod(a, b, p);
    }
};

struct ModEchelon {
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<int> pivot_cols;
    int cols = 0;
    std::uint64_t p = 0;
    int rank() const { return static_cast<int>(pivot_cols.size()); }
};

ModEchelon gauss(const ModMatrix& in) {
    ModEchelon ech;
    ech.cols = in.cols;
    ech.p = in.p;
    const std::uint64_t p = in.p;
    const Barrett bar(p);
    const bool fast = p < (1ull << 31);
    std::vector<std::vector<std::uint64_t>> m(in.rows);
    for (int r = 0; r < in.rows; ++r) {
        m[r].assign(in.e.begin() + static_cast<std::size_t>(r) * in.cols,
                    in.e.begin() + static_cast<std::size_t>(r + 1) * in.cols);
    }
    int r = 0;
    const int rows = in.rows;
    for (int c = 0; c < in.cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        if (piv != r) std::swap(m[piv], m[r]);
        const std::uint64_t inv = inv_mod(m[r][c], p);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            const std::uint64_t f = bar.mul(m[i][c], inv);
            const std::uint64_t nf = p - f;
            auto& src = m[r];
            auto& dst = m[i];
            if (fast) {
                // dst[j] + nf*src[j] < 2^31 + 2^62: fits, one Barrett reduce
                for (int j = c + 1; j < in.cols; ++j) {
                    dst[j] = bar.reduce(dst[j] + nf * src[j]);
                }
            } else {
                for (int j = c + 1; j < in.cols; ++j) {
                    dst[j] = (dst[j] + mul_mod(nf, src[j], p)) % p;
                }
            }
            dst[c] = 0;
        }
        ech.pivot_cols.push_back(c);
        ++r;
    }
    ech.rows = std::move(m);
    return ech;
}

// ------------------------------------------------- kernel back-substitution

// Solve for the kernel vector with the first free column as the free
// variable, over the field F obtained from the ring entries via `lift`.
template <typename Ech, typename Lift>
std::vector<FieldElement> kernel_from_echelon(const Ech& ech, const FieldSpec& field,
                                              Lift lift) {
    const int cols = ech.cols;
    int free_col = -1;
    for (int c = 0, k = 0; c < cols; ++c) {
        if (k < ech.rank() && ech.pivot_cols[k] == c) {
            ++k;
            continue;
        }
        free_col = c;
        break;
    }
    if (free_col < 0) throw InvariantError("kernel_from_echelon: no free column");
    std::vector<FieldElement> x(cols, FieldElement::zero(field));
    x[free_col] = FieldElement::one(field);
    for (int k = ech.rank() - 1; k >= 0; --k) {
        const int pc = ech.pivot_cols[k];
        FieldElement s = FieldElement::zero(field);
        for (int j = pc + 1; j < cols; ++j) {
            if (x[j].is_zero()) continue;
            s = s + lift(ech.rows[k][j]) * x[j];
        }
        x[pc] = -(s / lift(ech.rows[k][pc]));
    }
    // leading coefficient 1
    for (const auto& v : x) {
        if (!v.is_zero()) {
            if (!v.is_one()) {
                const FieldElement lead = v; // copy: v aliases into x
                for (auto& y : x) y = y / lead;
            }
            break;
        }
    }
    return x;
}

std::vector<FieldElement> kernel_vector(const Echelon<IntOps>& ech) {
    return kernel_from_echelon(ech, FieldSpec::rational(),
                               [](const Int& v) { return FieldElement(Rat(v)); });
}

std::vector<FieldElement> kernel_vector(const Echelon<EisOps>& ech) {
    return kernel_from_echelon(ech, FieldSpec::eisenstein(), [](const EisInt& v) {
        return FieldElement(Eisenstein{Rat(v.a), Rat(v.b)});
    });
}

std::vector<FieldElement> kernel_vector(const ModEchelon& ech) {
    const FieldSpec f = FieldSpec::prime(ech.p);
    return kernel_from_echelon(ech, f, [&](std::uint64_t v) {
        return FieldElement(ModularResidue{v, ech.p});
    });
}

} // namespace

IntMatrix clear_denominators(const Matrix& m) {
    if (m.field.kind != FieldKind::rational) {
        throw MathError("clear_denominators: matrix is not rational");
    }
    IntMatrix out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r) {
        Int l = 1;
        for (int c = 0; c < m.cols; ++c) {
            l = lcm(l, denominator(m.at(r, c).rational()));
        }
        for (int c = 0; c < m.cols; ++c) {
            const Rat& v = m.at(r, c).rational();
            out.at(r, c) = numerator(v) * (l / denominator(v));
        }
    }
    return out;
}

EisIntMatrix clear_denominators_eis(const Matrix& m) {
    if (m.field.kind != FieldKind::eisenstein) {
        throw MathError("clear_denominators_eis: matrix is not eisenstein");
    }
    EisIntMatrix out(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r) {
        Int l = 1;
        for (int c = 0; c < m.cols; ++c) {
            const Eisenstein& v = m.at(r, c).eisenstein();
            l = lcm(l, denominator(v.a));
            l = lcm(l, denominator(v.b));
        }
        for (int c = 0; c < m.cols; ++c) {
            const Eisenstein& v = m.at(r, c).eisenstein();
            out.at(r, c) = {numerator(v.a) * (l / denominator(v.a)),
                            numerator(v.b) * (l / denominator(v.b))};
        }
    }
    return out;
}

ModMatrix reduce_mod(const IntMatrix& m, std::uint64_t p) {
    ModMatrix out(m.rows, m.cols, p);
    const Int P(p);
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        Int r = m.e[i] % P;
        if (r < 0) r += P;
        out.e[i] = r.convert_to<std::uint64_t>();
    }
    return out;
}

ModMatrix reduce_mod(const EisIntMatrix& m, std::uint64_t p) {
    if (p % 3 != 1) {
        throw MathError("reduce_mod: eisenstein entries need p = 1 mod 3, got " +
                        std::to_string(p));
    }
    const std::uint64_t e = cube_root_of_unity(FieldSpec::prime(p)).residue().value;
    ModMatrix out(m.rows, m.cols, p);
    const Int P(p);
    for (std::size_t i = 0; i < m.e.size(); ++i) {
        Int a = m.e[i].a % P;
        if (a < 0) a += P;
        Int b = m.e[i].b % P;
        if (b < 0) b += P;
        out.e[i] = (a.convert_to<std::uint64_t>() +
                    mul_mod(b.convert_to<std::uint64_t>(), e, p)) % p;
    }
    return out;
}

int bareiss_rank(const IntMatrix& m) {
    std::vector<std::vector<Int>> rows(m.rows);
    for (int r = 0; r < m.rows; ++r) {
        rows[r].assign(m.e.begin() + static_cast<std::size_t>(r) * m.cols,
                       m.e.begin() + static_cast<std::size_t>(r + 1) * m.cols);
    }
    return bareiss<IntOps>(std::move(rows), m.cols).rank();
}

int bareiss_rank(const EisIntMatrix& m) {
    std::vector<std::vector<EisInt>> rows(m.rows);
    for (int r = 0; r < m.rows; ++r) {
        rows[r].assign(m.e.begin() + static_cast<std::size_t>(r) * m.cols,
                       m.e.begin() + static_cast<std::size_t>(r + 1) * m.cols);
    }
    return bareiss<EisOps>(std::move(rows), m.cols).rank();
}

int gauss_rank(const ModMatrix& m) { return gauss(m).rank(); }

bool verify_kernel_vector(const Matrix& m, const std::vector<FieldElement>& v) {
    if (static_cast<int>(v.size()) != m.cols) return false;
    bool nonzero = false;
    for (const auto& x : v) {
        if (!x.is_zero()) {
            nonzero = true;
            break;
        }
    }
    if (!nonzero) return false;
    for (int r = 0; r < m.rows; ++r) {
        FieldElement dot = FieldElement::zero(m.field);
        for (int c = 0; c < m.cols; ++c) {
            if (v[c].is_zero()) continue;
            dot = dot + m.at(r, c) * v[c];
        }
        if (!dot.is_zero()) return false;
    }
    return true;
}

RankResult rank_kernel(const Matrix& m, bool want_certificate) {
    RankResult out;
    out.field = m.field;
    out.provenance = Provenance::exact();
    std::optional<std::vector<FieldElement>> cert;
    int rank = 0;
    switch (m.field.kind) {
    case FieldKind::rational: {
        IntMatrix im = clear_denominators(m);
        std::vector<std::vector<Int>> rows(im.rows);
        for (int r = 0; r < im.rows; ++r) {
            rows[r].assign(im.e.begin() + static_cast<std::size_t>(r) * im.cols,
                           im.e.begin() + static_cast<std::size_t>(r + 1) * im.cols);
        }
        auto ech = bareiss<IntOps>(std::move(rows), im.cols);
        rank = ech.rank();
        if (want_certificate && rank < m.cols) cert = kernel_vector(ech);
        break;
    }
    case FieldKind::eisenstein: {
        EisIntMatrix im = clear_denominators_eis(m);
        std::vector<std::vector<EisInt>> rows(im.rows);
        for (int r = 0; r < im.rows; ++r) {
            rows[r].assign(im.e.begin() + static_cast<std::size_t>(r) * im.cols,
                           im.e.begin() + static_cast<std::size_t>(r + 1) * im.cols);
        }
        auto ech = bareiss<EisOps>(std::move(rows), im.cols);
        rank = ech.rank();
        if (want_certificate && rank < m.cols) cert = kernel_vector(ech);
        break;
    }
    case FieldKind::prime: {
        ModMatrix mm(m.rows, m.cols, m.field.p);
        for (int r = 0; r < m.rows; ++r) {
            for (int c = 0; c < m.cols; ++c) {
                mm.at(r, c) = m.at(r, c).residue().value;
            }
        }
        auto ech = gauss(mm);
        rank = ech.rank();
        if (want_certificate && rank < m.cols) cert = kernel_vector(ech);
        break;
    }
    }
    out.rank = rank;
    out.kernel_dim = m.cols - rank;
    if (cert) {
        if (!verify_kernel_vector(m, *cert)) {
            throw InvariantError("rank_kernel: kernel certificate failed the dot-product check");
        }
        out.certificate = std::move(cert);
    }
    return out;
}

namespace {

template <typename Mat>
MultiPrimeRank multi_prime_rank_impl(const Mat& m, const std::vector<std::uint64_t>& primes,
                                     bool want_certificate) {
    if (primes.size() < 2) {
        throw UsageError("multi_prime_rank: need at least 2 primes");
    }
    for (auto p : primes) {
        if (!is_prime_u64(p)) {
            throw UsageError("multi_prime_rank: modulus " + std::to_string(p) +
                             " is not prime");
        }
    }
    MultiPrimeRank out;
    std::optional<ModEchelon> first;
    for (auto p : primes) {
        auto ech = gauss(reduce_mod(m, p));
        out.per_prime.emplace_back(p, ech.rank());
        if (!first) first = std::move(ech);
    }
    const int rank0 = out.per_prime.front().second;
    for (const auto& [p, r] : out.per_prime) {
        if (r != rank0) return out; // consensus failure: caller must fall back
    }
    RankResult res;
    res.rank = rank0;
    res.kernel_dim = m.cols - rank0;
    res.field = FieldSpec::prime(primes.front());
    res.provenance = Provenance::consensus(primes);
    if (want_certificate && res.kernel_dim > 0) {
        res.certificate = kernel_vector(*first);
        // independent dot-product check against the reduced matrix
        const ModMatrix mm = reduce_mod(m, primes.front());
        Matrix fm(mm.rows, mm.cols, res.field);
        for (int r = 0; r < mm.rows; ++r) {
            for (int c = 0; c < mm.cols; ++c) {
                fm.at(r, c) = FieldElement(ModularResidue{mm.at(r, c), mm.p});
            }
        }
        if (!verify_kernel_vector(fm, *res.certificate)) {
            throw InvariantError(
                "multi_prime_rank: kernel certificate failed the dot-product check");
        }
    }
    out.result = std::move(res);
    return out;
}

} // namespace

MultiPrimeRank multi_prime_rank(const IntMatrix& m,
                                const std::vector<std::uint64_t>& primes,
                                bool want_certificate) {
    return multi_prime_rank_impl(m, primes, want_certificate);
}

MultiPrimeRank multi_prime_rank(const EisIntMatrix& m,
                                const std::vector<std::uint64_t>& primes,
                                bool want_certificate) {
    return multi_prime_rank_impl(m, primes, want_certificate);
}

} // namespace initdeg
