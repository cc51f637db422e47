#pragma once

// Exact arithmetic in binary fields GF(2^m), 1 <= m <= 32.
//
// An element is a coefficient bit-vector in the polynomial basis: bit i is
// the coefficient of alpha^i, where alpha is the residue class of x modulo
// the reduction polynomial. The zero element is 0, the one element is 1.
// Field instances are immutable after construction and safe to share across
// threads; every operation is a pure function of its inputs.

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace kloo {

using Elem = std::uint32_t;

namespace detail {

inline int poly_degree(std::uint64_t p) {
    return p == 0 ? -1 : 63 - std::countl_zero(p);
}

// Remainder of carry-less division a mod b (b != 0).
inline std::uint64_t poly_rem(std::uint64_t a, std::uint64_t b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a))
        a ^= b << (da - db);
    return a;
}

// Smallest nontrivial factor of p by trial division over all polynomials of
// degree 1..deg(p)/2, or 0 if p is irreducible. Any composite polynomial has
// a factor in that degree range, so scanning candidates in increasing order
// returns the smallest factor first.
inline std::uint64_t smallest_poly_factor(std::uint64_t p) {
    const int d = poly_degree(p);
    for (int fd = 1; fd <= d / 2; ++fd)
        for (std::uint64_t f = std::uint64_t(1) << fd; f < std::uint64_t(1) << (fd + 1); ++f)
            if (poly_rem(p, f) == 0) return f;
    return 0;
}

}  // namespace detail

// Uppercase 0x-prefixed hex, the wire format for polynomials and elements.
inline std::string hex_str(std::uint64_t v) {
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string s;
    do {
        s.insert(s.begin(), digits[v & 0xF]);
        v >>= 4;
    } while (v != 0);
    return "0x" + s;
}

inline std::optional<std::uint64_t> parse_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    if (s.empty() || s.size() > 16) return std::nullopt;
    std::uint64_t v = 0;
    for (char c : s) {
        int digit;
        if (c >= '0' && c <= '9') digit = c - '0';
        else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
        else return std::nullopt;
        v = v << 4 | (std::uint64_t)digit;
    }
    return v;
}

// Roots of a quadratic x^2 + p*x + r over the field. TwoRoots holds distinct
// roots in ascending order; every returned root satisfies the equation.
struct QuadraticRoots {
    enum class Kind { NoRoots, OneRoot, TwoRoots };
    Kind kind = Kind::NoRoots;
    std::array<Elem, 2> roots{};

    unsigned count() const { return kind == Kind::NoRoots ? 0 : kind == Kind::OneRoot ? 1 : 2; }
};

class Field {
public:
    static constexpr unsigned kMaxDegree = 32;

    // Constructs GF(2^m) with the default reduction polynomial (the
    // lexicographically smallest irreducible of degree m).
    explicit Field(unsigned m) : Field(m, default_poly(m)) {}

    // Constructs GF(2^m) with an explicit reduction polynomial. Rejects
    // polynomials of the wrong degree and reducible polynomials; the
    // diagnostic for a reducible input names a nontrivial factor.
    Field(unsigned m, std::uint64_t poly) : m_(m), poly_(poly) {
        if (m < 1 || m > kMaxDegree)
            throw std::invalid_argument("extension degree must be in 1..32, got " +
                                        std::to_string(m));
        if (poly_ >> m != 1)
            throw std::invalid_argument(
                "reduction polynomial " + hex_str(poly_) + " must have degree exactly " +
                std::to_string(m) + " (got degree " +
                std::to_string(detail::poly_degree(poly_)) + ")");
        if (std::uint64_t f = detail::smallest_poly_factor(poly_))
            throw std::invalid_argument("reducible reduction polynomial " + hex_str(poly_) +
                                        ": divisible by " + hex_str(f) + " of degree " +
                                        std::to_string(detail::poly_degree(f)));
        q_ = std::uint64_t(1) << m_;
        mask_ = (Elem)(q_ - 1);
        build_tables_();
    }

    unsigned degree() const { return m_; }
    std::uint64_t order() const { return q_; }  // q = 2^m
    std::uint64_t reduction_poly() const { return poly_; }
    std::uint32_t trace_mask() const { return trace_mask_; }

    static std::uint64_t default_poly(unsigned m) {
        if (m < 1 || m > kMaxDegree)
            throw std::invalid_argument("extension degree must be in 1..32, got " +
                                        std::to_string(m));
        return kDefaultPolys[m];
    }

    Elem add(Elem a, Elem b) const { return a ^ b; }

    Elem mul(Elem a, Elem b) const {
        std::uint64_t acc = 0, x = a;
        for (std::uint64_t bb = b; bb; bb >>= 1, x <<= 1)
            if (bb & 1) acc ^= x;
        for (int i = 2 * (int)m_ - 2; i >= (int)m_; --i)
            if (acc >> i & 1) acc ^= poly_ << (i - (int)m_);
        return (Elem)acc & mask_;
    }

    Elem square(Elem a) const { return mul(a, a); }

    // Multiplicative inverse via a^(q-2); zero has none.
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("inverse of the zero element");
        return pow(a, q_ - 2);
    }

    // Unique square root: squaring is a bijection in characteristic 2,
    // and sqrt(a) = a^(2^(m-1)).
    Elem sqrt(Elem a) const {
        Elem t = a;
        for (unsigned i = 1; i < m_; ++i) t = mul(t, t);
        return t;
    }

    // Square-and-multiply; pow(a, 0) == 1 for every a, including a = 0.
    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    // Absolute trace onto GF(2), as the parity of a masked popcount. The mask
    // row is precomputed from the defining sum a + a^2 + ... + a^(2^(m-1)).
    int trace(Elem a) const { return std::popcount(trace_mask_ & a) & 1; }

    // The m-bit vector w with Tr(a*x) == parity(w & x) for all x: one
    // application of the Gram matrix T of the trace form, T[j][i] =
    // Tr(alpha^(i+j)). Converts the field pairing into the plain bit dot
    // product used by spectral transforms.
    Elem dual_map(Elem a) const {
        Elem w = 0;
        for (unsigned j = 0; j < m_; ++j)
            w |= (Elem)(std::popcount(dual_rows_[j] & a) & 1) << j;
        return w;
    }

    // Solves x^2 + p*x + r = 0. For p != 0 there are two distinct roots
    // exactly when Tr(r/p^2) = 0, else none; for p = 0 the Frobenius
    // bijection yields the single root sqrt(r).
    QuadraticRoots solve_quadratic(Elem p, Elem r) const {
        QuadraticRoots out;
        if (p == 0) {
            out.kind = QuadraticRoots::Kind::OneRoot;
            out.roots[0] = sqrt(r);
            check_root_(p, r, out.roots[0]);
            return out;
        }
        const Elem d = mul(r, inv(square(p)));
        if (trace(d) == 1) return out;  // NoRoots
        const Elem y = (m_ & 1) ? half_trace_(d) : artin_solve_(d);
        Elem x0 = mul(p, y);
        Elem x1 = x0 ^ p;
        if (x0 > x1) std::swap(x0, x1);
        check_root_(p, r, x0);
        check_root_(p, r, x1);
        out.kind = QuadraticRoots::Kind::TwoRoots;
        out.roots = {x0, x1};
        return out;
    }

    // The two primitive cube roots of unity (roots of x^2 + x + 1), present
    // exactly when m is even (3 | 2^m - 1 iff m even).
    std::optional<std::pair<Elem, Elem>> cube_roots_of_unity() const {
        if (m_ & 1) return std::nullopt;
        const QuadraticRoots qr = solve_quadratic(1, 1);
        assert(qr.kind == QuadraticRoots::Kind::TwoRoots);
        for (Elem xi : qr.roots)
            if (xi == 1 || pow(xi, 3) != 1)
                throw std::logic_error("cube root of unity failed its order check");
        return std::make_pair(qr.roots[0], qr.roots[1]);
    }

private:
    static constexpr std::array<std::uint64_t, kMaxDegree + 1> kDefaultPolys = {
        0,          0x2,        0x7,        0xB,        0x13,       0x25,
        0x43,       0x83,       0x11B,      0x203,      0x409,      0x805,
        0x1009,     0x201B,     0x4021,     0x8003,     0x1002B,    0x20009,
        0x40009,    0x80027,    0x100009,   0x200005,   0x400003,   0x800021,
        0x100001B,  0x2000009,  0x400001B,  0x8000027,  0x10000003, 0x20000005,
        0x40000003, 0x80000009, 0x10000008DULL,
    };

    void build_tables_() {
        // alpha = x mod poly; for m = 1 that residue is the constant term.
        const Elem alpha = m_ == 1 ? (Elem)(poly_ & 1) : 2;
        std::array<int, 2 * kMaxDegree> tr_pow{};
        Elem cur = 1;
        for (unsigned k = 0; k <= 2 * (m_ - 1); ++k) {
            tr_pow[k] = trace_by_sum_(cur);
            cur = mul(cur, alpha);
        }
        trace_mask_ = 0;
        for (unsigned i = 0; i < m_; ++i) trace_mask_ |= (Elem)tr_pow[i] << i;
        dual_rows_.fill(0);
        for (unsigned j = 0; j < m_; ++j)
            for (unsigned i = 0; i < m_; ++i) dual_rows_[j] |= (Elem)tr_pow[i + j] << i;

        // Row-reduced basis of the Artin-Schreier map y -> y^2 + y, kept as
        // (image vector, preimage combination) pairs keyed by pivot bit. The
        // map has kernel {0, 1}, so m-1 pivots cover the trace-zero image.
        as_vec_.fill(0);
        as_comb_.fill(0);
        Elem aj = 1;
        for (unsigned j = 0; j < m_; ++j) {
            Elem v = square(aj) ^ aj;
            Elem e = (Elem)1 << j;
            aj = mul(aj, alpha);
            for (int bit = 31; bit >= 0 && v; --bit) {
                if (!(v >> bit & 1)) continue;
                if (as_vec_[bit]) {
                    v ^= as_vec_[bit];
                    e ^= as_comb_[bit];
                } else {
                    as_vec_[bit] = v;
                    as_comb_[bit] = e;
                    v = 0;
                }
            }
        }
    }

    int trace_by_sum_(Elem a) const {
        Elem s = a, t = a;
        for (unsigned i = 1; i < m_; ++i) {
            t = mul(t, t);
            s ^= t;
        }
        assert(s <= 1 && "trace left GF(2); reduction polynomial not irreducible?");
        return (int)s;
    }

    // Half-trace solver for y^2 + y = d, odd m: H(d) = sum d^(4^i) over
    // i = 0..(m-1)/2 satisfies H^2 + H = d + Tr(d).
    Elem half_trace_(Elem d) const {
        Elem h = d, t = d;
        for (unsigned i = 0; i < (m_ - 1) / 2; ++i) {
            t = mul(t, t);
            t = mul(t, t);
            h ^= t;
        }
        return h;
    }

    // Even-m solver: decompose d over the precomputed image basis.
    Elem artin_solve_(Elem d) const {
        Elem y = 0;
        for (int bit = 31; bit >= 0 && d; --bit) {
            if (!(d >> bit & 1)) continue;
            assert(as_vec_[bit] && "Tr(d) = 0 input expected");
            d ^= as_vec_[bit];
            y ^= as_comb_[bit];
        }
        return y;
    }

    void check_root_(Elem p, Elem r, Elem x) const {
        if ((Elem)(square(x) ^ mul(p, x) ^ r) != 0)
            throw std::logic_error("quadratic root failed substitution check");
    }

    unsigned m_;
    std::uint64_t poly_;
    std::uint64_t q_ = 0;
    Elem mask_ = 0;
    Elem trace_mask_ = 0;
    std::array<Elem, kMaxDegree> dual_rows_{};
    std::array<Elem, kMaxDegree> as_vec_{};
    std::array<Elem, kMaxDegree> as_comb_{};
};

}  // namespace kloo
