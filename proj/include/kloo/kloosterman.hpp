#pragma once

// Kloosterman sums over GF(2^m):
//
//     K(a) = sum over x in F* of (-1)^Tr(a*x + 1/x)
//
// extended to a = 0 by the literal sum, which evaluates to -1. Two table
// builders cover the whole field: a naive O(q^2) pass, and a spectral
// O(q log q) pass that tabulates f(x) = (-1)^Tr(1/x) (with f(0) = +1), runs
// one in-place Walsh-Hadamard transform over the bit-index domain, and reads
// K(a) = spectrum[dual_map(a)] - 1.

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "kloo/field.hpp"

namespace kloo {

enum class KsumMethod { Naive, Spectral };

struct KloostermanTable {
    Field field;
    std::vector<std::int32_t> values;  // indexed by element value, size q
    KsumMethod method = KsumMethod::Naive;

    std::int32_t at(Elem a) const { return values[a]; }
};

// Mathematical residue in [0, modulus), correct for negative k.
inline std::int64_t residue_mod(std::int64_t k, std::int64_t modulus) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
    const std::int64_t r = k % modulus;
    return r < 0 ? r + modulus : r;
}

namespace detail {

// Calls fn(x, 1/x) exactly once for every x in F*, in no particular order.
// Montgomery batch inversion in fixed-size chunks: one pow-inverse plus three
// multiplications per element, O(1) extra memory in the field size.
template <typename Fn>
void for_each_inverse(const Field& f, Fn&& fn) {
    constexpr std::size_t kChunk = 4096;
    std::vector<Elem> prefix(kChunk);
    const std::uint64_t q = f.order();
    for (std::uint64_t lo = 1; lo < q; lo += kChunk) {
        const std::uint64_t hi = lo + kChunk < q ? lo + kChunk : q;
        Elem acc = 1;
        for (std::uint64_t x = lo; x < hi; ++x) {
            prefix[x - lo] = acc;  // product of elements before x in the chunk
            acc = f.mul(acc, (Elem)x);
        }
        Elem inv_acc = f.inv(acc);
        for (std::uint64_t x = hi; x-- > lo;) {
            fn((Elem)x, f.mul(inv_acc, prefix[x - lo]));
            inv_acc = f.mul(inv_acc, (Elem)x);
        }
    }
}

// In-place Walsh-Hadamard transform; length must be a power of two.
inline void walsh_hadamard(std::span<std::int32_t> v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1)
        for (std::size_t i = 0; i < v.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const std::int32_t a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
}

}  // namespace detail

// One exact K(a), O(q) field operations.
inline std::int64_t kloosterman(const Field& f, Elem a) {
    std::int64_t sum = 0;
    const Elem mask = f.trace_mask();
    detail::for_each_inverse(f, [&](Elem x, Elem ix) {
        sum += (std::popcount(mask & (f.mul(a, x) ^ ix)) & 1) ? -1 : 1;
    });
    return sum;
}

// Whole-field table by direct summation, O(q^2). The a-domain may be
// partitioned across threads; entries are independent.
inline KloostermanTable kloosterman_table_naive(const Field& f, unsigned threads = 1) {
    if (f.degree() > 16)
        throw std::length_error("naive Kloosterman table is O(q^2): refusing m = " +
                                std::to_string(f.degree()) + " > 16; use the spectral builder");
    const std::uint64_t q = f.order();
    std::vector<Elem> inv_table(q, 0);
    detail::for_each_inverse(f, [&](Elem x, Elem ix) { inv_table[x] = ix; });

    KloostermanTable t{f, std::vector<std::int32_t>(q, 0), KsumMethod::Naive};
    const Elem mask = f.trace_mask();
    auto fill_range = [&](std::uint64_t a_lo, std::uint64_t a_hi) {
        for (std::uint64_t a = a_lo; a < a_hi; ++a) {
            std::int32_t sum = 0;
            for (std::uint64_t x = 1; x < q; ++x)
                sum += (std::popcount(mask & (f.mul((Elem)a, (Elem)x) ^ inv_table[x])) & 1) ? -1 : 1;
            t.values[a] = sum;
        }
    };
    if (threads <= 1) {
        fill_range(0, q);
    } else {
        std::vector<std::thread> pool;
        const std::uint64_t step = (q + threads - 1) / threads;
        for (unsigned i = 0; i < threads; ++i) {
            const std::uint64_t lo = i * step;
            if (lo >= q) break;
            pool.emplace_back(fill_range, lo, lo + step < q ? lo + step : q);
        }
        for (auto& th : pool) th.join();
    }
    return t;
}

// Whole-field table in O(q log q) via the Walsh-Hadamard spectrum of
// f(x) = (-1)^Tr(1/x). The dual map turns the trace pairing Tr(a*x) into the
// bit dot product the transform diagonalizes, so K(a) = spectrum[T*a] - 1.
inline KloostermanTable kloosterman_table_fast(const Field& f) {
    if (f.degree() > 28)
        throw std::length_error("spectral Kloosterman table needs 2^m table slots: refusing m = " +
                                std::to_string(f.degree()) + " > 28");
    const std::uint64_t q = f.order();
    std::vector<std::int32_t> spectrum(q, 0);
    spectrum[0] = 1;
    const Elem mask = f.trace_mask();
    detail::for_each_inverse(
        f, [&](Elem x, Elem ix) { spectrum[x] = (std::popcount(mask & ix) & 1) ? -1 : 1; });
    detail::walsh_hadamard(spectrum);

    KloostermanTable t{f, std::vector<std::int32_t>(q, 0), KsumMethod::Spectral};
    for (std::uint64_t a = 0; a < q; ++a) t.values[a] = spectrum[f.dual_map((Elem)a)] - 1;
    return t;
}

// CSV export: header a_hex,K,K_mod12, one row per element in ascending order.
inline void write_kloosterman_csv(const KloostermanTable& t, std::ostream& os) {
    os << "a_hex,K,K_mod12\n";
    for (std::uint64_t a = 0; a < t.field.order(); ++a)
        os << hex_str(a) << ',' << t.values[a] << ',' << residue_mod(t.values[a], 12) << '\n';
}

}  // namespace kloo
