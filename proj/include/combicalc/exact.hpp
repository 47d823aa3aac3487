#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace combicalc {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix. Entries here are tiny (incidence signs),
/// but rank elimination promotes to arbitrary precision.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<long long> a;

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    long long& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    long long at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    IntMatrix transposed() const {
        IntMatrix t(cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
};

/// Exact matrix product.
inline IntMatrix multiply(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("multiply: dimension mismatch");
    IntMatrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            long long v = x.at(i, k);
            if (v == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) out.at(i, j) += v * y.at(k, j);
        }
    return out;
}

inline bool is_zero(const IntMatrix& m) {
    for (long long v : m.a)
        if (v != 0) return false;
    return true;
}

/**
 * Exact rank over the rationals by fraction-free (Bareiss) elimination.
 * Intermediate entries are determinant minors, kept exact in arbitrary
 * precision; every division is exact. No tolerances anywhere.
 */
inline std::size_t exact_rank(const IntMatrix& m) {
    const std::size_t rows = m.rows, cols = m.cols;
    std::vector<BigInt> w(m.a.begin(), m.a.end());
    auto at = [&](std::size_t r, std::size_t c) -> BigInt& { return w[r * cols + c]; };

    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != rank)
            for (std::size_t c = col; c < cols; ++c) std::swap(at(pivot, c), at(rank, c));

        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c)
                at(r, c) = (at(rank, col) * at(r, c) - at(r, col) * at(rank, c)) / prev;
            at(r, col) = 0;
        }
        prev = at(rank, col);
        ++rank;
    }
    return rank;
}

}  // namespace combicalc
