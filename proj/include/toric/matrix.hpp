#pragma once

#include <cassert>
#include <initializer_list>
#include <vector>

#include "toric/numbers.hpp"

namespace toric {

/// Dense row-major matrix over Z with arbitrary-precision entries.
struct IntMatrix {
    int rows{0};
    int cols{0};
    std::vector<Int> entries;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c, Int(0)) {}
    IntMatrix(int r, int c, std::initializer_list<long> vals);

    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rws);

    Int& at(int i, int j) { return entries[size_t(i) * cols + j]; }
    const Int& at(int i, int j) const { return entries[size_t(i) * cols + j]; }

    std::vector<Int> row(int i) const;
    std::vector<Int> col(int j) const;
    IntMatrix transpose() const;
    IntMatrix submatrix_cols(const std::vector<int>& idx) const;
    IntMatrix submatrix(const std::vector<int>& ri, const std::vector<int>& ci) const;

    bool operator==(const IntMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }
    bool operator<(const IntMatrix& o) const; // lexicographic, for canonical sorts

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void negate_row(int i);
    void negate_col(int j);
    // row[i] += k * row[j], col version alike
    void addmul_row(int i, int j, const Int& k);
    void addmul_col(int i, int j, const Int& k);
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
std::vector<Int> mat_vec(const IntMatrix& a, const std::vector<Int>& v);
std::vector<Int> vec_mat(const std::vector<Int>& v, const IntMatrix& a);

/// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& m);

/// Dense matrix over Q.
struct RatMatrix {
    int rows{0};
    int cols{0};
    std::vector<Rat> entries;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c, Rat(0)) {}
    static RatMatrix from_int(const IntMatrix& m);

    Rat& at(int i, int j) { return entries[size_t(i) * cols + j]; }
    const Rat& at(int i, int j) const { return entries[size_t(i) * cols + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows == o.rows && cols == o.cols && entries == o.entries;
    }
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);

/// Rank over Q via Gaussian elimination.
int rank_rat(RatMatrix m);
int rank_int(const IntMatrix& m);

/// Solves a * x = b exactly over Q; empty result if inconsistent.
/// `a` must have full column rank for the unique-solution overload.
bool solve_exact(const RatMatrix& a, const std::vector<Rat>& b, std::vector<Rat>& x);

/// Inverse of a square rational matrix; throws Infeasible when singular.
RatMatrix inverse(const RatMatrix& a);

/// Enumerates k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets_of_size(int n, int k);

} // namespace toric
