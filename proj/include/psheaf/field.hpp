#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace psheaf {

using Scalar = std::uint32_t;

// Prime field GF(p). Elements are kept reduced in [0, p).
class Field {
public:
    explicit Field(Scalar p = 2);

    Scalar p() const { return p_; }

    Scalar add(Scalar a, Scalar b) const {
        Scalar s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + (p_ - b); }
    Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
    Scalar mul(Scalar a, Scalar b) const {
        return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Scalar inv(Scalar a) const;
    Scalar from_int(long long v) const;
    // Representative in (-p/2, p/2], so that -1 prints as -1 over odd p.
    long long to_signed(Scalar a) const;

    bool operator==(const Field& o) const { return p_ == o.p_; }
    bool operator!=(const Field& o) const { return p_ != o.p_; }

private:
    Scalar p_;
};

bool is_prime(std::uint64_t n);

// Small dense matrix, row-major. Used for stalk-level linear algebra.
struct DenseMat {
    int rows = 0;
    int cols = 0;
    std::vector<Scalar> a;

    DenseMat() = default;
    DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}

    Scalar& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    Scalar operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static DenseMat identity(int n);
    bool is_zero() const;
    bool operator==(const DenseMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

DenseMat multiply(const Field& F, const DenseMat& A, const DenseMat& B);
DenseMat transpose(const DenseMat& A);

// Forward elimination in place restricted to the first `pivot_cols` columns.
// Pivot = first row (from the current rank down) with a nonzero entry in the
// leftmost remaining column; the pivot row is normalized to 1.
// Returns the rank; pivot column indices are appended to `pivots` if given.
int row_echelon(const Field& F, DenseMat& M, int pivot_cols, std::vector<int>* pivots = nullptr,
                bool reduce_above = false);

int rank(const Field& F, DenseMat M);

// Basis of {v : v * M = 0}, read off the augmented identity [M | I] after
// row reduction: the identity part of every row whose M part became zero.
std::vector<std::vector<Scalar>> left_nullspace(const Field& F, const DenseMat& M);

// Basis of {x : M x = 0}, as columns of the returned matrix.
DenseMat nullspace(const Field& F, const DenseMat& M);

// X with A X = B, or nullopt if some column of B is outside the column space of A.
// When A has dependent columns the free variables are set to zero.
std::optional<DenseMat> solve(const Field& F, const DenseMat& A, const DenseMat& B);
// Inverse of a square matrix; throws std::domain_error if singular.
DenseMat inverse(const Field& F, const DenseMat& A);
// Stack vertically; all blocks must share the column count.
DenseMat vstack(const std::vector<DenseMat>& blocks, int cols);

// Incrementally maintained row space. insert() reports whether the vector was
// independent of everything inserted so far.
class RowSpace {
public:
    RowSpace(const Field& F, int dim) : F_(F), dim_(dim) {}
    bool contains(const std::vector<Scalar>& v) const;
    bool insert(const std::vector<Scalar>& v);
    int rank() const { return static_cast<int>(basis_.size()); }
    int dim() const { return dim_; }

private:
    std::vector<Scalar> reduce(std::vector<Scalar> v) const;

    Field F_;
    int dim_;
    std::vector<std::vector<Scalar>> basis_;  // normalized, pivot_[i] is the leading column
    std::vector<int> pivot_;
};

}  // namespace psheaf
