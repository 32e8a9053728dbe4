#include "psheaf/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "psheaf/error.hpp"

namespace psheaf {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Field::Field(Scalar p) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
        throw InputError("field modulus " + std::to_string(p) + " is not a prime below 2^31");
}

Scalar Field::inv(Scalar a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    // extended Euclid on (a, p)
    long long t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
        long long q = r / nr;
        t = std::exchange(nt, t - q * nt);
        r = std::exchange(nr, r - q * nr);
    }
    if (t < 0) t += p_;
    return static_cast<Scalar>(t);
}

Scalar Field::from_int(long long v) const {
    long long m = v % static_cast<long long>(p_);
    if (m < 0) m += p_;
    return static_cast<Scalar>(m);
}

long long Field::to_signed(Scalar a) const {
    if (p_ > 2 && a > p_ / 2) return static_cast<long long>(a) - p_;
    return a;
}

DenseMat DenseMat::identity(int n) {
    DenseMat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

bool DenseMat::is_zero() const {
    for (Scalar x : a)
        if (x != 0) return false;
    return true;
}

DenseMat multiply(const Field& F, const DenseMat& A, const DenseMat& B) {
    if (A.cols != B.rows) throw std::invalid_argument("dense multiply: shape mismatch");
    DenseMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            Scalar x = A(i, k);
            if (x == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                if (B(k, j) != 0) C(i, j) = F.add(C(i, j), F.mul(x, B(k, j)));
        }
    return C;
}

DenseMat transpose(const DenseMat& A) {
    DenseMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
    return T;
}

namespace {

void swap_rows(DenseMat& M, int r1, int r2) {
    if (r1 == r2) return;
    for (int j = 0; j < M.cols; ++j) std::swap(M(r1, j), M(r2, j));
}

// row[dst] -= c * row[src]
void sub_row(const Field& F, DenseMat& M, int dst, int src, Scalar c, int from_col) {
    for (int j = from_col; j < M.cols; ++j)
        if (M(src, j) != 0) M(dst, j) = F.sub(M(dst, j), F.mul(c, M(src, j)));
}

}  // namespace

int row_echelon(const Field& F, DenseMat& M, int pivot_cols, std::vector<int>* pivots, bool reduce_above) {
    int r = 0;
    for (int c = 0; c < pivot_cols && r < M.rows; ++c) {
        int piv = -1;
        for (int i = r; i < M.rows; ++i)
            if (M(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        swap_rows(M, r, piv);
        Scalar s = F.inv(M(r, c));
        if (s != 1)
            for (int j = c; j < M.cols; ++j) M(r, j) = F.mul(M(r, j), s);
        for (int i = reduce_above ? 0 : r + 1; i < M.rows; ++i) {
            if (i == r || M(i, c) == 0) continue;
            sub_row(F, M, i, r, M(i, c), c);
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return r;
}

int rank(const Field& F, DenseMat M) { return row_echelon(F, M, M.cols); }

std::vector<std::vector<Scalar>> left_nullspace(const Field& F, const DenseMat& M) {
    DenseMat aug(M.rows, M.cols + M.rows);
    for (int i = 0; i < M.rows; ++i) {
        for (int j = 0; j < M.cols; ++j) aug(i, j) = M(i, j);
        aug(i, M.cols + i) = 1;
    }
    int r = row_echelon(F, aug, M.cols);
    std::vector<std::vector<Scalar>> out;
    for (int i = r; i < M.rows; ++i) {
        std::vector<Scalar> v(M.rows);
        for (int j = 0; j < M.rows; ++j) v[j] = aug(i, M.cols + j);
        out.push_back(std::move(v));
    }
    return out;
}

DenseMat nullspace(const Field& F, const DenseMat& M) {
    DenseMat R = M;
    std::vector<int> piv;
    int r = row_echelon(F, R, R.cols, &piv, true);
    std::vector<char> is_piv(M.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free_cols;
    for (int c = 0; c < M.cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    DenseMat N(M.cols, static_cast<int>(free_cols.size()));
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        N(fc, static_cast<int>(k)) = 1;
        for (int i = 0; i < r; ++i) N(piv[i], static_cast<int>(k)) = F.neg(R(i, fc));
    }
    return N;
}

std::optional<DenseMat> solve(const Field& F, const DenseMat& A, const DenseMat& B) {
    if (A.rows != B.rows) throw std::invalid_argument("solve: shape mismatch");
    DenseMat aug(A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) aug(i, j) = A(i, j);
        for (int j = 0; j < B.cols; ++j) aug(i, A.cols + j) = B(i, j);
    }
    std::vector<int> piv;
    int r = row_echelon(F, aug, A.cols, &piv, true);
    for (int i = r; i < A.rows; ++i)
        for (int j = 0; j < B.cols; ++j)
            if (aug(i, A.cols + j) != 0) return std::nullopt;
    DenseMat X(A.cols, B.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < B.cols; ++j) X(piv[i], j) = aug(i, A.cols + j);
    return X;
}

DenseMat inverse(const Field& F, const DenseMat& A) {
    if (A.rows != A.cols) throw std::invalid_argument("inverse of a non-square matrix");
    auto X = solve(F, A, DenseMat::identity(A.rows));
    if (!X || rank(F, A) != A.rows) throw std::domain_error("inverse of a singular matrix");
    return *X;
}

DenseMat vstack(const std::vector<DenseMat>& blocks, int cols) {
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols != cols) throw std::invalid_argument("vstack: column mismatch");
        rows += b.rows;
    }
    DenseMat out(rows, cols);
    int r0 = 0;
    for (const auto& b : blocks) {
        std::copy(b.a.begin(), b.a.end(), out.a.begin() + static_cast<std::ptrdiff_t>(r0) * cols);
        r0 += b.rows;
    }
    return out;
}

std::vector<Scalar> RowSpace::reduce(std::vector<Scalar> v) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        Scalar c = v[pivot_[i]];
        if (c == 0) continue;
        const auto& b = basis_[i];
        for (int j = 0; j < dim_; ++j)
            if (b[j] != 0) v[j] = F_.sub(v[j], F_.mul(c, b[j]));
    }
    return v;
}

bool RowSpace::contains(const std::vector<Scalar>& v) const {
    auto w = reduce(v);
    for (Scalar x : w)
        if (x != 0) return false;
    return true;
}

bool RowSpace::insert(const std::vector<Scalar>& v) {
    auto w = reduce(v);
    int lead = -1;
    for (int j = 0; j < dim_; ++j)
        if (w[j] != 0) {
            lead = j;
            break;
        }
    if (lead < 0) return false;
    Scalar s = F_.inv(w[lead]);
    for (auto& x : w) x = F_.mul(x, s);
    basis_.push_back(std::move(w));
    pivot_.push_back(lead);
    return true;
}

}  // namespace psheaf
