#pragma once

#include <map>
#include <string>
#include <vector>

#include "psheaf/field.hpp"
#include "psheaf/poset.hpp"

namespace psheaf {

struct Entry {
    int col;
    Scalar val;
    bool operator==(const Entry& o) const { return col == o.col && val == o.val; }
};
// Sorted by column, zero entries never stored.
using SparseRow = std::vector<Entry>;

// Sparse matrix over GF(p) whose rows and columns carry poset labels. An
// entry at (i, j) may be nonzero only if row_label(i) <= col_label(j).
class LabeledMatrix {
public:
    LabeledMatrix() = default;
    LabeledMatrix(PosetPtr P, Field F, std::vector<int> col_labels);
    LabeledMatrix(PosetPtr P, Field F, std::vector<int> row_labels, std::vector<int> col_labels);
    static LabeledMatrix from_dense(PosetPtr P, Field F, std::vector<int> row_labels, std::vector<int> col_labels,
                                    const DenseMat& M);

    const PosetPtr& poset() const { return P_; }
    const Field& field() const { return F_; }
    int rows() const { return static_cast<int>(row_labels_.size()); }
    int cols() const { return static_cast<int>(col_labels_.size()); }
    const std::vector<int>& row_labels() const { return row_labels_; }
    const std::vector<int>& col_labels() const { return col_labels_; }
    const SparseRow& row(int i) const { return rows_[i]; }

    Scalar at(int i, int j) const;
    void set(int i, int j, Scalar v);  // throws LegalityError on a label violation
    int add_row(int label, SparseRow row);
    int add_col(int label);
    std::size_t nonzeros() const;
    bool is_zero() const;

    DenseMat dense() const;
    // M[St tau, St tau] as a dense matrix; optionally reports which rows/columns were kept.
    DenseMat stalk(int tau, std::vector<int>* row_idx = nullptr, std::vector<int>* col_idx = nullptr) const;
    LabeledMatrix submatrix(const ElementSet& row_set, const ElementSet& col_set) const;
    // Same entries, labels pushed along `map` into poset Q (must stay order compatible).
    LabeledMatrix relabel(PosetPtr Q, const std::vector<int>& map) const;
    // Transposed matrix with the same label indices, read in the opposite poset.
    LabeledMatrix transposed(PosetPtr op) const;

    void delete_rows(const std::vector<int>& idx);
    void delete_cols(const std::vector<int>& idx);

    // Allowed operations, in place.
    void add_row_multiple(int src, int dst, Scalar c);  // row dst += c row src; needs label(dst) <= label(src)
    void add_col_multiple(int src, int dst, Scalar c);  // col dst += c col src; needs label(src) <= label(dst)
    void scale_row(int i, Scalar c);
    void scale_col(int j, Scalar c);
    void swap_rows(int i, int j);
    void swap_cols(int i, int j);

    bool operator==(const LabeledMatrix& o) const;

private:
    void check_entry(int i, int j) const;

    PosetPtr P_;
    Field F_;
    std::vector<int> row_labels_, col_labels_;
    std::vector<SparseRow> rows_;
};

LabeledMatrix multiply(const LabeledMatrix& N, const LabeledMatrix& M);
int rank(const LabeledMatrix& M);
// Basis of (im M)^perp, computed by row reducing [M | I].
std::vector<std::vector<Scalar>> image_complement_rows(const Field& F, const DenseMat& M);

struct MatrixOp {
    enum Kind { AddRow, AddCol, ScaleRow, ScaleCol, SwapRows, SwapCols } kind;
    int i = 0;       // source row/column (or the scaled one)
    int j = 0;       // destination row/column
    Scalar c = 1;
};
// Copying variants of the allowed operations.
LabeledMatrix row_op(const LabeledMatrix& M, const MatrixOp& op);
LabeledMatrix col_op(const LabeledMatrix& M, const MatrixOp& op);
LabeledMatrix apply_op(const LabeledMatrix& M, const MatrixOp& op);
MatrixOp inverse(const Field& F, const MatrixOp& op);

// Bounded complex of injective sheaves. eta[k] is the differential leaving
// degree lo + k; the last matrix has no rows.
struct InjectiveComplex {
    PosetPtr poset;
    Field field;
    int lo = 0;
    std::vector<LabeledMatrix> eta;

    InjectiveComplex() = default;
    InjectiveComplex(PosetPtr P, Field F, int lo_ = 0) : poset(std::move(P)), field(F), lo(lo_) {}

    bool empty() const { return eta.empty(); }
    int hi() const { return lo + static_cast<int>(eta.size()) - 1; }
    bool has(int d) const { return d >= lo && d <= hi(); }
    const LabeledMatrix& at(int d) const { return eta[d - lo]; }
    LabeledMatrix& at(int d) { return eta[d - lo]; }
    std::vector<int> term(int d) const;  // labels of I^d
    int term_size(int d) const { return has(d) ? at(d).cols() : 0; }
    // Drops empty terms at both ends.
    void trim();
};

struct Report {
    bool ok = true;
    std::string message;
    explicit operator bool() const { return ok; }
    static Report fail(std::string m) { return {false, std::move(m)}; }
};

Report validate_complex(const InjectiveComplex& C);

// Row op on eta^d paired with the compensating column op on eta^{d+1}, and
// column op on eta^d paired with the compensating row op on eta^{d-1}.
void complex_row_op(InjectiveComplex& C, int d, const MatrixOp& op);
void complex_col_op(InjectiveComplex& C, int d, const MatrixOp& op);

using MultiplicityTable = std::map<int, std::map<int, int>>;  // degree -> element -> count

std::string render_matrix(const LabeledMatrix& M, const std::string& title);
std::string render_complex(const InjectiveComplex& C);
std::string render_multiplicities(const Poset& P, const MultiplicityTable& m);

}  // namespace psheaf
