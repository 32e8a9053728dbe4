#include "psheaf/labeled_matrix.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "psheaf/error.hpp"

namespace psheaf {

namespace {

Scalar row_get(const SparseRow& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const Entry& e, int c) { return e.col < c; });
    return (it != r.end() && it->col == col) ? it->val : 0;
}

void row_put(SparseRow& r, int col, Scalar v) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const Entry& e, int c) { return e.col < c; });
    if (it != r.end() && it->col == col) {
        if (v == 0)
            r.erase(it);
        else
            it->val = v;
    } else if (v != 0) {
        r.insert(it, Entry{col, v});
    }
}

// dst + c * src
SparseRow axpy(const Field& F, const SparseRow& dst, Scalar c, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
        if (b == src.size() || (a < dst.size() && dst[a].col < src[b].col)) {
            out.push_back(dst[a++]);
        } else if (a == dst.size() || src[b].col < dst[a].col) {
            Scalar v = F.mul(c, src[b].val);
            if (v) out.push_back({src[b].col, v});
            ++b;
        } else {
            Scalar v = F.add(dst[a].val, F.mul(c, src[b].val));
            if (v) out.push_back({dst[a].col, v});
            ++a;
            ++b;
        }
    }
    return out;
}

std::vector<int> remap_after_delete(int n, const std::vector<int>& idx) {
    std::vector<int> keep(n, 0);
    for (int i : idx) keep[i] = -1;
    int k = 0;
    for (int i = 0; i < n; ++i)
        if (keep[i] == 0) keep[i] = k++;
    return keep;
}

}  // namespace

LabeledMatrix::LabeledMatrix(PosetPtr P, Field F, std::vector<int> col_labels)
    : P_(std::move(P)), F_(F), col_labels_(std::move(col_labels)) {}

LabeledMatrix::LabeledMatrix(PosetPtr P, Field F, std::vector<int> row_labels, std::vector<int> col_labels)
    : P_(std::move(P)), F_(F), row_labels_(std::move(row_labels)), col_labels_(std::move(col_labels)),
      rows_(row_labels_.size()) {}

LabeledMatrix LabeledMatrix::from_dense(PosetPtr P, Field F, std::vector<int> row_labels,
                                        std::vector<int> col_labels, const DenseMat& M) {
    LabeledMatrix L(std::move(P), F, std::move(row_labels), std::move(col_labels));
    if (M.rows != L.rows() || M.cols != L.cols()) throw InputError("dense matrix shape does not match its labels");
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j)
            if (M(i, j) % F.p() != 0) L.set(i, j, M(i, j) % F.p());
    return L;
}

void LabeledMatrix::check_entry(int i, int j) const {
    if (!P_->leq(row_labels_[i], col_labels_[j]))
        throw LegalityError("nonzero entry at row '" + P_->name(row_labels_[i]) + "', column '" +
                            P_->name(col_labels_[j]) + "' violates the label order");
}

Scalar LabeledMatrix::at(int i, int j) const { return row_get(rows_[i], j); }

void LabeledMatrix::set(int i, int j, Scalar v) {
    if (v != 0) check_entry(i, j);
    row_put(rows_[i], j, v);
}

int LabeledMatrix::add_row(int label, SparseRow row) {
    row_labels_.push_back(label);
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    row.erase(std::remove_if(row.begin(), row.end(), [](const Entry& e) { return e.val == 0; }), row.end());
    rows_.push_back(std::move(row));
    int i = rows() - 1;
    for (const auto& e : rows_[i]) check_entry(i, e.col);
    return i;
}

int LabeledMatrix::add_col(int label) {
    col_labels_.push_back(label);
    return cols() - 1;
}

std::size_t LabeledMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

bool LabeledMatrix::is_zero() const { return nonzeros() == 0; }

DenseMat LabeledMatrix::dense() const {
    DenseMat D(rows(), cols());
    for (int i = 0; i < rows(); ++i)
        for (const auto& e : rows_[i]) D(i, e.col) = e.val;
    return D;
}

DenseMat LabeledMatrix::stalk(int tau, std::vector<int>* row_idx, std::vector<int>* col_idx) const {
    const Bitset& st = P_->up_set(tau);
    std::vector<int> ri, ci(cols(), -1);
    for (int i = 0; i < rows(); ++i)
        if (st.test(row_labels_[i])) ri.push_back(i);
    int nc = 0;
    std::vector<int> cols_kept;
    for (int j = 0; j < cols(); ++j)
        if (st.test(col_labels_[j])) {
            ci[j] = nc++;
            cols_kept.push_back(j);
        }
    DenseMat D(static_cast<int>(ri.size()), nc);
    for (int r = 0; r < D.rows; ++r)
        for (const auto& e : rows_[ri[r]])
            if (ci[e.col] >= 0) D(r, ci[e.col]) = e.val;
    if (row_idx) *row_idx = std::move(ri);
    if (col_idx) *col_idx = std::move(cols_kept);
    return D;
}

LabeledMatrix LabeledMatrix::submatrix(const ElementSet& row_set, const ElementSet& col_set) const {
    Bitset rs(P_->size()), cs(P_->size());
    for (int s : row_set) rs.set(s);
    for (int s : col_set) cs.set(s);
    std::vector<int> ci(cols(), -1), new_cols;
    for (int j = 0; j < cols(); ++j)
        if (cs.test(col_labels_[j])) {
            ci[j] = static_cast<int>(new_cols.size());
            new_cols.push_back(col_labels_[j]);
        }
    LabeledMatrix out(P_, F_, new_cols);
    for (int i = 0; i < rows(); ++i) {
        if (!rs.test(row_labels_[i])) continue;
        SparseRow r;
        for (const auto& e : rows_[i])
            if (ci[e.col] >= 0) r.push_back({ci[e.col], e.val});
        out.row_labels_.push_back(row_labels_[i]);
        out.rows_.push_back(std::move(r));
    }
    return out;
}

LabeledMatrix LabeledMatrix::relabel(PosetPtr Q, const std::vector<int>& map) const {
    std::vector<int> rl, cl;
    for (int l : row_labels_) rl.push_back(map[l]);
    for (int l : col_labels_) cl.push_back(map[l]);
    LabeledMatrix out(std::move(Q), F_, std::move(rl), std::move(cl));
    out.rows_ = rows_;
    for (int i = 0; i < out.rows(); ++i)
        for (const auto& e : out.rows_[i]) out.check_entry(i, e.col);
    return out;
}

LabeledMatrix LabeledMatrix::transposed(PosetPtr op) const {
    LabeledMatrix out(std::move(op), F_, col_labels_, row_labels_);
    for (int i = 0; i < rows(); ++i)
        for (const auto& e : rows_[i]) out.rows_[e.col].push_back({i, e.val});
    for (int i = 0; i < out.rows(); ++i)
        for (const auto& e : out.rows_[i]) out.check_entry(i, e.col);
    return out;
}

void LabeledMatrix::delete_rows(const std::vector<int>& idx) {
    auto keep = remap_after_delete(rows(), idx);
    std::vector<int> rl;
    std::vector<SparseRow> rr;
    for (int i = 0; i < rows(); ++i)
        if (keep[i] >= 0) {
            rl.push_back(row_labels_[i]);
            rr.push_back(std::move(rows_[i]));
        }
    row_labels_ = std::move(rl);
    rows_ = std::move(rr);
}

void LabeledMatrix::delete_cols(const std::vector<int>& idx) {
    auto keep = remap_after_delete(cols(), idx);
    std::vector<int> cl;
    for (int j = 0; j < cols(); ++j)
        if (keep[j] >= 0) cl.push_back(col_labels_[j]);
    col_labels_ = std::move(cl);
    for (auto& r : rows_) {
        SparseRow nr;
        for (const auto& e : r)
            if (keep[e.col] >= 0) nr.push_back({keep[e.col], e.val});
        r = std::move(nr);
    }
}

void LabeledMatrix::add_row_multiple(int src, int dst, Scalar c) {
    if (src == dst) throw LegalityError("row operation with identical source and destination");
    if (!P_->leq(row_labels_[dst], row_labels_[src]))
        throw LegalityError("cannot add row labeled '" + P_->name(row_labels_[src]) + "' into row labeled '" +
                            P_->name(row_labels_[dst]) + "'");
    rows_[dst] = axpy(F_, rows_[dst], c, rows_[src]);
}

void LabeledMatrix::add_col_multiple(int src, int dst, Scalar c) {
    if (src == dst) throw LegalityError("column operation with identical source and destination");
    if (!P_->leq(col_labels_[src], col_labels_[dst]))
        throw LegalityError("cannot add column labeled '" + P_->name(col_labels_[src]) + "' into column labeled '" +
                            P_->name(col_labels_[dst]) + "'");
    for (auto& r : rows_) {
        Scalar v = row_get(r, src);
        if (v == 0) continue;
        row_put(r, dst, F_.add(row_get(r, dst), F_.mul(c, v)));
    }
}

void LabeledMatrix::scale_row(int i, Scalar c) {
    if (c % F_.p() == 0) throw LegalityError("scaling by zero");
    for (auto& e : rows_[i]) e.val = F_.mul(e.val, c);
}

void LabeledMatrix::scale_col(int j, Scalar c) {
    if (c % F_.p() == 0) throw LegalityError("scaling by zero");
    for (auto& r : rows_) {
        Scalar v = row_get(r, j);
        if (v) row_put(r, j, F_.mul(v, c));
    }
}

void LabeledMatrix::swap_rows(int i, int j) {
    std::swap(rows_[i], rows_[j]);
    std::swap(row_labels_[i], row_labels_[j]);
}

void LabeledMatrix::swap_cols(int i, int j) {
    if (i == j) return;
    std::swap(col_labels_[i], col_labels_[j]);
    for (auto& r : rows_) {
        Scalar a = row_get(r, i), b = row_get(r, j);
        row_put(r, i, b);
        row_put(r, j, a);
    }
}

bool LabeledMatrix::operator==(const LabeledMatrix& o) const {
    return F_ == o.F_ && row_labels_ == o.row_labels_ && col_labels_ == o.col_labels_ && rows_ == o.rows_;
}

LabeledMatrix multiply(const LabeledMatrix& N, const LabeledMatrix& M) {
    if (N.col_labels() != M.row_labels()) throw InputError("multiply: label sequences do not match");
    const Field& F = N.field();
    LabeledMatrix out(N.poset(), F, N.row_labels(), M.col_labels());
    for (int i = 0; i < N.rows(); ++i) {
        SparseRow acc;
        for (const auto& e : N.row(i)) acc = axpy(F, acc, e.val, M.row(e.col));
        for (const auto& e : acc) out.set(i, e.col, e.val);
    }
    return out;
}

int rank(const LabeledMatrix& M) { return rank(M.field(), M.dense()); }

std::vector<std::vector<Scalar>> image_complement_rows(const Field& F, const DenseMat& M) {
    return left_nullspace(F, M);
}

LabeledMatrix row_op(const LabeledMatrix& M, const MatrixOp& op) {
    LabeledMatrix out = M;
    switch (op.kind) {
        case MatrixOp::AddRow: out.add_row_multiple(op.i, op.j, op.c); break;
        case MatrixOp::ScaleRow: out.scale_row(op.i, op.c); break;
        case MatrixOp::SwapRows: out.swap_rows(op.i, op.j); break;
        default: throw LegalityError("row_op given a column operation");
    }
    return out;
}

LabeledMatrix col_op(const LabeledMatrix& M, const MatrixOp& op) {
    LabeledMatrix out = M;
    switch (op.kind) {
        case MatrixOp::AddCol: out.add_col_multiple(op.i, op.j, op.c); break;
        case MatrixOp::ScaleCol: out.scale_col(op.i, op.c); break;
        case MatrixOp::SwapCols: out.swap_cols(op.i, op.j); break;
        default: throw LegalityError("col_op given a row operation");
    }
    return out;
}

LabeledMatrix apply_op(const LabeledMatrix& M, const MatrixOp& op) {
    switch (op.kind) {
        case MatrixOp::AddRow:
        case MatrixOp::ScaleRow:
        case MatrixOp::SwapRows: return row_op(M, op);
        default: return col_op(M, op);
    }
}

MatrixOp inverse(const Field& F, const MatrixOp& op) {
    MatrixOp inv = op;
    switch (op.kind) {
        case MatrixOp::AddRow:
        case MatrixOp::AddCol: inv.c = F.neg(op.c); break;
        case MatrixOp::ScaleRow:
        case MatrixOp::ScaleCol: inv.c = F.inv(op.c); break;
        default: break;
    }
    return inv;
}

std::vector<int> InjectiveComplex::term(int d) const {
    if (!has(d)) return {};
    return at(d).col_labels();
}

void InjectiveComplex::trim() {
    while (!eta.empty() && eta.front().cols() == 0) {
        eta.erase(eta.begin());
        ++lo;
    }
    while (!eta.empty() && eta.back().cols() == 0) {
        eta.pop_back();
        if (!eta.empty() && eta.back().rows() != 0) break;  // cannot happen for valid input
    }
    if (eta.empty()) lo = 0;
}

Report validate_complex(const InjectiveComplex& C) {
    for (std::size_t k = 0; k < C.eta.size(); ++k) {
        const auto& M = C.eta[k];
        int d = C.lo + static_cast<int>(k);
        if (M.field() != C.field) return Report::fail(fmt::format("eta^{} is over a different field", d));
        if (M.poset().get() != C.poset.get() && !(*M.poset() == *C.poset))
            return Report::fail(fmt::format("eta^{} is labeled by a different poset", d));
        for (int i = 0; i < M.rows(); ++i)
            for (const auto& e : M.row(i)) {
                if (e.val == 0 || e.val >= C.field.p())
                    return Report::fail(fmt::format("eta^{} stores an unreduced entry", d));
                if (!C.poset->leq(M.row_labels()[i], M.col_labels()[e.col]))
                    return Report::fail(fmt::format("eta^{} entry ({}, {}) violates the label order", d, i, e.col));
            }
        if (k + 1 < C.eta.size()) {
            if (M.row_labels() != C.eta[k + 1].col_labels())
                return Report::fail(fmt::format("row labels of eta^{} differ from column labels of eta^{}", d, d + 1));
            if (!multiply(C.eta[k + 1], M).is_zero())
                return Report::fail(fmt::format("eta^{} * eta^{} is not zero", d + 1, d));
        } else if (M.rows() != 0) {
            return Report::fail(fmt::format("last differential eta^{} has rows", d));
        }
    }
    return {};
}

void complex_row_op(InjectiveComplex& C, int d, const MatrixOp& op) {
    // a change of basis in I^{d+1}: E eta^d, and eta^{d+1} E^{-1}
    auto& M = C.at(d);
    switch (op.kind) {
        case MatrixOp::AddRow: M.add_row_multiple(op.i, op.j, op.c); break;
        case MatrixOp::ScaleRow: M.scale_row(op.i, op.c); break;
        case MatrixOp::SwapRows: M.swap_rows(op.i, op.j); break;
        default: throw LegalityError("complex_row_op given a column operation");
    }
    if (!C.has(d + 1)) return;
    auto& N = C.at(d + 1);
    switch (op.kind) {
        case MatrixOp::AddRow: N.add_col_multiple(op.j, op.i, C.field.neg(op.c)); break;
        case MatrixOp::ScaleRow: N.scale_col(op.i, C.field.inv(op.c)); break;
        default: N.swap_cols(op.i, op.j); break;
    }
}

void complex_col_op(InjectiveComplex& C, int d, const MatrixOp& op) {
    // a change of basis in I^d: eta^d E^{-1}, and E eta^{d-1}
    auto& M = C.at(d);
    switch (op.kind) {
        case MatrixOp::AddCol: M.add_col_multiple(op.i, op.j, op.c); break;
        case MatrixOp::ScaleCol: M.scale_col(op.i, op.c); break;
        case MatrixOp::SwapCols: M.swap_cols(op.i, op.j); break;
        default: throw LegalityError("complex_col_op given a row operation");
    }
    if (!C.has(d - 1)) return;
    auto& N = C.at(d - 1);
    switch (op.kind) {
        case MatrixOp::AddCol: N.add_row_multiple(op.j, op.i, C.field.neg(op.c)); break;
        case MatrixOp::ScaleCol: N.scale_row(op.i, C.field.inv(op.c)); break;
        default: N.swap_rows(op.i, op.j); break;
    }
}

std::string render_matrix(const LabeledMatrix& M, const std::string& title) {
    const Poset& P = *M.poset();
    const Field& F = M.field();
    std::vector<std::vector<std::string>> cells(M.rows() + 1, std::vector<std::string>(M.cols() + 1));
    cells[0][0] = title;
    for (int j = 0; j < M.cols(); ++j) cells[0][j + 1] = P.name(M.col_labels()[j]);
    for (int i = 0; i < M.rows(); ++i) {
        cells[i + 1][0] = P.name(M.row_labels()[i]);
        for (int j = 0; j < M.cols(); ++j) {
            Scalar v = M.at(i, j);
            cells[i + 1][j + 1] = v == 0 ? "·" : std::to_string(F.to_signed(v));
        }
    }
    // display width: "·" and "∅" are one column wide but several bytes
    auto width = [](const std::string& s) {
        int w = 0;
        for (unsigned char c : s)
            if ((c & 0xC0) != 0x80) ++w;
        return w;
    };
    std::vector<int> colw(M.cols() + 1, 0);
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j) colw[j] = std::max(colw[j], width(row[j]));
    std::string out;
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j > 0) out += ' ';
            int pad = colw[j] - width(row[j]);
            if (j == 0)
                out += row[j] + std::string(pad, ' ');
            else
                out += std::string(pad, ' ') + row[j];
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        out += '\n';
    }
    return out;
}

std::string render_complex(const InjectiveComplex& C) {
    std::string out;
    for (int d = C.lo; d <= C.hi(); ++d) {
        if (C.at(d).rows() == 0 && C.at(d).cols() == 0) continue;
        out += render_matrix(C.at(d), fmt::format("eta^{}", d));
        out += '\n';
    }
    return out;
}

std::string render_multiplicities(const Poset& P, const MultiplicityTable& m) {
    std::string out;
    for (const auto& [d, row] : m) {
        out += fmt::format("I^{}:", d);
        for (int e : P.linear_extension()) {
            auto it = row.find(e);
            if (it == row.end() || it->second == 0) continue;
            out += " [" + P.name(e) + "]";
            if (it->second > 1) out += fmt::format("^{}", it->second);
        }
        out += '\n';
    }
    return out;
}

}  // namespace psheaf
