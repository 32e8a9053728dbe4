#include "psheaf/resolution.hpp"

#include <map>

#include "psheaf/error.hpp"

namespace psheaf {

int make_exact_inplace(LabeledMatrix& cur, const DenseMat& prev_at_pi, int pi) {
    std::vector<int> ri, ci;
    DenseMat stalk = cur.stalk(pi, &ri, &ci);
    if (prev_at_pi.rows != static_cast<int>(ci.size()))
        throw InputError("make_exact: previous map does not match the columns at " + cur.poset()->name(pi));
    const Field& F = cur.field();
    RowSpace span(F, stalk.cols);
    for (int r = 0; r < stalk.rows; ++r) span.insert(std::vector<Scalar>(stalk.a.begin() + r * stalk.cols,
                                                                          stalk.a.begin() + (r + 1) * stalk.cols));
    int added = 0;
    for (auto& v : image_complement_rows(F, prev_at_pi)) {
        if (!span.insert(v)) continue;
        SparseRow row;
        for (int k = 0; k < stalk.cols; ++k)
            if (v[k] != 0) row.push_back({ci[k], v[k]});
        cur.add_row(pi, std::move(row));
        ++added;
    }
    return added;
}

LabeledMatrix make_exact(const LabeledMatrix& prev, const LabeledMatrix& cur, int pi) {
    if (prev.row_labels() != cur.col_labels()) throw InputError("make_exact: label sequences do not match");
    if (!multiply(cur, prev).is_zero()) throw InputError("make_exact: composition is not zero");
    LabeledMatrix out = cur;
    make_exact_inplace(out, prev.stalk(pi), pi);
    return out;
}

LabeledMatrix resolution_step(const PosetPtr& P, const Field& F, const std::vector<int>& cols,
                              const StalkImage& prev, const std::vector<int>* order) {
    LabeledMatrix cur(P, F, cols);
    if (order) {
        for (int pi : *order) make_exact_inplace(cur, prev(pi), pi);
    } else {
        const auto& lin = P->linear_extension();
        for (auto it = lin.rbegin(); it != lin.rend(); ++it) make_exact_inplace(cur, prev(*it), *it);
    }
    return cur;
}

LabeledMatrix resolution_step(const LabeledMatrix& prev) {
    return resolution_step(prev.poset(), prev.field(), prev.row_labels(),
                           [&prev](int pi) { return prev.stalk(pi); });
}

InjectiveComplex continue_resolution(LabeledMatrix eta0, int lo) {
    InjectiveComplex C(eta0.poset(), eta0.field(), lo);
    int limit = eta0.poset()->height() + 2;
    C.eta.push_back(std::move(eta0));
    while (C.eta.back().rows() > 0) {
        if (static_cast<int>(C.eta.size()) > limit) throw std::logic_error("resolution exceeded the length bound");
        C.eta.push_back(resolution_step(C.eta.back()));
    }
    C.trim();
    return C;
}

InjectiveComplex minimal_resolution_constant(const PosetPtr& P, const Field& F) {
    // I^0 is the sum of [pi] over maximal pi; the map from k is a column of ones
    std::vector<int> top;
    const auto& lin = P->linear_extension();
    for (auto it = lin.rbegin(); it != lin.rend(); ++it)
        if (P->upper_covers(*it).empty()) top.push_back(*it);
    auto ones = [&](int pi) {
        int n = 0;
        for (int t : top)
            if (P->leq(pi, t)) ++n;
        DenseMat A(n, 1);
        for (int i = 0; i < n; ++i) A(i, 0) = 1;
        return A;
    };
    return continue_resolution(resolution_step(P, F, top, ones));
}

InjectiveComplex minimal_resolution_sheaf(const Sheaf& S) {
    InjectiveHull H = injective_hull(S);
    return continue_resolution(
        resolution_step(S.poset(), S.field(), H.labels, [&H](int pi) { return H.alpha[pi]; }));
}

InjectiveComplex order_complex_resolution(const Sheaf& S) {
    if (auto rep = validate_sheaf(S); !rep) throw InputError("invalid sheaf: " + rep.message);
    const PosetPtr& P = S.poset();
    const Field& F = S.field();
    auto chains = enumerate_chains(*P);
    int top = 0;
    for (const auto& c : chains) top = std::max(top, static_cast<int>(c.size()) - 1);

    // column offset of every chain inside its degree
    std::map<std::vector<int>, int> offset;
    std::vector<std::vector<int>> labels(top + 1);
    for (const auto& c : chains) {
        int d = static_cast<int>(c.size()) - 1;
        offset[c] = static_cast<int>(labels[d].size());
        for (int k = 0; k < S.dim(c.back()); ++k) labels[d].push_back(c.front());
    }
    std::map<std::pair<int, int>, DenseMat> maps;
    auto restriction = [&](int a, int b) -> const DenseMat& {
        auto it = maps.find({a, b});
        if (it == maps.end()) it = maps.emplace(std::make_pair(a, b), S.map(a, b)).first;
        return it->second;
    };

    InjectiveComplex C(P, F, 0);
    for (int d = 0; d <= top; ++d) {
        LabeledMatrix M(P, F, labels[d]);
        if (d < top)
            for (const auto& t : chains) {
                if (static_cast<int>(t.size()) != d + 2) continue;
                int last = t.back();
                // sum over faces of t of sign * F(c_d <= t_{d+1})
                std::vector<SparseRow> rows(S.dim(last));
                for (int i = 0; i <= d + 1; ++i) {
                    std::vector<int> c = t;
                    c.erase(c.begin() + i);
                    int n = S.dim(c.back());
                    if (n == 0) continue;
                    Scalar sign = (i % 2) ? F.neg(1) : 1;
                    const DenseMat& R = restriction(c.back(), last);
                    int off = offset.at(c);
                    for (int l = 0; l < S.dim(last); ++l)
                        for (int k = 0; k < n; ++k)
                            if (R(l, k) != 0) rows[l].push_back({off + k, F.mul(sign, R(l, k))});
                }
                for (auto& r : rows) M.add_row(t.front(), std::move(r));
            }
        C.eta.push_back(std::move(M));
    }
    C.trim();
    return C;
}

bool is_minimal(const InjectiveComplex& C) {
    for (const auto& M : C.eta)
        for (int i = 0; i < M.rows(); ++i)
            for (const auto& e : M.row(i))
                if (M.row_labels()[i] == M.col_labels()[e.col]) return false;
    return true;
}

MultiplicityTable multiplicities(const InjectiveComplex& C) {
    MultiplicityTable m;
    for (int d = C.lo; d <= C.hi(); ++d)
        for (int l : C.at(d).col_labels()) ++m[d][l];
    return m;
}

MultiplicityTable cohomology_sheaf_dims(const InjectiveComplex& C) {
    MultiplicityTable h;
    if (C.empty()) return h;
    const Poset& P = *C.poset;
    for (int pi = 0; pi < P.size(); ++pi) {
        int prev_rank = 0;
        for (int d = C.lo; d <= C.hi(); ++d) {
            DenseMat S = C.at(d).stalk(pi);
            int r = rank(C.field, S);
            int dim = S.cols - r - prev_rank;
            if (dim != 0) h[d][pi] = dim;
            prev_rank = r;
        }
    }
    return h;
}

int nonzero_terms(const InjectiveComplex& C) {
    int n = 0;
    for (const auto& M : C.eta)
        if (M.cols() > 0) ++n;
    return n;
}

int star_multiplicity(const Poset& P, const MultiplicityTable& m, int sigma, int j) {
    auto it = m.find(j);
    if (it == m.end()) return 0;
    int n = 0;
    for (auto [pi, k] : it->second)
        if (P.leq(sigma, pi)) n += k;
    return n;
}

double star_complexity(const Poset& P, const MultiplicityTable& m, int sigma, int j) {
    return static_cast<double>(star_multiplicity(P, m, sigma, j)) / static_cast<double>(P.up_set(sigma).count());
}

}  // namespace psheaf
