#include "psheaf/derived.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "psheaf/error.hpp"
#include "psheaf/resolution.hpp"

namespace psheaf {

namespace {

void require_poset(const InjectiveComplex& C, const PosetPtr& P, const char* what) {
    if (C.empty()) return;
    if (C.poset.get() != P.get() && !(*C.poset == *P))
        throw InputError(std::string(what) + ": complex lives on a different poset");
}

std::vector<int> inverse_index(int n, const ElementSet& members) {
    std::vector<int> m(n, -1);
    for (int i = 0; i < static_cast<int>(members.size()); ++i) m[members[i]] = i;
    return m;
}

InjectiveComplex empty_on(const PosetPtr& P, const Field& F) { return InjectiveComplex(P, F, 0); }

}  // namespace

LabeledMatrix differential(const InjectiveComplex& C, int d) {
    if (C.has(d)) return C.at(d);
    return LabeledMatrix(C.poset, C.field, C.term(d + 1), C.term(d));
}

InjectiveComplex peel(InjectiveComplex C) {
    if (auto rep = validate_complex(C); !rep) throw InputError("peel: " + rep.message);
    const Field& F = C.field;
    for (int d = C.lo; d <= C.hi(); ++d) {
        while (true) {
            auto& M = C.at(d);
            int r = -1, c = -1;
            for (int i = 0; i < M.rows() && r < 0; ++i)
                for (const auto& e : M.row(i))
                    if (M.row_labels()[i] == M.col_labels()[e.col]) {
                        r = i;
                        c = e.col;
                        break;
                    }
            if (r < 0) break;
            Scalar v = M.at(r, c);
            if (v != 1) complex_row_op(C, d, {MatrixOp::ScaleRow, r, r, F.inv(v)});
            std::vector<std::pair<int, Scalar>> others;
            for (int i = 0; i < C.at(d).rows(); ++i)
                if (i != r)
                    if (Scalar x = C.at(d).at(i, c)) others.emplace_back(i, x);
            for (auto [i, x] : others) complex_row_op(C, d, {MatrixOp::AddRow, r, i, F.neg(x)});
            others.clear();
            for (const auto& e : C.at(d).row(r))
                if (e.col != c) others.emplace_back(e.col, e.val);
            for (auto [j, x] : others) complex_col_op(C, d, {MatrixOp::AddCol, c, j, F.neg(x)});
            // row r and column c now carry only the pivot; the matching column of
            // eta^{d+1} and row of eta^{d-1} vanish because the compositions do
            C.at(d).delete_rows({r});
            C.at(d).delete_cols({c});
            if (C.has(d - 1)) C.at(d - 1).delete_rows({c});
            if (C.has(d + 1)) C.at(d + 1).delete_cols({r});
        }
    }
    C.trim();
    return C;
}

InjectiveComplex relabel(const InjectiveComplex& C, const PosetPtr& Q, const std::vector<int>& map) {
    InjectiveComplex out(Q, C.field, C.lo);
    for (const auto& M : C.eta) out.eta.push_back(M.relabel(Q, map));
    return out;
}

InjectiveComplex pushforward(const MonotoneMap& f, const InjectiveComplex& C) {
    require_poset(C, f.source(), "pushforward");
    if (C.empty()) return empty_on(f.target(), C.field);
    return peel(relabel(C, f.target(), f.assignment()));
}

PullbackCone pullback_cone(const MonotoneMap& f, const InjectiveComplex& C) {
    require_poset(C, f.target(), "pullback");
    PullbackCone out;
    out.cylinder = mapping_cylinder(f);
    const PosetPtr& Y = out.cylinder.poset;
    const Field& F = C.field;
    out.gamma = InjectiveComplex(Y, F, C.lo - 1);
    if (C.empty()) return out;
    InjectiveComplex D = relabel(C, Y, out.cylinder.from_target);

    std::vector<int> order;
    const auto& lin = f.source()->linear_extension();
    for (auto it = lin.rbegin(); it != lin.rend(); ++it) order.push_back(out.cylinder.from_source[*it]);

    // gamma^{lo-2} has no columns and rows I^lo
    LabeledMatrix prev(Y, F, D.term(D.lo), {});
    for (int d = D.lo - 1;; ++d) {
        std::vector<int> cols = prev.row_labels();
        if (cols.empty() && d + 1 > D.hi()) break;
        LabeledMatrix cur(Y, F, cols);
        if (D.has(d + 1)) {
            const auto& N = D.at(d + 1);
            for (int i = 0; i < N.rows(); ++i) {
                SparseRow row;
                for (const auto& e : N.row(i)) row.push_back({e.col, F.neg(e.val)});
                cur.add_row(N.row_labels()[i], std::move(row));
            }
        }
        for (int pi : order) make_exact_inplace(cur, prev.stalk(pi), pi);
        out.gamma.eta.push_back(cur);
        prev = std::move(cur);
    }
    return out;
}

InjectiveComplex pullback(const MonotoneMap& f, const InjectiveComplex& C) {
    if (C.empty()) return empty_on(f.source(), C.field);
    PullbackCone pc = pullback_cone(f, C);
    ElementSet src(pc.cylinder.from_source.begin(), pc.cylinder.from_source.end());
    std::sort(src.begin(), src.end());
    auto back = inverse_index(pc.cylinder.poset->size(), src);
    InjectiveComplex out(f.source(), C.field, pc.gamma.lo);
    for (const auto& M : pc.gamma.eta) out.eta.push_back(M.submatrix(src, src).relabel(f.source(), back));
    out.trim();
    return out;
}

InjectiveComplex proper_pushforward(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    require_poset(C, Z.poset(), "proper pushforward");
    const PosetPtr& P = Z.ambient();
    const Field& F = C.field;
    if (C.empty()) return empty_on(P, F);
    InjectiveComplex D = relabel(C, P, Z.members());

    std::vector<int> boundary;
    {
        ElementSet cl = closure(*P, Z.members());
        std::vector<char> in_z(P->size(), 0), in_cl(P->size(), 0);
        for (int z : Z.members()) in_z[z] = 1;
        for (int x : cl) in_cl[x] = 1;
        const auto& lin = P->linear_extension();
        for (auto it = lin.rbegin(); it != lin.rend(); ++it)
            if (in_cl[*it] && !in_z[*it]) boundary.push_back(*it);
    }

    InjectiveComplex out(P, F, D.lo);
    // delta^{lo-1} has no columns and rows I^lo
    LabeledMatrix prev(P, F, D.term(D.lo), {});
    for (int d = D.lo;; ++d) {
        std::vector<int> cols = prev.row_labels();
        if (cols.empty() && d > D.hi()) break;
        LabeledMatrix cur(P, F, cols);
        if (D.has(d)) {
            const auto& N = D.at(d);
            for (int i = 0; i < N.rows(); ++i) cur.add_row(N.row_labels()[i], N.row(i));
        }
        for (int pi : boundary) make_exact_inplace(cur, prev.stalk(pi), pi);
        out.eta.push_back(cur);
        prev = std::move(cur);
    }
    out.trim();
    return out;
}

InjectiveComplex proper_pullback(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    require_poset(C, Z.ambient(), "proper pullback");
    if (C.empty()) return empty_on(Z.poset(), C.field);
    auto back = inverse_index(Z.ambient()->size(), Z.members());
    InjectiveComplex out(Z.poset(), C.field, C.lo);
    for (const auto& M : C.eta) out.eta.push_back(M.submatrix(Z.members(), Z.members()).relabel(Z.poset(), back));
    out.trim();
    return out;
}

InjectiveComplex restrict_to(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    return pullback(MonotoneMap::inclusion(Z), C);
}

std::map<int, int> hypercohomology(const InjectiveComplex& C) {
    std::map<int, int> h;
    int prev_rank = 0;
    for (int d = C.lo; d <= C.hi(); ++d) {
        int r = rank(C.at(d));
        int dim = C.at(d).cols() - r - prev_rank;
        if (dim != 0) h[d] = dim;
        prev_rank = r;
    }
    return h;
}

bool is_acyclic(const std::map<int, int>& h) {
    for (auto [d, n] : h)
        if (n != 0) return false;
    return true;
}

long long euler_characteristic(const InjectiveComplex& C) {
    long long chi = 0;
    for (int d = C.lo; d <= C.hi(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(C.at(d).cols());
    return chi;
}

long long euler_characteristic(const std::map<int, int>& h) {
    long long chi = 0;
    for (auto [d, n] : h) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
    return chi;
}

LabeledMatrix ComplexMorphism::at(const InjectiveComplex& F, const InjectiveComplex& G, int d) const {
    auto it = alpha.find(d);
    if (it != alpha.end()) return it->second;
    const PosetPtr& P = G.poset ? G.poset : F.poset;
    return LabeledMatrix(P, G.poset ? G.field : F.field, G.term(d), F.term(d));
}

ComplexMorphism identity_morphism(const InjectiveComplex& C) {
    ComplexMorphism a;
    for (int d = C.lo; d <= C.hi(); ++d) {
        const auto& labels = C.at(d).col_labels();
        LabeledMatrix I(C.poset, C.field, labels, labels);
        for (int i = 0; i < I.rows(); ++i) I.set(i, i, 1);
        a.alpha.emplace(d, std::move(I));
    }
    return a;
}

namespace {

std::pair<int, int> joint_range(const InjectiveComplex& F, const InjectiveComplex& G) {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto* C : {&F, &G}) {
        if (C->empty()) continue;
        lo = any ? std::min(lo, C->lo) : C->lo;
        hi = any ? std::max(hi, C->hi()) : C->hi();
        any = true;
    }
    return {lo, hi};
}

}  // namespace

Report validate_morphism(const InjectiveComplex& F, const InjectiveComplex& G, const ComplexMorphism& a) {
    auto [lo, hi] = joint_range(F, G);
    for (auto& [d, M] : a.alpha) {
        if (M.col_labels() != F.term(d) || M.row_labels() != G.term(d))
            return Report::fail(fmt::format("alpha^{} does not match the terms of the complexes", d));
    }
    for (int d = lo - 1; d <= hi; ++d) {
        DenseMat l = multiply(a.at(F, G, d + 1), differential(F, d)).dense();
        DenseMat r = multiply(differential(G, d), a.at(F, G, d)).dense();
        if (!(l == r)) return Report::fail(fmt::format("square at degree {} does not commute", d));
    }
    return {};
}

InjectiveComplex mapping_cone(const InjectiveComplex& F, const InjectiveComplex& G, const ComplexMorphism& a) {
    if (auto rep = validate_morphism(F, G, a); !rep) throw InputError("mapping cone: " + rep.message);
    const PosetPtr& P = G.poset ? G.poset : F.poset;
    const Field& K = G.poset ? G.field : F.field;
    if (F.empty() && G.empty()) return InjectiveComplex(P, K, 0);
    int lo = G.empty() ? F.lo - 1 : (F.empty() ? G.lo : std::min(F.lo - 1, G.lo));
    int hi = G.empty() ? F.hi() - 1 : (F.empty() ? G.hi() : std::max(F.hi() - 1, G.hi()));
    InjectiveComplex C(P, K, lo);
    for (int d = lo; d <= hi; ++d) {
        std::vector<int> cols = F.term(d + 1), rows = F.term(d + 2);
        int nf = static_cast<int>(cols.size()), nfr = static_cast<int>(rows.size());
        for (int l : G.term(d)) cols.push_back(l);
        LabeledMatrix M(P, K, cols);
        LabeledMatrix eta = differential(F, d + 1), alpha = a.at(F, G, d + 1), delta = differential(G, d);
        for (int i = 0; i < nfr; ++i) {
            SparseRow row;
            for (const auto& e : eta.row(i)) row.push_back({e.col, K.neg(e.val)});
            M.add_row(rows[i], std::move(row));
        }
        for (int i = 0; i < delta.rows(); ++i) {
            SparseRow row;
            for (const auto& e : alpha.row(i)) row.push_back(e);
            for (const auto& e : delta.row(i)) row.push_back({nf + e.col, e.val});
            M.add_row(delta.row_labels()[i], std::move(row));
        }
        C.eta.push_back(std::move(M));
    }
    C.trim();
    return C;
}

HomDims hom_space_dims(const InjectiveComplex& I, const InjectiveComplex& J, std::size_t max_unknowns) {
    if (!I.empty() && !J.empty()) require_poset(I, J.poset, "hom_space_dims");
    if (I.empty() || J.empty()) return {};
    const Poset& P = *I.poset;
    const Field& F = I.field;
    auto [lo, hi] = joint_range(I, J);

    // alpha^d[j, i] for j in J^d, i in I^d with label(j) <= label(i)
    std::map<std::tuple<int, int, int>, int> avar;
    for (int d = lo; d <= hi; ++d) {
        auto tj = J.term(d), ti = I.term(d);
        for (int j = 0; j < static_cast<int>(tj.size()); ++j)
            for (int i = 0; i < static_cast<int>(ti.size()); ++i)
                if (P.leq(tj[j], ti[i])) avar.emplace(std::make_tuple(d, j, i), static_cast<int>(avar.size()));
    }
    std::vector<std::tuple<int, int, int>> hvars;
    for (int d = lo; d <= hi + 1; ++d) {
        auto tj = J.term(d - 1), ti = I.term(d);
        for (int j = 0; j < static_cast<int>(tj.size()); ++j)
            for (int i = 0; i < static_cast<int>(ti.size()); ++i)
                if (P.leq(tj[j], ti[i])) hvars.emplace_back(d, j, i);
    }
    std::size_t unknowns = avar.size() + hvars.size();
    if (unknowns > max_unknowns)
        throw SizeCapError(fmt::format("hom_space_dims needs {} unknowns, above the cap of {}", unknowns, max_unknowns));
    const int na = static_cast<int>(avar.size());

    // alpha^{d+1} eta^d - lambda^d alpha^d = 0
    std::vector<std::vector<Scalar>> eqs;
    for (int d = lo - 1; d <= hi; ++d) {
        DenseMat eta = differential(I, d).dense(), lam = differential(J, d).dense();
        auto tj1 = J.term(d + 1), ti = I.term(d), ti1 = I.term(d + 1), tj = J.term(d);
        for (int j1 = 0; j1 < static_cast<int>(tj1.size()); ++j1)
            for (int i = 0; i < static_cast<int>(ti.size()); ++i) {
                if (!P.leq(tj1[j1], ti[i])) continue;
                std::vector<Scalar> eq(na, 0);
                bool any = false;
                for (int i1 = 0; i1 < static_cast<int>(ti1.size()); ++i1) {
                    auto it = avar.find({d + 1, j1, i1});
                    if (it == avar.end() || eta(i1, i) == 0) continue;
                    eq[it->second] = F.add(eq[it->second], eta(i1, i));
                    any = true;
                }
                for (int j = 0; j < static_cast<int>(tj.size()); ++j) {
                    auto it = avar.find({d, j, i});
                    if (it == avar.end() || lam(j1, j) == 0) continue;
                    eq[it->second] = F.sub(eq[it->second], lam(j1, j));
                    any = true;
                }
                if (any) eqs.push_back(std::move(eq));
            }
    }
    DenseMat E(static_cast<int>(eqs.size()), na);
    for (int r = 0; r < E.rows; ++r) std::copy(eqs[r].begin(), eqs[r].end(), E.a.begin() + r * na);
    int morphisms = na - rank(F, E);

    // h^d : I^d -> J^{d-1} contributes lambda^{d-1} h^d to alpha^d and h^d eta^{d-1} to alpha^{d-1}
    DenseMat H(static_cast<int>(hvars.size()), na);
    std::map<int, DenseMat> etas, lams;
    for (int d = lo - 1; d <= hi + 1; ++d) {
        etas[d] = differential(I, d).dense();
        lams[d] = differential(J, d).dense();
    }
    for (int k = 0; k < H.rows; ++k) {
        auto [d, j, i] = hvars[k];
        const DenseMat& lam = lams[d - 1];
        for (int j1 = 0; j1 < lam.rows; ++j1)
            if (lam(j1, j) != 0) {
                int v = avar.at({d, j1, i});
                H(k, v) = F.add(H(k, v), lam(j1, j));
            }
        const DenseMat& eta = etas[d - 1];
        for (int i0 = 0; i0 < eta.cols; ++i0)
            if (eta(i, i0) != 0) {
                int v = avar.at({d - 1, j, i0});
                H(k, v) = F.add(H(k, v), eta(i, i0));
            }
    }
    int null_homotopic = rank(F, H);
    return {morphisms, null_homotopic, morphisms - null_homotopic};
}

InjectiveComplex dualize(const InjectiveComplex& C, PosetPtr op) {
    if (!op && C.poset) op = std::make_shared<Poset>(C.poset->opposite());
    InjectiveComplex out(op, C.field, -C.hi());
    if (C.empty()) {
        out.lo = 0;
        return out;
    }
    for (int e = -C.hi(); e <= -C.lo; ++e) {
        int d = -e - 1;
        if (C.has(d))
            out.eta.push_back(C.at(d).transposed(op));
        else
            out.eta.push_back(LabeledMatrix(op, C.field, {}, C.term(d + 1)));
    }
    out.trim();
    return out;
}

InjectiveComplex shift(InjectiveComplex C, int k) {
    C.lo -= k;
    return C;
}

bool same_derived_data(const InjectiveComplex& A, const InjectiveComplex& B) {
    return multiplicities(A) == multiplicities(B) && cohomology_sheaf_dims(A) == cohomology_sheaf_dims(B);
}

PullbackViaProper pullback_via_proper(const MonotoneMap& f, const InjectiveComplex& C) {
    PullbackViaProper out;
    out.direct = pullback(f, C);
    MappingCylinder cyl = mapping_cylinder(f);
    ElementSet tgt(cyl.from_target.begin(), cyl.from_target.end());
    ElementSet src(cyl.from_source.begin(), cyl.from_source.end());
    LocallyClosedSet L(cyl.poset, tgt), S(cyl.poset, src);
    // Lambda's elements keep their order inside the cylinder, so they map to 0..n-1 of L
    std::vector<int> to_l(f.target()->size());
    for (int i = 0; i < f.target()->size(); ++i) to_l[i] = i;
    InjectiveComplex onL = C.empty() ? InjectiveComplex(L.poset(), C.field, 0) : relabel(C, L.poset(), to_l);
    InjectiveComplex pushed = proper_pushforward(L, onL);
    InjectiveComplex pulled = proper_pullback(S, pushed);
    std::vector<int> to_src(f.source()->size());
    for (int i = 0; i < f.source()->size(); ++i) to_src[i] = i;
    out.via = pulled.empty() ? InjectiveComplex(f.source(), C.field, 0)
                             : shift(relabel(pulled, f.source(), to_src), 1);
    out.equal = same_derived_data(out.direct, out.via);
    return out;
}

bool pullback_via_proper_check(const MonotoneMap& f, const InjectiveComplex& C) {
    return pullback_via_proper(f, C).equal;
}

}  // namespace psheaf
