#include "psheaf/sheaf.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "psheaf/error.hpp"

namespace psheaf {

Sheaf::Sheaf(PosetPtr P, Field F, std::vector<int> dims) : P_(std::move(P)), F_(F), dims_(std::move(dims)) {
    if (static_cast<int>(dims_.size()) != P_->size()) throw InputError("sheaf: one stalk dimension per element");
    for (int d : dims_)
        if (d < 0) throw InputError("sheaf: negative stalk dimension");
    // omitted restrictions are zero
    for (auto [a, b] : P_->covers()) covers_[{a, b}] = DenseMat(dims_[b], dims_[a]);
}

int Sheaf::total_dim() const {
    int n = 0;
    for (int d : dims_) n += d;
    return n;
}

void Sheaf::set_cover_map(int sigma, int tau, DenseMat M) {
    const auto& up = P_->upper_covers(sigma);
    if (std::find(up.begin(), up.end(), tau) == up.end())
        throw InputError("restriction given on '" + P_->name(sigma) + "<" + P_->name(tau) + "', which is not a cover");
    if (M.rows != dims_[tau] || M.cols != dims_[sigma])
        throw InputError(fmt::format("restriction {}<{} has shape {}x{}, expected {}x{}", P_->name(sigma),
                                     P_->name(tau), M.rows, M.cols, dims_[tau], dims_[sigma]));
    for (auto& x : M.a) x %= F_.p();
    covers_[{sigma, tau}] = std::move(M);
}

const DenseMat& Sheaf::cover_map(int sigma, int tau) const {
    auto it = covers_.find({sigma, tau});
    if (it == covers_.end()) throw InputError("'" + P_->name(sigma) + "<" + P_->name(tau) + "' is not a cover");
    return it->second;
}

DenseMat Sheaf::map(int sigma, int tau) const {
    if (sigma == tau) return DenseMat::identity(dims_[sigma]);
    if (!P_->leq(sigma, tau)) throw InputError("no relation " + P_->name(sigma) + " <= " + P_->name(tau));
    for (int c : P_->upper_covers(sigma))
        if (P_->leq(c, tau)) return multiply(F_, map(c, tau), cover_map(sigma, c));
    throw std::logic_error("cover path not found");
}

Sheaf constant_sheaf(const PosetPtr& P, const Field& F) {
    Sheaf S(P, F, std::vector<int>(P->size(), 1));
    for (auto [a, b] : P->covers()) S.set_cover_map(a, b, DenseMat::identity(1));
    return S;
}

Sheaf injective_as_sheaf(const PosetPtr& P, const Field& F, const std::vector<int>& labels) {
    std::vector<std::vector<int>> basis(P->size());
    for (int t = 0; t < P->size(); ++t)
        for (int i = 0; i < static_cast<int>(labels.size()); ++i)
            if (P->leq(t, labels[i])) basis[t].push_back(i);
    std::vector<int> dims;
    for (const auto& b : basis) dims.push_back(static_cast<int>(b.size()));
    Sheaf S(P, F, dims);
    for (auto [a, b] : P->covers()) {
        DenseMat M(dims[b], dims[a]);
        for (int r = 0; r < dims[b]; ++r) {
            auto it = std::find(basis[a].begin(), basis[a].end(), basis[b][r]);
            M(r, static_cast<int>(it - basis[a].begin())) = 1;
        }
        S.set_cover_map(a, b, std::move(M));
    }
    return S;
}

Report validate_sheaf(const Sheaf& S) {
    const Poset& P = *S.poset();
    const Field& F = S.field();
    std::map<std::pair<int, int>, DenseMat> cache;
    auto path = [&](int a, int b) -> const DenseMat& {
        auto it = cache.find({a, b});
        if (it == cache.end()) it = cache.emplace(std::make_pair(a, b), S.map(a, b)).first;
        return it->second;
    };
    // Every cover path to gamma through a lower cover tau must agree with the
    // canonical path; by induction this makes all paths agree.
    for (int g : P.linear_extension())
        for (int t : P.lower_covers(g))
            for (int s = 0; s < P.size(); ++s) {
                if (s == t || !P.leq(s, t)) continue;
                DenseMat via = multiply(F, S.cover_map(t, g), path(s, t));
                if (!(via == path(s, g)))
                    return Report::fail("functoriality fails for " + P.name(s) + " <= " + P.name(t) + " <= " +
                                        P.name(g));
            }
    return {};
}

Report validate_natural(const Sheaf& S, const Sheaf& T, const NaturalTransformation& eta) {
    const Poset& P = *S.poset();
    const Field& F = S.field();
    if (static_cast<int>(eta.components.size()) != P.size()) return Report::fail("one component per element");
    for (int p = 0; p < P.size(); ++p)
        if (eta.components[p].rows != T.dim(p) || eta.components[p].cols != S.dim(p))
            return Report::fail("component at " + P.name(p) + " has the wrong shape");
    for (auto [a, b] : P.covers()) {
        DenseMat l = multiply(F, T.cover_map(a, b), eta.components[a]);
        DenseMat r = multiply(F, eta.components[b], S.cover_map(a, b));
        if (!(l == r)) return Report::fail("naturality fails on " + P.name(a) + "<" + P.name(b));
    }
    return {};
}

namespace {

DenseMat stacked_covers(const Sheaf& S, int pi) {
    std::vector<DenseMat> blocks;
    for (int c : S.poset()->upper_covers(pi)) blocks.push_back(S.cover_map(pi, c));
    return vstack(blocks, S.dim(pi));
}

}  // namespace

DenseMat maximal_vectors(const Sheaf& S, int pi) {
    return transpose(nullspace(S.field(), stacked_covers(S, pi)));
}

InjectiveHull injective_hull(const Sheaf& S) {
    if (auto rep = validate_sheaf(S); !rep) throw InputError("invalid sheaf: " + rep.message);
    const Poset& P = *S.poset();
    const Field& F = S.field();
    // proj[pi]: coordinates of F(pi) -> M_F(pi) along a fixed complement
    std::vector<DenseMat> proj(P.size());
    InjectiveHull H;
    std::vector<int> first(P.size(), 0);
    const auto& lin = P.linear_extension();
    for (auto it = lin.rbegin(); it != lin.rend(); ++it) {
        int pi = *it;
        int n = S.dim(pi);
        DenseMat N = nullspace(F, stacked_covers(S, pi));
        int m = N.cols;
        first[pi] = static_cast<int>(H.labels.size());
        for (int k = 0; k < m; ++k) H.labels.push_back(pi);
        if (m == 0) {
            proj[pi] = DenseMat(0, n);
            continue;
        }
        // basis of F(pi): the maximal vectors first, then standard vectors
        RowSpace span(F, n);
        std::vector<std::vector<Scalar>> cols;
        for (int k = 0; k < m; ++k) {
            std::vector<Scalar> v(n);
            for (int i = 0; i < n; ++i) v[i] = N(i, k);
            span.insert(v);
            cols.push_back(std::move(v));
        }
        for (int i = 0; i < n && span.rank() < n; ++i) {
            std::vector<Scalar> e(n, 0);
            e[i] = 1;
            if (span.insert(e)) cols.push_back(std::move(e));
        }
        DenseMat B(n, n);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i) B(i, k) = cols[k][i];
        DenseMat Binv = inverse(F, B);
        DenseMat Pm(m, n);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i) Pm(k, i) = Binv(k, i);
        proj[pi] = std::move(Pm);
    }
    H.alpha.resize(P.size());
    H.rows_of.resize(P.size());
    for (int s = 0; s < P.size(); ++s) {
        for (int g = 0; g < static_cast<int>(H.labels.size()); ++g)
            if (P.leq(s, H.labels[g])) H.rows_of[s].push_back(g);
        DenseMat A(static_cast<int>(H.rows_of[s].size()), S.dim(s));
        std::map<int, DenseMat> images;
        for (int r = 0; r < A.rows; ++r) {
            int g = H.rows_of[s][r];
            int pi = H.labels[g];
            auto it = images.find(pi);
            if (it == images.end()) it = images.emplace(pi, multiply(F, proj[pi], S.map(s, pi))).first;
            int k = g - first[pi];
            for (int c = 0; c < A.cols; ++c) A(r, c) = it->second(k, c);
        }
        H.alpha[s] = std::move(A);
    }
    return H;
}

NaturalTransformation hull_transformation(const Sheaf&, const InjectiveHull& H) { return {H.alpha}; }

long long hom_dim_injective(const Poset& P, const Decomposition& I, const Decomposition& J) {
    long long n = 0;
    for (auto [pi, p] : I)
        for (auto [sigma, s] : J)
            if (P.leq(sigma, pi)) n += static_cast<long long>(p) * s;
    return n;
}

int hom_dim_brute(const Sheaf& S, const Sheaf& T) {
    const Poset& P = *S.poset();
    const Field& F = S.field();
    std::vector<int> offset(P.size() + 1, 0);
    for (int p = 0; p < P.size(); ++p) offset[p + 1] = offset[p] + T.dim(p) * S.dim(p);
    int nvars = offset[P.size()];
    std::vector<std::vector<Scalar>> eqs;
    for (auto [a, b] : P.covers()) {
        // T(a<b) X_a - X_b S(a<b) = 0, entry (r, c)
        const DenseMat& Tm = T.cover_map(a, b);
        const DenseMat& Sm = S.cover_map(a, b);
        for (int r = 0; r < T.dim(b); ++r)
            for (int c = 0; c < S.dim(a); ++c) {
                std::vector<Scalar> eq(nvars, 0);
                for (int k = 0; k < T.dim(a); ++k) {
                    int v = offset[a] + k * S.dim(a) + c;
                    eq[v] = F.add(eq[v], Tm(r, k));
                }
                for (int k = 0; k < S.dim(b); ++k) {
                    int v = offset[b] + r * S.dim(b) + k;
                    eq[v] = F.sub(eq[v], Sm(k, c));
                }
                eqs.push_back(std::move(eq));
            }
    }
    DenseMat M(static_cast<int>(eqs.size()), nvars);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < nvars; ++j) M(i, j) = eqs[i][j];
    return nvars - rank(F, M);
}

}  // namespace psheaf
