#include "psheaf/random.hpp"

#include "psheaf/derived.hpp"
#include "psheaf/resolution.hpp"

namespace psheaf {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Scalar nonzero(Rng& rng, const Field& F) {
    return static_cast<Scalar>(std::uniform_int_distribution<std::uint64_t>(1, F.p() - 1)(rng));
}

Scalar any_scalar(Rng& rng, const Field& F) {
    return static_cast<Scalar>(std::uniform_int_distribution<std::uint64_t>(0, F.p() - 1)(rng));
}

}  // namespace

PosetPtr random_poset(Rng& rng, int n, double p) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) rel.emplace_back(i, j);
    return std::make_shared<Poset>(std::move(names), rel);
}

Sheaf random_sheaf(Rng& rng, const PosetPtr& P, const Field& F, int max_dim) {
    const int n = P->size();
    for (int attempt = 0;; ++attempt) {
        int np = uniform(rng, 1, 3), ni = uniform(rng, 1, 3);
        if (attempt > 50) np = ni = 1;
        std::vector<int> sig(np), pi(ni);
        for (auto& s : sig) s = uniform(rng, 0, n - 1);
        for (auto& q : pi) q = uniform(rng, 0, n - 1);
        DenseMat phi(ni, np);
        for (int i = 0; i < ni; ++i)
            for (int j = 0; j < np; ++j)
                if (P->leq(sig[j], pi[i])) phi(i, j) = any_scalar(rng, F);

        // F(tau) = image of phi restricted to rows pi_i >= tau and columns sigma_j <= tau
        std::vector<std::vector<int>> rows(n);
        std::vector<DenseMat> basis(n);
        std::vector<int> dims(n);
        bool ok = true;
        for (int t = 0; t < n && ok; ++t) {
            std::vector<int> cols;
            for (int i = 0; i < ni; ++i)
                if (P->leq(t, pi[i])) rows[t].push_back(i);
            for (int j = 0; j < np; ++j)
                if (P->leq(sig[j], t)) cols.push_back(j);
            DenseMat sub(static_cast<int>(rows[t].size()), static_cast<int>(cols.size()));
            for (int r = 0; r < sub.rows; ++r)
                for (int c = 0; c < sub.cols; ++c) sub(r, c) = phi(rows[t][r], cols[c]);
            DenseMat ech = sub;
            std::vector<int> piv;
            row_echelon(F, ech, ech.cols, &piv);
            DenseMat B(sub.rows, static_cast<int>(piv.size()));
            for (int r = 0; r < sub.rows; ++r)
                for (int k = 0; k < B.cols; ++k) B(r, k) = sub(r, piv[k]);
            dims[t] = B.cols;
            basis[t] = std::move(B);
            if (dims[t] > max_dim) ok = false;
        }
        if (!ok) continue;
        Sheaf S(P, F, dims);
        for (auto [a, b] : P->covers()) {
            // project F(a) onto the rows of F(b), then express in F(b)'s basis
            DenseMat proj(static_cast<int>(rows[b].size()), dims[a]);
            for (int r = 0; r < proj.rows; ++r) {
                auto it = std::find(rows[a].begin(), rows[a].end(), rows[b][r]);
                int ra = static_cast<int>(it - rows[a].begin());
                for (int c = 0; c < dims[a]; ++c) proj(r, c) = basis[a](ra, c);
            }
            auto X = solve(F, basis[b], proj);
            if (!X) throw std::logic_error("random_sheaf: restriction not in the image");
            S.set_cover_map(a, b, *X);
        }
        return S;
    }
}

MonotoneMap random_monotone_map(Rng& rng, const PosetPtr& source, const PosetPtr& target) {
    const Poset& S = *source;
    const Poset& T = *target;
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<int> a(S.size(), -1);
        bool ok = true;
        for (int s : S.linear_extension()) {
            Bitset allowed(T.size());
            allowed.set();
            for (int l : S.lower_covers(s)) allowed &= T.up_set(a[l]);
            std::vector<int> choices;
            for (int t = 0; t < T.size(); ++t)
                if (allowed.test(t)) choices.push_back(t);
            if (choices.empty()) {
                ok = false;
                break;
            }
            a[s] = choices[uniform(rng, 0, static_cast<int>(choices.size()) - 1)];
        }
        if (ok) return MonotoneMap(source, target, std::move(a));
    }
    return MonotoneMap(source, target, std::vector<int>(S.size(), uniform(rng, 0, T.size() - 1)));
}

std::vector<int> random_linear_extension(Rng& rng, const Poset& P) {
    std::vector<int> indeg(P.size(), 0), out;
    for (auto [a, b] : P.covers()) ++indeg[b];
    std::vector<int> ready;
    for (int i = 0; i < P.size(); ++i)
        if (indeg[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        int k = uniform(rng, 0, static_cast<int>(ready.size()) - 1);
        int x = ready[k];
        ready.erase(ready.begin() + k);
        out.push_back(x);
        for (int y : P.upper_covers(x))
            if (--indeg[y] == 0) ready.push_back(y);
    }
    return out;
}

InjectiveComplex random_minimal_complex(Rng& rng, const PosetPtr& target, const Field& F, int max_source) {
    PosetPtr Q = random_poset(rng, uniform(rng, 1, max_source));
    Sheaf S = random_sheaf(rng, Q, F);
    MonotoneMap f = random_monotone_map(rng, Q, target);
    return pushforward(f, minimal_resolution_sheaf(S));
}

LabeledMatrix random_labeled_matrix(Rng& rng, const PosetPtr& P, const Field& F, const std::vector<int>& row_labels,
                                    const std::vector<int>& col_labels, double density) {
    LabeledMatrix M(P, F, row_labels, col_labels);
    std::bernoulli_distribution coin(density);
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j)
            if (P->leq(row_labels[i], col_labels[j]) && coin(rng)) M.set(i, j, nonzero(rng, F));
    return M;
}

LabeledMatrix random_labeled_matrix(Rng& rng, const PosetPtr& P, const Field& F, int rows, int cols,
                                    double density) {
    std::vector<int> rl(rows), cl(cols);
    for (auto& l : rl) l = uniform(rng, 0, P->size() - 1);
    for (auto& l : cl) l = uniform(rng, 0, P->size() - 1);
    return random_labeled_matrix(rng, P, F, rl, cl, density);
}

}  // namespace psheaf
