#include "psheaf/morse.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "psheaf/error.hpp"
#include "psheaf/resolution.hpp"

namespace psheaf {

ElementSet supp_shriek(const InjectiveComplex& C) {
    if (!is_minimal(C)) throw InputError("supp^! needs a minimal complex");
    std::set<int> s;
    for (const auto& M : C.eta)
        for (int l : M.col_labels()) s.insert(l);
    return {s.begin(), s.end()};
}

ElementSet supp_star(const InjectiveComplex& C) {
    std::set<int> s;
    for (const auto& [d, row] : cohomology_sheaf_dims(C))
        for (auto [pi, n] : row)
            if (n != 0) s.insert(pi);
    return {s.begin(), s.end()};
}

std::map<int, int> microsupport_star_cohomology(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    return hypercohomology(proper_pushforward(Z, restrict_to(Z, C)));
}

std::map<int, int> microsupport_shriek_cohomology(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    return hypercohomology(proper_pullback(Z, C));
}

bool in_microsupport_star(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    return !is_acyclic(microsupport_star_cohomology(Z, C));
}

bool in_microsupport_shriek(const LocallyClosedSet& Z, const InjectiveComplex& C) {
    return !is_acyclic(microsupport_shriek_cohomology(Z, C));
}

const char* to_string(Variant v) { return v == Variant::Star ? "*" : "!"; }
const char* to_string(Direction d) { return d == Direction::Sublevel ? "sublevel" : "superlevel"; }

MorseFunction::MorseFunction(MonotoneMap f, std::vector<int> total_order) : f_(std::move(f)), order_(std::move(total_order)) {
    const Poset& P = *f_.target();
    if (static_cast<int>(order_.size()) != P.size()) throw InputError("total order must list every level once");
    pos_.assign(P.size(), -1);
    for (int k = 0; k < P.size(); ++k) {
        int x = order_[k];
        if (x < 0 || x >= P.size() || pos_[x] >= 0) throw InputError("total order must list every level once");
        pos_[x] = k;
    }
    for (auto [a, b] : P.covers())
        if (pos_[a] > pos_[b])
            throw InputError("total order does not refine the level order: " + P.name(a) + " < " + P.name(b));
    const Poset& L = *f_.source();
    for (int x = 0; x < P.size(); ++x)
        if (!is_locally_closed(L, f_.fiber(x))) throw InputError("fiber over " + P.name(x) + " is not locally closed");
}

MorseFunction MorseFunction::from_levels(const PosetPtr& Lambda, const std::map<std::string, std::string>& levels,
                                         const std::vector<std::string>& order) {
    std::map<std::string, int> idx;
    for (const auto& name : order) {
        if (idx.count(name)) throw InputError("level '" + name + "' listed twice");
        idx.emplace(name, static_cast<int>(idx.size()));
    }
    std::vector<int> assign(Lambda->size(), -1);
    for (const auto& [e, lv] : levels) {
        auto it = idx.find(lv);
        if (it == idx.end()) throw InputError("level '" + lv + "' is missing from the order");
        assign[Lambda->index(e)] = it->second;
    }
    for (int i = 0; i < Lambda->size(); ++i)
        if (assign[i] < 0) throw InputError("element '" + Lambda->name(i) + "' has no level");
    std::set<std::pair<int, int>> rel;
    for (auto [a, b] : Lambda->covers())
        if (assign[a] != assign[b]) rel.emplace(assign[a], assign[b]);
    // Poset() rejects cycles, which is exactly a non-monotone level assignment
    auto Pi = std::make_shared<Poset>(order, std::vector<std::pair<int, int>>(rel.begin(), rel.end()));
    std::vector<int> total(order.size());
    for (int k = 0; k < static_cast<int>(order.size()); ++k) total[k] = k;
    return MorseFunction(MonotoneMap(Lambda, Pi, assign), total);
}

LocallyClosedSet MorseFunction::fiber(int level) const { return LocallyClosedSet(f_.source(), f_.fiber(level)); }

ElementSet MorseFunction::sublevel(int k) const {
    ElementSet s;
    for (int a = 0; a < f_.source()->size(); ++a)
        if (pos_[f_(a)] <= k) s.push_back(a);
    return s;
}

ElementSet MorseFunction::superlevel(int k) const {
    ElementSet s;
    for (int a = 0; a < f_.source()->size(); ++a)
        if (pos_[f_(a)] >= k) s.push_back(a);
    return s;
}

namespace {

std::map<int, int> fiber_term(const LocallyClosedSet& Z, const InjectiveComplex& C, Variant v) {
    if (Z.members().empty()) return {};
    return v == Variant::Star ? microsupport_star_cohomology(Z, C) : microsupport_shriek_cohomology(Z, C);
}

}  // namespace

ElementSet critical_elements(const MorseFunction& mf, const InjectiveComplex& C, Variant v) {
    ElementSet out;
    for (int x : mf.order())
        if (!is_acyclic(fiber_term(mf.fiber(x), C, v))) out.push_back(x);
    std::sort(out.begin(), out.end());
    return out;
}

BettiTable betti_table(const MorseFunction& mf, const InjectiveComplex& C, Direction dir, Variant v, int jobs) {
    BettiTable T{dir, v, mf.order(), {}};
    const int n = static_cast<int>(mf.order().size());
    T.rows.resize(n);
    auto compute = [&](int k) {
        ElementSet S = dir == Direction::Sublevel ? mf.sublevel(k) : mf.superlevel(k);
        if (S.empty()) return;
        LocallyClosedSet Z(mf.domain(), S);
        T.rows[k] = hypercohomology(v == Variant::Shriek ? proper_pullback(Z, C) : restrict_to(Z, C));
    };
    if (jobs <= 1) {
        for (int k = 0; k < n; ++k) compute(k);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (int k = next++; k < n; k = next++) compute(k);
            });
        for (auto& th : pool) th.join();
    }
    return T;
}

Report verify_morse_theorem(const MorseFunction& mf, const InjectiveComplex& C, int jobs) {
    ElementSet crit_star = critical_elements(mf, C, Variant::Star);
    ElementSet crit_shriek = critical_elements(mf, C, Variant::Shriek);
    auto is_crit = [](const ElementSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); };
    const Poset& Pi = *mf.levels();
    const int n = static_cast<int>(mf.order().size());
    std::vector<std::string> bad;

    struct Family {
        Direction dir;
        Variant table;
        const ElementSet* crit;
    };
    const Family families[] = {{Direction::Sublevel, Variant::Shriek, &crit_shriek},
                               {Direction::Sublevel, Variant::Star, &crit_star},
                               {Direction::Superlevel, Variant::Star, &crit_shriek},
                               {Direction::Superlevel, Variant::Shriek, &crit_shriek}};
    for (const auto& fam : families) {
        BettiTable T = betti_table(mf, C, fam.dir, fam.table, jobs);
        for (int k = 0; k < n; ++k) {
            int x = mf.order()[k];
            if (is_crit(*fam.crit, x)) continue;
            // sublevel: the step from k-1 to k adds the fiber over x;
            // superlevel: the step from k+1 to k adds the fiber over x
            std::map<int, int> empty;
            const auto& before = fam.dir == Direction::Sublevel ? (k > 0 ? T.rows[k - 1] : empty)
                                                               : (k + 1 < n ? T.rows[k + 1] : empty);
            if (T.rows[k] != before)
                bad.push_back(fmt::format("{} {} rows differ at non-critical level {}", to_string(fam.dir),
                                          to_string(fam.table), Pi.name(x)));
        }
    }
    if (bad.empty()) return {};
    std::string msg;
    for (const auto& b : bad) msg += (msg.empty() ? "" : "; ") + b;
    return Report::fail(msg);
}

namespace {

long long truncated(const std::map<int, int>& h, int ell) {
    long long s = 0;
    for (auto [j, n] : h)
        if (j <= ell) s += ((ell - j) % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
    return s;
}

}  // namespace

InequalityReport morse_inequalities(const MorseFunction& mf, const InjectiveComplex& C, Variant v) {
    InequalityReport R;
    std::map<int, int> total = hypercohomology(C);
    std::vector<std::map<int, int>> terms;
    for (int x : mf.order()) {
        auto h = fiber_term(mf.fiber(x), C, v);
        if (!is_acyclic(h)) terms.push_back(std::move(h));
    }
    int lo = 0, hi = -1;
    bool any = false;
    auto widen = [&](const std::map<int, int>& h) {
        for (auto [j, n] : h) {
            if (n == 0) continue;
            lo = any ? std::min(lo, j) : j;
            hi = any ? std::max(hi, j) : j;
            any = true;
        }
    };
    widen(total);
    for (const auto& t : terms) widen(t);
    for (int ell = lo; ell <= hi; ++ell) {
        InequalityRow row{ell, truncated(total, ell), 0};
        for (const auto& t : terms) row.rhs += truncated(t, ell);
        if (row.lhs > row.rhs) {
            R.ok = false;
            R.message += fmt::format("inequality fails at degree {}: {} > {}; ", ell, row.lhs, row.rhs);
        }
        R.rows.push_back(row);
    }
    R.euler_lhs = euler_characteristic(total);
    for (const auto& t : terms) R.euler_rhs += euler_characteristic(t);
    if (R.euler_lhs != R.euler_rhs) {
        R.ok = false;
        R.message += fmt::format("Euler characteristics differ: {} vs {}", R.euler_lhs, R.euler_rhs);
    }
    return R;
}

std::map<int, int> compact_support_cohomology(const SimplicialComplex& S, const ElementSet& U, const Field& F) {
    const Poset& P = *S.face_poset();
    if (!is_open(P, U)) throw InputError("compact support cohomology needs an open set");
    int top = -1;
    for (int u : U) top = std::max(top, S.dim(u));
    std::vector<std::vector<int>> by_dim(top + 1);
    std::vector<int> local(P.size(), -1);
    for (int u : U) {
        local[u] = static_cast<int>(by_dim[S.dim(u)].size());
        by_dim[S.dim(u)].push_back(u);
    }
    std::vector<int> ranks(top + 2, 0);
    for (int k = 0; k < top; ++k) {
        // coboundary C^k -> C^{k+1}: the coefficient of tau in d(sigma) is (-1)^i when
        // sigma is tau without its i-th vertex
        DenseMat D(static_cast<int>(by_dim[k + 1].size()), static_cast<int>(by_dim[k].size()));
        for (int r = 0; r < D.rows; ++r) {
            const auto& tau = S.faces()[by_dim[k + 1][r]];
            for (int i = 0; i < static_cast<int>(tau.size()); ++i) {
                std::vector<int> sigma = tau;
                sigma.erase(sigma.begin() + i);
                auto f = S.find_face(sigma);
                if (!f || local[*f] < 0) continue;
                D(r, local[*f]) = (i % 2) ? F.neg(1) : 1;
            }
        }
        ranks[k] = rank(F, D);
    }
    std::map<int, int> h;
    for (int k = 0; k <= top; ++k) {
        int dim = static_cast<int>(by_dim[k].size()) - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
        if (dim != 0) h[k] = dim;
    }
    return h;
}

}  // namespace psheaf
