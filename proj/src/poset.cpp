#include "psheaf/poset.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

#include "psheaf/error.hpp"

namespace psheaf {

Poset::Poset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& relations)
    : names_(std::move(names)) {
    const int n = size();
    for (int i = 0; i < n; ++i)
        if (!index_.emplace(names_[i], i).second) throw InputError("duplicate element '" + names_[i] + "'");

    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : relations) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("relation refers to an unknown element");
        if (a == b) throw InputError("relation " + names_[a] + " < " + names_[a] + " is not strict");
        succ[a].push_back(b);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int b : s) ++indeg[b];
    }

    // Kahn's algorithm, smallest index first for determinism
    std::vector<int> topo;
    topo.reserve(n);
    std::set<int> ready;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) ready.insert(i);
    while (!ready.empty()) {
        int a = *ready.begin();
        ready.erase(ready.begin());
        topo.push_back(a);
        for (int b : succ[a])
            if (--indeg[b] == 0) ready.insert(b);
    }
    if (static_cast<int>(topo.size()) != n) {
        for (int i = 0; i < n; ++i)
            if (indeg[i] > 0) throw InputError("order relation has a cycle through '" + names_[i] + "'");
    }

    up_.assign(n, Bitset(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int a = *it;
        up_[a].set(a);
        for (int b : succ[a]) up_[a] |= up_[b];
    }
    down_.assign(n, Bitset(n));
    for (int a = 0; a < n; ++a)
        for (auto b = up_[a].find_first(); b != Bitset::npos; b = up_[a].find_next(b)) down_[b].set(a);

    // a cover a < b is a direct successor not reachable through another successor
    upper_.assign(n, {});
    lower_.assign(n, {});
    for (int a = 0; a < n; ++a) {
        for (int b : succ[a]) {
            bool direct = true;
            for (int c : succ[a])
                if (c != b && up_[c].test(b)) {
                    direct = false;
                    break;
                }
            if (direct) {
                upper_[a].push_back(b);
                lower_[b].push_back(a);
            }
        }
    }
    for (auto& l : lower_) std::sort(l.begin(), l.end());

    rank_.assign(n, 0);
    for (int a : topo)
        for (int b : upper_[a]) rank_[b] = std::max(rank_[b], rank_[a] + 1);
    height_ = n == 0 ? 0 : *std::max_element(rank_.begin(), rank_.end());

    linext_.resize(n);
    std::iota(linext_.begin(), linext_.end(), 0);
    std::stable_sort(linext_.begin(), linext_.end(), [&](int x, int y) { return rank_[x] < rank_[y]; });
    pos_.assign(n, 0);
    for (int i = 0; i < n; ++i) pos_[linext_[i]] = i;
}

Poset Poset::from_named(std::vector<std::string> names,
                        const std::vector<std::pair<std::string, std::string>>& relations) {
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) idx.emplace(names[i], i);
    std::vector<std::pair<int, int>> rel;
    for (const auto& [a, b] : relations) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end()) throw InputError("unknown element '" + a + "' in cover relation");
        if (ib == idx.end()) throw InputError("unknown element '" + b + "' in cover relation");
        rel.emplace_back(ia->second, ib->second);
    }
    return Poset(std::move(names), rel);
}

int Poset::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InputError("unknown element '" + name + "'");
    return it->second;
}

std::optional<int> Poset::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::pair<int, int>> Poset::covers() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
        for (int b : upper_[a]) out.emplace_back(a, b);
    return out;
}

ElementSet Poset::maximal_elements() const {
    ElementSet out;
    for (int a = 0; a < size(); ++a)
        if (upper_[a].empty()) out.push_back(a);
    return out;
}

Poset Poset::opposite() const {
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : covers()) rel.emplace_back(b, a);
    return Poset(names_, rel);
}

Poset Poset::induced(const ElementSet& elems) const {
    std::vector<std::string> names;
    names.reserve(elems.size());
    for (int e : elems) names.push_back(names_[e]);
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && leq(elems[i], elems[j])) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return Poset(std::move(names), rel);
}

bool Poset::operator==(const Poset& o) const { return names_ == o.names_ && up_ == o.up_; }

namespace {

ElementSet bits_to_set(const Bitset& b) {
    ElementSet out;
    for (auto i = b.find_first(); i != Bitset::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

Bitset set_to_bits(const Poset& P, const ElementSet& S) {
    Bitset b(P.size());
    for (int s : S) b.set(s);
    return b;
}

}  // namespace

ElementSet star(const Poset& P, int a) { return bits_to_set(P.up_set(a)); }

ElementSet closure(const Poset& P, const ElementSet& S) {
    Bitset b(P.size());
    for (int s : S) b |= P.down_set(s);
    return bits_to_set(b);
}

ElementSet up_closure(const Poset& P, const ElementSet& S) {
    Bitset b(P.size());
    for (int s : S) b |= P.up_set(s);
    return bits_to_set(b);
}

bool is_open(const Poset& P, const ElementSet& S) { return up_closure(P, S) == S; }
bool is_closed(const Poset& P, const ElementSet& S) { return closure(P, S) == S; }

bool is_locally_closed(const Poset& P, const ElementSet& S) {
    // order-convex: up(S) ∩ down(S) ⊆ S
    Bitset in = set_to_bits(P, S), up(P.size()), down(P.size());
    for (int s : S) {
        up |= P.up_set(s);
        down |= P.down_set(s);
    }
    return (up & down).is_subset_of(in);
}

ElementSet complement(const Poset& P, const ElementSet& S) {
    Bitset b = set_to_bits(P, S);
    b.flip();
    return bits_to_set(b);
}

ElementSet to_set(const Poset& P, const std::vector<std::string>& names) {
    ElementSet out;
    for (const auto& n : names) out.push_back(P.index(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ElementSet all_elements(const Poset& P) {
    ElementSet out(P.size());
    std::iota(out.begin(), out.end(), 0);
    return out;
}

LocallyClosedSet::LocallyClosedSet(PosetPtr ambient, ElementSet members)
    : ambient_(std::move(ambient)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    for (int m : members_)
        if (m < 0 || m >= ambient_->size()) throw InputError("locally closed set: element out of range");
    if (!is_locally_closed(*ambient_, members_)) {
        std::string s;
        for (int m : members_) s += (s.empty() ? "" : ",") + ambient_->name(m);
        throw InputError("set {" + s + "} is not locally closed");
    }
    sub_ = std::make_shared<Poset>(ambient_->induced(members_));
}

MonotoneMap::MonotoneMap(PosetPtr source, PosetPtr target, std::vector<int> assignment)
    : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assignment)) {
    if (static_cast<int>(assign_.size()) != source_->size())
        throw InputError("map assignment does not cover the source poset");
    for (int a = 0; a < source_->size(); ++a)
        if (assign_[a] < 0 || assign_[a] >= target_->size())
            throw InputError("map sends '" + source_->name(a) + "' outside the target");
    for (auto [a, b] : source_->covers())
        if (!target_->leq(assign_[a], assign_[b]))
            throw InputError("map is not order preserving: " + source_->name(a) + " < " + source_->name(b) +
                             " but " + target_->name(assign_[a]) + " is not below " + target_->name(assign_[b]));
}

MonotoneMap MonotoneMap::identity(const PosetPtr& P) {
    std::vector<int> a(P->size());
    std::iota(a.begin(), a.end(), 0);
    return MonotoneMap(P, P, std::move(a));
}

MonotoneMap MonotoneMap::to_point(const PosetPtr& P, std::string point_name) {
    auto pt = std::make_shared<Poset>(std::vector<std::string>{std::move(point_name)}, std::vector<std::pair<int, int>>{});
    return MonotoneMap(P, pt, std::vector<int>(P->size(), 0));
}

MonotoneMap MonotoneMap::inclusion(const LocallyClosedSet& Z) {
    return MonotoneMap(Z.poset(), Z.ambient(), Z.members());
}

MonotoneMap MonotoneMap::from_named(PosetPtr source, PosetPtr target,
                                    const std::map<std::string, std::string>& assignment) {
    std::vector<int> a(source->size(), -1);
    for (const auto& [s, t] : assignment) a[source->index(s)] = target->index(t);
    for (int i = 0; i < source->size(); ++i)
        if (a[i] < 0) throw InputError("map assignment misses source element '" + source->name(i) + "'");
    return MonotoneMap(std::move(source), std::move(target), std::move(a));
}

MonotoneMap MonotoneMap::then(const MonotoneMap& g) const {
    if (g.source_.get() != target_.get() && !(*g.source_ == *target_))
        throw InputError("maps are not composable");
    std::vector<int> a(assign_.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(assign_[i]);
    return MonotoneMap(source_, g.target_, std::move(a));
}

ElementSet MonotoneMap::fiber(int b) const {
    ElementSet out;
    for (int a = 0; a < source_->size(); ++a)
        if (assign_[a] == b) out.push_back(a);
    return out;
}

MappingCylinder mapping_cylinder(const MonotoneMap& f) {
    const Poset& S = *f.source();
    const Poset& T = *f.target();
    const int ns = S.size(), nt = T.size();
    std::vector<std::string> names = S.names();
    std::set<std::string> used(names.begin(), names.end());
    for (int t = 0; t < nt; ++t) {
        std::string nm = T.name(t);
        while (used.count(nm)) nm += "'";
        used.insert(nm);
        names.push_back(nm);
    }
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : S.covers()) rel.emplace_back(a, b);
    for (auto [a, b] : T.covers()) rel.emplace_back(ns + a, ns + b);
    for (int a = 0; a < ns; ++a) rel.emplace_back(a, ns + f(a));
    MappingCylinder cyl;
    cyl.poset = std::make_shared<Poset>(std::move(names), rel);
    cyl.from_source.resize(ns);
    std::iota(cyl.from_source.begin(), cyl.from_source.end(), 0);
    cyl.from_target.resize(nt);
    std::iota(cyl.from_target.begin(), cyl.from_target.end(), ns);
    return cyl;
}

namespace {

std::optional<long long> as_integer(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<std::string>>& facets) {
    SimplicialComplex K;
    std::set<std::string> vs;
    for (const auto& f : facets) {
        if (f.empty()) throw InputError("empty facet");
        vs.insert(f.begin(), f.end());
    }
    K.vertices_.assign(vs.begin(), vs.end());
    bool numeric = std::all_of(K.vertices_.begin(), K.vertices_.end(), [](const std::string& v) { return as_integer(v).has_value(); });
    if (numeric)
        std::stable_sort(K.vertices_.begin(), K.vertices_.end(),
                         [](const std::string& a, const std::string& b) { return *as_integer(a) < *as_integer(b); });
    K.compact_names_ = std::all_of(K.vertices_.begin(), K.vertices_.end(), [](const std::string& v) { return v.size() == 1; });
    std::map<std::string, int> vidx;
    for (int i = 0; i < static_cast<int>(K.vertices_.size()); ++i) vidx[K.vertices_[i]] = i;

    std::set<std::vector<int>> faces;
    for (const auto& f : facets) {
        std::vector<int> ids;
        for (const auto& v : f) ids.push_back(vidx.at(v));
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (ids.size() > 24) throw InputError("facet of dimension above 23 is not supported");
        const std::size_t k = ids.size();
        for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
            std::vector<int> sub;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) sub.push_back(ids[i]);
            faces.insert(std::move(sub));
        }
    }
    K.faces_.assign(faces.begin(), faces.end());
    std::stable_sort(K.faces_.begin(), K.faces_.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    for (int i = 0; i < static_cast<int>(K.faces_.size()); ++i) K.face_index_[K.faces_[i]] = i;

    std::vector<std::string> names;
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < static_cast<int>(K.faces_.size()); ++i) {
        names.push_back(K.face_name(K.faces_[i]));
        const auto& f = K.faces_[i];
        if (f.size() < 2) continue;
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            std::vector<int> sub;
            for (std::size_t j = 0; j < f.size(); ++j)
                if (j != drop) sub.push_back(f[j]);
            rel.emplace_back(K.face_index_.at(sub), i);
        }
    }
    K.poset_ = std::make_shared<Poset>(std::move(names), rel);
    return K;
}

int SimplicialComplex::dimension() const {
    int d = -1;
    for (const auto& f : faces_) d = std::max(d, static_cast<int>(f.size()) - 1);
    return d;
}

std::optional<int> SimplicialComplex::find_face(std::vector<int> ids) const {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto it = face_index_.find(ids);
    if (it == face_index_.end()) return std::nullopt;
    return it->second;
}

int SimplicialComplex::vertex_index(const std::string& v) const {
    for (int i = 0; i < static_cast<int>(vertices_.size()); ++i)
        if (vertices_[i] == v) return i;
    throw InputError("unknown vertex '" + v + "'");
}

std::string SimplicialComplex::face_name(const std::vector<int>& ids) const {
    std::string s;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i > 0 && !compact_names_) s += ',';
        s += vertices_[ids[i]];
    }
    return s;
}

PosetPtr SimplicialComplex::star_poset(const std::string& v) const {
    int vi = vertex_index(v);
    int vface = *find_face({vi});
    ElementSet st = star(*poset_, vface);
    Poset sub = poset_->induced(st);
    std::vector<std::string> names;
    for (int f : st) {
        std::vector<int> rest;
        for (int x : faces_[f])
            if (x != vi) rest.push_back(x);
        names.push_back(rest.empty() ? std::string("∅") : face_name(rest));
    }
    std::vector<std::pair<int, int>> rel = sub.covers();
    return std::make_shared<Poset>(std::move(names), rel);
}

MonotoneMap simplicial_map(const SimplicialComplex& src, const SimplicialComplex& tgt,
                           const std::map<std::string, std::string>& vertex_map) {
    std::vector<int> vimg(src.vertices().size(), -1);
    for (const auto& [a, b] : vertex_map) {
        int ia = src.vertex_index(a);
        vimg[ia] = tgt.vertex_index(b);
    }
    for (std::size_t i = 0; i < vimg.size(); ++i)
        if (vimg[i] < 0) {
            // unmapped vertices keep their name when the target has it
            vimg[i] = tgt.vertex_index(src.vertices()[i]);
        }
    std::vector<int> assign;
    for (const auto& f : src.faces()) {
        std::vector<int> img;
        for (int v : f) img.push_back(vimg[v]);
        auto face = tgt.find_face(img);
        if (!face) throw InputError("image of face '" + src.face_name(f) + "' is not a face of the target");
        assign.push_back(*face);
    }
    return MonotoneMap(src.face_poset(), tgt.face_poset(), std::move(assign));
}

SimplicialComplex skeleton_of_simplex(int n, int d) {
    std::vector<std::vector<std::string>> facets;
    const int k = std::min(d, n) + 1;
    std::vector<int> comb(k);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
        std::vector<std::string> f;
        for (int c : comb) f.push_back(std::to_string(c));
        facets.push_back(std::move(f));
        int i = k - 1;
        while (i >= 0 && comb[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return SimplicialComplex::from_facets(facets);
}

std::vector<std::vector<int>> enumerate_chains(const Poset& P) {
    std::vector<std::vector<int>> out;
    const auto& L = P.linear_extension();
    std::vector<int> cur;
    // depth-first extension in linear-extension order
    auto rec = [&](auto&& self, int last_pos) -> void {
        for (int p = last_pos + 1; p < P.size(); ++p) {
            int e = L[p];
            if (!cur.empty() && !P.lt(cur.back(), e)) continue;
            cur.push_back(e);
            out.push_back(cur);
            self(self, p);
            cur.pop_back();
        }
    };
    rec(rec, -1);
    std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return P.position(a[i]) < P.position(b[i]);
        return false;
    });
    return out;
}

OrderComplex order_complex(const PosetPtr& P) {
    auto chains = enumerate_chains(*P);
    std::vector<std::vector<std::string>> facets;
    for (const auto& c : chains) {
        bool maximal = true;
        // a chain is maximal iff no other chain strictly contains it
        for (const auto& d : chains) {
            if (d.size() != c.size() + 1) continue;
            if (std::includes(d.begin(), d.end(), c.begin(), c.end(),
                              [&](int x, int y) { return P->position(x) < P->position(y); })) {
                maximal = false;
                break;
            }
        }
        if (!maximal) continue;
        std::vector<std::string> f;
        for (int e : c) f.push_back(P->name(e));
        facets.push_back(std::move(f));
    }
    OrderComplex oc{std::move(chains), SimplicialComplex{}, {}, MonotoneMap::identity(P)};
    if (P->size() == 0) return oc;
    oc.complex = SimplicialComplex::from_facets(facets);
    std::map<std::vector<int>, int> chain_idx;
    for (int i = 0; i < static_cast<int>(oc.chains.size()); ++i) {
        auto key = oc.chains[i];
        std::sort(key.begin(), key.end());
        chain_idx[key] = i;
    }
    std::vector<int> term;
    for (const auto& f : oc.complex.faces()) {
        std::vector<int> elems;
        for (int v : f) elems.push_back(P->index(oc.complex.vertices()[v]));
        std::sort(elems.begin(), elems.end());
        int ci = chain_idx.at(elems);
        oc.chain_of_face.push_back(ci);
        term.push_back(oc.chains[ci].back());
    }
    oc.terminal = MonotoneMap(oc.complex.face_poset(), P, std::move(term));
    return oc;
}

int signed_incidence(const std::vector<int>& sigma, const std::vector<int>& gamma) {
    if (gamma.size() != sigma.size() + 1) return 0;
    std::size_t i = 0;
    while (i < sigma.size() && sigma[i] == gamma[i]) ++i;
    // gamma drops index i; the remainder must agree
    for (std::size_t j = i; j < sigma.size(); ++j)
        if (sigma[j] != gamma[j + 1]) return 0;
    return (i % 2 == 0) ? 1 : -1;
}

}  // namespace psheaf
