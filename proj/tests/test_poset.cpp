#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "psheaf/error.hpp"
#include "psheaf/io.hpp"
#include "psheaf/poset.hpp"
#include "psheaf/random.hpp"

using namespace psheaf;

namespace {

SimplicialComplex load(const char* name) {
    std::string path = std::string(PSHEAF_DATA_DIR) + "/" + name;
    return SimplicialComplex::from_facets(parse_facets(read_input(path), path));
}

std::vector<std::string> names_of(const Poset& P, const ElementSet& S) {
    std::vector<std::string> out;
    for (int e : S) out.push_back(P.name(e));
    std::sort(out.begin(), out.end());
    return out;
}

PosetPtr chain(std::vector<std::string> names) {
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i + 1 < static_cast<int>(names.size()); ++i) rel.emplace_back(i, i + 1);
    return std::make_shared<Poset>(std::move(names), rel);
}

}  // namespace

TEST_CASE("poset closure, covers and height") {
    Poset P({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {0, 3}});
    CHECK(P.leq(0, 2));
    CHECK_FALSE(P.leq(2, 0));
    CHECK_FALSE(P.leq(3, 2));
    CHECK(P.height() == 2);
    auto cov = P.covers();
    CHECK(cov.size() == 3);
    CHECK(std::find(cov.begin(), cov.end(), std::pair{0, 2}) == cov.end());
    CHECK(P.maximal_elements() == ElementSet{2, 3});
    CHECK_THROWS_AS(Poset({"a", "b"}, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(P.index("zz"), InputError);
}

TEST_CASE("linear extension refines the order on random posets") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        PosetPtr P = random_poset(rng, 1 + t % 9);
        const auto& L = P->linear_extension();
        for (int a = 0; a < P->size(); ++a)
            for (int b = 0; b < P->size(); ++b)
                if (P->lt(a, b)) CHECK(P->position(a) < P->position(b));
        // height is the longest chain, checked by brute force over the chain list
        int longest = 0;
        for (const auto& c : enumerate_chains(*P)) longest = std::max(longest, static_cast<int>(c.size()) - 1);
        CHECK(P->height() == longest);
        CHECK(static_cast<int>(L.size()) == P->size());
    }
}

TEST_CASE("faces of a path graph") {
    auto K = SimplicialComplex::from_facets({{"0", "1"}, {"1", "2"}});
    const Poset& P = *K.face_poset();
    CHECK(P.names() == std::vector<std::string>{"0", "1", "2", "01", "12"});
    CHECK(P.height() == 1);
    CHECK_THROWS_AS(SimplicialComplex::from_facets({{}}), InputError);
}

TEST_CASE("face poset order is inclusion") {
    auto K = load("four_simplex.txt");
    const Poset& P = *K.face_poset();
    for (int a = 0; a < P.size(); ++a)
        for (int b = 0; b < P.size(); ++b) {
            const auto& fa = K.faces()[a];
            const auto& fb = K.faces()[b];
            CHECK(P.leq(a, b) == std::includes(fb.begin(), fb.end(), fa.begin(), fa.end()));
        }
    // faces are closed under taking subsets
    for (const auto& f : K.faces())
        for (std::size_t drop = 0; drop < f.size() && f.size() > 1; ++drop) {
            auto g = f;
            g.erase(g.begin() + static_cast<long>(drop));
            CHECK(K.find_face(g).has_value());
        }
}

TEST_CASE("tetrahedron boundary has 14 faces") {
    auto K = load("tetrahedron.txt");
    CHECK(K.face_poset()->size() == 14);
    CHECK(K.dimension() == 2);
    const Poset& P = *K.face_poset();
    CHECK(names_of(P, star(P, P.index("12"))) == std::vector<std::string>{"12", "123", "124"});
    int top = P.index("123");
    CHECK(star(P, top) == ElementSet{top});
}

TEST_CASE("star of a vertex in the four-simplex with extra edges") {
    auto K = load("four_simplex.txt");
    const Poset& P = *K.face_poset();
    CHECK(K.vertices().size() == 7);
    // subsets of {1..5} containing 4 that lie in a facet: 1 + 4 + 6 + 3
    ElementSet st = star(P, P.index("4"));
    CHECK(st.size() == 14);
    for (int e : st) {
        const auto& f = K.faces()[e];
        CHECK(std::find(f.begin(), f.end(), K.vertex_index("4")) != f.end());
    }
    PosetPtr S1 = K.star_poset("1");
    CHECK(S1->size() == 17);
    CHECK(S1->find("∅").has_value());
    CHECK(S1->find("6").has_value());
    CHECK(S1->find("234").has_value());
}

TEST_CASE("closure and local closedness") {
    auto K = load("lambda.txt");
    const Poset& P = *K.face_poset();
    ElementSet B = to_set(P, {"4", "24"});
    CHECK(names_of(P, closure(P, B)) == std::vector<std::string>{"2", "24", "4"});
    CHECK(closure(P, all_elements(P)) == all_elements(P));
    CHECK(is_locally_closed(P, B));
    CHECK(is_locally_closed(P, {P.index("013")}));
    int v0 = P.index("0");
    CHECK(closure(P, {v0}) == ElementSet{v0});

    auto T = SimplicialComplex::from_facets({{"0", "1", "2"}, {"0", "1", "3"}, {"0", "2", "3"}, {"1", "2", "3"}});
    const Poset& Q = *T.face_poset();
    // an antichain is always convex
    CHECK(is_locally_closed(Q, to_set(Q, {"0", "123"})));
    CHECK_FALSE(is_locally_closed(Q, to_set(Q, {"0", "012"})));
    CHECK_THROWS_AS(LocallyClosedSet(T.face_poset(), to_set(Q, {"0", "012"})), InputError);
    CHECK(is_open(Q, star(Q, Q.index("01"))));
    CHECK(is_closed(Q, closure(Q, {Q.index("01")})));
}

TEST_CASE("star and closure laws on random posets") {
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        PosetPtr P = random_poset(rng, 1 + t % 8);
        for (int a = 0; a < P->size(); ++a) {
            ElementSet st = star(*P, a);
            ElementSet cl = closure(*P, st);
            ElementSet both;
            std::set_intersection(cl.begin(), cl.end(), st.begin(), st.end(), std::back_inserter(both));
            CHECK(both == st);
            CHECK(up_closure(*P, st) == st);
            CHECK(closure(*P, cl) == cl);
            CHECK(is_locally_closed(*P, {a}));
        }
    }
}

TEST_CASE("monotone maps are checked") {
    PosetPtr P = chain({"a", "b"});
    PosetPtr Q = chain({"x", "y"});
    CHECK_NOTHROW(MonotoneMap(P, Q, {0, 1}));
    CHECK_NOTHROW(MonotoneMap(P, Q, {1, 1}));
    CHECK_THROWS_AS(MonotoneMap(P, Q, {1, 0}), InputError);
    MonotoneMap f = MonotoneMap::from_named(P, Q, {{"a", "y"}, {"b", "y"}});
    CHECK(f.fiber(1) == ElementSet{0, 1});
    CHECK(f.fiber(0).empty());
    MonotoneMap g = f.then(MonotoneMap::to_point(Q));
    CHECK(g.target()->size() == 1);
}

TEST_CASE("mapping cylinder of a map to a point adds a top") {
    PosetPtr P = chain({"a", "b"});
    auto cyl = mapping_cylinder(MonotoneMap::to_point(P));
    const Poset& C = *cyl.poset;
    CHECK(C.size() == 3);
    int top = cyl.from_target[0];
    for (int e = 0; e < C.size(); ++e) CHECK(C.leq(e, top));
}

TEST_CASE("mapping cylinder of the identity pairs each element with its copy") {
    PosetPtr P = chain({"a", "b"});
    auto cyl = mapping_cylinder(MonotoneMap::identity(P));
    const Poset& C = *cyl.poset;
    CHECK(C.size() == 4);
    CHECK(C.name(cyl.from_target[0]) == "a'");
    CHECK(C.leq(cyl.from_source[0], cyl.from_target[0]));
    CHECK_FALSE(C.leq(cyl.from_target[0], cyl.from_source[0]));
    CHECK_FALSE(C.leq(cyl.from_source[1], cyl.from_target[0]));
}

TEST_CASE("star in the mapping cylinder of a non-injective pullback example") {
    auto P = std::make_shared<Poset>(Poset::from_named({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}));
    auto L = std::make_shared<Poset>(
        Poset::from_named({"a'", "b'", "c'", "d'"}, {{"a'", "b'"}, {"a'", "c'"}, {"b'", "d'"}, {"c'", "d'"}}));
    MonotoneMap f = MonotoneMap::from_named(P, L, {{"a", "a'"}, {"b", "b'"}, {"c", "c'"}});
    auto cyl = mapping_cylinder(f);
    const Poset& C = *cyl.poset;
    CHECK(names_of(C, star(C, cyl.from_source[0])) ==
          std::vector<std::string>{"a", "a'", "b", "b'", "c", "c'", "d'"});
}

TEST_CASE("star in a mapping cylinder is a union of stars") {
    Rng rng(3);
    for (int t = 0; t < 40; ++t) {
        PosetPtr S = random_poset(rng, 1 + t % 6);
        PosetPtr T = random_poset(rng, 1 + (t / 2) % 6);
        MonotoneMap f = random_monotone_map(rng, S, T);
        auto cyl = mapping_cylinder(f);
        for (int a = 0; a < S->size(); ++a) {
            ElementSet expect;
            for (int b : star(*S, a)) expect.push_back(cyl.from_source[b]);
            for (int b : star(*T, f(a))) expect.push_back(cyl.from_target[b]);
            std::sort(expect.begin(), expect.end());
            CHECK(star(*cyl.poset, cyl.from_source[a]) == expect);
        }
    }
}

TEST_CASE("order complex of small posets") {
    auto pt = chain({"a"});
    auto oc = order_complex(pt);
    CHECK(oc.chains.size() == 1);

    auto ab = chain({"a", "b"});
    auto oc2 = order_complex(ab);
    CHECK(oc2.chains.size() == 3);
    CHECK(oc2.complex.dimension() == 1);

    auto K = load("tetrahedron.txt");
    auto oc3 = order_complex(K.face_poset());
    CHECK(oc3.complex.vertices().size() == 14);
    // barycentric subdivision of the sphere: 14 vertices, 36 edges, 24 triangles
    int counts[3] = {0, 0, 0};
    for (const auto& c : oc3.chains) ++counts[c.size() - 1];
    CHECK(counts[0] == 14);
    CHECK(counts[1] == 36);
    CHECK(counts[2] == 24);
    const Poset& S = *oc3.complex.face_poset();
    for (int a = 0; a < S.size(); ++a)
        for (int b = 0; b < S.size(); ++b)
            if (S.leq(a, b)) CHECK(K.face_poset()->leq(oc3.terminal(a), oc3.terminal(b)));
}

TEST_CASE("signed incidence") {
    CHECK(signed_incidence({0, 2}, {0, 1, 2}) == -1);
    CHECK(signed_incidence({1, 2}, {0, 1, 2}) == 1);
    CHECK(signed_incidence({0, 1}, {0, 1, 2}) == 1);
    CHECK(signed_incidence({0, 3}, {0, 1, 2}) == 0);
    CHECK(signed_incidence({0}, {0, 1, 2}) == 0);
}

TEST_CASE("signed incidence squares to zero on random posets") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        PosetPtr P = random_poset(rng, 2 + t % 7, 0.5);
        auto chains = enumerate_chains(*P);
        for (const auto& s : chains)
            for (const auto& g : chains) {
                if (g.size() != s.size() + 2) continue;
                int sum = 0;
                for (const auto& m : chains)
                    if (m.size() == s.size() + 1) sum += signed_incidence(s, m) * signed_incidence(m, g);
                CHECK(sum == 0);
            }
    }
}

TEST_CASE("skeleton of a simplex matches the subset count") {
    for (int n = 2; n <= 6; ++n)
        for (int d = 1; d <= 3; ++d) {
            auto K = skeleton_of_simplex(n, d);
            CHECK(K.faces().size() == oracle::skeleton_faces(n, d).size());
        }
    CHECK(skeleton_of_simplex(9, 2).faces().size() == 175);
}
