#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "psheaf/error.hpp"
#include "psheaf/morse.hpp"
#include "psheaf/random.hpp"

using namespace psheaf;

namespace {

const fixtures::Section7& s7() {
    static const fixtures::Section7 s;
    return s;
}

// Perfect discrete Morse function on the tetrahedron boundary: the vertex 1
// and the triangle 234 are unpaired, everything else sits in a two-element level.
MorseFunction perfect_tetrahedron(const PosetPtr& P) {
    std::map<std::string, std::string> levels = {
        {"1", "L1"},  {"2", "L2"},   {"12", "L2"},  {"3", "L3"},   {"13", "L3"},  {"4", "L4"},  {"14", "L4"},
        {"23", "L5"}, {"123", "L5"}, {"24", "L6"}, {"124", "L6"}, {"34", "L7"}, {"134", "L7"}, {"234", "L8"}};
    return MorseFunction::from_levels(P, levels, {"L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8"});
}

std::vector<std::string> level_names(const MorseFunction& mf, const ElementSet& S) {
    std::vector<std::string> out;
    for (int x : S) out.push_back(mf.levels()->name(x));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("supports") {
    auto K = fixtures::load_complex("tetrahedron.txt");
    InjectiveComplex T = minimal_resolution_constant(K.face_poset());
    CHECK(supp_shriek(T).size() == 14);
    CHECK(supp_star(T).size() == 14);
    CHECK(supp_shriek(InjectiveComplex()).empty());
    CHECK(supp_star(InjectiveComplex()).empty());

    PosetPtr P = K.face_poset();
    InjectiveComplex bad(P, Field(), 0);
    LabeledMatrix e(P, Field(), {0}, {0});
    e.set(0, 0, 1);
    bad.eta.push_back(e);
    bad.eta.push_back(LabeledMatrix(P, Field(), {0}));
    CHECK_THROWS_AS(supp_shriek(bad), InputError);
}

TEST_CASE("support closures agree") {
    Rng rng(61);
    for (int t = 0; t < 40; ++t) {
        Field F(t % 2 ? 3 : 2);
        PosetPtr P = random_poset(rng, 1 + t % 7);
        InjectiveComplex C = random_minimal_complex(rng, P, F, 5);
        CHECK(closure(*P, supp_shriek(C)) == closure(*P, supp_star(C)));
        // a singleton lies in the !-microsupport exactly when it carries a generator
        ElementSet sh = supp_shriek(C);
        for (int e = 0; e < P->size(); ++e) {
            LocallyClosedSet Z(P, {e});
            bool gen = std::binary_search(sh.begin(), sh.end(), e);
            CHECK(in_microsupport_shriek(Z, C) == gen);
        }
    }
}

TEST_CASE("microsupport of the edge and vertex set") {
    const auto& s = s7();
    LocallyClosedSet B = s.B();
    CHECK(in_microsupport_star(B, s.Rg));
    CHECK(microsupport_star_cohomology(B, s.Rg) == std::map<int, int>{{1, 1}});
    CHECK(in_microsupport_shriek(B, s.Rg));
    CHECK(microsupport_shriek_cohomology(B, s.Rg) == std::map<int, int>{{1, 1}});
    CHECK_FALSE(in_microsupport_star(B, s.Rh));
    CHECK(in_microsupport_shriek(B, s.Rh));
    CHECK(microsupport_shriek_cohomology(B, s.Rh) == std::map<int, int>{{1, 2}});

    LocallyClosedSet all(s.lambda.face_poset(), all_elements(*s.lambda.face_poset()));
    CHECK(in_microsupport_star(all, s.Rg));
}

TEST_CASE("critical elements of the level function on the sphere") {
    const auto& s = s7();
    MorseFunction mf = s.morse();
    int Bx = mf.levels()->index("B");
    auto crit = [&](const InjectiveComplex& C, Variant v) {
        ElementSet k = critical_elements(mf, C, v);
        return std::binary_search(k.begin(), k.end(), Bx);
    };
    CHECK(crit(s.Rg, Variant::Star));
    CHECK(crit(s.Rg, Variant::Shriek));
    CHECK_FALSE(crit(s.Rh, Variant::Star));
    CHECK(crit(s.Rh, Variant::Shriek));
}

TEST_CASE("level functions are checked") {
    auto K = fixtures::load_complex("tetrahedron.txt");
    PosetPtr P = K.face_poset();
    std::map<std::string, std::string> levels;
    for (const auto& n : P->names()) levels[n] = "X";
    levels["12"] = "Y";
    // 1 < 12 < 123 with 1 and 123 in one level forces X < Y < X
    CHECK_THROWS_AS(MorseFunction::from_levels(P, levels, {"X", "Y"}), InputError);
    std::map<std::string, std::string> two;
    for (const auto& n : P->names()) two[n] = n.size() == 1 ? "low" : "high";
    CHECK_THROWS_AS(MorseFunction::from_levels(P, two, {"high", "low"}), InputError);
    CHECK_NOTHROW(MorseFunction::from_levels(P, two, {"low", "high"}));
}

TEST_CASE("perfect Morse function on the tetrahedron") {
    auto K = fixtures::load_complex("tetrahedron.txt");
    InjectiveComplex C = minimal_resolution_constant(K.face_poset());
    MorseFunction mf = perfect_tetrahedron(K.face_poset());
    CHECK(level_names(mf, critical_elements(mf, C, Variant::Star)) == std::vector<std::string>{"L1", "L8"});

    BettiTable T = betti_table(mf, C, Direction::Sublevel, Variant::Star);
    REQUIRE(T.rows.size() == 8);
    CHECK(T.rows.back() == std::map<int, int>{{0, 1}, {2, 1}});
    for (std::size_t k = 1; k < T.rows.size(); ++k) {
        bool changes = T.rows[k] != T.rows[k - 1];
        CHECK(changes == (k == 7));
    }
    CHECK(verify_morse_theorem(mf, C).ok);
    InequalityReport r = morse_inequalities(mf, C, Variant::Star);
    CHECK(r.ok);
    CHECK(r.euler_lhs == 2);
    CHECK(r.euler_rhs == 2);
}

TEST_CASE("interval fibers: critical levels are the singletons") {
    for (const char* name : {"tetrahedron.txt", "lambda.txt"}) {
        auto K = fixtures::load_complex(name);
        PosetPtr P = K.face_poset();
        InjectiveComplex C = minimal_resolution_constant(P);
        // pair each face with the smallest coface one dimension up that is still free,
        // walking by increasing dimension; the pairs are intervals
        std::vector<int> level(P->size(), -1);
        std::vector<std::string> names;
        std::map<std::string, std::string> assign;
        std::vector<int> by_dim(P->size());
        std::iota(by_dim.begin(), by_dim.end(), 0);
        std::stable_sort(by_dim.begin(), by_dim.end(), [&](int a, int b) { return K.dim(a) < K.dim(b); });
        int next = 0;
        for (int a : by_dim) {
            if (level[a] >= 0) continue;
            level[a] = next;
            for (int b : P->upper_covers(a))
                if (level[b] < 0) {
                    // b's other faces must already have lower levels for monotonicity
                    bool ok = true;
                    for (int c : P->lower_covers(b))
                        if (c != a && (level[c] < 0 || level[c] > next)) ok = false;
                    if (ok) {
                        level[b] = next;
                        break;
                    }
                }
            ++next;
        }
        std::vector<std::string> order;
        for (int x = 0; x < next; ++x) order.push_back("v" + std::to_string(x));
        for (int a = 0; a < P->size(); ++a) assign[P->name(a)] = order[level[a]];
        MorseFunction mf = MorseFunction::from_levels(P, assign, order);
        ElementSet singles;
        for (int x = 0; x < mf.levels()->size(); ++x)
            if (mf.map().fiber(x).size() == 1) singles.push_back(x);
        CHECK(critical_elements(mf, C, Variant::Star) == singles);
        CHECK(verify_morse_theorem(mf, C).ok);
    }
}

TEST_CASE("Betti tables") {
    const auto& s = s7();
    MorseFunction mf = s.morse();
    for (const auto* C : {&s.Rg, &s.Rh, &s.Rl}) {
        for (Variant v : {Variant::Star, Variant::Shriek}) {
            BettiTable T = betti_table(mf, *C, Direction::Sublevel, v);
            CHECK(T.rows.back() == hypercohomology(*C));
            BettiTable U = betti_table(mf, *C, Direction::Superlevel, v);
            CHECK(U.rows.front() == hypercohomology(*C));
            BettiTable Tj = betti_table(mf, *C, Direction::Sublevel, v, 4);
            CHECK(Tj.rows == T.rows);
        }
    }
    CHECK(betti_table(mf, s.Rg, Direction::Sublevel, Variant::Star).rows.back() ==
          std::map<int, int>{{0, 1}, {1, 1}, {2, 1}});

    // a single level reproduces the hypercohomology
    std::map<std::string, std::string> one;
    for (const auto& n : s.lambda.face_poset()->names()) one[n] = "all";
    MorseFunction flat = MorseFunction::from_levels(s.lambda.face_poset(), one, {"all"});
    BettiTable T = betti_table(flat, s.Rg, Direction::Sublevel, Variant::Shriek);
    REQUIRE(T.rows.size() == 1);
    CHECK(T.rows[0] == hypercohomology(s.Rg));
}

TEST_CASE("Morse theorem and inequalities on the sphere examples") {
    const auto& s = s7();
    MorseFunction mf = s.morse();
    for (const auto* C : {&s.Rg, &s.Rh, &s.Rl}) {
        Report r = verify_morse_theorem(mf, *C, 2);
        CHECK_MESSAGE(r.ok, r.message);
        for (Variant v : {Variant::Star, Variant::Shriek}) {
            InequalityReport q = morse_inequalities(mf, *C, v);
            CHECK_MESSAGE(q.ok, q.message);
            CHECK(q.euler_lhs == q.euler_rhs);
        }
    }
    InequalityReport h = morse_inequalities(mf, s.Rh, Variant::Shriek);
    CHECK(h.euler_lhs == 1);
    CHECK(verify_morse_theorem(mf, InjectiveComplex(s.lambda.face_poset(), Field(), 0)).ok);
}

TEST_CASE("compactly supported cohomology") {
    auto T = fixtures::load_complex("tetrahedron.txt");
    const Poset& P = *T.face_poset();
    int top = P.index("123");
    CHECK(compact_support_cohomology(T, {top}) == std::map<int, int>{{2, 1}});
    CHECK(compact_support_cohomology(T, star(P, P.index("12"))) == std::map<int, int>{{2, 1}});
    CHECK_THROWS_AS(compact_support_cohomology(T, {P.index("12")}), InputError);

    auto K = fixtures::load_complex("four_simplex.txt");
    const Poset& Q = *K.face_poset();
    CHECK(compact_support_cohomology(K, star(Q, Q.index("1"))) == std::map<int, int>{{1, 2}, {3, 1}});
}

TEST_CASE("compactly supported cohomology agrees with the oracle") {
    Rng rng(67);
    for (const char* name : {"tetrahedron.txt", "sigma.txt", "gamma.txt", "four_simplex.txt"}) {
        auto K = fixtures::load_complex(name);
        const Poset& P = *K.face_poset();
        for (Scalar p : {2u, 3u})
            for (int t = 0; t < 10; ++t) {
                ElementSet seed;
                for (int e = 0; e < P.size(); ++e)
                    if (rng() % 4 == 0) seed.push_back(e);
                ElementSet U = up_closure(P, seed);
                std::vector<bool> in(P.size(), false);
                for (int e : U) in[e] = true;
                CHECK(compact_support_cohomology(K, U, Field(p)) == oracle::cochain_cohomology(K.faces(), in, p));
            }
    }
}
