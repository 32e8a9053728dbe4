// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "psheaf/derived.hpp"
#include "psheaf/morse.hpp"
#include "psheaf/random.hpp"
#include "psheaf/resolution.hpp"
#include "psheaf/sheaf.hpp"

using namespace psheaf;

namespace {

// Tolerances and sample sizes.
constexpr double kGoldenSeconds = 1.0;
constexpr double kLargeSeconds = 10.0;
constexpr double kScalingFactor = 4.0;
constexpr int kTimingRepeats = 5;
constexpr int kMorseTrials = 50;
constexpr int kPullbackTrials = 100;
constexpr int kUniquenessTrials = 100;  // per field
constexpr int kHomTrials = 50;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(std::string why) {
        if (pass) detail = std::move(why);
        pass = false;
    }
    void require(bool ok, const std::string& why) {
        if (!ok) fail(why);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every resolution built below is recorded here and checked for criterion 10.
struct ResolutionLog {
    int seen = 0;
    std::vector<std::string> failures;

    const InjectiveComplex& operator()(const InjectiveComplex& C, const std::string& where) {
        ++seen;
        if (!is_minimal(C)) failures.push_back(where + ": not minimal");
        if (C.poset && nonzero_terms(C) > C.poset->height() + 1)
            failures.push_back(fmt::format("{}: {} nonzero terms for height {}", where, nonzero_terms(C),
                                           C.poset->height()));
        return C;
    }
};
ResolutionLog logged;

std::map<std::string, int> named(const Poset& P, const std::map<int, int>& row) {
    std::map<std::string, int> out;
    for (auto [e, n] : row)
        if (n) out[P.name(e)] = n;
    return out;
}

std::map<int, int> row_of(const MultiplicityTable& m, int d) {
    auto it = m.find(d);
    return it == m.end() ? std::map<int, int>{} : it->second;
}

Outcome star_golden() {
    Outcome o;
    PosetPtr P = fixtures::load_complex("four_simplex.txt").star_poset("1");
    auto t0 = std::chrono::steady_clock::now();
    InjectiveComplex C = minimal_resolution_constant(P);
    double secs = seconds_since(t0);
    logged(C, "star of vertex 1");
    auto m = multiplicities(C);
    using M = std::map<std::string, int>;
    o.require(named(*P, row_of(m, 0)) == M{{"234", 1}, {"235", 1}, {"245", 1}, {"345", 1}, {"6", 1}, {"7", 1}}, "m0");
    o.require(named(*P, row_of(m, 1)) ==
                  M{{"23", 1}, {"24", 1}, {"25", 1}, {"34", 1}, {"35", 1}, {"45", 1}, {"∅", 2}},
              "m1");
    o.require(named(*P, row_of(m, 2)) == M{{"2", 1}, {"3", 1}, {"4", 1}, {"5", 1}}, "m2");
    o.require(named(*P, row_of(m, 3)) == M{{"∅", 1}}, "m3");
    o.require(m.size() == 4, "extra degrees");
    o.require(rank(C.field, C.at(2).stalk(P->index("∅"))) == 1, "rank of the degree two stalk at the empty face");
    o.require(validate_complex(C).ok, "not a complex");
    auto h = cohomology_sheaf_dims(C);
    bool exact = h.size() == 1 && h.count(0);
    if (exact)
        for (int e = 0; e < P->size(); ++e) exact = exact && h[0][e] == 1;
    o.require(exact, "not a resolution of the constant sheaf");
    o.require(secs < kGoldenSeconds, fmt::format("took {:.3f} s", secs));
    if (o.pass) o.detail = fmt::format("{:.4f} s", secs);
    return o;
}

Outcome tetrahedron_golden() {
    Outcome o;
    auto K = fixtures::load_complex("tetrahedron.txt");
    auto t0 = std::chrono::steady_clock::now();
    InjectiveComplex C = minimal_resolution_constant(K.face_poset());
    double secs = seconds_since(t0);
    logged(C, "tetrahedron");
    for (int d = 0; d < 3; ++d) {
        o.require(C.term_size(d) == (d == 1 ? 6 : 4), fmt::format("term {} has {} generators", d, C.term_size(d)));
        for (int l : C.term(d)) o.require(K.dim(l) == 2 - d, fmt::format("degree {} generator of wrong dimension", d));
    }
    auto H = hypercohomology(C);
    o.require(H == std::map<int, int>{{0, 1}, {2, 1}}, "hypercohomology is not (1, 0, 1)");
    o.require(euler_characteristic(C) == 2, "Euler characteristic is not 2");
    o.require(secs < kGoldenSeconds, fmt::format("took {:.3f} s", secs));
    if (o.pass) o.detail = fmt::format("{:.4f} s", secs);
    return o;
}

void check_multiplicities_against_oracle(Outcome& o, const SimplicialComplex& K, const std::string& name, int& count) {
    InjectiveComplex C = logged(minimal_resolution_constant(K.face_poset()), name);
    auto m = multiplicities(C);
    int top = 0;
    for (int s = 0; s < K.face_poset()->size(); ++s) top = std::max(top, K.dim(s));
    for (int s = 0; s < C.poset->size(); ++s) {
        auto hc = oracle::cochain_cohomology(K.faces(), oracle::open_star(K.faces(), K.faces()[s]), 2);
        for (int d = 0; d <= top + 1; ++d) {
            int expect = hc.count(d + K.dim(s)) ? hc[d + K.dim(s)] : 0;
            int got = row_of(m, d).count(s) ? row_of(m, d)[s] : 0;
            ++count;
            o.require(got == expect,
                      fmt::format("{} at {} degree {}: {} vs {}", name, C.poset->name(s), d, got, expect));
        }
    }
}

Outcome multiplicity_oracle() {
    Outcome o;
    int count = 0;
    for (int n = 0; n <= 5; ++n)
        for (int d = 0; d <= std::min(n, 3); ++d)
            check_multiplicities_against_oracle(o, skeleton_of_simplex(n, d), fmt::format("Dnk({},{})", n, d), count);
    check_multiplicities_against_oracle(o, fixtures::load_complex("sigma.txt"), "sigma", count);
    check_multiplicities_against_oracle(o, fixtures::load_complex("gamma.txt"), "gamma", count);
    if (o.pass) o.detail = fmt::format("{} multiplicities", count);
    return o;
}

Outcome star_closed_form() {
    Outcome o;
    int count = 0;
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= std::min(n, 3); ++d) {
            auto K = skeleton_of_simplex(n, d);
            InjectiveComplex C = logged(minimal_resolution_constant(K.face_poset()), fmt::format("Dnk({},{})", n, d));
            auto m = multiplicities(C);
            const Poset& P = *C.poset;
            for (int s = 0; s < P.size(); ++s) {
                for (int j = 0; j <= d; ++j) {
                    if (K.dim(s) == 0) {
                        int got = star_multiplicity(P, m, s, j);
                        long long want = oracle::dnk_star_multiplicity(n, d, j);
                        ++count;
                        o.require(got == want, fmt::format("Dnk({},{}) vertex {} j={}: {} vs {}", n, d, P.name(s), j,
                                                           got, want));
                    }
                    double c = star_complexity(P, m, s, j);
                    o.require(c <= static_cast<double>(oracle::binom(d, j)),
                              fmt::format("Dnk({},{}) star complexity {} at {} j={}", n, d, c, P.name(s), j));
                }
            }
        }
    if (o.pass) o.detail = fmt::format("{} vertex multiplicities", count);
    return o;
}

std::map<std::string, int> profile_without_dim(const InjectiveComplex& C, const SimplicialComplex& K, int d, int dim,
                                               int& at_dim) {
    std::map<std::string, int> rest;
    at_dim = 0;
    if (!C.has(d)) return rest;
    for (int l : C.term(d)) {
        if (K.dim(l) == dim)
            ++at_dim;
        else
            ++rest[C.poset->name(l)];
    }
    return rest;
}

Outcome section7_golden(const fixtures::Section7& s) {
    Outcome o;
    logged(s.k_sigma, "sigma");
    logged(s.k_gamma, "gamma");
    using M = std::map<std::string, int>;
    struct Expect {
        const char* name;
        const InjectiveComplex* C;
        int counts[3];
        M extra[3];
    };
    std::vector<Expect> expect = {
        {"Rg", &s.Rg, {6, 9, 5}, {M{}, M{{"4", 1}}, M{}}},
        {"Rh", &s.Rh, {6, 9, 5}, {M{{"13", 1}, {"14", 1}, {"34", 1}}, M{{"1", 1}, {"3", 1}, {"4", 2}}, M{}}},
        {"Rl", &s.Rl, {6, 9, 4}, {M{}, M{}, M{}}},
    };
    for (const auto& e : expect) {
        o.require(is_minimal(*e.C), std::string(e.name) + " not minimal");
        for (int d = 0; d < 3; ++d) {
            int at_dim = 0;
            M rest = profile_without_dim(*e.C, s.lambda, d, 2 - d, at_dim);
            o.require(at_dim == e.counts[d] && rest == e.extra[d], fmt::format("{} degree {} profile", e.name, d));
        }
        o.require(!e.C->has(3) || e.C->term_size(3) == 0, std::string(e.name) + " has a degree three term");
    }
    LocallyClosedSet B = s.B();
    o.require(in_microsupport_star(B, s.Rg), "B not in the *-microsupport of Rg");
    o.require(microsupport_shriek_cohomology(B, s.Rg) == std::map<int, int>{{1, 1}}, "!-microsupport of Rg at B");
    o.require(!in_microsupport_star(B, s.Rh), "B in the *-microsupport of Rh");
    o.require(microsupport_shriek_cohomology(B, s.Rh) == std::map<int, int>{{1, 2}}, "!-microsupport of Rh at B");
    return o;
}

Outcome morse_theorem(const fixtures::Section7& s) {
    Outcome o;
    MorseFunction mf = s.morse();
    const std::pair<const char*, const InjectiveComplex*> cs[] = {{"Rg", &s.Rg}, {"Rh", &s.Rh}, {"Rl", &s.Rl}};
    for (auto [name, C] : cs) {
        Report r = verify_morse_theorem(mf, *C);
        o.require(r.ok, std::string(name) + ": " + r.message);
    }
    // the same check through the command line, one pipeline per complex
    const std::string cli = PSHEAF_CLI;
    const char* runs[][2] = {{"sigma.txt", "g.json"}, {"sigma.txt", "h.json"}, {"gamma.txt", "l.json"}};
    for (auto [src, map] : runs) {
        std::string cmd = fmt::format(
            "'{0}' functor push --complex '{1}' --map '{2}' --target '{3}' --format json | "
            "'{0}' morse --complex - --morse '{4}' --verify >/dev/null 2>&1",
            cli, fixtures::data_path(src), fixtures::data_path(map), fixtures::data_path("lambda.txt"),
            fixtures::data_path("morse_f.json"));
        int status = std::system(cmd.c_str());
        o.require(status == 0, fmt::format("morse --verify on the pushforward along {} exited {}", map, status));
    }
    return o;
}

// Levels are consecutive blocks of a random linear extension, so fibers are
// convex and the block order refines the forced order.
MorseFunction random_level_function(Rng& rng, const PosetPtr& P) {
    std::vector<int> ext = random_linear_extension(rng, *P);
    std::map<std::string, std::string> levels;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < ext.size();) {
        std::size_t len = 1 + rng() % 3;
        std::string name = "L" + std::to_string(order.size());
        order.push_back(name);
        for (std::size_t k = 0; k < len && i < ext.size(); ++k, ++i) levels[P->name(ext[i])] = name;
    }
    return MorseFunction::from_levels(P, levels, order);
}

void check_inequalities(Outcome& o, const MorseFunction& mf, const InjectiveComplex& C, const std::string& where) {
    for (Variant v : {Variant::Star, Variant::Shriek}) {
        InequalityReport r = morse_inequalities(mf, C, v);
        o.require(r.ok, where + " (" + to_string(v) + "): " + r.message);
        o.require(r.euler_lhs == r.euler_rhs, where + " Euler characteristics differ");
    }
}

Outcome morse_inequalities_all(const fixtures::Section7& s) {
    Outcome o;
    MorseFunction mf = s.morse();
    check_inequalities(o, mf, s.Rg, "Rg");
    check_inequalities(o, mf, s.Rh, "Rh");
    check_inequalities(o, mf, s.Rl, "Rl");
    Rng rng(101);
    for (int t = 0; t < kMorseTrials; ++t) {
        Field F(t % 2 ? 3 : 2);
        PosetPtr P = random_poset(rng, 1 + t % 8);
        InjectiveComplex C = random_minimal_complex(rng, P, F);
        check_inequalities(o, random_level_function(rng, P), C, fmt::format("random instance {}", t));
    }
    if (o.pass) o.detail = fmt::format("3 + {} instances", kMorseTrials);
    return o;
}

Outcome pullback_identity() {
    Outcome o;
    Rng rng(103);
    for (int t = 0; t < kPullbackTrials; ++t) {
        Field F(t % 2 ? 3 : 2);
        PosetPtr P = random_poset(rng, 1 + t % 8);
        PosetPtr Q = random_poset(rng, 1 + (t * 5 + 3) % 8);
        MonotoneMap f = random_monotone_map(rng, Q, P);
        InjectiveComplex C = random_minimal_complex(rng, P, F);
        auto r = pullback_via_proper(f, C);
        o.require(multiplicities(r.direct) == multiplicities(r.via), fmt::format("trial {}: multiplicities", t));
        o.require(cohomology_sheaf_dims(r.direct) == cohomology_sheaf_dims(r.via),
                  fmt::format("trial {}: cohomology sheaves", t));
    }
    if (o.pass) o.detail = fmt::format("{} triples", kPullbackTrials);
    return o;
}

Outcome uniqueness() {
    Outcome o;
    Rng rng(107);
    for (Scalar p : {2u, 3u})
        for (int t = 0; t < kUniquenessTrials; ++t) {
            Field F(p);
            PosetPtr P = random_poset(rng, 1 + t % 7);
            Sheaf S = random_sheaf(rng, P, F, 2);
            InjectiveComplex a = logged(minimal_resolution_sheaf(S), "random sheaf");
            InjectiveComplex b = logged(peel(order_complex_resolution(S)), "peeled order complex resolution");
            o.require(multiplicities(a) == multiplicities(b), fmt::format("GF({}) trial {}", p, t));
        }
    if (o.pass) o.detail = fmt::format("{} sheaves", 2 * kUniquenessTrials);
    return o;
}

Outcome hom_formula() {
    Outcome o;
    Rng rng(109);
    for (int t = 0; t < kHomTrials; ++t) {
        PosetPtr P = random_poset(rng, 1 + t % 7);
        std::vector<int> I(1 + rng() % 3), J(1 + rng() % 3);
        for (auto& x : I) x = static_cast<int>(rng() % P->size());
        for (auto& x : J) x = static_cast<int>(rng() % P->size());
        Decomposition dI, dJ;
        for (int x : I) dI.push_back({x, 1});
        for (int x : J) dJ.push_back({x, 1});
        std::vector<std::vector<bool>> leq(P->size(), std::vector<bool>(P->size()));
        for (int x = 0; x < P->size(); ++x)
            for (int y = 0; y < P->size(); ++y) leq[x][y] = P->leq(x, y);
        long long formula = hom_dim_injective(*P, dI, dJ);
        Field F(3);
        long long brute = hom_dim_brute(injective_as_sheaf(P, F, I), injective_as_sheaf(P, F, J));
        long long independent = oracle::hom_dim_naturality(leq, I, J, 2);
        o.require(formula == brute && formula == independent,
                  fmt::format("trial {}: {} vs {} vs {}", t, formula, brute, independent));
    }
    if (o.pass) o.detail = fmt::format("{} pairs", kHomTrials);
    return o;
}

Outcome scaling() {
    Outcome o;
    std::vector<double> ratio;
    std::string table;
    double largest = 0;
    for (int n = 5; n <= 9; ++n) {
        auto K = skeleton_of_simplex(n, 2);
        PosetPtr P = K.face_poset();
        std::size_t s = 0;
        for (int e = 0; e < P->size(); ++e) s = std::max(s, star(*P, e).size());
        std::vector<long long> ns;
        for (int r = 0; r < kTimingRepeats; ++r) {
            auto t0 = std::chrono::steady_clock::now();
            InjectiveComplex C = minimal_resolution_constant(P);
            ns.push_back(std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
                             .count());
            if (r == 0) logged(C, fmt::format("Dnk({},2)", n));
        }
        double secs = static_cast<double>(oracle::median(ns)) * 1e-9;
        double cost = static_cast<double>(P->size()) * static_cast<double>(s * s * s);
        ratio.push_back(secs / cost);
        table += fmt::format(" n={}:{:.4f}s", n, secs);
        if (n == 9) largest = secs;
    }
    o.require(largest < kLargeSeconds, fmt::format("Dnk(9,2) took {:.2f} s", largest));
    for (std::size_t j = 0; j < ratio.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            o.require(ratio[j] <= kScalingFactor * ratio[i],
                      fmt::format("time/(N s^3) grew by {:.2f}x from n={} to n={}", ratio[j] / ratio[i], i + 5, j + 5));
    if (o.pass) o.detail = table.substr(1);
    return o;
}

void print(int id, const char* title, const Outcome& o, int& failed) {
    if (!o.pass) ++failed;
    fmt::print("criterion {:2}: {}  {}{}\n", id, o.pass ? "PASS" : "FAIL", title,
               o.detail.empty() ? "" : " (" + o.detail + ")");
    std::fflush(stdout);
}

}  // namespace

int main() {
    int failed = 0;
    fixtures::Section7 s;
    print(1, "star of a vertex golden test", star_golden(), failed);
    print(2, "tetrahedron golden test", tetrahedron_golden(), failed);
    print(3, "multiplicities equal compactly supported cohomology of stars", multiplicity_oracle(), failed);
    print(4, "skeleton star multiplicities closed form", star_closed_form(), failed);
    print(5, "pushforward profiles and microsupport verdicts", section7_golden(s), failed);
    print(6, "Morse theorem on the sphere examples", morse_theorem(s), failed);
    print(7, "Morse inequalities and Euler equality", morse_inequalities_all(s), failed);
    print(8, "pullback through proper functors", pullback_identity(), failed);
    print(9, "order complex resolution peels to the minimal one", uniqueness(), failed);
    Outcome c11 = hom_formula();
    Outcome c12 = scaling();
    Outcome c10;
    for (const auto& f : logged.failures) c10.fail(f);
    if (c10.pass) c10.detail = fmt::format("{} resolutions", logged.seen);
    print(10, "length bound and minimality of every resolution", c10, failed);
    print(11, "hom dimension formula", c11, failed);
    print(12, "performance smoke", c12, failed);
    fmt::print("{} of 12 criteria passed\n", 12 - failed);
    return failed ? 1 : 0;
}
