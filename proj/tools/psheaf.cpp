#include <algorithm>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "psheaf/derived.hpp"
#include "psheaf/error.hpp"
#include "psheaf/io.hpp"
#include "psheaf/morse.hpp"
#include "psheaf/random.hpp"
#include "psheaf/resolution.hpp"

using namespace psheaf;

namespace {

constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;
constexpr int kExitSizeCap = 3;

struct Common {
    unsigned field = 2;
    bool field_given = false;
    int max_elements = 10000;
    std::string format = "text";
};

void check_size(const Poset& P, const Common& opt) {
    if (P.size() > opt.max_elements)
        throw SizeCapError(fmt::format("poset has {} elements, above --max-elements {}", P.size(), opt.max_elements));
}

struct Loaded {
    InjectiveComplex complex;
    Space space;
};

// A complex document, a sheaf document (resolved), or a space (constant sheaf resolved).
Loaded load_complex(const std::string& path, const Common& opt, const std::string& method = "inductive",
                    const std::string& star = "", const std::string& poset_path = "") {
    std::string text = read_input(path);
    Field F(opt.field);
    Loaded out;
    bool json = text.find_first_not_of(" \t\r\n") != std::string::npos && text[text.find_first_not_of(" \t\r\n")] == '{';
    if (json) {
        Json j = parse_json(text, path);
        if (j.contains("matrices")) {
            out.complex = complex_from_json(j);
            out.space.poset = out.complex.poset;
            check_size(*out.space.poset, opt);
            return out;
        }
        if (j.contains("stalks")) {
            PosetPtr P = nullptr;
            if (!poset_path.empty()) {
                out.space = space_from_text(read_input(poset_path), poset_path);
                P = out.space.poset;
            }
            std::optional<Field> field;
            if (opt.field_given || !j.contains("field")) field = F;
            Sheaf S = sheaf_from_json(j, P, field);
            out.space.poset = S.poset();
            check_size(*S.poset(), opt);
            out.complex = method == "order-complex" ? peel(order_complex_resolution(S)) : minimal_resolution_sheaf(S);
            return out;
        }
    }
    out.space = space_from_text(text, path);
    if (!star.empty()) {
        if (!out.space.complex) throw InputError("--star needs a facet file");
        out.space.poset = out.space.complex->star_poset(star);
        out.space.complex.reset();
    }
    check_size(*out.space.poset, opt);
    if (method == "order-complex")
        out.complex = peel(order_complex_resolution(constant_sheaf(out.space.poset, F)));
    else
        out.complex = minimal_resolution_constant(out.space.poset, F);
    return out;
}

Space load_space(const std::string& path, const Common& opt) {
    Space s = space_from_text(read_input(path), path);
    check_size(*s.poset, opt);
    return s;
}

std::string render_cohomology(const std::map<int, int>& h) {
    if (is_acyclic(h)) return "0";
    std::string out;
    for (auto [d, n] : h) out += fmt::format("{}H^{}={}", out.empty() ? "" : " ", d, n);
    return out;
}

void emit_complex(const InjectiveComplex& C, const Common& opt) {
    auto m = multiplicities(C);
    auto h = hypercohomology(C);
    if (opt.format == "json") {
        Json j = complex_to_json(C);
        j["multiplicities"] = C.poset ? multiplicities_to_json(*C.poset, m) : Json::object();
        j["hypercohomology"] = hypercohomology_to_json(h);
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << "multiplicities\n";
    if (C.poset) std::cout << render_multiplicities(*C.poset, m);
    std::cout << "hypercohomology: " << render_cohomology(h) << "\n";
    std::cout << "minimal: " << (is_minimal(C) ? "yes" : "no") << "\n\n";
    std::cout << render_complex(C);
}

// Moves a complex onto Q by element name.
InjectiveComplex by_name(const InjectiveComplex& C, const PosetPtr& Q) {
    if (C.empty()) return InjectiveComplex(Q, C.field, 0);
    std::vector<int> map(C.poset->size());
    for (int i = 0; i < C.poset->size(); ++i) map[i] = Q->index(C.poset->name(i));
    return relabel(C, Q, map);
}

ElementSet parse_set(const std::string& s, const Poset& P) {
    std::vector<std::string> names;
    std::string cur;
    for (char c : s) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) names.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) names.push_back(cur);
    return to_set(P, names);
}

MonotoneMap load_map(const std::string& path, const Space& source, const Space& target) {
    auto assign = assignment_from_json(parse_json(read_input(path), path));
    if (source.complex && target.complex) return simplicial_map(*source.complex, *target.complex, assign);
    return MonotoneMap::from_named(source.poset, target.poset, assign);
}

int cmd_resolve(const std::string& input, const std::string& method, const std::string& star,
                const std::string& poset_path, const Common& opt) {
    Loaded L = load_complex(input, opt, method, star, poset_path);
    emit_complex(L.complex, opt);
    return 0;
}

struct FunctorArgs {
    std::string kind, complex, map, source, target, set;
};

int cmd_functor(const FunctorArgs& a, const Common& opt) {
    if (a.kind == "push" || a.kind == "pull") {
        if (a.map.empty()) throw InputError("--map is required");
        if (a.kind == "push") {
            if (a.target.empty()) throw InputError("--target is required");
            Loaded L = load_complex(a.complex, opt);
            Space src = a.source.empty() ? L.space : load_space(a.source, opt);
            Space tgt = load_space(a.target, opt);
            MonotoneMap f = load_map(a.map, src, tgt);
            emit_complex(pushforward(f, by_name(L.complex, src.poset)), opt);
        } else {
            if (a.source.empty()) throw InputError("--source is required");
            Loaded L = load_complex(a.complex, opt);
            Space tgt = a.target.empty() ? L.space : load_space(a.target, opt);
            Space src = load_space(a.source, opt);
            MonotoneMap f = load_map(a.map, src, tgt);
            emit_complex(pullback(f, by_name(L.complex, tgt.poset)), opt);
        }
        return 0;
    }
    if (a.kind == "shriek-push" || a.kind == "shriek-pull") {
        if (a.set.empty()) throw InputError("--set is required");
        if (a.kind == "shriek-pull") {
            Loaded L = load_complex(a.complex, opt);
            Space amb = a.target.empty() ? L.space : load_space(a.target, opt);
            LocallyClosedSet Z(amb.poset, parse_set(a.set, *amb.poset));
            emit_complex(proper_pullback(Z, by_name(L.complex, amb.poset)), opt);
        } else {
            if (a.target.empty()) throw InputError("--target is required");
            Space amb = load_space(a.target, opt);
            LocallyClosedSet Z(amb.poset, parse_set(a.set, *amb.poset));
            Loaded L = load_complex(a.complex, opt);
            emit_complex(proper_pushforward(Z, by_name(L.complex, Z.poset())), opt);
        }
        return 0;
    }
    throw InputError("unknown functor '" + a.kind + "' (push, pull, shriek-push, shriek-pull)");
}

std::string fiber_names(const MorseFunction& mf, int x) {
    std::string s;
    for (int e : mf.map().fiber(x)) s += (s.empty() ? "" : ",") + mf.domain()->name(e);
    return "{" + s + "}";
}

int cmd_morse(const std::string& complex, const std::string& space, const std::string& morse, bool verify, int jobs,
              const Common& opt) {
    Loaded L = load_complex(complex, opt);
    PosetPtr Lambda = L.space.poset;
    if (!space.empty()) Lambda = load_space(space, opt).poset;
    InjectiveComplex C = by_name(L.complex, Lambda);
    MorseFunction mf = morse_from_json(parse_json(read_input(morse), morse), Lambda);
    const Poset& Pi = *mf.levels();
    int maxdeg = 0;

    struct Spec {
        Direction dir;
        Variant var;
    };
    const Spec specs[] = {{Direction::Sublevel, Variant::Shriek},
                          {Direction::Sublevel, Variant::Star},
                          {Direction::Superlevel, Variant::Star},
                          {Direction::Superlevel, Variant::Shriek}};
    std::vector<BettiTable> tables;
    for (const auto& s : specs) tables.push_back(betti_table(mf, C, s.dir, s.var, jobs));
    for (const auto& T : tables)
        for (const auto& r : T.rows)
            for (auto [d, n] : r) maxdeg = std::max(maxdeg, d);
    std::vector<std::map<int, int>> hstar, hshriek;
    for (int x : mf.order()) {
        LocallyClosedSet Z = mf.fiber(x);
        hstar.push_back(Z.members().empty() ? std::map<int, int>{} : microsupport_star_cohomology(Z, C));
        hshriek.push_back(Z.members().empty() ? std::map<int, int>{} : microsupport_shriek_cohomology(Z, C));
    }

    if (opt.format == "csv") {
        std::cout << "table,direction,variant,level";
        for (int d = 0; d <= maxdeg; ++d) std::cout << ",H" << d;
        std::cout << "\n";
        for (const auto& T : tables)
            for (std::size_t k = 0; k < T.levels.size(); ++k) {
                std::cout << "betti," << to_string(T.direction) << "," << to_string(T.variant) << ","
                          << Pi.name(T.levels[k]);
                for (int d = 0; d <= maxdeg; ++d) {
                    auto it = T.rows[k].find(d);
                    std::cout << "," << (it == T.rows[k].end() ? 0 : it->second);
                }
                std::cout << "\n";
            }
        for (std::size_t k = 0; k < mf.order().size(); ++k)
            for (int v = 0; v < 2; ++v) {
                const auto& h = v == 0 ? hstar[k] : hshriek[k];
                std::cout << "fiber,," << (v == 0 ? "*" : "!") << "," << Pi.name(mf.order()[k]);
                for (int d = 0; d <= maxdeg; ++d) {
                    auto it = h.find(d);
                    std::cout << "," << (it == h.end() ? 0 : it->second);
                }
                std::cout << "\n";
            }
    } else {
        std::cout << "critical elements\n";
        std::size_t w = 5;
        for (int x : mf.order()) w = std::max(w, Pi.name(x).size());
        std::cout << fmt::format("{:<{}}  {:<3} {:<3} {:<16} {:<16} {}\n", "level", w, "*", "!", "H(*-term)",
                                 "H(!-term)", "fiber");
        for (std::size_t k = 0; k < mf.order().size(); ++k) {
            int x = mf.order()[k];
            std::cout << fmt::format("{:<{}}  {:<3} {:<3} {:<16} {:<16} {}\n", Pi.name(x), w,
                                     is_acyclic(hstar[k]) ? "-" : "x", is_acyclic(hshriek[k]) ? "-" : "x",
                                     render_cohomology(hstar[k]), render_cohomology(hshriek[k]), fiber_names(mf, x));
        }
        for (const auto& T : tables) {
            std::cout << fmt::format("\n{} {} betti table\n{:<{}}", to_string(T.direction), to_string(T.variant),
                                     "level", w);
            for (int d = 0; d <= maxdeg; ++d) std::cout << fmt::format(" {:>3}", fmt::format("H{}", d));
            std::cout << "\n";
            for (std::size_t k = 0; k < T.levels.size(); ++k) {
                std::cout << fmt::format("{:<{}}", Pi.name(T.levels[k]), w);
                for (int d = 0; d <= maxdeg; ++d) {
                    auto it = T.rows[k].find(d);
                    std::cout << fmt::format(" {:>3}", it == T.rows[k].end() ? 0 : it->second);
                }
                std::cout << "\n";
            }
        }
    }
    if (!verify) return 0;
    bool ok = true;
    Report rep = verify_morse_theorem(mf, C, jobs);
    std::cerr << "morse theorem: " << (rep ? "ok" : rep.message) << "\n";
    ok = ok && rep.ok;
    for (Variant v : {Variant::Star, Variant::Shriek}) {
        InequalityReport ir = morse_inequalities(mf, C, v);
        std::cerr << "morse inequalities (" << to_string(v) << "): "
                  << (ir.ok ? fmt::format("ok, euler {} = {}", ir.euler_lhs, ir.euler_rhs) : ir.message) << "\n";
        ok = ok && ir.ok;
    }
    return ok ? 0 : kExitVerify;
}

int cmd_check(unsigned long long seed, int trials, const Common& opt) {
    Rng rng(seed);
    Field F(opt.field);
    int failures = 0;
    for (int t = 0; t < trials; ++t) {
        PosetPtr P = random_poset(rng, std::uniform_int_distribution<int>(1, 7)(rng));
        Sheaf S = random_sheaf(rng, P, F);
        InjectiveComplex a = minimal_resolution_sheaf(S);
        InjectiveComplex b = peel(order_complex_resolution(S));
        if (multiplicities(a) != multiplicities(b)) {
            ++failures;
            std::cerr << "trial " << t << ": resolutions disagree\n";
        }
        PosetPtr Q = random_poset(rng, std::uniform_int_distribution<int>(1, 8)(rng));
        MonotoneMap f = random_monotone_map(rng, Q, P);
        if (!pullback_via_proper_check(f, a)) {
            ++failures;
            std::cerr << "trial " << t << ": pullback identity fails\n";
        }
    }
    std::cout << fmt::format("{} trials, {} failures\n", trials, failures);
    return failures ? kExitVerify : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Injective resolutions and derived functors of sheaves on finite posets"};
    app.require_subcommand(1);
    Common opt;
    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--field", opt.field, "prime modulus")->each([&opt](const std::string&) { opt.field_given = true; });
        sub->add_option("--max-elements", opt.max_elements, "refuse posets larger than this");
        sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    };

    std::string input, method = "inductive", star, poset_path;
    auto* resolve = app.add_subcommand("resolve", "minimal injective resolution of a sheaf");
    resolve->add_option("input", input, "facet file, poset JSON, sheaf JSON, or '-'")->required();
    resolve->add_option("--method", method)->check(CLI::IsMember({"inductive", "order-complex"}));
    resolve->add_option("--star", star, "resolve the constant sheaf on the star of this vertex");
    resolve->add_option("--poset", poset_path, "poset for a sheaf document without one");
    add_common(resolve);

    FunctorArgs fa;
    auto* functor = app.add_subcommand("functor", "apply a derived functor");
    functor->add_option("kind", fa.kind, "push, pull, shriek-push or shriek-pull")->required();
    functor->add_option("--complex", fa.complex, "complex, sheaf, or space (constant sheaf)")->required();
    functor->add_option("--map", fa.map, "map JSON");
    functor->add_option("--source", fa.source, "source space");
    functor->add_option("--target", fa.target, "target or ambient space");
    functor->add_option("--set", fa.set, "comma separated elements of a locally closed set");
    add_common(functor);

    std::string mcomplex, mspace, mmorse;
    bool verify = false;
    int jobs = 1;
    auto* morse = app.add_subcommand("morse", "critical elements and Betti tables of a Morse function");
    morse->add_option("--complex", mcomplex, "complex, sheaf, or space")->required();
    morse->add_option("--space", mspace, "space the complex lives on, if different");
    morse->add_option("--morse", mmorse, "Morse function JSON")->required();
    morse->add_flag("--verify", verify, "check the Morse theorem and inequalities");
    morse->add_option("--jobs", jobs, "worker threads for Betti levels")->check(CLI::PositiveNumber);
    add_common(morse);

    unsigned long long seed = 1;
    int trials = 20;
    auto* check = app.add_subcommand("check", "randomized consistency checks");
    check->add_option("--seed", seed);
    check->add_option("--trials", trials);
    add_common(check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*resolve) return cmd_resolve(input, method, star, poset_path, opt);
        if (*functor) return cmd_functor(fa, opt);
        if (*morse) return cmd_morse(mcomplex, mspace, mmorse, verify, jobs, opt);
        if (*check) return cmd_check(seed, trials, opt);
    } catch (const SizeCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSizeCap;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const LegalityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return 0;
}
