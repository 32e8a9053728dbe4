#pragma once

#include <string>

#include "psheaf/derived.hpp"
#include "psheaf/io.hpp"
#include "psheaf/morse.hpp"
#include "psheaf/resolution.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(PSHEAF_DATA_DIR) + "/" + name; }

inline psheaf::SimplicialComplex load_complex(const std::string& name) {
    std::string path = data_path(name);
    return psheaf::SimplicialComplex::from_facets(psheaf::parse_facets(psheaf::read_input(path), path));
}

inline psheaf::MonotoneMap load_map(const std::string& name, const psheaf::SimplicialComplex& src,
                                    const psheaf::SimplicialComplex& tgt) {
    std::string path = data_path(name);
    return psheaf::simplicial_map(src, tgt, psheaf::assignment_from_json(psheaf::parse_json(psheaf::read_input(path), path)));
}

// Counts of generators per element name in degree d.
inline std::map<std::string, int> profile(const psheaf::InjectiveComplex& C, int d) {
    std::map<std::string, int> out;
    if (!C.has(d)) return out;
    for (int l : C.term(d)) ++out[C.poset->name(l)];
    return out;
}

// The sphere, the sphere with a circle attached, the disk and the three maps
// onto the sphere, together with the pushed-forward constant sheaves.
struct Section7 {
    psheaf::SimplicialComplex sigma = load_complex("sigma.txt");
    psheaf::SimplicialComplex lambda = load_complex("lambda.txt");
    psheaf::SimplicialComplex gamma = load_complex("gamma.txt");
    psheaf::MonotoneMap g = load_map("g.json", sigma, lambda);
    psheaf::MonotoneMap h = load_map("h.json", sigma, lambda);
    psheaf::MonotoneMap l = load_map("l.json", gamma, lambda);
    psheaf::InjectiveComplex k_sigma = psheaf::minimal_resolution_constant(sigma.face_poset());
    psheaf::InjectiveComplex k_gamma = psheaf::minimal_resolution_constant(gamma.face_poset());
    psheaf::InjectiveComplex Rg = psheaf::pushforward(g, k_sigma);
    psheaf::InjectiveComplex Rh = psheaf::pushforward(h, k_sigma);
    psheaf::InjectiveComplex Rl = psheaf::pushforward(l, k_gamma);

    psheaf::LocallyClosedSet B() const {
        const auto& P = *lambda.face_poset();
        return psheaf::LocallyClosedSet(lambda.face_poset(), psheaf::to_set(P, {"4", "24"}));
    }
    psheaf::MorseFunction morse() const {
        std::string path = data_path("morse_f.json");
        return psheaf::morse_from_json(psheaf::parse_json(psheaf::read_input(path), path), lambda.face_poset());
    }
};

}  // namespace fixtures
