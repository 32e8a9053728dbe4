#pragma once

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psheaf/labeled_matrix.hpp"
#include "psheaf/morse.hpp"
#include "psheaf/poset.hpp"
#include "psheaf/sheaf.hpp"

namespace psheaf {

using Json = nlohmann::ordered_json;

// Reads a whole file, or standard input for "-".
std::string read_input(const std::string& path);

// Facet list: one facet per line, whitespace separated vertex ids, '#' comments.
std::vector<std::vector<std::string>> parse_facets(const std::string& text, const std::string& source = "<input>");

// JSON parse with the error position reported as a line number.
Json parse_json(const std::string& text, const std::string& source = "<input>");

// A poset read from a facet file or a poset JSON document.
struct Space {
    PosetPtr poset;
    std::optional<SimplicialComplex> complex;
};
Space space_from_text(const std::string& text, const std::string& source = "<input>");

Json poset_to_json(const Poset& P);
PosetPtr poset_from_json(const Json& j);

Json matrix_to_json(const LabeledMatrix& M);
LabeledMatrix matrix_from_json(const Json& j, const PosetPtr& P, const Field& F);

Json complex_to_json(const InjectiveComplex& C);
InjectiveComplex complex_from_json(const Json& j);

Json sheaf_to_json(const Sheaf& S);
// Uses the document's "poset" entry when P is null.
Sheaf sheaf_from_json(const Json& j, PosetPtr P = nullptr, std::optional<Field> F = std::nullopt);

// {"assignment": {"src": "tgt", ...}}
std::map<std::string, std::string> assignment_from_json(const Json& j);
MorseFunction morse_from_json(const Json& j, const PosetPtr& Lambda);

Json multiplicities_to_json(const Poset& P, const MultiplicityTable& m);
Json hypercohomology_to_json(const std::map<int, int>& h);

}  // namespace psheaf
