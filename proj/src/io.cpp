#include "psheaf/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "psheaf/error.hpp"

namespace psheaf {

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> parse_facets(const std::string& text, const std::string& source) {
    std::vector<std::vector<std::string>> facets;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> f;
        std::set<std::string> seen;
        for (std::string v; ls >> v;) {
            if (!seen.insert(v).second)
                throw InputError(fmt::format("{}:{}: vertex '{}' repeated in a facet", source, lineno, v));
            f.push_back(v);
        }
        if (!f.empty()) facets.push_back(std::move(f));
    }
    if (facets.empty()) throw InputError(source + ": no facets");
    return facets;
}

Json parse_json(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t pos = std::min<std::size_t>(e.byte, text.size());
        int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
        std::string what = e.what();
        if (auto k = what.find("parse error"); k != std::string::npos) what = what.substr(k);
        throw InputError(fmt::format("{}:{}: {}", source, line, what));
    }
}

namespace {

bool looks_like_json(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '{';
    }
    return false;
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw InputError(where + ": missing key '" + key + "'");
    return j.at(key);
}

std::string label_of(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw InputError("labels must be strings");
}

}  // namespace

PosetPtr poset_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("poset: expected an object");
    std::vector<std::string> names;
    for (const auto& e : member(j, "elements", "poset")) names.push_back(label_of(e));
    std::vector<std::pair<std::string, std::string>> rel;
    if (j.contains("covers"))
        for (const auto& c : j.at("covers")) {
            if (!c.is_array() || c.size() != 2) throw InputError("poset: each cover must be a pair");
            rel.emplace_back(label_of(c[0]), label_of(c[1]));
        }
    return std::make_shared<Poset>(Poset::from_named(std::move(names), rel));
}

Json poset_to_json(const Poset& P) {
    Json j;
    j["elements"] = P.names();
    Json covers = Json::array();
    for (auto [a, b] : P.covers()) covers.push_back({P.name(a), P.name(b)});
    j["covers"] = covers;
    return j;
}

Space space_from_text(const std::string& text, const std::string& source) {
    Space s;
    if (looks_like_json(text)) {
        Json j = parse_json(text, source);
        s.poset = poset_from_json(j.contains("poset") ? j.at("poset") : j);
    } else {
        s.complex = SimplicialComplex::from_facets(parse_facets(text, source));
        s.poset = s.complex->face_poset();
    }
    return s;
}

Json matrix_to_json(const LabeledMatrix& M) {
    const Poset& P = *M.poset();
    const Field& F = M.field();
    Json j;
    Json cols = Json::array();
    for (int l : M.col_labels()) cols.push_back(P.name(l));
    Json rows = Json::array();
    for (int i = 0; i < M.rows(); ++i) {
        Json entries = Json::object();
        for (const auto& e : M.row(i)) entries[std::to_string(e.col)] = F.to_signed(e.val);
        rows.push_back({{"label", P.name(M.row_labels()[i])}, {"entries", entries}});
    }
    j["rows"] = rows;
    j["cols"] = cols;
    return j;
}

LabeledMatrix matrix_from_json(const Json& j, const PosetPtr& P, const Field& F) {
    std::vector<int> cols;
    for (const auto& c : member(j, "cols", "matrix")) cols.push_back(P->index(label_of(c)));
    LabeledMatrix M(P, F, cols);
    for (const auto& r : member(j, "rows", "matrix")) {
        int label = P->index(label_of(member(r, "label", "matrix row")));
        SparseRow row;
        if (r.contains("entries"))
            for (const auto& [k, v] : r.at("entries").items()) {
                int col;
                try {
                    col = std::stoi(k);
                } catch (const std::exception&) {
                    throw InputError("matrix row: column index '" + k + "' is not an integer");
                }
                if (col < 0 || col >= M.cols()) throw InputError("matrix row: column index out of range");
                Scalar x = F.from_int(v.get<long long>());
                if (x) row.push_back({col, x});
            }
        try {
            M.add_row(label, std::move(row));
        } catch (const LegalityError& e) {
            throw InputError(std::string("matrix: ") + e.what());
        }
    }
    return M;
}

Json complex_to_json(const InjectiveComplex& C) {
    Json j;
    j["field"] = C.field.p();
    j["degree_offset"] = C.lo;
    j["poset"] = C.poset ? poset_to_json(*C.poset) : Json{{"elements", Json::array()}, {"covers", Json::array()}};
    Json ms = Json::array();
    for (const auto& M : C.eta) ms.push_back(matrix_to_json(M));
    j["matrices"] = ms;
    return j;
}

InjectiveComplex complex_from_json(const Json& j) {
    Field F(j.contains("field") ? j.at("field").get<Scalar>() : 2);
    PosetPtr P = poset_from_json(member(j, "poset", "complex"));
    InjectiveComplex C(P, F, j.contains("degree_offset") ? j.at("degree_offset").get<int>() : 0);
    for (const auto& m : member(j, "matrices", "complex")) C.eta.push_back(matrix_from_json(m, P, F));
    if (auto rep = validate_complex(C); !rep) throw InputError("complex: " + rep.message);
    return C;
}

Json sheaf_to_json(const Sheaf& S) {
    const Poset& P = *S.poset();
    const Field& F = S.field();
    Json j;
    j["field"] = F.p();
    j["poset"] = poset_to_json(P);
    Json stalks = Json::object();
    for (int p = 0; p < P.size(); ++p) stalks[P.name(p)] = S.dim(p);
    j["stalks"] = stalks;
    Json maps = Json::object();
    for (auto [a, b] : P.covers()) {
        const DenseMat& M = S.cover_map(a, b);
        Json m = Json::array();
        for (int r = 0; r < M.rows; ++r) {
            Json row = Json::array();
            for (int c = 0; c < M.cols; ++c) row.push_back(F.to_signed(M(r, c)));
            m.push_back(row);
        }
        maps[P.name(a) + "<" + P.name(b)] = m;
    }
    j["maps"] = maps;
    return j;
}

Sheaf sheaf_from_json(const Json& j, PosetPtr P, std::optional<Field> F) {
    if (!F) F = Field(j.contains("field") ? j.at("field").get<Scalar>() : 2);
    if (!P) P = poset_from_json(member(j, "poset", "sheaf"));
    std::vector<int> dims(P->size(), 0);
    for (const auto& [k, v] : member(j, "stalks", "sheaf").items()) dims[P->index(k)] = v.get<int>();
    Sheaf S(P, *F, dims);
    if (j.contains("maps"))
        for (const auto& [k, v] : j.at("maps").items()) {
            auto lt = k.find('<');
            if (lt == std::string::npos) throw InputError("sheaf map key '" + k + "' must look like a<b");
            int a = P->index(k.substr(0, lt)), b = P->index(k.substr(lt + 1));
            DenseMat M(static_cast<int>(v.size()), dims[a]);
            for (int r = 0; r < M.rows; ++r) {
                if (static_cast<int>(v[r].size()) != dims[a])
                    throw InputError("sheaf map '" + k + "' has a row of the wrong length");
                for (int c = 0; c < M.cols; ++c) M(r, c) = F->from_int(v[r][c].get<long long>());
            }
            S.set_cover_map(a, b, std::move(M));
        }
    return S;
}

std::map<std::string, std::string> assignment_from_json(const Json& j) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : member(j, "assignment", "map").items()) out[k] = label_of(v);
    return out;
}

MorseFunction morse_from_json(const Json& j, const PosetPtr& Lambda) {
    std::map<std::string, std::string> levels;
    for (const auto& [k, v] : member(j, "levels", "morse function").items()) levels[k] = label_of(v);
    std::vector<std::string> order;
    for (const auto& o : member(j, "order", "morse function")) order.push_back(label_of(o));
    return MorseFunction::from_levels(Lambda, levels, order);
}

Json multiplicities_to_json(const Poset& P, const MultiplicityTable& m) {
    Json j = Json::object();
    for (const auto& [d, row] : m) {
        Json r = Json::object();
        for (int e : P.linear_extension())
            if (auto it = row.find(e); it != row.end() && it->second) r[P.name(e)] = it->second;
        j[std::to_string(d)] = r;
    }
    return j;
}

Json hypercohomology_to_json(const std::map<int, int>& h) {
    Json j = Json::object();
    for (auto [d, n] : h) j[std::to_string(d)] = n;
    return j;
}

}  // namespace psheaf
