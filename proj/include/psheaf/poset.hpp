#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace psheaf {

using Bitset = boost::dynamic_bitset<>;
// Sorted, duplicate-free list of element indices.
using ElementSet = std::vector<int>;

class Poset {
public:
    Poset() = default;

    // `relations` are strict pairs (a, b) meaning a < b. They need not be covers;
    // the transitive closure is taken and cycles are rejected.
    Poset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& relations);
    static Poset from_named(std::vector<std::string> names,
                            const std::vector<std::pair<std::string, std::string>>& relations);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    int index(const std::string& name) const;  // throws InputError
    std::optional<int> find(const std::string& name) const;

    bool leq(int a, int b) const { return up_[a].test(b); }
    bool lt(int a, int b) const { return a != b && up_[a].test(b); }
    const Bitset& up_set(int a) const { return up_[a]; }
    const Bitset& down_set(int a) const { return down_[a]; }
    const std::vector<int>& upper_covers(int a) const { return upper_[a]; }
    const std::vector<int>& lower_covers(int a) const { return lower_[a]; }
    std::vector<std::pair<int, int>> covers() const;

    // Ordered by (longest chain strictly below, then index).
    const std::vector<int>& linear_extension() const { return linext_; }
    int position(int a) const { return pos_[a]; }
    int rank(int a) const { return rank_[a]; }
    int height() const { return height_; }
    ElementSet maximal_elements() const;

    Poset opposite() const;
    // Induced subposet; element i of the result is elems[i].
    Poset induced(const ElementSet& elems) const;

    bool operator==(const Poset& o) const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<Bitset> up_, down_;
    std::vector<std::vector<int>> upper_, lower_;
    std::vector<int> rank_, linext_, pos_;
    int height_ = 0;
};

using PosetPtr = std::shared_ptr<const Poset>;

ElementSet star(const Poset& P, int a);
ElementSet closure(const Poset& P, const ElementSet& S);
ElementSet up_closure(const Poset& P, const ElementSet& S);
bool is_open(const Poset& P, const ElementSet& S);
bool is_closed(const Poset& P, const ElementSet& S);
bool is_locally_closed(const Poset& P, const ElementSet& S);
ElementSet complement(const Poset& P, const ElementSet& S);
ElementSet to_set(const Poset& P, const std::vector<std::string>& names);
ElementSet all_elements(const Poset& P);

class LocallyClosedSet {
public:
    LocallyClosedSet(PosetPtr ambient, ElementSet members);  // throws InputError if not convex
    const PosetPtr& ambient() const { return ambient_; }
    const ElementSet& members() const { return members_; }
    // The induced poset on the members; element i is members()[i].
    const PosetPtr& poset() const { return sub_; }

private:
    PosetPtr ambient_;
    ElementSet members_;
    PosetPtr sub_;
};

class MonotoneMap {
public:
    MonotoneMap(PosetPtr source, PosetPtr target, std::vector<int> assignment);  // checks order
    static MonotoneMap identity(const PosetPtr& P);
    static MonotoneMap to_point(const PosetPtr& P, std::string point_name = "pt");
    static MonotoneMap inclusion(const LocallyClosedSet& Z);
    static MonotoneMap from_named(PosetPtr source, PosetPtr target,
                                  const std::map<std::string, std::string>& assignment);

    const PosetPtr& source() const { return source_; }
    const PosetPtr& target() const { return target_; }
    int operator()(int a) const { return assign_[a]; }
    const std::vector<int>& assignment() const { return assign_; }
    // this followed by g
    MonotoneMap then(const MonotoneMap& g) const;
    ElementSet fiber(int b) const;

private:
    PosetPtr source_, target_;
    std::vector<int> assign_;
};

struct MappingCylinder {
    PosetPtr poset;
    std::vector<int> from_source;  // source element -> cylinder element
    std::vector<int> from_target;  // target element -> cylinder element
};

// Source elements come first, then target elements. Target names that collide
// with a source name get a trailing apostrophe.
MappingCylinder mapping_cylinder(const MonotoneMap& f);

class SimplicialComplex {
public:
    static SimplicialComplex from_facets(const std::vector<std::vector<std::string>>& facets);

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    const PosetPtr& face_poset() const { return poset_; }
    int dim(int face) const { return static_cast<int>(faces_[face].size()) - 1; }
    int dimension() const;
    std::optional<int> find_face(std::vector<int> vertex_ids) const;
    int vertex_index(const std::string& v) const;
    std::string face_name(const std::vector<int>& vertex_ids) const;

    // The star of vertex v as a poset, each face renamed to its vertex set with v
    // removed; v itself becomes "∅".
    PosetPtr star_poset(const std::string& v) const;

private:
    std::vector<std::string> vertices_;
    std::vector<std::vector<int>> faces_;
    std::map<std::vector<int>, int> face_index_;
    PosetPtr poset_;
    bool compact_names_ = true;
};

MonotoneMap simplicial_map(const SimplicialComplex& src, const SimplicialComplex& tgt,
                           const std::map<std::string, std::string>& vertex_map);

// Skeleton of the standard n-simplex on vertices 0..n, all faces of dimension <= d.
SimplicialComplex skeleton_of_simplex(int n, int d);

struct OrderComplex {
    std::vector<std::vector<int>> chains;  // strictly increasing chains of P, in face order
    SimplicialComplex complex;             // vertices named by the elements of P
    std::vector<int> chain_of_face;        // face index of `complex` -> index into chains
    MonotoneMap terminal;                  // face of `complex` -> last element of the chain
};

// All nonempty chains, ordered by length and then lexicographically by
// linear-extension position.
std::vector<std::vector<int>> enumerate_chains(const Poset& P);
OrderComplex order_complex(const PosetPtr& P);

// [sigma : gamma] for chains written in increasing order: (-1)^i when gamma
// with its i-th entry removed equals sigma, 0 otherwise.
int signed_incidence(const std::vector<int>& sigma, const std::vector<int>& gamma);

}  // namespace psheaf
