#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "psheaf/labeled_matrix.hpp"
#include "psheaf/poset.hpp"

namespace psheaf {

// Matrix of the differential leaving degree d, including the empty matrices
// just outside the stored range (rows I^{d+1}, columns I^d).
LabeledMatrix differential(const InjectiveComplex& C, int d);

// Splits off 0 -> [pi] -> [pi] -> 0 summands until the complex is minimal.
InjectiveComplex peel(InjectiveComplex C);

// Moves a complex to another poset through an order-preserving relabeling.
InjectiveComplex relabel(const InjectiveComplex& C, const PosetPtr& Q, const std::vector<int>& map);

InjectiveComplex pushforward(const MonotoneMap& f, const InjectiveComplex& C);

// The cone complex built on the mapping cylinder; pullback() returns its
// restriction to the source copy. Exposed for testing.
struct PullbackCone {
    MappingCylinder cylinder;
    InjectiveComplex gamma;
};
PullbackCone pullback_cone(const MonotoneMap& f, const InjectiveComplex& C);
InjectiveComplex pullback(const MonotoneMap& f, const InjectiveComplex& C);

// C lives on Z.poset(); the result lives on Z.ambient().
InjectiveComplex proper_pushforward(const LocallyClosedSet& Z, const InjectiveComplex& C);
// C lives on Z.ambient(); the result lives on Z.poset().
InjectiveComplex proper_pullback(const LocallyClosedSet& Z, const InjectiveComplex& C);
// Pullback along the inclusion of Z, as a complex on Z.poset().
InjectiveComplex restrict_to(const LocallyClosedSet& Z, const InjectiveComplex& C);

// degree -> dim H^d; degrees with zero dimension are omitted.
std::map<int, int> hypercohomology(const InjectiveComplex& C);
bool is_acyclic(const std::map<int, int>& h);
long long euler_characteristic(const InjectiveComplex& C);
long long euler_characteristic(const std::map<int, int>& h);

// alpha[d]: labeled matrix from F^d (columns) to G^d (rows).
struct ComplexMorphism {
    std::map<int, LabeledMatrix> alpha;
    LabeledMatrix at(const InjectiveComplex& F, const InjectiveComplex& G, int d) const;
};
ComplexMorphism identity_morphism(const InjectiveComplex& C);
Report validate_morphism(const InjectiveComplex& F, const InjectiveComplex& G, const ComplexMorphism& a);
// Cone with C^d = F^{d+1} + G^d and differential [[-eta^{d+1}, 0], [alpha^{d+1}, delta^d]].
InjectiveComplex mapping_cone(const InjectiveComplex& F, const InjectiveComplex& G, const ComplexMorphism& a);

struct HomDims {
    int morphisms = 0;
    int null_homotopic = 0;
    int derived = 0;
};
// Throws SizeCapError if the number of unknowns exceeds max_unknowns.
HomDims hom_space_dims(const InjectiveComplex& I, const InjectiveComplex& J, std::size_t max_unknowns = 3000);

// Transposes every matrix and reverses degrees; the result lives on `op`,
// which must be the opposite of C's poset (computed if null).
InjectiveComplex dualize(const InjectiveComplex& C, PosetPtr op = nullptr);

struct PullbackViaProper {
    InjectiveComplex direct;   // pullback(f, C)
    InjectiveComplex via;      // Rp^! Rl_! C on the source copy, shifted down one degree
    bool equal = false;
};
PullbackViaProper pullback_via_proper(const MonotoneMap& f, const InjectiveComplex& C);
bool pullback_via_proper_check(const MonotoneMap& f, const InjectiveComplex& C);

// Equality of multiplicity tables and stalkwise cohomology dimensions.
bool same_derived_data(const InjectiveComplex& A, const InjectiveComplex& B);
// Shift: result degree d is C's degree d + k.
InjectiveComplex shift(InjectiveComplex C, int k);

}  // namespace psheaf
