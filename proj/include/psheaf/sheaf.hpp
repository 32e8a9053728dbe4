#pragma once

#include <map>
#include <utility>
#include <vector>

#include "psheaf/field.hpp"
#include "psheaf/labeled_matrix.hpp"
#include "psheaf/poset.hpp"

namespace psheaf {

// Sheaf of finite-dimensional vector spaces on a finite poset. Restrictions are
// stored on cover relations only; F(sigma <= tau) for a longer relation is the
// composite along a canonical cover path.
class Sheaf {
public:
    Sheaf() = default;
    Sheaf(PosetPtr P, Field F, std::vector<int> dims);

    const PosetPtr& poset() const { return P_; }
    const Field& field() const { return F_; }
    int dim(int pi) const { return dims_[pi]; }
    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;

    // Restriction along a cover sigma <_1 tau, shape dim(tau) x dim(sigma).
    void set_cover_map(int sigma, int tau, DenseMat M);
    const DenseMat& cover_map(int sigma, int tau) const;
    // F(sigma <= tau); identity when sigma == tau.
    DenseMat map(int sigma, int tau) const;

private:
    PosetPtr P_;
    Field F_;
    std::vector<int> dims_;
    std::map<std::pair<int, int>, DenseMat> covers_;
};

Sheaf constant_sheaf(const PosetPtr& P, const Field& F = Field());

// Direct sum of indecomposable injectives [labels[0]] + [labels[1]] + ...,
// written as a generic sheaf. The basis of the stalk at tau is the list of
// indices i with tau <= labels[i], in order.
Sheaf injective_as_sheaf(const PosetPtr& P, const Field& F, const std::vector<int>& labels);

Report validate_sheaf(const Sheaf& S);

// Components eta(pi) of shape dim G(pi) x dim F(pi).
struct NaturalTransformation {
    std::vector<DenseMat> components;
};
Report validate_natural(const Sheaf& S, const Sheaf& T, const NaturalTransformation& eta);

// Rows span the maximal vectors M_F(pi) inside F(pi).
DenseMat maximal_vectors(const Sheaf& S, int pi);

struct InjectiveHull {
    // Column labels of I^0: each pi repeated dim M_F(pi) times, pi in reverse
    // linear-extension order.
    std::vector<int> labels;
    // alpha[sigma]: (#generators labeled in St sigma) x dim F(sigma), rows in
    // the order of `labels`.
    std::vector<DenseMat> alpha;
    // Generator indices belonging to alpha[sigma]'s rows.
    std::vector<std::vector<int>> rows_of;
};
InjectiveHull injective_hull(const Sheaf& S);  // throws InputError on an invalid sheaf

// alpha as a natural transformation S -> injective_as_sheaf(labels).
NaturalTransformation hull_transformation(const Sheaf& S, const InjectiveHull& H);

using Decomposition = std::vector<std::pair<int, int>>;  // (label, multiplicity)
long long hom_dim_injective(const Poset& P, const Decomposition& I, const Decomposition& J);

// Dimension of the space of natural transformations S -> T, by solving the
// naturality system directly.
int hom_dim_brute(const Sheaf& S, const Sheaf& T);

}  // namespace psheaf
