#pragma once

#include <functional>
#include <vector>

#include "psheaf/labeled_matrix.hpp"
#include "psheaf/sheaf.hpp"

namespace psheaf {

// Dense image of the previous map at pi. Rows correspond, in order, to the
// columns of the matrix being built whose labels lie in St pi.
using StalkImage = std::function<DenseMat(int pi)>;

// Adds pi-labeled rows to `cur` until the stalk sequence at pi is exact at
// the middle term. `prev_at_pi` is the previous map at pi as described above.
// Returns the number of rows added.
int make_exact_inplace(LabeledMatrix& cur, const DenseMat& prev_at_pi, int pi);

// Copying form with precondition checks (labels match, cur * prev = 0).
LabeledMatrix make_exact(const LabeledMatrix& prev, const LabeledMatrix& cur, int pi);

// Builds the next differential out of I^d = columns `cols`, running
// make_exact over `order` (default: reverse linear extension).
LabeledMatrix resolution_step(const PosetPtr& P, const Field& F, const std::vector<int>& cols,
                              const StalkImage& prev, const std::vector<int>* order = nullptr);
LabeledMatrix resolution_step(const LabeledMatrix& prev);

// Runs resolution_step from eta0 until a matrix without rows appears.
InjectiveComplex continue_resolution(LabeledMatrix eta0, int lo = 0);

InjectiveComplex minimal_resolution_constant(const PosetPtr& P, const Field& F = Field());
InjectiveComplex minimal_resolution_sheaf(const Sheaf& S);
InjectiveComplex order_complex_resolution(const Sheaf& S);

bool is_minimal(const InjectiveComplex& C);
MultiplicityTable multiplicities(const InjectiveComplex& C);
// Nonzero entries of (d, pi) -> dim H^d(C)(pi) only.
MultiplicityTable cohomology_sheaf_dims(const InjectiveComplex& C);
// Number of nonzero terms I^d.
int nonzero_terms(const InjectiveComplex& C);

// Sum of m^j over St sigma, and that sum divided by #St sigma.
int star_multiplicity(const Poset& P, const MultiplicityTable& m, int sigma, int j);
double star_complexity(const Poset& P, const MultiplicityTable& m, int sigma, int j);

}  // namespace psheaf
