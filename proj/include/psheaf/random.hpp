#pragma once

#include <random>

#include "psheaf/labeled_matrix.hpp"
#include "psheaf/morse.hpp"
#include "psheaf/poset.hpp"
#include "psheaf/sheaf.hpp"

namespace psheaf {

using Rng = std::mt19937_64;

// n elements x0..x{n-1}; each pair i < j becomes a relation with probability p.
PosetPtr random_poset(Rng& rng, int n, double p = 0.35);

// Image of a random map from a sum of projectives to a sum of injectives,
// resampled until every stalk has dimension <= max_dim.
Sheaf random_sheaf(Rng& rng, const PosetPtr& P, const Field& F, int max_dim = 2);

MonotoneMap random_monotone_map(Rng& rng, const PosetPtr& source, const PosetPtr& target);

std::vector<int> random_linear_extension(Rng& rng, const Poset& P);

// Minimal complex on `target`: the pushforward of a random sheaf's resolution
// along a random map into `target`.
InjectiveComplex random_minimal_complex(Rng& rng, const PosetPtr& target, const Field& F, int max_source = 6);

// Labeled matrix with random labels and entries respecting the label order.
LabeledMatrix random_labeled_matrix(Rng& rng, const PosetPtr& P, const Field& F, int rows, int cols,
                                    double density = 0.5);
LabeledMatrix random_labeled_matrix(Rng& rng, const PosetPtr& P, const Field& F, const std::vector<int>& row_labels,
                                    const std::vector<int>& col_labels, double density = 0.5);

}  // namespace psheaf
