#pragma once

#include <map>
#include <string>
#include <vector>

#include "psheaf/derived.hpp"
#include "psheaf/labeled_matrix.hpp"
#include "psheaf/poset.hpp"

namespace psheaf {

ElementSet supp_shriek(const InjectiveComplex& C);  // throws InputError if C is not minimal
ElementSet supp_star(const InjectiveComplex& C);

// Hypercohomology of Ri_Z! Ri_Z^* C and of Ri_Z^! C.
std::map<int, int> microsupport_star_cohomology(const LocallyClosedSet& Z, const InjectiveComplex& C);
std::map<int, int> microsupport_shriek_cohomology(const LocallyClosedSet& Z, const InjectiveComplex& C);
bool in_microsupport_star(const LocallyClosedSet& Z, const InjectiveComplex& C);
bool in_microsupport_shriek(const LocallyClosedSet& Z, const InjectiveComplex& C);

enum class Variant { Star, Shriek };
enum class Direction { Sublevel, Superlevel };
const char* to_string(Variant v);
const char* to_string(Direction d);

// f : Lambda -> Pi together with a total order on Pi refining its order.
class MorseFunction {
public:
    MorseFunction(MonotoneMap f, std::vector<int> total_order);
    // Pi is the set of level names ordered by the relations f forces; the
    // order list must contain every level once and refine that order.
    static MorseFunction from_levels(const PosetPtr& Lambda, const std::map<std::string, std::string>& levels,
                                     const std::vector<std::string>& order);

    const MonotoneMap& map() const { return f_; }
    const PosetPtr& domain() const { return f_.source(); }
    const PosetPtr& levels() const { return f_.target(); }
    const std::vector<int>& order() const { return order_; }
    int position(int level) const { return pos_[level]; }
    LocallyClosedSet fiber(int level) const;
    // Preimage of the levels at positions <= k (sublevel) or >= k (superlevel).
    ElementSet sublevel(int k) const;
    ElementSet superlevel(int k) const;

private:
    MonotoneMap f_;
    std::vector<int> order_, pos_;
};

// Levels whose fiber lies in the chosen microsupport.
ElementSet critical_elements(const MorseFunction& mf, const InjectiveComplex& C, Variant v);

struct BettiTable {
    Direction direction;
    Variant variant;
    std::vector<int> levels;               // in total order
    std::vector<std::map<int, int>> rows;  // rows[k]: hypercohomology for level levels[k]
};
// jobs > 1 evaluates levels on worker threads; the result does not depend on it.
BettiTable betti_table(const MorseFunction& mf, const InjectiveComplex& C, Direction dir, Variant v, int jobs = 1);

// Families checked: sublevel/shriek and superlevel/star against !-critical
// levels, sublevel/star against *-critical levels, superlevel/shriek against
// !-critical levels.
Report verify_morse_theorem(const MorseFunction& mf, const InjectiveComplex& C, int jobs = 1);

struct InequalityRow {
    int ell;
    long long lhs;  // (-1)^ell sum_{j<=ell} (-1)^j dim H^j(C)
    long long rhs;  // the same sum over critical fiber terms
};
struct InequalityReport {
    bool ok = true;
    std::vector<InequalityRow> rows;
    long long euler_lhs = 0, euler_rhs = 0;
    std::string message;
};
InequalityReport morse_inequalities(const MorseFunction& mf, const InjectiveComplex& C, Variant v);

// Cohomology of the cochains supported on the open set U (nonzero degrees only).
std::map<int, int> compact_support_cohomology(const SimplicialComplex& S, const ElementSet& U,
                                              const Field& F = Field());

}  // namespace psheaf
