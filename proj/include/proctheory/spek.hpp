#pragma once

#include <map>
#include <optional>

#include "proctheory/matrix.hpp"

namespace pt {

// Closure-generated subcategories of finite relations on powers of a
// four-element generator object. Relations are deduplicated by their
// canonical sorted-pair form, so the generated sets are independent of
// insertion order.
struct ClosureOps {
  bool compose = true;
  bool tensor = true;
  bool dagger = true;
  bool swaps = true;
  bool identities = true;
};

struct ClosureSpec {
  std::vector<Mat> generators;  // Boolean matrices; dims are powers of 4
  ClosureOps ops;
  int object_bound = 2;             // largest n with IV^n kept
  size_t morphism_budget = 100000;  // stop inserting past this many
  size_t op_budget = 80000000;      // pairwise-attempt cap per run
};

struct ClosureResult {
  // hom[(a, b)] = generated morphisms IV^a -> IV^b, canonical order.
  std::map<std::pair<int, int>, std::vector<Mat>> homs;
  bool saturated = false;  // fixpoint reached within the budgets
  size_t total = 0;

  const std::vector<Mat>& hom(int src_pow, int tgt_pow) const;
};

ClosureResult closure_generate(const ClosureSpec& spec);

// Generators of the toy theory: the distinguished 2-element state, the
// copy relation, and all permutations of the 4-element object.
ClosureSpec spek_spec(int object_bound = 2, size_t morphism_budget = 100000);
// Same plus the discarding relations (the mixed-state extension).
ClosureSpec mspek_spec(int object_bound = 2, size_t morphism_budget = 100000);

// Cardinality |rho| of a relational state (number of related elements).
int state_cardinality(const Mat& state);

// Scans the generated effects for one annihilating the given state
// (e o state = 0); returns it, or nullopt when none exists. The zero state
// is vacuously excluded by any effect; the first generated one is returned.
std::optional<Mat> spek_pure_exclusion_witness(const ClosureResult& closure,
                                               const Mat& state);

int power_of_dim(int dim);  // 1 -> 0, 4 -> 1, 16 -> 2, 64 -> 3

}  // namespace pt
