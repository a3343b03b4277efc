#include "proctheory/spek.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <unordered_set>

namespace pt {

int power_of_dim(int dim) {
  int p = 0, d = dim;
  while (d > 1) {
    if (d % 4 != 0) throw ShapeError("closure: dimension is not a power of 4");
    d /= 4;
    ++p;
  }
  return p;
}

namespace {

constexpr int kGen = 4;  // carrier size of the generator object

int dim_of_power(int p) {
  int d = 1;
  for (int i = 0; i < p; ++i) d *= kGen;
  return d;
}

// Compact relation: one output bitmask per input column. Carriers up to
// 4^3 = 64 fit a single word; inline storage keeps the closure loops free
// of allocation.
struct Rel64 {
  int src_pow = 0, tgt_pow = 0;
  std::array<uint64_t, 64> cols{};

  int src_dim() const { return dim_of_power(src_pow); }
  int tgt_dim() const { return dim_of_power(tgt_pow); }

  bool operator==(const Rel64& o) const {
    if (src_pow != o.src_pow || tgt_pow != o.tgt_pow) return false;
    for (int j = 0; j < src_dim(); ++j)
      if (cols[j] != o.cols[j]) return false;
    return true;
  }
};

struct Rel64Hash {
  size_t operator()(const Rel64& r) const {
    uint64_t h = 1469598103934665603ULL ^ (r.src_pow * 8 + r.tgt_pow);
    for (int j = 0; j < r.src_dim(); ++j) {
      h ^= r.cols[j];
      h *= 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

Rel64 to_rel64(const Mat& m) {
  Rel64 r;
  r.src_pow = power_of_dim(m.cols());
  r.tgt_pow = power_of_dim(m.rows());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (m.at(i, j).as_bool()) r.cols[j] |= (uint64_t{1} << i);
  return r;
}

Mat from_rel64(const Rel64& r) {
  Mat m(Backend::Bool, r.tgt_dim(), r.src_dim());
  for (int j = 0; j < r.src_dim(); ++j)
    for (int i = 0; i < r.tgt_dim(); ++i)
      if (r.cols[j] & (uint64_t{1} << i))
        m.at(i, j) = ScalarValue(Backend::Bool, true);
  return m;
}

Rel64 rel_compose(const Rel64& g, const Rel64& f) {
  Rel64 r;
  r.src_pow = f.src_pow;
  r.tgt_pow = g.tgt_pow;
  for (int j = 0; j < f.src_dim(); ++j) {
    uint64_t mid = f.cols[j];
    uint64_t out = 0;
    while (mid) {
      int b = __builtin_ctzll(mid);
      mid &= mid - 1;
      out |= g.cols[b];
    }
    r.cols[j] = out;
  }
  return r;
}

Rel64 rel_tensor(const Rel64& f, const Rel64& g) {
  Rel64 r;
  r.src_pow = f.src_pow + g.src_pow;
  r.tgt_pow = f.tgt_pow + g.tgt_pow;
  const int gd_src = g.src_dim(), gd_tgt = g.tgt_dim();
  for (int j1 = 0; j1 < f.src_dim(); ++j1)
    for (int j2 = 0; j2 < gd_src; ++j2) {
      uint64_t out = 0;
      uint64_t m1 = f.cols[j1];
      while (m1) {
        int i1 = __builtin_ctzll(m1);
        m1 &= m1 - 1;
        uint64_t m2 = g.cols[j2];
        while (m2) {
          int i2 = __builtin_ctzll(m2);
          m2 &= m2 - 1;
          out |= (uint64_t{1} << (i1 * gd_tgt + i2));
        }
      }
      r.cols[j1 * gd_src + j2] = out;
    }
  return r;
}

Rel64 rel_dagger(const Rel64& f) {
  Rel64 r;
  r.src_pow = f.tgt_pow;
  r.tgt_pow = f.src_pow;
  for (int j = 0; j < f.src_dim(); ++j) {
    uint64_t m = f.cols[j];
    while (m) {
      int i = __builtin_ctzll(m);
      m &= m - 1;
      r.cols[i] |= (uint64_t{1} << j);
    }
  }
  return r;
}

}  // namespace

const std::vector<Mat>& ClosureResult::hom(int src_pow, int tgt_pow) const {
  static const std::vector<Mat> empty;
  auto it = homs.find({src_pow, tgt_pow});
  return it == homs.end() ? empty : it->second;
}

ClosureResult closure_generate(const ClosureSpec& spec) {
  if (spec.morphism_budget == 0) throw TheoryError("closure: budget must be positive");
  std::unordered_set<Rel64, Rel64Hash> seen;
  std::vector<Rel64> all;
  // Indices bucketed by (src_pow, tgt_pow) for type-directed pairing.
  constexpr int kMaxPow = 4;
  std::vector<size_t> bucket[kMaxPow][kMaxPow];
  size_t ops_used = 0;
  bool truncated = false;

  auto insert = [&](const Rel64& r) {
    if (r.src_pow > spec.object_bound || r.tgt_pow > spec.object_bound)
      return;
    if (all.size() >= spec.morphism_budget) {
      truncated = true;
      return;
    }
    if (seen.insert(r).second) {
      bucket[r.src_pow][r.tgt_pow].push_back(all.size());
      all.push_back(r);
    }
  };

  for (const auto& g : spec.generators) insert(to_rel64(g));
  if (spec.ops.identities)
    for (int p = 0; p <= spec.object_bound; ++p)
      insert(to_rel64(Mat::identity(Backend::Bool, dim_of_power(p))));
  if (spec.ops.swaps)
    for (int a = 1; a <= spec.object_bound; ++a)
      for (int b = 1; a + b <= spec.object_bound; ++b)
        insert(to_rel64(Mat::swap(Backend::Bool, dim_of_power(a), dim_of_power(b))));

  size_t frontier_start = 0;
  while (frontier_start < all.size() && !truncated &&
         ops_used < spec.op_budget) {
    size_t frontier_end = all.size();
    if (spec.ops.dagger)
      for (size_t i = frontier_start; i < frontier_end && !truncated; ++i)
        insert(rel_dagger(all[i]));
    // Binary: frontier x known (both orders), paired by type. Bounds are
    // frozen so freshly inserted morphisms wait for the next round.
    // Buckets are indexed (not iterated) because insert() appends to them.
    auto scan = [&](int s, int c, auto&& body) {
      size_t len = bucket[s][c].size();
      for (size_t t = 0; t < len && !truncated; ++t) {
        size_t j = bucket[s][c][t];
        if (j >= frontier_end) break;
        if (++ops_used > spec.op_budget) { truncated = true; break; }
        body(j);
      }
    };
    for (size_t i = frontier_start; i < frontier_end && !truncated; ++i) {
      const Rel64 a = all[i];  // copy: insert() may grow `all`
      if (spec.ops.compose) {
        for (int c = 0; c <= spec.object_bound && !truncated; ++c) {
          // g : tgt(a) -> c gives g o a; g : c -> src(a) gives a o g.
          scan(a.tgt_pow, c, [&](size_t j) { insert(rel_compose(all[j], a)); });
          scan(c, a.src_pow, [&](size_t j) { insert(rel_compose(a, all[j])); });
        }
      }
      if (spec.ops.tensor && !truncated) {
        for (int s = 0; s + a.src_pow <= spec.object_bound && !truncated; ++s)
          for (int c = 0; c + a.tgt_pow <= spec.object_bound && !truncated; ++c)
            scan(s, c, [&](size_t j) {
              const Rel64 b = all[j];
              insert(rel_tensor(a, b));
              insert(rel_tensor(b, a));
            });
      }
    }
    frontier_start = frontier_end;
  }

  ClosureResult res;
  res.saturated = !truncated && frontier_start == all.size();
  res.total = all.size();
  for (const auto& r : all)
    res.homs[{r.src_pow, r.tgt_pow}].push_back(from_rel64(r));
  // Canonical order inside each hom-set, independent of generation order.
  for (auto& [key, v] : res.homs)
    std::sort(v.begin(), v.end(), [](const Mat& x, const Mat& y) {
      return rel_canonical_key(x) < rel_canonical_key(y);
    });
  return res;
}

ClosureSpec spek_spec(int object_bound, size_t morphism_budget) {
  ClosureSpec s;
  s.object_bound = object_bound;
  s.morphism_budget = morphism_budget;
  // State: * |-> {1, 3} (0-indexed {0, 2}).
  s.generators.push_back(rel_from_pairs(1, 4, {{0, 0}, {0, 2}}));
  // Copy: 1 |-> (1,1),(2,2);  2 |-> (1,2),(2,1);  3 |-> (3,3),(4,4);
  //       4 |-> (3,4),(4,3).  Encoded on the 16-element pair carrier.
  auto pair_idx = [](int a, int b) { return (a - 1) * 4 + (b - 1); };
  s.generators.push_back(rel_from_pairs(
      4, 16,
      {{0, pair_idx(1, 1)}, {0, pair_idx(2, 2)},
       {1, pair_idx(1, 2)}, {1, pair_idx(2, 1)},
       {2, pair_idx(3, 3)}, {2, pair_idx(4, 4)},
       {3, pair_idx(3, 4)}, {3, pair_idx(4, 3)}}));
  // All permutations of the 4-element object.
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 4; ++i) pairs.emplace_back(i, perm[i]);
    s.generators.push_back(rel_from_pairs(4, 4, pairs));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return s;
}

ClosureSpec mspek_spec(int object_bound, size_t morphism_budget) {
  ClosureSpec s = spek_spec(object_bound, morphism_budget);
  s.generators.push_back(Mat::discard(Backend::Bool, 4));
  return s;
}

int state_cardinality(const Mat& state) {
  if (state.cols() != 1) throw ShapeError("state_cardinality: not a state");
  int n = 0;
  for (int i = 0; i < state.rows(); ++i)
    if (state.at(i, 0).as_bool()) ++n;
  return n;
}

std::optional<Mat> spek_pure_exclusion_witness(const ClosureResult& closure,
                                               const Mat& state) {
  int p = power_of_dim(state.rows());
  for (const auto& e : closure.hom(p, 0)) {
    if (e.is_zero()) continue;
    if (mat_mul(e, state).is_zero()) return e;
  }
  return std::nullopt;
}

}  // namespace pt
