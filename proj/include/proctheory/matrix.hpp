#pragma once

#include <functional>
#include <vector>

#include "proctheory/scalar.hpp"

namespace pt {

// Dense matrix of scalars over one backend. A morphism n -> m of Mat_S is an
// m x n matrix; column j is the image of basis state j. Finite relations are
// the Boolean case, with the relational converse as dagger.
class Mat {
 public:
  Mat() : backend_(Backend::Bool), rows_(0), cols_(0) {}
  Mat(Backend b, int rows, int cols)
      : backend_(b), rows_(rows), cols_(cols),
        e_(static_cast<size_t>(rows) * cols, ScalarValue::zero(b)) {}

  Backend backend() const { return backend_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const ScalarValue& at(int i, int j) const {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }
  ScalarValue& at(int i, int j) {
    return e_[static_cast<size_t>(i) * cols_ + j];
  }

  static Mat identity(Backend b, int n);
  static Mat zero(Backend b, int rows, int cols);
  static Mat scalar(const ScalarValue& s);  // 1x1
  // Discarding effect: the all-ones row (1, ..., 1) : n -> 1.
  static Mat discard(Backend b, int n);
  // Symmetry a (x) b -> b (x) a.
  static Mat swap(Backend b, int dim_a, int dim_b);
  static Mat from_rows(Backend b, int rows, int cols,
                       const std::vector<ScalarValue>& row_major);
  static Mat col_vector(Backend b, const std::vector<ScalarValue>& v);

  bool is_zero(double tol = kDefaultTol) const;
  std::string str() const;

 private:
  Backend backend_;
  int rows_, cols_;
  std::vector<ScalarValue> e_;
};

Mat mat_mul(const Mat& a, const Mat& b);              // matrix product
Mat mat_compose(const Mat& g, const Mat& f);          // g after f (= g * f)
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scale(const ScalarValue& s, const Mat& a);
Mat mat_kron(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
Mat mat_dagger(const Mat& a);                         // conjugate transpose
bool mat_eq(const Mat& a, const Mat& b, double tol = kDefaultTol);
ScalarValue col_sum(const Mat& a, int j);
// discard o f = discard, i.e. every column sums to 1.
bool mat_is_causal(const Mat& f, double tol = kDefaultTol);
ScalarValue mat_trace(const Mat& a);

// Self-duality structure of Mat_S: cup : 1 -> n*n and cap : n*n -> 1, both
// the Sum_i |ii> pattern. Satisfies the snake equations exactly.
std::pair<Mat, Mat> mat_cup_cap(Backend b, int n);

// Stack blocks vertically / horizontally (shapes must agree).
Mat vstack(const Mat& top, const Mat& bottom);
Mat hstack(const Mat& left, const Mat& right);
// Direct sum (block diagonal).
Mat direct_sum(const Mat& a, const Mat& b);
Mat submatrix(const Mat& a, int r0, int r1, int c0, int c1);  // half-open

// Seeded random matrix with entries from the backend's small value set.
Mat sample_mat(Backend b, int rows, int cols, Rng& rng);
// Random Boolean matrix with Bernoulli(1/2) entries (relation sampling).
Mat sample_rel(int rows, int cols, Rng& rng);

// --- Relations as Boolean matrices ----------------------------------------

// Relation R : A -> B with |A| = dom, |B| = cod; pairs (a, b) 0-indexed.
Mat rel_from_pairs(int dom, int cod, const std::vector<std::pair<int, int>>& pairs);
std::vector<std::pair<int, int>> rel_pairs(const Mat& r);
// Canonical form: sorted (input, output) index pairs. Used for closure dedup.
std::string rel_canonical_key(const Mat& r);

}  // namespace pt
