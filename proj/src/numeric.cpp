#include "proctheory/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pt {

CMat to_eigen(const Mat& m) {
  if (m.backend() != Backend::FloatC)
    throw BackendError("to_eigen: float backend only");
  CMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m.at(i, j).as_complex();
  return r;
}

Mat from_eigen(const CMat& m) {
  Mat r(Backend::FloatC, static_cast<int>(m.rows()),
        static_cast<int>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      r.at(i, j) = ScalarValue::complex(m(i, j));
  return r;
}

int numeric_rank(const Eigen::VectorXd& sv, double tol, bool* gap_used) {
  if (gap_used) *gap_used = false;
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (smax <= 0) return 0;
  double cut = tol * smax;
  // Boundary window: a value within a factor 16 of the cut is a tie.
  bool tie = false;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut / 16 && sv(i) < cut * 16) tie = true;
  if (tie) {
    // Move the cut to the largest relative gap inside the window.
    int best = -1;
    double best_ratio = 1.0;
    for (int i = 0; i + 1 <= sv.size() - 1; ++i) {
      double hi = sv(i), lo = sv(i + 1);
      if (hi < cut / 16 || lo > cut * 16) continue;
      double ratio = lo > 0 ? hi / lo : 1e300;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = i;
      }
    }
    if (best >= 0 && best_ratio > 16) {
      if (gap_used) *gap_used = true;
      return best + 1;
    }
  }
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

CMat nullspace(const CMat& m, double tol, bool* gap_used) {
  if (m.rows() == 0)  // every vector is in the kernel
    return CMat::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullV);
  int r = numeric_rank(svd.singularValues(), tol, gap_used);
  return svd.matrixV().rightCols(m.cols() - r);
}

CMat column_space(const CMat& m, double tol, bool* gap_used) {
  if (m.cols() == 0) return CMat(m.rows(), 0);
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU);
  int r = numeric_rank(svd.singularValues(), tol, gap_used);
  return svd.matrixU().leftCols(r);
}

HermEig herm_eig(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m);
  return {es.eigenvalues(), es.eigenvectors()};
}

CMat lstsq(const CMat& a, const CMat& b, double tol) {
  Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(tol);
  return svd.solve(b);
}

CMat complete_unitary(const CMat& m, double tol) {
  const int n = static_cast<int>(m.rows());
  const int k = static_cast<int>(m.cols());
  if (k == n) return m;
  // Orthonormal basis of the complement of range(m).
  CMat compl_basis = nullspace(m.adjoint(), tol);
  CMat u(n, n);
  u.leftCols(k) = m;
  u.rightCols(n - k) = compl_basis.leftCols(n - k);
  return u;
}

CMat polar_unitary(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMat random_cmat(int rows, int cols, Rng& rng, bool real_only) {
  CMat r(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      r(i, j) = real_only ? std::complex<double>(rng.gauss(), 0.0)
                          : std::complex<double>(rng.gauss(), rng.gauss());
  return r;
}

CMat random_unitary(int n, Rng& rng, bool real_only) {
  CMat g = random_cmat(n, n, rng, real_only);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  // Fix the phase of each column so the result is deterministic and, for
  // real input, orthogonal.
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMat random_isometry(int n, int k, Rng& rng, bool real_only) {
  return random_unitary(n, rng, real_only).leftCols(k);
}

double frob_dist(const CMat& a, const CMat& b) { return (a - b).norm(); }

bool eigen_close(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  double m = std::max(a.norm(), b.norm());
  return (a - b).norm() <= tol * (1.0 + m);
}

// --- Exact elimination -------------------------------------------------------

namespace {

void require_field(const Mat& m, const char* op) {
  if (m.backend() != Backend::Rat && m.backend() != Backend::GaussRat)
    throw BackendError(std::string(op) + ": field backend required");
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Mat& a) {
  std::vector<int> pivots;
  int lead = 0;
  for (int r = 0; r < a.rows() && lead < a.cols(); ++r) {
    int i = r;
    while (i < a.rows() && a.at(i, lead).is_zero()) ++i;
    if (i == a.rows()) {
      --r;
      ++lead;
      continue;
    }
    if (i != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a.at(i, j), a.at(r, j));
    ScalarValue p = a.at(r, lead);
    for (int j = 0; j < a.cols(); ++j) a.at(r, j) = div(a.at(r, j), p);
    for (int k = 0; k < a.rows(); ++k) {
      if (k == r || a.at(k, lead).is_zero()) continue;
      ScalarValue f = a.at(k, lead);
      for (int j = 0; j < a.cols(); ++j)
        a.at(k, j) = sub(a.at(k, j), mul(f, a.at(r, j)));
    }
    pivots.push_back(lead);
    ++lead;
  }
  return pivots;
}

}  // namespace

Mat exact_nullspace(const Mat& m) {
  require_field(m, "exact_nullspace");
  Mat a = m;
  std::vector<int> pivots = rref(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat basis(m.backend(), m.cols(), static_cast<int>(free_cols.size()));
  for (size_t fc = 0; fc < free_cols.size(); ++fc) {
    int j = free_cols[fc];
    basis.at(j, static_cast<int>(fc)) = ScalarValue::one(m.backend());
    for (size_t r = 0; r < pivots.size(); ++r) {
      // v[pivot_r] = -a(r, j)
      ScalarValue val = a.at(static_cast<int>(r), j);
      basis.at(pivots[r], static_cast<int>(fc)) =
          sub(ScalarValue::zero(m.backend()), val);
    }
  }
  return basis;
}

std::vector<int> zero_columns(const Mat& m, double tol) {
  std::vector<int> out;
  for (int j = 0; j < m.cols(); ++j) {
    bool zero = true;
    for (int i = 0; i < m.rows() && zero; ++i)
      if (!m.at(i, j).is_zero(tol)) zero = false;
    if (zero) out.push_back(j);
  }
  return out;
}

Mat exact_projection(const Mat& basis) {
  require_field(basis, "exact_projection");
  if (basis.cols() == 0)
    return Mat::zero(basis.backend(), basis.rows(), basis.rows());
  Mat gram = mat_mul(mat_dagger(basis), basis);
  Mat gram_inv = exact_inverse(gram);
  return mat_mul(mat_mul(basis, gram_inv), mat_dagger(basis));
}

std::optional<Mat> exact_solve(const Mat& a, const Mat& b) {
  require_field(a, "exact_solve");
  if (a.rows() != b.rows()) throw ShapeError("exact_solve: row mismatch");
  Mat aug = hstack(a, b);
  std::vector<int> pivots = rref(aug);
  for (int p : pivots)
    if (p >= a.cols()) return std::nullopt;  // inconsistent row
  Mat x = Mat::zero(a.backend(), a.cols(), b.cols());
  for (size_t r = 0; r < pivots.size(); ++r)
    for (int j = 0; j < b.cols(); ++j)
      x.at(pivots[r], j) = aug.at(static_cast<int>(r), a.cols() + j);
  // Verify (guards against rank deficiencies in a).
  if (!mat_eq(mat_mul(a, x), b)) return std::nullopt;
  return x;
}

Mat exact_column_basis(const Mat& m) {
  require_field(m, "exact_column_basis");
  Mat a = m;
  std::vector<int> pivots = rref(a);
  Mat basis(m.backend(), m.rows(), static_cast<int>(pivots.size()));
  for (size_t k = 0; k < pivots.size(); ++k)
    for (int i = 0; i < m.rows(); ++i)
      basis.at(i, static_cast<int>(k)) = m.at(i, pivots[k]);
  return basis;
}

Mat exact_inverse(const Mat& m) {
  require_field(m, "exact_inverse");
  if (m.rows() != m.cols()) throw ShapeError("exact_inverse: not square");
  Mat aug = hstack(m, Mat::identity(m.backend(), m.rows()));
  std::vector<int> pivots = rref(aug);
  if (static_cast<int>(pivots.size()) != m.rows())
    throw TheoryError("exact_inverse: singular matrix");
  return submatrix(aug, 0, m.rows(), m.cols(), 2 * m.cols());
}

}  // namespace pt
