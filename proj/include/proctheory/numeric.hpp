#pragma once

#include <Eigen/Dense>

#include "proctheory/matrix.hpp"

namespace pt {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

CMat to_eigen(const Mat& m);  // float backend only
Mat from_eigen(const CMat& m);

// Rank decision for a singular spectrum: values below tol * sigma_max count
// as zero. When values sit near the boundary the cut is moved to the largest
// relative gap inside the boundary window and *gap_used is set.
int numeric_rank(const Eigen::VectorXd& sv, double tol, bool* gap_used = nullptr);

// Orthonormal basis of the nullspace (columns), via SVD.
CMat nullspace(const CMat& m, double tol, bool* gap_used = nullptr);
// Orthonormal basis of the column space (columns), via SVD.
CMat column_space(const CMat& m, double tol, bool* gap_used = nullptr);

// Hermitian eigendecomposition helpers.
struct HermEig {
  Eigen::VectorXd values;  // ascending
  CMat vectors;            // columns
};
HermEig herm_eig(const CMat& m);

// Least squares solve min ||a x - b|| with pseudo-inverse cutoff at
// tol * sigma_max.
CMat lstsq(const CMat& a, const CMat& b, double tol);

// Unitary completion: given an isometry-ish m (n x k, k <= n, orthonormal
// columns), returns an n x n unitary whose first k columns are m.
CMat complete_unitary(const CMat& m, double tol);

// Closest unitary (polar factor W V† of the SVD W S V†). Rank-deficient
// directions are completed arbitrarily but deterministically.
CMat polar_unitary(const CMat& m);

// Random helpers over the float backend.
CMat random_cmat(int rows, int cols, Rng& rng, bool real_only = false);
CMat random_unitary(int n, Rng& rng, bool real_only = false);
// Random isometry n x k (k <= n).
CMat random_isometry(int n, int k, Rng& rng, bool real_only = false);

double frob_dist(const CMat& a, const CMat& b);
bool eigen_close(const CMat& a, const CMat& b, double tol);

// --- Exact linear algebra ---------------------------------------------------

// Basis of { v : m v = 0 } for field backends (Rat, GaussRat), as the columns
// of the returned matrix. Exact Gauss-Jordan elimination.
Mat exact_nullspace(const Mat& m);

// For backends without subtraction (Bool, Nat, RatNonneg) all entries are
// nonnegative, so m v = 0 forces v to be supported on zero columns of m:
// the kernel is the coordinate subspace of zero columns.
std::vector<int> zero_columns(const Mat& m, double tol = kDefaultTol);

// Orthogonal projection onto the column space of basis (field backends):
// p = B (B† B)^-1 B†. Throws if the Gram matrix is singular (cannot happen
// for independent columns over Q or Q(i)).
Mat exact_projection(const Mat& basis);

// Solve a x = b exactly over a field backend; nullopt if inconsistent.
std::optional<Mat> exact_solve(const Mat& a, const Mat& b);

// Exact column-space basis (field backends), via RREF pivot columns.
Mat exact_column_basis(const Mat& m);

Mat exact_inverse(const Mat& m);  // field backends, throws if singular

}  // namespace pt
