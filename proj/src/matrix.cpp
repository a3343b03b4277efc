#include "proctheory/matrix.hpp"

#include <sstream>

namespace pt {

namespace {
void require_backend(const Mat& a, const Mat& b, const char* op) {
  if (a.backend() != b.backend())
    throw BackendError(std::string(op) + ": backend mismatch");
}
}  // namespace

Mat Mat::identity(Backend b, int n) {
  Mat m(b, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ScalarValue::one(b);
  return m;
}

Mat Mat::zero(Backend b, int rows, int cols) { return Mat(b, rows, cols); }

Mat Mat::scalar(const ScalarValue& s) {
  Mat m(s.backend(), 1, 1);
  m.at(0, 0) = s;
  return m;
}

Mat Mat::discard(Backend b, int n) {
  Mat m(b, 1, n);
  for (int j = 0; j < n; ++j) m.at(0, j) = ScalarValue::one(b);
  return m;
}

Mat Mat::swap(Backend b, int da, int db) {
  Mat m(b, da * db, da * db);
  for (int a = 0; a < da; ++a)
    for (int x = 0; x < db; ++x)
      m.at(x * da + a, a * db + x) = ScalarValue::one(b);
  return m;
}

Mat Mat::from_rows(Backend b, int rows, int cols,
                   const std::vector<ScalarValue>& row_major) {
  if (static_cast<int>(row_major.size()) != rows * cols)
    throw ShapeError("from_rows: wrong entry count");
  Mat m(b, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const auto& s = row_major[static_cast<size_t>(i) * cols + j];
      if (s.backend() != b) throw BackendError("from_rows: entry backend");
      m.at(i, j) = s;
    }
  return m;
}

Mat Mat::col_vector(Backend b, const std::vector<ScalarValue>& v) {
  return from_rows(b, static_cast<int>(v.size()), 1, v);
}

bool Mat::is_zero(double tol) const {
  for (const auto& s : e_)
    if (!s.is_zero(tol)) return false;
  return true;
}

std::string Mat::str() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j).str();
  }
  os << "]";
  return os.str();
}

Mat mat_mul(const Mat& a, const Mat& b) {
  require_backend(a, b, "mat_mul");
  if (a.cols() != b.rows()) throw ShapeError("mat_mul: inner dims disagree");
  Mat r(a.backend(), a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      ScalarValue acc = ScalarValue::zero(a.backend());
      for (int k = 0; k < a.cols(); ++k)
        acc = add(acc, mul(a.at(i, k), b.at(k, j)));
      r.at(i, j) = acc;
    }
  return r;
}

Mat mat_compose(const Mat& g, const Mat& f) {
  if (g.cols() != f.rows())
    throw ShapeError("compose: target(f) != source(g)");
  return mat_mul(g, f);
}

Mat mat_add(const Mat& a, const Mat& b) {
  require_backend(a, b, "mat_add");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("mat_add: shape mismatch");
  Mat r(a.backend(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = add(a.at(i, j), b.at(i, j));
  return r;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  require_backend(a, b, "mat_sub");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError("mat_sub: shape mismatch");
  Mat r(a.backend(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = sub(a.at(i, j), b.at(i, j));
  return r;
}

Mat mat_scale(const ScalarValue& s, const Mat& a) {
  Mat r(a.backend(), a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = mul(s, a.at(i, j));
  return r;
}

Mat mat_kron(const Mat& a, const Mat& b) {
  require_backend(a, b, "mat_kron");
  Mat r(a.backend(), a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) =
              mul(a.at(i, j), b.at(k, l));
  return r;
}

Mat mat_transpose(const Mat& a) {
  Mat r(a.backend(), a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

Mat mat_dagger(const Mat& a) {
  Mat r(a.backend(), a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(j, i) = dagger(a.at(i, j));
  return r;
}

bool mat_eq(const Mat& a, const Mat& b, double tol) {
  if (a.backend() != b.backend() || a.rows() != b.rows() ||
      a.cols() != b.cols())
    return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!scalar_eq(a.at(i, j), b.at(i, j), tol)) return false;
  return true;
}

ScalarValue col_sum(const Mat& a, int j) {
  ScalarValue acc = ScalarValue::zero(a.backend());
  for (int i = 0; i < a.rows(); ++i) acc = add(acc, a.at(i, j));
  return acc;
}

bool mat_is_causal(const Mat& f, double tol) {
  Mat lhs = mat_mul(Mat::discard(f.backend(), f.rows()), f);
  return mat_eq(lhs, Mat::discard(f.backend(), f.cols()), tol);
}

ScalarValue mat_trace(const Mat& a) {
  if (a.rows() != a.cols()) throw ShapeError("trace: not square");
  ScalarValue acc = ScalarValue::zero(a.backend());
  for (int i = 0; i < a.rows(); ++i) acc = add(acc, a.at(i, i));
  return acc;
}

std::pair<Mat, Mat> mat_cup_cap(Backend b, int n) {
  Mat cup(b, n * n, 1);
  for (int i = 0; i < n; ++i) cup.at(i * n + i, 0) = ScalarValue::one(b);
  return {cup, mat_dagger(cup)};
}

Mat vstack(const Mat& top, const Mat& bottom) {
  require_backend(top, bottom, "vstack");
  if (top.cols() != bottom.cols()) throw ShapeError("vstack: column mismatch");
  Mat r(top.backend(), top.rows() + bottom.rows(), top.cols());
  for (int i = 0; i < top.rows(); ++i)
    for (int j = 0; j < top.cols(); ++j) r.at(i, j) = top.at(i, j);
  for (int i = 0; i < bottom.rows(); ++i)
    for (int j = 0; j < bottom.cols(); ++j)
      r.at(top.rows() + i, j) = bottom.at(i, j);
  return r;
}

Mat hstack(const Mat& left, const Mat& right) {
  require_backend(left, right, "hstack");
  if (left.rows() != right.rows()) throw ShapeError("hstack: row mismatch");
  Mat r(left.backend(), left.rows(), left.cols() + right.cols());
  for (int i = 0; i < left.rows(); ++i) {
    for (int j = 0; j < left.cols(); ++j) r.at(i, j) = left.at(i, j);
    for (int j = 0; j < right.cols(); ++j)
      r.at(i, left.cols() + j) = right.at(i, j);
  }
  return r;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  require_backend(a, b, "direct_sum");
  Mat r(a.backend(), a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      r.at(a.rows() + i, a.cols() + j) = b.at(i, j);
  return r;
}

Mat submatrix(const Mat& a, int r0, int r1, int c0, int c1) {
  Mat r(a.backend(), r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) r.at(i - r0, j - c0) = a.at(i, j);
  return r;
}

Mat sample_mat(Backend b, int rows, int cols, Rng& rng) {
  Mat r(b, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(i, j) = sample_scalar(b, rng);
  return r;
}

Mat sample_rel(int rows, int cols, Rng& rng) {
  Mat r(Backend::Bool, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      r.at(i, j) = ScalarValue(Backend::Bool, rng.coin());
  return r;
}

Mat rel_from_pairs(int dom, int cod,
                   const std::vector<std::pair<int, int>>& pairs) {
  Mat r(Backend::Bool, cod, dom);
  for (auto [a, b] : pairs) {
    if (a < 0 || a >= dom || b < 0 || b >= cod)
      throw ShapeError("rel_from_pairs: index out of range");
    r.at(b, a) = ScalarValue(Backend::Bool, true);
  }
  return r;
}

std::vector<std::pair<int, int>> rel_pairs(const Mat& r) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < r.cols(); ++a)
    for (int b = 0; b < r.rows(); ++b)
      if (r.at(b, a).as_bool()) out.emplace_back(a, b);
  return out;
}

std::string rel_canonical_key(const Mat& r) {
  std::ostringstream os;
  os << r.cols() << ">" << r.rows() << ":";
  for (auto [a, b] : rel_pairs(r)) os << a << "," << b << ";";
  return os.str();
}

}  // namespace pt
