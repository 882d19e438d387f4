#include "mfkit/linalg.hpp"

namespace mfkit {

Echelon rref(FieldMat m) {
  Echelon e;
  std::vector<int> pivots;
  long rows = m.rows(), cols = m.cols();
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) m.row(piv).swap(m.row(r));
    FieldElem inv = m(r, c).inverse();
    for (long j = c; j < cols; ++j) m(r, j) *= inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      FieldElem f = m(i, c);
      for (long j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  e.mat = std::move(m);
  e.pivots = std::move(pivots);
  return e;
}

LinearSolution exact_solve(const FieldMat& A, const FieldVec& b) {
  if (A.rows() != b.rows()) throw Error("exact_solve: dimension mismatch");
  long rows = A.rows(), cols = A.cols();
  FieldMat aug(rows, cols + 1);
  aug.leftCols(cols) = A;
  aug.col(cols) = b;
  Echelon e = rref(std::move(aug));

  LinearSolution sol;
  bool consistent = true;
  for (std::size_t i = 0; i < e.pivots.size(); ++i)
    if (e.pivots[i] == cols) consistent = false;

  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots)
    if (p < cols) is_pivot[p] = true;

  if (consistent) {
    FieldVec x = FieldVec::Constant(cols, FieldElem(0));
    for (std::size_t i = 0; i < e.pivots.size(); ++i) x(e.pivots[i]) = e.mat(static_cast<long>(i), cols);
    sol.particular = std::move(x);
  }

  for (long c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    FieldVec v = FieldVec::Constant(cols, FieldElem(0));
    v(c) = FieldElem(1);
    for (std::size_t i = 0; i < e.pivots.size(); ++i)
      if (e.pivots[i] < cols) v(e.pivots[i]) = -e.mat(static_cast<long>(i), c);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

long rank(const FieldMat& A) { return static_cast<long>(rref(A).pivots.size()); }

std::vector<FieldVec> kernel_basis(const FieldMat& A) {
  FieldVec zero = FieldVec::Constant(A.rows(), FieldElem(0));
  return exact_solve(A, zero).nullspace;
}

long rank_of_columns(const std::vector<FieldVec>& cols, long nrows) {
  if (cols.empty()) return 0;
  FieldMat m(nrows, static_cast<long>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) m.col(static_cast<long>(j)) = cols[j];
  return rank(m);
}

bool is_zero(const FieldMat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

bool is_zero(const PolyMat& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

PolyMat poly_zero_matrix(long rows, long cols, int nvars) {
  return PolyMat::Constant(rows, cols, Poly::zero(nvars));
}

PolyMat poly_identity(long n, int nvars) {
  PolyMat m = poly_zero_matrix(n, n, nvars);
  for (long i = 0; i < n; ++i) m(i, i) = Poly(1).bound(nvars);
  return m;
}

PolyMat scalar_matrix(const Poly& w, long n) {
  PolyMat m = poly_zero_matrix(n, n, w.nvars());
  for (long i = 0; i < n; ++i) m(i, i) = w;
  return m;
}

PolyMat block2x2(const PolyMat& a, const PolyMat& b, const PolyMat& c, const PolyMat& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() || b.cols() != d.cols())
    throw Error("block2x2: inconsistent block dimensions");
  PolyMat m(a.rows() + c.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.topRightCorner(b.rows(), b.cols()) = b;
  m.bottomLeftCorner(c.rows(), c.cols()) = c;
  m.bottomRightCorner(d.rows(), d.cols()) = d;
  return m;
}

PolyMat hstack(const PolyMat& a, const PolyMat& b) {
  if (a.rows() != b.rows()) throw Error("hstack: row mismatch");
  PolyMat m(a.rows(), a.cols() + b.cols());
  m.leftCols(a.cols()) = a;
  m.rightCols(b.cols()) = b;
  return m;
}

PolyMat vstack(const PolyMat& a, const PolyMat& b) {
  if (a.cols() != b.cols()) throw Error("vstack: column mismatch");
  PolyMat m(a.rows() + b.rows(), a.cols());
  m.topRows(a.rows()) = a;
  m.bottomRows(b.rows()) = b;
  return m;
}

FieldMat evaluate(const PolyMat& m, std::span<const FieldElem> point) {
  FieldMat out(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).evaluate(point);
  return out;
}

}  // namespace mfkit
