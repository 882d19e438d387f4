#ifndef MFKIT_LINALG_HPP
#define MFKIT_LINALG_HPP

#include "mfkit/field.hpp"
#include "mfkit/ring.hpp"

#include <Eigen/Core>

#include <optional>
#include <vector>

namespace mfkit {

using FieldMat = Eigen::Matrix<FieldElem, Eigen::Dynamic, Eigen::Dynamic>;
using FieldVec = Eigen::Matrix<FieldElem, Eigen::Dynamic, 1>;
using PolyMat = Eigen::Matrix<Poly, Eigen::Dynamic, Eigen::Dynamic>;

struct LinearSolution {
  std::optional<FieldVec> particular;  // one exact solution of A x = b, if consistent
  std::vector<FieldVec> nullspace;     // basis of ker A
};

// Exact Gaussian elimination over Q or F_p.
LinearSolution exact_solve(const FieldMat& A, const FieldVec& b);

// Row echelon data shared by the solvers.
struct Echelon {
  FieldMat mat;             // reduced row echelon form
  std::vector<int> pivots;  // pivot column per nonzero row
};
Echelon rref(FieldMat m);

long rank(const FieldMat& A);
std::vector<FieldVec> kernel_basis(const FieldMat& A);

// dim of span(cols of A) + how many of the given extra vectors extend it.
long rank_of_columns(const std::vector<FieldVec>& cols, long nrows);

bool is_zero(const FieldMat& m);
bool is_zero(const PolyMat& m);

PolyMat poly_zero_matrix(long rows, long cols, int nvars);
PolyMat poly_identity(long n, int nvars);
PolyMat scalar_matrix(const Poly& w, long n);  // w * Id

// [ [a, b], [c, d] ] as one matrix; dimensions must be consistent.
PolyMat block2x2(const PolyMat& a, const PolyMat& b, const PolyMat& c, const PolyMat& d);
PolyMat hstack(const PolyMat& a, const PolyMat& b);
PolyMat vstack(const PolyMat& a, const PolyMat& b);

FieldMat evaluate(const PolyMat& m, std::span<const FieldElem> point);

}  // namespace mfkit

#endif  // MFKIT_LINALG_HPP
