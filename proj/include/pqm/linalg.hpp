// Copyright 2026 The pqm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex linear algebra on small Hilbert spaces (d <= ~64):
// Hermitian eigendecomposition, PSD square root, Kronecker products with a
// fixed index convention (first factor is the slow / most significant index),
// and partial traces over arbitrary factor subsets.

#pragma once

#include <vector>

#include "pqm/types.hpp"

namespace pqm {

// Ordered factorization of a tensor-product space. The ambient dimension is
// the product of the factor dimensions.
struct TensorSpace {
  std::vector<int> factor_dims;

  int dim() const {
    int d = 1;
    for (int f : factor_dims) d *= f;
    return d;
  }
};

struct EigResult {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // orthonormal columns, M = V diag(w) V^dagger
};

double hermiticity_residual(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double rel_tol = tol::kSymmetry);

// Rejects non-Hermitian input (relative symmetry residual above tolerance).
EigResult herm_eig(const CMatrix& m);

// Operator square root of a PSD matrix. Eigenvalues in
// [-kSymmetry*max(1,|m|), 0) are clamped to zero; anything lower is rejected.
CMatrix psd_sqrt(const CMatrix& m);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& m);
bool is_psd(const CMatrix& m, double rel_tol = tol::kSymmetry);

CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

// Trace over the factors NOT listed in `keep`. Kept factors preserve their
// original order. Trace-preserving and linear.
CMatrix partial_trace(const CMatrix& m, const TensorSpace& space,
                      const std::vector<int>& keep);

inline CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }
CVector basis_vector(int dim, int index);
inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

inline Complex sandwich(const CVector& a, const CMatrix& op, const CVector& b) {
  return a.dot(op * b);  // Eigen's dot conjugates the first argument
}

}  // namespace pqm
