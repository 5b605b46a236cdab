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

#include "pqm/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace pqm {

double hermiticity_residual(const CMatrix& m) {
  return (m - m.adjoint()).norm();
}

bool is_hermitian(const CMatrix& m, double rel_tol) {
  const double scale = std::max(1.0, m.norm());
  return hermiticity_residual(m) <= rel_tol * scale;
}

EigResult herm_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::InvalidArgument, "herm_eig: matrix must be square");
  }
  if (!is_hermitian(m)) {
    throw Error(ErrorCode::NotHermitian,
                "herm_eig: matrix is not Hermitian, symmetry residual " +
                    std::to_string(hermiticity_residual(m)));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "herm_eig: eigensolver failed");
  }
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix psd_sqrt(const CMatrix& m) {
  EigResult eig = herm_eig(m);
  const double scale = std::max(1.0, m.norm());
  const double floor = tol::kSymmetry * scale;
  RVector w = eig.eigenvalues;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < -floor) {
      throw Error(ErrorCode::NotPsd,
                  "psd_sqrt: matrix is not PSD, eigenvalue " +
                      std::to_string(w[i]));
    }
    // Rank-deficient operators are the common case here; eigenvalues at
    // rounding scale on either side of zero are noise, and taking their
    // square root would inject sqrt-of-noise directions into the result.
    w[i] = w[i] <= floor ? 0.0 : std::sqrt(w[i]);
  }
  return eig.eigenvectors * w.asDiagonal().toDenseMatrix().cast<Complex>() *
         eig.eigenvectors.adjoint();
}

double min_eigenvalue(const CMatrix& m) {
  return herm_eig(m).eigenvalues.minCoeff();
}

bool is_psd(const CMatrix& m, double rel_tol) {
  if (!is_hermitian(m, rel_tol)) return false;
  const double scale = std::max(1.0, m.norm());
  return min_eigenvalue(m) >= -rel_tol * scale;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a[i] * b;
  }
  return out;
}

namespace {

// Strides of a mixed-radix index, first factor most significant.
std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i) {
    s[i] = s[i + 1] * dims[i + 1];
  }
  return s;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const TensorSpace& space,
                      const std::vector<int>& keep) {
  const int total = space.dim();
  if (m.rows() != total || m.cols() != total) {
    throw Error(ErrorCode::InvalidArgument,
                "partial_trace: matrix dimension " + std::to_string(m.rows()) +
                    " does not match factor product " + std::to_string(total));
  }
  const int nf = static_cast<int>(space.factor_dims.size());
  std::vector<bool> kept(nf, false);
  for (int k : keep) {
    if (k < 0 || k >= nf) {
      throw Error(ErrorCode::InvalidArgument,
                  "partial_trace: factor index out of range");
    }
    kept[k] = true;
  }
  const std::vector<int> strides = strides_of(space.factor_dims);

  int keep_dim = 1, drop_dim = 1;
  std::vector<int> keep_factors, drop_factors;
  for (int f = 0; f < nf; ++f) {
    if (kept[f]) {
      keep_dim *= space.factor_dims[f];
      keep_factors.push_back(f);
    } else {
      drop_dim *= space.factor_dims[f];
      drop_factors.push_back(f);
    }
  }

  // Ambient offset of the i-th basis state of the kept (resp. dropped)
  // sub-product, with the original factor order.
  auto offsets = [&](const std::vector<int>& factors, int sub_dim) {
    std::vector<int> off(sub_dim, 0);
    for (int i = 0; i < sub_dim; ++i) {
      int rest = i;
      for (int f = static_cast<int>(factors.size()) - 1; f >= 0; --f) {
        const int d = space.factor_dims[factors[f]];
        off[i] += (rest % d) * strides[factors[f]];
        rest /= d;
      }
    }
    return off;
  };
  const std::vector<int> keep_off = offsets(keep_factors, keep_dim);
  const std::vector<int> drop_off = offsets(drop_factors, drop_dim);

  CMatrix out = CMatrix::Zero(keep_dim, keep_dim);
  for (int a = 0; a < keep_dim; ++a) {
    for (int b = 0; b < keep_dim; ++b) {
      Complex acc = 0.0;
      for (int c = 0; c < drop_dim; ++c) {
        acc += m(keep_off[a] + drop_off[c], keep_off[b] + drop_off[c]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

CVector basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw Error(ErrorCode::InvalidArgument, "basis_vector: index out of range");
  }
  CVector v = CVector::Zero(dim);
  v[index] = 1.0;
  return v;
}

}  // namespace pqm
