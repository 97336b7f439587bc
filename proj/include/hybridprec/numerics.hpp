// SPDX-License-Identifier: Apache-2.0
//
// hybridprec: alternating-minimization hybrid precoding for mmWave MIMO
// Copyright (C) 2026 The hybridprec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRIDPREC_NUMERICS_HPP
#define HYBRIDPREC_NUMERICS_HPP

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "hybridprec/errors.hpp"

namespace hybridprec {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

// Relative singular-value cutoff used by pinv().
inline constexpr double kPinvRelTol = 1e-12;

struct ThinSvd {
  ComplexMatrix U; // rows x r, orthonormal columns
  RealVector s;    // r = min(rows, cols), descending
  ComplexMatrix V; // cols x r, orthonormal columns
};

namespace detail {

inline void require_finite(const ComplexMatrix& A, const char* who) {
  if (!A.allFinite())
    throw InvalidInput(std::string(who) + ": non-finite entry in input matrix");
}

inline void require_nonempty(const ComplexMatrix& A, const char* who) {
  if (A.rows() == 0 || A.cols() == 0)
    throw InvalidInput(std::string(who) + ": empty matrix");
}

} // namespace detail

/// Thin SVD with a fixed output convention.
///
/// Singular values come out in descending order. Each singular pair is
/// rotated by a common unit-modulus factor so that the entry of largest
/// magnitude in the U-column (first index on ties) is real and nonnegative.
/// The rotation leaves U diag(s) V^H unchanged and makes the result a pure
/// function of A.
inline ThinSvd svd_thin(const ComplexMatrix& A) {
  detail::require_nonempty(A, "svd_thin");
  detail::require_finite(A, "svd_thin");

  Eigen::JacobiSVD<ComplexMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ThinSvd out{svd.matrixU(), svd.singularValues(), svd.matrixV()};

  for (Eigen::Index j = 0; j < out.U.cols(); ++j) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.U.rows(); ++i) {
      const double mag = std::abs(out.U(i, j));
      if (mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (best <= 0.0)
      continue;
    const Complex rot = std::conj(out.U(pivot, j)) / best;
    out.U.col(j) *= rot;
    out.V.col(j) *= rot;
    out.U(pivot, j) = Complex(std::abs(out.U(pivot, j)), 0.0);
  }
  return out;
}

/// Moore-Penrose pseudo-inverse; singular values below kPinvRelTol * s_max
/// are treated as zero.
inline ComplexMatrix pinv(const ComplexMatrix& A) {
  const ThinSvd svd = svd_thin(A);
  const double cutoff = svd.s.size() > 0 ? kPinvRelTol * svd.s(0) : 0.0;
  RealVector inv_s = RealVector::Zero(svd.s.size());
  for (Eigen::Index i = 0; i < svd.s.size(); ++i)
    if (svd.s(i) > cutoff)
      inv_s(i) = 1.0 / svd.s(i);
  return svd.V * inv_s.asDiagonal() * svd.U.adjoint();
}

/// Entry-wise unit-modulus projection exp(j arg(A)). Zero entries map to
/// the corresponding entry of `fallback`, or to 1 when no fallback is given.
inline ComplexMatrix phase_only(const ComplexMatrix& A, const ComplexMatrix* fallback = nullptr) {
  ComplexMatrix out(A.rows(), A.cols());
  for (Eigen::Index j = 0; j < A.cols(); ++j)
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      const double mag = std::abs(A(i, j));
      if (mag > 0.0)
        out(i, j) = A(i, j) / mag;
      else
        out(i, j) = fallback ? (*fallback)(i, j) : Complex(1.0, 0.0);
    }
  return out;
}

inline double frobenius_sq(const ComplexMatrix& A) { return A.squaredNorm(); }

// vec() stacks columns, which is Eigen's native storage order.
inline ComplexVector vec(const ComplexMatrix& A) {
  return Eigen::Map<const ComplexVector>(A.data(), A.size());
}

inline ComplexMatrix unvec(const ComplexVector& x, Eigen::Index rows, Eigen::Index cols) {
  if (x.size() != rows * cols)
    throw InvalidInput("unvec: length does not match rows * cols");
  return Eigen::Map<const ComplexMatrix>(x.data(), rows, cols);
}

} // namespace hybridprec

#endif
