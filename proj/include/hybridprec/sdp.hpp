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

#ifndef HYBRIDPREC_SDP_HPP
#define HYBRIDPREC_SDP_HPP

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <type_traits>
#include <vector>

#include "hybridprec/numerics.hpp"

namespace hybridprec {

/// minimize <C, Y>  s.t.  <A_i, Y> = b_i,  Y >= 0,  over Hermitian (or real
/// symmetric) Y, with <A, B> = Re Tr(A B).
template <typename Scalar>
struct SdpProblemT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  struct Constraint {
    Matrix A;
    double b = 0.0;
  };

  Matrix C;
  std::vector<Constraint> constraints;

  Eigen::Index dimension() const { return C.rows(); }
};

template <typename Scalar>
struct SdpSolutionT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix Y;          // primal
  Matrix Z;          // dual slack
  RealVector y;      // constraint multipliers
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_residual = 0.0; // max_i |<A_i, Y> - b_i|
  double dual_residual = 0.0;   // ||C - sum y_i A_i - Z||_F
  int iterations = 0;

  double gap() const { return std::abs(primal_obj - dual_obj); }
};

using SdpProblem = SdpProblemT<Complex>;
using SdpSolution = SdpSolutionT<Complex>;

/// Iteration cap reached; carries the best iterate seen.
template <typename Scalar>
class SdpConvergenceError : public SolverError {
public:
  SdpConvergenceError(const std::string& what, SdpSolutionT<Scalar> best)
      : SolverError(what, best.gap(), best.iterations), best_(std::move(best)) {}

  const SdpSolutionT<Scalar>& best() const noexcept { return best_; }

private:
  SdpSolutionT<Scalar> best_;
};

struct SdpOptions {
  double tol = 1e-8;
  int max_iters = 100;
  double step_fraction = 0.98;
};

namespace sdp_detail {

template <typename M>
double inner(const M& A, const M& B) {
  return std::real(A.cwiseProduct(B.transpose()).sum());
}

template <typename M>
M hermitize(const M& A) {
  return (A + A.adjoint()) * 0.5;
}

template <typename M>
bool is_hermitian(const M& A) {
  if (A.rows() != A.cols())
    return false;
  const double scale = std::max(1.0, A.norm());
  return (A - A.adjoint()).norm() <= 1e-12 * scale;
}

// Largest alpha with X + alpha dX >= 0 (infinity if dX >= 0 along X).
template <typename M>
double max_step(const M& X, const M& dX) {
  Eigen::LLT<M> llt(X);
  if (llt.info() != Eigen::Success)
    return 0.0;
  const M Linv_dX = llt.matrixL().solve(dX);
  const M T = llt.matrixL().solve(Linv_dX.adjoint());
  const double lmin = Eigen::SelfAdjointEigenSolver<M>(hermitize(T), Eigen::EigenvaluesOnly).eigenvalues()(0);
  return lmin < 0.0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

} // namespace sdp_detail

/// Primal-dual path-following interior-point method with Nesterov-Todd
/// scaling and a Mehrotra-type centering heuristic.
///
/// Meant for tiny dense problems with a handful of equality constraints;
/// each iteration costs a few n x n eigen-decompositions.
template <typename Scalar>
SdpSolutionT<Scalar> solve_sdp(const SdpProblemT<Scalar>& p, const SdpOptions& opt = {}) {
  using Matrix = typename SdpProblemT<Scalar>::Matrix;
  using namespace sdp_detail;

  const Eigen::Index n = p.dimension();
  const std::size_t m = p.constraints.size();
  if (n < 1 || m < 1)
    throw InvalidInput("solve_sdp: need a nonempty cost matrix and at least one constraint");
  if (!is_hermitian(p.C))
    throw InvalidInput("solve_sdp: cost matrix is not Hermitian");
  for (const auto& c : p.constraints)
    if (c.A.rows() != n || !is_hermitian(c.A))
      throw InvalidInput("solve_sdp: constraint matrix is not Hermitian of matching size");

  RealVector b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i)
    b(static_cast<Eigen::Index>(i)) = p.constraints[i].b;

  const double c_norm = p.C.norm();
  Matrix X = Matrix::Identity(n, n);
  Matrix Z = Matrix::Identity(n, n) * std::max(1.0, c_norm / std::sqrt(static_cast<double>(n)));
  RealVector y = RealVector::Zero(static_cast<Eigen::Index>(m));

  auto apply_A = [&](const Matrix& M) {
    RealVector r(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i)
      r(static_cast<Eigen::Index>(i)) = inner(p.constraints[i].A, M);
    return r;
  };
  auto apply_At = [&](const RealVector& v) {
    Matrix S = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < m; ++i)
      S += v(static_cast<Eigen::Index>(i)) * p.constraints[i].A;
    return S;
  };

  SdpSolutionT<Scalar> sol;
  for (int it = 0;; ++it) {
    const RealVector rp = b - apply_A(X);
    const Matrix Rd = p.C - apply_At(y) - Z;
    const double mu_full = inner(X, Z);

    sol.Y = X;
    sol.Z = Z;
    sol.y = y;
    sol.primal_obj = inner(p.C, X);
    sol.dual_obj = b.dot(y);
    sol.primal_residual = rp.cwiseAbs().maxCoeff();
    sol.dual_residual = Rd.norm();
    sol.iterations = it;

    if (sol.primal_residual <= opt.tol && sol.dual_residual <= opt.tol * (1.0 + c_norm) &&
        sol.gap() <= opt.tol && mu_full <= opt.tol)
      return sol;
    if (it >= opt.max_iters)
      throw SdpConvergenceError<Scalar>("solve_sdp: iteration limit reached", sol);

    const double mu = mu_full / static_cast<double>(n);

    // NT scaling W = G G^H with G^H Z G = G^{-1} X G^{-H} = diag(lambda),
    // from X = L L^H, Z = R R^H and the SVD R^H L = U diag(lambda) V^H.
    const Eigen::LLT<Matrix> lx(X), lz(Z);
    if (lx.info() != Eigen::Success || lz.info() != Eigen::Success)
      throw SdpConvergenceError<Scalar>("solve_sdp: iterate lost positive definiteness", sol);
    const Matrix L = lx.matrixL();
    const Matrix R = lz.matrixL();
    const Eigen::JacobiSVD<Matrix> nt(Matrix(R.adjoint() * L), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector lambda = nt.singularValues();
    const Matrix G = L * nt.matrixV() * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
    const Matrix W = hermitize(Matrix(G * G.adjoint()));

    RealMatrix M(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    std::vector<Matrix> WAW(m);
    for (std::size_t j = 0; j < m; ++j)
      WAW[j] = W * p.constraints[j].A * W;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner(p.constraints[i].A, WAW[j]);
    const Eigen::LDLT<RealMatrix> schur(M);

    const Matrix WRdW = W * Rd * W;
    struct Direction {
      Matrix dX, dZ;
      RealVector dy;
    };
    auto direction = [&](double target) {
      RealVector centre(n);
      for (Eigen::Index i = 0; i < n; ++i)
        centre(i) = target / lambda(i) - lambda(i);
      const Matrix rc = hermitize(Matrix(G * centre.asDiagonal() * G.adjoint()));
      RealVector rhs = rp - apply_A(Matrix(rc - WRdW));
      Direction d;
      d.dy = schur.solve(rhs);
      d.dZ = hermitize(Matrix(Rd - apply_At(d.dy)));
      d.dX = hermitize(Matrix(rc - W * d.dZ * W));
      return d;
    };

    const Direction aff = direction(0.0);
    const double ap_aff = std::min(1.0, max_step(X, aff.dX));
    const double ad_aff = std::min(1.0, max_step(Z, aff.dZ));
    const double mu_aff =
        inner(Matrix(X + ap_aff * aff.dX), Matrix(Z + ad_aff * aff.dZ)) / static_cast<double>(n);
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    const Direction d = direction(sigma * mu);
    // Near the optimum the eigenvalue-based bound can be off by rounding;
    // shorten until the new iterate still factors as positive definite.
    auto take_step = [&](const Matrix& S, const Matrix& dS, double& alpha) {
      alpha = std::min(1.0, opt.step_fraction * max_step(S, dS));
      for (int tries = 0; alpha > 0.0 && tries < 60; ++tries, alpha *= 0.5) {
        Matrix next = hermitize(Matrix(S + alpha * dS));
        if (Eigen::LLT<Matrix>(next).info() == Eigen::Success)
          return next;
      }
      alpha = 0.0;
      return S;
    };
    double ap = 0.0, ad = 0.0;
    Matrix X_next = take_step(X, d.dX, ap);
    Matrix Z_next = take_step(Z, d.dZ, ad);
    if (!(ap > 0.0) || !(ad > 0.0))
      throw SdpConvergenceError<Scalar>("solve_sdp: interior-point step collapsed", sol);

    X = std::move(X_next);
    y += ad * d.dy;
    Z = std::move(Z_next);
  }
}

struct RankOne {
  ComplexVector y; // sqrt(lambda_1) v_1
  double eig_ratio = 0.0;
};

/// Dominant rank-one factor of a Hermitian PSD matrix and lambda_1 / lambda_2.
template <typename Derived>
RankOne extract_rank_one(const Eigen::MatrixBase<Derived>& Y) {
  using Matrix = typename Derived::PlainObject;
  const Matrix H = sdp_detail::hermitize(Matrix(Y));
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  const Eigen::Index n = H.rows();
  const double l1 = es.eigenvalues()(n - 1);
  const double l2 = n > 1 ? es.eigenvalues()(n - 2) : 0.0;
  RankOne out;
  out.y = std::sqrt(std::max(l1, 0.0)) * es.eigenvectors().col(n - 1).template cast<Complex>();
  out.eig_ratio = l1 / std::max(l2, std::numeric_limits<double>::min());
  return out;
}

/// Plain-text dump: header line, dimensions, then each matrix as rows of
/// "re im" pairs.
template <typename Scalar>
void write_sdp_problem(std::ostream& os, const SdpProblemT<Scalar>& p) {
  const auto dump = [&os](const auto& A) {
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
      for (Eigen::Index j = 0; j < A.cols(); ++j) {
        const Complex z(A(i, j));
        os << (j ? "  " : "") << z.real() << ' ' << z.imag();
      }
      os << '\n';
    }
  };
  os << std::setprecision(17);
  os << "# hybridprec sdp problem\n";
  os << "n " << p.dimension() << "\nm " << p.constraints.size() << "\nC\n";
  dump(p.C);
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    os << "A " << i << " b " << p.constraints[i].b << '\n';
    dump(p.constraints[i].A);
  }
}

} // namespace hybridprec

#endif
