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

#ifndef HYBRIDPREC_MANIFOLD_HPP
#define HYBRIDPREC_MANIFOLD_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "hybridprec/numerics.hpp"

namespace hybridprec {

/// A point on the product of m complex circles: every entry has modulus one.
class CirclePoint {
public:
  static constexpr double kModulusTol = 1e-12;

  CirclePoint() = default;

  explicit CirclePoint(ComplexVector x) : x_(std::move(x)) {
    for (Eigen::Index i = 0; i < x_.size(); ++i)
      if (std::abs(std::abs(x_(i)) - 1.0) > kModulusTol)
        throw InvalidInput("CirclePoint: entry " + std::to_string(i) + " is not unit modulus");
  }

  static CirclePoint from_matrix(const ComplexMatrix& A) { return CirclePoint(vec(A)); }

  const ComplexVector& vector() const { return x_; }
  Eigen::Index size() const { return x_.size(); }
  ComplexMatrix as_matrix(Eigen::Index rows, Eigen::Index cols) const { return unvec(x_, rows, cols); }

private:
  ComplexVector x_;
};

/// Tangent vector at some CirclePoint: Re{z_i conj(x_i)} = 0.
struct TangentVector {
  ComplexVector z;
};

inline double real_inner(const ComplexVector& a, const ComplexVector& b) { return a.dot(b).real(); }

/// Orthogonal projection onto T_x: g - Re{g o x*} o x.
inline TangentVector project_tangent(const CirclePoint& x, const ComplexVector& g) {
  const ComplexVector& p = x.vector();
  if (p.size() != g.size())
    throw InvalidInput("project_tangent: length mismatch");
  ComplexVector z(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i)
    z(i) = g(i) - (g(i) * std::conj(p(i))).real() * p(i);
  return {std::move(z)};
}

/// Entry-wise renormalization of x + v.
inline CirclePoint retract(const CirclePoint& x, const TangentVector& v) {
  const ComplexVector& p = x.vector();
  if (p.size() != v.z.size())
    throw InvalidInput("retract: length mismatch");
  ComplexVector y(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Complex s = p(i) + v.z(i);
    const double mag = std::abs(s);
    if (mag < 1e-14)
      throw RetractionSingularity("retract: |x_i + v_i| vanished at index " + std::to_string(i));
    y(i) = s / mag;
  }
  return CirclePoint(std::move(y));
}

/// Carries a vector into T_{x_new}; same formula as the projection.
inline TangentVector transport(const CirclePoint& x_new, const ComplexVector& d) { return project_tangent(x_new, d); }

/// (F_opt, F_BB) pair of one subcarrier in the analog subproblem.
struct AnalogTarget {
  ComplexMatrix F_opt;
  ComplexMatrix F_BB;
};

/// f(x) = sum_k ||F_opt[k] - unvec(x) F_BB[k]||_F^2 with x = vec(F_RF).
///
/// Everything that does not depend on F_RF is folded into the Gram terms
/// P = sum_k F_opt[k] F_BB[k]^H and Q = sum_k F_BB[k] F_BB[k]^H, so cost and
/// gradient evaluations are independent of the subcarrier count.
class AnalogObjective {
public:
  explicit AnalogObjective(const std::vector<AnalogTarget>& targets) {
    if (targets.empty())
      throw InvalidInput("AnalogObjective: at least one target required");
    n_t_ = targets.front().F_opt.rows();
    n_rf_ = targets.front().F_BB.rows();
    P_ = ComplexMatrix::Zero(n_t_, n_rf_);
    Q_ = ComplexMatrix::Zero(n_rf_, n_rf_);
    for (const auto& t : targets) {
      if (t.F_opt.rows() != n_t_ || t.F_BB.rows() != n_rf_ || t.F_BB.cols() != t.F_opt.cols())
        throw InvalidInput("AnalogObjective: inconsistent target dimensions");
      P_.noalias() += t.F_opt * t.F_BB.adjoint();
      Q_.noalias() += t.F_BB * t.F_BB.adjoint();
      c0_ += t.F_opt.squaredNorm();
    }
  }

  Eigen::Index n_t() const { return n_t_; }
  Eigen::Index n_rf() const { return n_rf_; }
  Eigen::Index dimension() const { return n_t_ * n_rf_; }

  double cost(const ComplexVector& x) const {
    const auto X = Eigen::Map<const ComplexMatrix>(x.data(), n_t_, n_rf_);
    const ComplexMatrix XQ = X * Q_;
    return c0_ + (X.conjugate().cwiseProduct(XQ - 2.0 * P_)).sum().real();
  }

  /// f(x_new) - f(x) without the cancellation of two absolute costs.
  double cost_change(const ComplexVector& x, const ComplexVector& x_new) const {
    const auto X = Eigen::Map<const ComplexMatrix>(x.data(), n_t_, n_rf_);
    const auto Xn = Eigen::Map<const ComplexMatrix>(x_new.data(), n_t_, n_rf_);
    const ComplexMatrix delta = Xn - X;
    const ComplexMatrix S = (Xn + X) * Q_ - 2.0 * P_;
    return (delta.conjugate().cwiseProduct(S)).sum().real();
  }

  /// -2 vec(P - F_RF Q), i.e. 2 df/dx*.
  ComplexVector gradient(const ComplexVector& x) const {
    const auto X = Eigen::Map<const ComplexMatrix>(x.data(), n_t_, n_rf_);
    const ComplexMatrix G = -2.0 * (P_ - X * Q_);
    return vec(G);
  }

  /// Curvature of the ambient quadratic along d: f(x + t d) = f + t <grad, d> + t^2 curvature.
  double curvature(const ComplexVector& d) const {
    const auto D = Eigen::Map<const ComplexMatrix>(d.data(), n_t_, n_rf_);
    return (D.conjugate().cwiseProduct(D * Q_)).sum().real();
  }

private:
  Eigen::Index n_t_ = 0;
  Eigen::Index n_rf_ = 0;
  ComplexMatrix P_;
  ComplexMatrix Q_;
  double c0_ = 0.0;
};

/// Euclidean gradient -2 sum_k vec((F_opt[k] - F_RF F_BB[k]) F_BB[k]^H), evaluated
/// per subcarrier without Kronecker products.
inline ComplexVector euclidean_gradient(const CirclePoint& x, const std::vector<AnalogTarget>& targets) {
  if (targets.empty())
    throw InvalidInput("euclidean_gradient: at least one target required");
  const Eigen::Index n_t = targets.front().F_opt.rows();
  const Eigen::Index n_rf = targets.front().F_BB.rows();
  const ComplexMatrix X = x.as_matrix(n_t, n_rf);
  ComplexMatrix G = ComplexMatrix::Zero(n_t, n_rf);
  for (const auto& t : targets) {
    if (t.F_opt.rows() != n_t || t.F_BB.rows() != n_rf || t.F_BB.cols() != t.F_opt.cols())
      throw InvalidInput("euclidean_gradient: inconsistent target dimensions");
    G.noalias() -= 2.0 * (t.F_opt - X * t.F_BB) * t.F_BB.adjoint();
  }
  return vec(G);
}

struct CgParams {
  int max_iters = 200;
  double grad_tol = -1.0; // <= 0 selects 1e-6 * sqrt(m)
  double armijo_c = 1e-4;
  double armijo_shrink = 0.5;
  double initial_step = 1.0; // trial step length, used when the model curvature vanishes
  int max_backtracks = 50;

  double effective_grad_tol(Eigen::Index m) const {
    return grad_tol > 0.0 ? grad_tol : 1e-6 * std::sqrt(static_cast<double>(m));
  }

  void validate() const {
    if (max_iters < 1 || max_backtracks < 1)
      throw InvalidInput("CgParams: iteration limits must be positive");
    if (!(armijo_c > 0.0 && armijo_c < 1.0) || !(armijo_shrink > 0.0 && armijo_shrink < 1.0))
      throw InvalidInput("CgParams: Armijo constants must lie in (0, 1)");
    if (!(initial_step > 0.0))
      throw InvalidInput("CgParams: initial step must be positive");
  }
};

struct CgResult {
  CirclePoint x;
  std::vector<double> cost_history; // cost_history[0] is f(x0)
  int iterations = 0;               // accepted steps
  int gradient_evaluations = 0;
  double grad_norm = 0.0;
  bool converged = false; // grad_norm <= tol
  bool stalled = false;   // line search exhausted its backtracks
};

/// Riemannian conjugate gradient on the complex circle manifold.
///
/// Each iteration backtracks from the minimizer of the second-order model
/// of the cost along the retraction curve in direction d until the Armijo condition holds, retracts, transports the
/// previous gradient and direction, and forms a Polak-Ribiere+ direction.
inline CgResult riemannian_cg(const CirclePoint& x0, const AnalogObjective& obj, const CgParams& params) {
  params.validate();
  if (x0.size() != obj.dimension())
    throw InvalidInput("riemannian_cg: start point has wrong dimension");

  const double tol = params.effective_grad_tol(x0.size());
  CgResult res;
  res.x = x0;

  double f = obj.cost(x0.vector());
  res.cost_history.push_back(f);
  ComplexVector eg = obj.gradient(res.x.vector());
  TangentVector g = project_tangent(res.x, eg);
  res.gradient_evaluations = 1;
  double gnorm = g.z.norm();
  res.grad_norm = gnorm;
  if (gnorm <= tol) {
    res.converged = true;
    return res;
  }

  ComplexVector d = -g.z;
  for (int it = 0; it < params.max_iters; ++it) {
    double slope = real_inner(g.z, d);
    if (!(slope < 0.0)) {
      d = -g.z;
      slope = -gnorm * gnorm;
    }

    // Second-order term of t -> f(retract(x, t d)): ambient curvature plus
    // the circle's own curvature, -1/2 sum Re{egrad_i conj(x_i)} |d_i|^2.
    double curv = obj.curvature(d);
    for (Eigen::Index i = 0; i < d.size(); ++i)
      curv -= 0.5 * (eg(i) * std::conj(res.x.vector()(i))).real() * std::norm(d(i));
    double alpha = curv > 0.0 ? -slope / (2.0 * curv) : params.initial_step / d.norm();

    bool accepted = false;
    CirclePoint x_new;
    double df = 0.0;
    for (int bt = 0; bt < params.max_backtracks; ++bt) {
      try {
        x_new = retract(res.x, TangentVector{alpha * d});
      } catch (const RetractionSingularity&) {
        alpha *= 0.5;
        continue;
      }
      df = obj.cost_change(res.x.vector(), x_new.vector());
      if (df <= params.armijo_c * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= params.armijo_shrink;
    }
    if (!accepted) {
      res.stalled = true;
      break;
    }

    ComplexVector eg_new = obj.gradient(x_new.vector());
    TangentVector g_new = project_tangent(x_new, eg_new);
    ++res.gradient_evaluations;
    const TangentVector g_old = transport(x_new, g.z);
    const TangentVector d_old = transport(x_new, d);
    const double beta = std::max(0.0, real_inner(g_new.z, g_new.z - g_old.z) / (gnorm * gnorm));
    d = -g_new.z + beta * d_old.z;

    res.x = std::move(x_new);
    g = std::move(g_new);
    eg = std::move(eg_new);
    gnorm = g.z.norm();
    f += df;
    res.cost_history.push_back(f);
    res.iterations = it + 1;
    res.grad_norm = gnorm;
    if (gnorm <= tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

inline CgResult riemannian_cg(const CirclePoint& x0, const std::vector<AnalogTarget>& targets,
                              const CgParams& params = {}) {
  return riemannian_cg(x0, AnalogObjective(targets), params);
}

} // namespace hybridprec

#endif
