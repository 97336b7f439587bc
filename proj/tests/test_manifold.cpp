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

#include <catch_amalgamated.hpp>

#include <random>

#include "hybridprec/manifold.hpp"
#include "support/oracles.hpp"

using namespace hybridprec;

namespace {

double direct_cost(const ComplexVector& x, const std::vector<AnalogTarget>& targets, Eigen::Index n, Eigen::Index r) {
  const ComplexMatrix X = unvec(x, n, r);
  double acc = 0.0;
  for (const auto& t : targets)
    acc += (t.F_opt - X * t.F_BB).squaredNorm();
  return acc;
}

std::vector<AnalogTarget> random_targets(std::mt19937_64& g, Eigen::Index n, Eigen::Index r, Eigen::Index ns,
                                         int K = 1) {
  std::vector<AnalogTarget> t;
  for (int k = 0; k < K; ++k)
    t.push_back({oracle::semi_unitary(g, n, ns), oracle::gaussian(g, r, ns) * 0.2});
  return t;
}

double max_tangency_violation(const CirclePoint& x, const ComplexVector& z) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    worst = std::max(worst, std::abs((z(i) * std::conj(x.vector()(i))).real()));
  return worst;
}

} // namespace

TEST_CASE("CirclePoint enforces unit modulus", "[manifold]") {
  ComplexVector v(2);
  v << Complex(1.0, 0.0), Complex(0.0, 1.0);
  CHECK_NOTHROW(CirclePoint(v));
  v(1) = Complex(0.0, 1.1);
  CHECK_THROWS_AS(CirclePoint(v), InvalidInput);
}

TEST_CASE("project_tangent direct evaluation", "[manifold]") {
  ComplexVector x(2), g(2);
  x << Complex(1, 0), Complex(0, 1);
  g << Complex(1, 1), Complex(2, 0);
  const TangentVector z = project_tangent(CirclePoint(x), g);
  CHECK(std::abs(z.z(0) - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(z.z(1) - Complex(2, 0)) < 1e-15);
}

TEST_CASE("project_tangent is idempotent and annihilates normals", "[manifold]") {
  std::mt19937_64 g(1);
  const CirclePoint x(oracle::vec(oracle::unit_modulus(g, 12, 1)));
  const ComplexVector v = oracle::vec(oracle::gaussian(g, 12, 1));
  const TangentVector z = project_tangent(x, v);
  CHECK(max_tangency_violation(x, z.z) <= 1e-10);
  CHECK((project_tangent(x, z.z).z - z.z).norm() <= 1e-14);
  CHECK(project_tangent(x, x.vector()).z.norm() <= 1e-14);
  CHECK_THROWS_AS(project_tangent(x, ComplexVector::Zero(3)), InvalidInput);
}

TEST_CASE("retract normalizes and handles the trivial step", "[manifold]") {
  ComplexVector one(1), j(1);
  one << Complex(1, 0);
  j << Complex(0, 1);
  const CirclePoint r = retract(CirclePoint(one), {j});
  CHECK(std::abs(r.vector()(0) - Complex(1, 1) / std::sqrt(2.0)) < 1e-15);

  std::mt19937_64 g(2);
  const CirclePoint x(oracle::vec(oracle::unit_modulus(g, 20, 1)));
  CHECK((retract(x, {ComplexVector::Zero(20)}).vector() - x.vector()).cwiseAbs().maxCoeff() <= 1e-15);
  for (int t = 0; t < 20; ++t) {
    const TangentVector v = project_tangent(x, 3.0 * oracle::vec(oracle::gaussian(g, 20, 1)));
    const CirclePoint y = retract(x, v);
    for (Eigen::Index i = 0; i < 20; ++i)
      CHECK(std::abs(std::abs(y.vector()(i)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("retract reports a vanishing entry", "[manifold]") {
  ComplexVector one(1), minus(1);
  one << Complex(1, 0);
  minus << Complex(-1, 0);
  CHECK_THROWS_AS(retract(CirclePoint(one), {minus}), RetractionSingularity);
}

TEST_CASE("transport lands in the new tangent space", "[manifold]") {
  std::mt19937_64 g(3);
  const CirclePoint x(oracle::vec(oracle::unit_modulus(g, 10, 1)));
  const CirclePoint y(oracle::vec(oracle::unit_modulus(g, 10, 1)));
  const TangentVector d = project_tangent(x, oracle::vec(oracle::gaussian(g, 10, 1)));
  CHECK(max_tangency_violation(y, transport(y, d.z).z) <= 1e-10);
  CHECK((transport(x, d.z).z - d.z).norm() <= 1e-14);
  const TangentVector e = project_tangent(y, oracle::vec(oracle::gaussian(g, 10, 1)));
  CHECK((transport(y, e.z).z - e.z).norm() <= 1e-14);
}

TEST_CASE("euclidean gradient vanishes at an exact factorization", "[manifold]") {
  std::mt19937_64 g(4);
  const ComplexMatrix F_RF = oracle::unit_modulus(g, 8, 3);
  const ComplexMatrix F_BB = oracle::gaussian(g, 3, 2);
  const std::vector<AnalogTarget> t{{F_RF * F_BB, F_BB}};
  CHECK(euclidean_gradient(CirclePoint::from_matrix(F_RF), t).norm() <= 1e-13);
}

TEST_CASE("euclidean gradient matches the explicit Kronecker form", "[manifold]") {
  std::mt19937_64 g(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix F_opt = oracle::gaussian(g, 4, 2);
    const ComplexMatrix F_RF = oracle::unit_modulus(g, 4, 2);
    const ComplexMatrix F_BB = oracle::gaussian(g, 2, 2);
    const ComplexVector ours = euclidean_gradient(CirclePoint::from_matrix(F_RF), {{F_opt, F_BB}});
    const ComplexVector ref = oracle::kron_gradient(F_opt, F_RF, F_BB);
    CHECK((ours - ref).cwiseAbs().maxCoeff() <= 1e-12);
    const ComplexVector via_obj = AnalogObjective({{F_opt, F_BB}}).gradient(vec(F_RF));
    CHECK((via_obj - ref).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("euclidean gradient matches central finite differences", "[manifold]") {
  std::mt19937_64 g(6);
  for (int K : {1, 3}) {
    const auto targets = random_targets(g, 9, 3, 2, K);
    const ComplexVector x = oracle::vec(oracle::unit_modulus(g, 9, 3));
    const ComplexVector grad = euclidean_gradient(CirclePoint(x), targets);
    auto f = [&](const ComplexVector& y) { return direct_cost(y, targets, 9, 3); };
    // Coordinate directions over real and imaginary parts.
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      for (Complex dir : {Complex(1, 0), Complex(0, 1)}) {
        ComplexVector e = ComplexVector::Zero(x.size());
        e(i) = dir;
        const double fd = oracle::directional_fd(f, x, e);
        const double an = real_inner(grad, e);
        CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
      }
    }
  }
}

TEST_CASE("objective cost and cost change agree with direct summation", "[manifold]") {
  std::mt19937_64 g(7);
  const auto targets = random_targets(g, 16, 4, 3, 4);
  const AnalogObjective obj(targets);
  const ComplexVector x = oracle::vec(oracle::unit_modulus(g, 16, 4));
  const ComplexVector y = oracle::vec(oracle::unit_modulus(g, 16, 4));
  const double fx = direct_cost(x, targets, 16, 4), fy = direct_cost(y, targets, 16, 4);
  CHECK(obj.cost(x) == Catch::Approx(fx).epsilon(1e-12));
  CHECK(obj.cost_change(x, y) == Catch::Approx(fy - fx).epsilon(1e-10));
  // Exact quadratic expansion along a direction.
  const ComplexVector d = oracle::vec(oracle::gaussian(g, 16, 4));
  const double t = 0.3;
  const double model = fx + t * real_inner(obj.gradient(x), d) + t * t * obj.curvature(d);
  CHECK(direct_cost(x + t * d, targets, 16, 4) == Catch::Approx(model).epsilon(1e-11));
}

TEST_CASE("directional derivative through the retraction", "[manifold]") {
  std::mt19937_64 g(8);
  const auto targets = random_targets(g, 16, 3, 2);
  const AnalogObjective obj(targets);
  const CirclePoint x(oracle::vec(oracle::unit_modulus(g, 16, 3)));
  const TangentVector rg = project_tangent(x, obj.gradient(x.vector()));
  const TangentVector d = project_tangent(x, oracle::vec(oracle::gaussian(g, 16, 3)));
  const double t = 1e-6;
  const double fd = (obj.cost(retract(x, {t * d.z}).vector()) - obj.cost(x.vector())) / t;
  const double an = real_inner(rg.z, d.z);
  CHECK(std::abs(fd - an) <= 1e-4 * std::abs(an));
}

TEST_CASE("CG returns immediately at a stationary point", "[manifold]") {
  std::mt19937_64 g(9);
  const ComplexMatrix F_RF = oracle::unit_modulus(g, 8, 2);
  const ComplexMatrix F_BB = oracle::gaussian(g, 2, 2);
  const CgResult r = riemannian_cg(CirclePoint::from_matrix(F_RF), {{F_RF * F_BB, F_BB}});
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.gradient_evaluations == 1);
  CHECK(r.x.vector() == vec(F_RF));
}

TEST_CASE("CG recovers a feasible unit-modulus target", "[manifold]") {
  std::mt19937_64 g(10);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix F_opt = oracle::unit_modulus(g, 16, 3);
    const ComplexMatrix I = ComplexMatrix::Identity(3, 3);
    CgParams p;
    p.max_iters = 2000;
    p.grad_tol = 1e-10;
    const CgResult r = riemannian_cg(CirclePoint::from_matrix(oracle::unit_modulus(g, 16, 3)), {{F_opt, I}}, p);
    CHECK(r.cost_history.back() <= 1e-8);
  }
}

TEST_CASE("CG cost history is non-increasing and iterates stay feasible", "[manifold]") {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto targets = random_targets(g, 16, 3, 2, 1 + trial % 3);
    const AnalogObjective obj(targets);
    CgParams p;
    p.max_iters = 5000;
    const CgResult r = riemannian_cg(CirclePoint(oracle::vec(oracle::unit_modulus(g, 16, 3))), obj, p);
    for (std::size_t i = 1; i < r.cost_history.size(); ++i)
      CHECK(r.cost_history[i] <= r.cost_history[i - 1]);
    for (Eigen::Index i = 0; i < r.x.size(); ++i)
      CHECK(std::abs(std::abs(r.x.vector()(i)) - 1.0) <= 1e-12);
    CHECK(r.cost_history.back() == Catch::Approx(obj.cost(r.x.vector())).epsilon(1e-9));
    const TangentVector rg = project_tangent(r.x, obj.gradient(r.x.vector()));
    CHECK(max_tangency_violation(r.x, rg.z) <= 1e-10);
    if (!r.stalled) {
      CHECK(r.converged);
      CHECK(rg.z.norm() <= p.effective_grad_tol(r.x.size()));
    }
  }
}

TEST_CASE("CG parameter validation", "[manifold]") {
  std::mt19937_64 g(12);
  const auto targets = random_targets(g, 4, 2, 2);
  const CirclePoint x(oracle::vec(oracle::unit_modulus(g, 4, 2)));
  CgParams p;
  p.armijo_shrink = 1.0;
  CHECK_THROWS_AS(riemannian_cg(x, targets, p), InvalidInput);
  p = {};
  p.max_iters = 0;
  CHECK_THROWS_AS(riemannian_cg(x, targets, p), InvalidInput);
  p = {};
  p.armijo_c = 0.0;
  CHECK_THROWS_AS(riemannian_cg(x, targets, p), InvalidInput);
  CHECK_THROWS_AS(riemannian_cg(CirclePoint(oracle::vec(oracle::unit_modulus(g, 5, 1))), targets), InvalidInput);
}
