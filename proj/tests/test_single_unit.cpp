// Copyright 2026 The spca Authors
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

#include <doctest.h>

#include "oracles.hpp"
#include "spca/single_unit.hpp"

using namespace spca;

namespace {

DataMatrix identity2() { return DataMatrix(Matrix::Identity(2, 2)); }

Vector e(Eigen::Index p, Eigen::Index i) { return Vector::Unit(p, i); }

double objective(Penalty penalty, const DataMatrix& a, const Vector& x, double gamma) {
  return penalty == Penalty::L1 ? objective_sl1(a, x, gamma) : objective_sl0(a, x, gamma);
}

Vector direction(Penalty penalty, const DataMatrix& a, const Vector& x, double gamma) {
  return penalty == Penalty::L1 ? ascent_direction_sl1(a, x, gamma) : ascent_direction_sl0(a, x, gamma);
}

SparseLoadings recover(Penalty penalty, const DataMatrix& a, const Vector& x, double gamma) {
  return penalty == Penalty::L1 ? recover_pattern_sl1(a, x, gamma) : recover_pattern_sl0(a, x, gamma);
}

SolverConfig config(Penalty penalty, double gamma, double tol = 1e-6) {
  SolverConfig c;
  c.penalty = penalty;
  c.gamma = {gamma};
  c.tol = tol;
  return c;
}

}  // namespace

TEST_CASE("objectives on hand examples") {
  const DataMatrix a = identity2();
  CHECK(objective_sl1(a, e(2, 0), 0.0) == 1.0);
  CHECK(objective_sl1(a, e(2, 0), 0.5) == 0.25);
  CHECK(objective_sl0(a, e(2, 0), 0.0) == 1.0);
  CHECK(objective_sl0(a, e(2, 0), 2.0) == 0.0);
  CHECK_THROWS_AS(objective_sl1(a, Vector::Ones(2), 0.0), ArgumentError);
  CHECK_THROWS_AS(objective_sl0(a, e(3, 0), 0.0), ArgumentError);
}

TEST_CASE("objectives match direct summation") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = oracle::gaussian(3, 5, rng);
    const DataMatrix a(m);
    const Vector x = oracle::unit(3, rng);
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      CHECK(objective(penalty, a, x, 0.05) == doctest::Approx(oracle::objective(m, x, 0.05, penalty)).epsilon(1e-14));
    }
  }
}

TEST_CASE("ascent directions on hand examples") {
  const DataMatrix a = identity2();
  CHECK(ascent_direction_sl1(a, e(2, 0), 0.0) == Vector(Vector::Unit(2, 0) * 2.0));
  CHECK(ascent_direction_sl1(a, e(2, 0), 1.5).isZero(0.0));
  CHECK(ascent_direction_sl0(a, e(2, 0), 0.5) == Vector(Vector::Unit(2, 0) * 2.0));
  CHECK(ascent_direction_sl0(a, e(2, 0), 2.0).isZero(0.0));
}

TEST_CASE("ascent directions match finite differences away from kinks") {
  std::mt19937_64 rng(22);
  const double gamma = 0.3;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Matrix m = oracle::gaussian(4, 9, rng);
    const DataMatrix a(m);
    const Vector x = oracle::unit(4, rng);
    const Vector c = m.transpose() * x;
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      bool near_kink = false;
      for (Eigen::Index i = 0; i < c.size(); ++i) {
        const double gap = penalty == Penalty::L1 ? std::abs(c[i]) - gamma : c[i] * c[i] - gamma;
        near_kink = near_kink || std::abs(gap) < 1e-4;
      }
      if (near_kink) continue;
      const Matrix fd = oracle::finite_difference(
          [&](const Matrix& y) { return oracle::objective(m, y.col(0), gamma, penalty); }, x);
      CHECK((direction(penalty, a, x, gamma) - fd.col(0)).cwiseAbs().maxCoeff() < 1e-6);
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("power_step normalizes or signals a fixed point") {
  const SingleUnitState s{e(2, 0), 0.0, 0};
  Vector g(2);
  g << 3, 4;
  const StepOutcome out = power_step(s, g);
  CHECK_FALSE(out.fixed_point);
  CHECK(out.state.x[0] == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(out.state.x[1] == doctest::Approx(0.8).epsilon(1e-15));
  const StepOutcome fixed = power_step(s, Vector::Zero(2));
  CHECK(fixed.fixed_point);
  CHECK(fixed.state.x == s.x);
}

TEST_CASE("a single power step never decreases the objective") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 1000; ++t) {
    const Matrix m = oracle::gaussian(1 + t % 6, 2 + t % 11, rng);
    const DataMatrix a(m);
    const Vector x = oracle::unit(m.rows(), rng);
    const double gamma = 0.1 * (t % 7);
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      const Vector g = direction(penalty, a, x, gamma);
      const StepOutcome out = power_step({x, objective(penalty, a, x, gamma), 0}, g);
      if (out.fixed_point) continue;
      CHECK(objective(penalty, a, out.state.x, gamma) >= objective(penalty, a, x, gamma) - 1e-12);
    }
  }
}

TEST_CASE("pattern recovery on hand examples") {
  const DataMatrix a = identity2();
  CHECK(recover_pattern_sl1(a, e(2, 0), 0.5).values().col(0) == e(2, 0));
  CHECK(recover_pattern_sl1(a, e(2, 0), 1.0).values().isZero(0.0));
  CHECK(recover_pattern_sl0(a, e(2, 0), 0.5).values().col(0) == e(2, 0));
  CHECK(recover_pattern_sl0(a, e(2, 0), 2.0).values().isZero(0.0));

  Matrix m(2, 2);
  m << 1, 0.6, 0, 0.8;
  const SparseLoadings z = recover_pattern_sl1(DataMatrix(m), e(2, 0), 0.5);
  CHECK(z.values()(0, 0) == doctest::Approx(0.98058067569092).epsilon(1e-12));
  CHECK(z.values()(1, 0) == doctest::Approx(0.19611613513818).epsilon(1e-12));

  // Best response of x^T A z - gamma ||z||_1 over a fine grid of unit z.
  const double pi = std::acos(-1.0);
  double best = -1e300;
  Vector arg(2);
  for (int k = 0; k < 200000; ++k) {
    const double t = 2 * pi * k / 200000;
    const double v = std::cos(t) * 1.0 + std::sin(t) * 0.6 - 0.5 * (std::abs(std::cos(t)) + std::abs(std::sin(t)));
    if (v > best) {
      best = v;
      arg << std::cos(t), std::sin(t);
    }
  }
  CHECK((arg - z.values().col(0)).norm() < 1e-4);
}

TEST_CASE("L0 pattern recovery matches support enumeration on 2 x 4 instances") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 100; ++t) {
    const Matrix m = oracle::gaussian(2, 4, rng);
    const Vector x = oracle::unit(2, rng);
    const double gamma = 0.5 * (t % 4) / 4.0;
    const SparseLoadings z = recover_pattern_sl0(DataMatrix(m), x, gamma);
    // For fixed x the best support keeps exactly the terms with (a_i^T x)^2 > gamma.
    double best = -1.0;
    unsigned arg = 0;
    for (unsigned mask = 0; mask < 16; ++mask) {
      double v = 0.0;
      for (unsigned i = 0; i < 4; ++i) {
        if (mask >> i & 1u) {
          const double c = oracle::dot_loop(m, i, x, 0);
          v += c * c - gamma;
        }
      }
      if (v > best) best = v, arg = mask;
    }
    unsigned got = 0;
    for (auto i : z.support(0)) got |= 1u << i;
    CHECK(got == arg);
  }
}

TEST_CASE("gamma-monotone support at fixed x") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 1.5);
  for (int t = 0; t < 300; ++t) {
    const Matrix m = oracle::gaussian(3, 12, rng);
    const DataMatrix a(m);
    const Vector x = oracle::unit(3, rng);
    double g1 = u(rng);
    double g2 = u(rng);
    if (g1 > g2) std::swap(g1, g2);
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      const auto wide = recover(penalty, a, x, g1).support(0);
      const auto narrow = recover(penalty, a, x, g2).support(0);
      CHECK(std::includes(wide.begin(), wide.end(), narrow.begin(), narrow.end()));
    }
  }
}

TEST_CASE("solve_single_unit recovers PCA at gamma = 0") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 20; ++t) {
    const Matrix m = oracle::gaussian(6, 10, rng);
    const Vector sv = oracle::singular_values(m);
    if (sv[1] > 0.9 * sv[0]) continue;
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      SolverConfig c = config(penalty, 0.0, 1e-14);
      c.step_tol = 1e-12;
      c.max_iter = 100000;
      const SolveResult r = solve_single_unit(DataMatrix(m), c);
      const Vector v = oracle::right_singular(m, 1).col(0);
      CHECK(std::abs(v.dot(r.loadings.values().col(0))) >= 1 - 1e-8);
    }
  }
}

TEST_CASE("solve_single_unit hand instances") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  const SolveResult r = solve_single_unit(DataMatrix(d), config(Penalty::L0, 0.1));
  CHECK(std::abs(r.loadings.values()(0, 0)) == 1.0);
  CHECK(r.loadings.values()(1, 0) == 0.0);
  CHECK(oracle::grid_max_p2(d, 0.1, Penalty::L0) <= objective_sl0(DataMatrix(d), r.x.col(0), 0.1) + 1e-12);

  std::mt19937_64 rng(27);
  const Matrix m = oracle::gaussian(4, 6, rng);
  const double top = m.colwise().norm().maxCoeff();
  for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
    const double gamma = penalty == Penalty::L1 ? top : top * top;
    const SolveResult zero = solve_single_unit(DataMatrix(m), config(penalty, gamma));
    CHECK(zero.loadings.values().isZero(0.0));
    CHECK(zero.report.trivial_zero);
    CHECK(zero.report.converged);
  }
  const SolveResult flat = solve_single_unit(DataMatrix(Matrix::Zero(3, 4)), config(Penalty::L1, 0.0));
  CHECK(flat.loadings.values().isZero(0.0));
  CHECK(flat.report.converged);

  SolverConfig wrong = config(Penalty::L1, 0.0);
  wrong.m = 2;
  CHECK_THROWS_AS(solve_single_unit(DataMatrix(m), wrong), ArgumentError);
}

TEST_CASE("objective history is non-decreasing and iterates stay on the sphere") {
  std::mt19937_64 rng(28);
  for (int t = 0; t < 200; ++t) {
    const Matrix m = oracle::gaussian(2 + t % 9, 3 + t % 17, rng);
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      SolverConfig c = config(penalty, 0.05 * (t % 5));
      double worst = 0.0;
      c.on_iterate = [&](int, const Matrix& x, double) { worst = std::max(worst, std::abs(x.norm() - 1.0)); };
      const SolveResult r = solve_single_unit(DataMatrix(m), c);
      const auto& h = r.report.objective_history.front();
      for (std::size_t k = 1; k < h.size(); ++k) CHECK(h[k] >= h[k - 1] - 1e-12);
      CHECK(worst <= 1e-12);
    }
  }
}

TEST_CASE("converged iterates are stationary") {
  std::mt19937_64 rng(29);
  const double tol = 1e-8;
  for (int t = 0; t < 100; ++t) {
    const Matrix m = oracle::gaussian(5, 20, rng);
    const DataMatrix a(m);
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      SolverConfig c = config(penalty, 0.1, tol);
      c.step_tol = tol;
      c.max_iter = 100000;
      const SolveResult r = solve_single_unit(a, c);
      REQUIRE(r.report.converged);
      const Vector x = r.x.col(0);
      const Vector g = direction(penalty, a, x, 0.1);
      if (g.norm() == 0.0) continue;
      CHECK((x - g / g.norm()).norm() <= 10 * tol);
    }
  }
}

TEST_CASE("sign symmetry and threshold scale equivariance") {
  std::mt19937_64 rng(30);
  for (int t = 0; t < 50; ++t) {
    const Matrix m = oracle::gaussian(4, 9, rng);
    const DataMatrix a(m);
    const Vector x0 = oracle::unit(4, rng);
    for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
      SolverConfig c = config(penalty, 0.2);
      c.init = InitStrategy::UserSupplied;
      c.initial_point = Matrix(x0);
      const SolveResult plus = solve_single_unit(a, c);
      c.initial_point = Matrix(-x0);
      const SolveResult minus = solve_single_unit(a, c);
      const Vector zp = plus.loadings.values().col(0);
      const Vector zm = minus.loadings.values().col(0);
      CHECK(std::min((zp - zm).norm(), (zp + zm).norm()) <= 1e-10);
      CHECK(plus.report.objective_history[0].back() ==
            doctest::Approx(minus.report.objective_history[0].back()).epsilon(1e-10));
    }
    const Vector x = oracle::unit(4, rng);
    const double s = 2.5;
    CHECK(objective_sl1(DataMatrix(Matrix(s * m)), x, s * 0.3) ==
          doctest::Approx(s * s * objective_sl1(a, x, 0.3)).epsilon(1e-10));
  }
}

TEST_CASE("deflation") {
  const DataMatrix d = deflate(identity2(), e(2, 0));
  Matrix expected = Matrix::Zero(2, 2);
  expected(1, 1) = 1.0;
  CHECK(d.values() == expected);

  std::mt19937_64 rng(31);
  const Matrix m = oracle::gaussian(5, 8, rng);
  const Vector x = oracle::unit(5, rng);
  const DataMatrix once = deflate(DataMatrix(m), x);
  CHECK((x.transpose() * once.values()).norm() <= 1e-10);
  CHECK((deflate(once, x).values() - once.values()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("sequential extraction") {
  std::mt19937_64 rng(32);
  const Matrix m = oracle::gaussian(5, 12, rng);
  const DataMatrix a(m);
  for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
    const SolveResult one = solve_single_unit(a, config(penalty, 0.2));
    const SolveResult seq = solve_multi_sequential(a, config(penalty, 0.2));
    CHECK(one.loadings.values() == seq.loadings.values());
  }

  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3, 2, 1;
  SolverConfig c = config(Penalty::L0, 0.01);
  c.m = 2;
  const SolveResult diag = solve_multi_sequential(DataMatrix(d), c);
  CHECK(std::abs(diag.loadings.values()(0, 0)) == 1.0);
  CHECK(std::abs(diag.loadings.values()(1, 1)) == 1.0);
  CHECK(diag.loadings.nnz_per_component() == std::vector<std::size_t>{1, 1});

  SolverConfig pca = config(Penalty::L1, 0.0, 1e-14);
  pca.m = 2;
  pca.step_tol = 1e-12;
  pca.max_iter = 100000;
  const Matrix w = oracle::gaussian(8, 6, rng);
  const SolveResult top2 = solve_multi_sequential(DataMatrix(w), pca);
  CHECK(oracle::principal_angle(oracle::right_singular(w, 2), oracle::orthonormalize(top2.loadings.values())) <= 1e-4);
  CHECK(top2.report.objective_history.size() == 2);

  // A zero component zeroes every later one.
  SolverConfig big = config(Penalty::L1, 1e3);
  big.m = 3;
  const SolveResult none = solve_multi_sequential(DataMatrix(w), big);
  CHECK(none.loadings.values().isZero(0.0));
  CHECK(none.report.trivial_zero);
}
