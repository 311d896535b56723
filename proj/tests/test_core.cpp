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

#include <filesystem>
#include <fstream>
#include <limits>

#include "oracles.hpp"
#include "spca/core.hpp"
#include "spca/csv.hpp"

using namespace spca;

namespace {

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("spca_core_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("DataMatrix validates and exposes contiguous columns") {
  CHECK_THROWS_AS(DataMatrix(Matrix(0, 3)), DataError);
  Matrix bad = Matrix::Ones(2, 2);
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(DataMatrix{bad}, DataError);
  bad(1, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(DataMatrix{bad}, DataError);

  Matrix m(3, 2);
  m << 1, 4, 2, 5, 3, 6;
  const DataMatrix a(m);
  CHECK(a.rows() == 3);
  CHECK(a.cols() == 2);
  const auto c = a.column(1);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == 4.0);
  CHECK(c[2] == 6.0);
  CHECK_NOTHROW(DataMatrix(Matrix::Zero(2, 2)));
}

TEST_CASE("SparseLoadings keeps the unit-or-zero column invariant") {
  Matrix z(3, 2);
  z << 0.6, 0, 0.8, 0, 0, 0;
  const SparseLoadings ok(z);
  CHECK(ok.support(0) == std::vector<std::size_t>{0, 1});
  CHECK(ok.support(1).empty());
  CHECK(ok.nnz_per_component() == std::vector<std::size_t>{2, 0});

  Matrix half = z;
  half(0, 0) = 0.3;
  CHECK_THROWS_AS(SparseLoadings{half}, ArgumentError);
  const SparseLoadings fixed = SparseLoadings::normalized(half);
  CHECK(fixed.values().col(0).norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fixed.values().col(1).isZero(0.0));
}

TEST_CASE("StiefelPoint checks orthonormality") {
  CHECK_NOTHROW(StiefelPoint(Matrix::Identity(4, 2)));
  CHECK(StiefelPoint(Matrix::Identity(3, 3)).orthonormality_error() == 0.0);
  Matrix skew = Matrix::Identity(3, 2);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(StiefelPoint{skew}, ArgumentError);
  CHECK_THROWS_AS(StiefelPoint(Matrix::Identity(2, 3)), ArgumentError);
  CHECK(orthonormality_error(skew) > 0.09);
}

TEST_CASE("SolverConfig::validated broadcasts and rejects bad settings") {
  SolverConfig c;
  c.m = 3;
  c.gamma = {0.2};
  const SolverConfig v = c.validated();
  CHECK(v.gamma == std::vector<double>{0.2, 0.2, 0.2});
  CHECK(v.mu == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(v.init == InitStrategy::MaxNormColumn);

  c.mode = Mode::Block;
  CHECK(c.validated().init == InitStrategy::RandomOrthonormal);

  auto rejects = [](auto edit) {
    SolverConfig bad;
    bad.m = 2;
    edit(bad);
    CHECK_THROWS_AS(bad.validated(), ArgumentError);
  };
  rejects([](SolverConfig& s) { s.m = 0; });
  rejects([](SolverConfig& s) { s.gamma = {-0.1}; });
  rejects([](SolverConfig& s) { s.gamma = {0.1, 0.2, 0.3}; });
  rejects([](SolverConfig& s) { s.mu = {0.0}; });
  rejects([](SolverConfig& s) { s.tol = 0.0; });
  rejects([](SolverConfig& s) { s.max_iter = 0; });
  rejects([](SolverConfig& s) { s.workers = 0; });
  rejects([](SolverConfig& s) { s.init = InitStrategy::UserSupplied; });
}

TEST_CASE("ThresholdRule weight is the derivative of term") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (Penalty penalty : {Penalty::L1, Penalty::L0}) {
    for (int t = 0; t < 200; ++t) {
      const ThresholdRule rule{penalty, 0.4, 1.3};
      const double c = u(rng);
      const double kink = penalty == Penalty::L1 ? std::abs(1.3 * std::abs(c) - 0.4) : std::abs(1.69 * c * c - 0.4);
      if (kink < 1e-3) continue;
      const double h = 1e-6;
      const double fd = (rule.term(c + h) - rule.term(c - h)) / (2 * h);
      CHECK(rule.weight(c) == doctest::Approx(fd).epsilon(1e-6).scale(1.0));
      CHECK(rule.term(c) == doctest::Approx(oracle::term(penalty, c, 0.4, 1.3)));
    }
  }
  // (mu c)^2 == gamma is inactive.
  const ThresholdRule tie{Penalty::L0, 0.25, 1.0};
  CHECK_FALSE(tie.active(0.5));
  CHECK(tie.weight(0.5) == 0.0);
  CHECK(tie.loading(0.5) == 0.0);
}

TEST_CASE("centering, column norms and the Gram quadratic form") {
  std::mt19937_64 rng(5);
  const Matrix m = oracle::gaussian(7, 4, rng);
  const Matrix c = center_columns(m);
  CHECK(c.colwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  const DataMatrix a(m);
  const Vector norms = column_norms(a);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(norms[i] == doctest::Approx(m.col(i).norm()));

  const Vector z = oracle::gaussian(4, 1, rng);
  const Matrix sigma = m.transpose() * m;
  CHECK(gram_quadratic(a, z) == doctest::Approx(z.dot(sigma * z)).epsilon(1e-12));
  CHECK_THROWS_AS(gram_quadratic(a, Vector::Ones(3)), ArgumentError);
}

TEST_CASE("load_matrix_csv parses and names the offending line") {
  const Matrix m = load_matrix_csv(temp_file("ok.csv", "a,b\n1,2\n3,4.5\n"));
  CHECK(m.rows() == 2);
  CHECK(m(1, 1) == 4.5);
  try {
    load_matrix_csv(temp_file("ragged.csv", "1,2\n3\n"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_matrix_csv(temp_file("text.csv", "1,2\n3,x\n")), DataError);
  CHECK_THROWS_AS(load_matrix_csv("/nonexistent/spca.csv"), DataError);
}

TEST_CASE("csv helpers") {
  CHECK(csv::split(" a , b,c ") == std::vector<std::string_view>{"a", "b", "c"});
  CHECK(csv::parse_double("+1.5e2") == 150.0);
  CHECK_FALSE(csv::parse_double("1.5x"));
  CHECK(csv::parse_integer("7") == 7);
  CHECK(csv::parse_integer("3.0") == 3);
  CHECK_FALSE(csv::parse_integer("3.5"));
  CHECK(csv::clean_line("\xEF\xBB\xBFx\r", true) == "x");

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double v = u(rng) / 3.0;
    CHECK(csv::parse_double(csv::format_double(v)) == v);
  }
}
