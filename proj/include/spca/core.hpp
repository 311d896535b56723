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

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Error families; the CLI maps each one to its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed, inconsistent, or unusable input data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch or a violated precondition on an argument.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// The solver could not continue (e.g. the ascent direction lost rank).
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int iteration = -1, int numerical_rank = -1)
      : Error(what), iteration_(iteration), numerical_rank_(numerical_rank) {}

  int iteration() const { return iteration_; }
  int numerical_rank() const { return numerical_rank_; }

 private:
  int iteration_;
  int numerical_rank_;
};

/// Dense p x n data matrix A. Column i is the variable a_i in R^p.
///
/// Storage is column-major, so every column is a contiguous span of p
/// doubles. The matrix is immutable after construction.
class DataMatrix {
 public:
  /// Throws DataError if the matrix is empty or holds a non-finite entry.
  explicit DataMatrix(Matrix values);

  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }

  std::span<const double> column(std::size_t i) const {
    return {values_.data() + i * rows(), rows()};
  }

  const Matrix& values() const { return values_; }

 private:
  Matrix values_;
};

/// n x m loadings Z. Every column is either exactly zero or has unit norm.
class SparseLoadings {
 public:
  /// Validates the unit-or-zero column invariant (1e-12) and records the
  /// support of every column.
  explicit SparseLoadings(Matrix values);

  /// Rescales every nonzero column to unit norm, then validates.
  static SparseLoadings normalized(Matrix values);

  std::size_t variables() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t components() const { return static_cast<std::size_t>(values_.cols()); }

  const Matrix& values() const { return values_; }
  const std::vector<std::size_t>& support(std::size_t j) const { return pattern_[j]; }
  std::vector<std::size_t> nnz_per_component() const;

 private:
  Matrix values_;
  std::vector<std::vector<std::size_t>> pattern_;
};

/// p x m matrix with orthonormal columns. m = 1 is a unit vector of S^p.
class StiefelPoint {
 public:
  /// Throws ArgumentError if m > p or ||X^T X - I||_F exceeds `tolerance`.
  explicit StiefelPoint(Matrix values, double tolerance = 1e-8);

  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
  const Matrix& values() const { return values_; }

  /// ||X^T X - I_m||_F.
  double orthonormality_error() const;

 private:
  Matrix values_;
};

double orthonormality_error(const Matrix& x);

enum class Penalty { L1, L0 };
enum class Mode { SingleUnit, Block };
enum class InitStrategy { MaxNormColumn, RandomOrthonormal, UserSupplied };
enum class Deflation { OrthogonalProjection };

struct SolverConfig {
  Penalty penalty = Penalty::L1;
  Mode mode = Mode::SingleUnit;
  std::size_t m = 1;
  std::vector<double> gamma{0.0};
  std::vector<double> mu{1.0};
  double tol = 1e-6;
  // Optional second stopping test on the iterate step ||x+ - x||; 0 disables.
  double step_tol = 0.0;
  int max_iter = 1000;
  // Unset: max_norm_column for single-unit, random_orthonormal for block.
  std::optional<InitStrategy> init;
  Deflation deflation = Deflation::OrthogonalProjection;
  std::uint64_t seed = 0;
  std::optional<Matrix> initial_point;
  std::size_t workers = 1;
  std::size_t chunk = 256;
  // Called with (iteration, iterate, objective) for the starting point and
  // every accepted iterate.
  std::function<void(int, const Matrix&, double)> on_iterate;

  /// Broadcasts scalar gamma / mu to m entries and checks every invariant.
  /// Throws ArgumentError.
  SolverConfig validated() const;
};

struct RunReport {
  // One history per solve phase: a single entry for single-unit and block
  // solves, one per extracted component for sequential deflation.
  std::vector<std::vector<double>> objective_history;
  int iterations = 0;
  double wall_time = 0.0;
  std::vector<std::size_t> nnz_per_component;
  bool converged = false;
  // Set when the solver returned immediately because no column can ever be
  // active (gamma above every column norm).
  bool trivial_zero = false;
};

// Notation layer.

inline double positive_part(double t) { return t > 0.0 ? t : 0.0; }

inline double sign(double t) { return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

/// Penalty-specific thresholding of a correlation c = mu * a_i^T x.
///   L1: term [mu|c| - gamma]_+^2,   weight 2 mu [mu|c| - gamma]_+ sign(c)
///   L0: term [(mu c)^2 - gamma]_+,  weight 2 mu^2 c if (mu c)^2 > gamma
/// `weight` is the derivative of `term` with respect to c. With mu = 1 both
/// reduce bit-for-bit to the single-unit formulas. (mu c)^2 == gamma is
/// inactive.
struct ThresholdRule {
  Penalty penalty = Penalty::L1;
  double gamma = 0.0;
  double mu = 1.0;

  double term(double c) const {
    if (penalty == Penalty::L1) {
      const double t = positive_part(mu * std::abs(c) - gamma);
      return t * t;
    }
    const double s = mu * c;
    return positive_part(s * s - gamma);
  }

  double weight(double c) const {
    if (penalty == Penalty::L1) {
      const double t = mu * std::abs(c) - gamma;
      if (!(t > 0.0)) return 0.0;
      return c < 0.0 ? -(2.0 * mu * t) : 2.0 * mu * t;
    }
    const double s = mu * c;
    return s * s > gamma ? 2.0 * mu * mu * c : 0.0;
  }

  /// Unnormalized sparse loading entry for fixed x:
  /// L1 sign(c) [mu|c| - gamma]_+,  L0 c on the active set.
  double loading(double c) const {
    if (penalty == Penalty::L1) {
      const double t = mu * std::abs(c) - gamma;
      if (!(t > 0.0)) return 0.0;
      return c < 0.0 ? -t : t;
    }
    return active(c) ? c : 0.0;
  }

  bool active(double c) const {
    if (penalty == Penalty::L1) return mu * std::abs(c) > gamma;
    const double s = mu * c;
    return s * s > gamma;
  }
};

/// Subtracts each column's mean. Rows are samples, columns are variables.
DataMatrix center_columns(const DataMatrix& a);
Matrix center_columns(const Matrix& a);

/// Entry i is ||a_i||_2.
Vector column_norms(const DataMatrix& a);

/// z^T (A^T A) z evaluated as ||A z||^2, without forming the Gram matrix.
double gram_quadratic(const DataMatrix& a, const Vector& z);

/// Reads a comma-separated matrix, one sample per row, optional header.
/// Throws DataError with the offending line number.
Matrix load_matrix_csv(const std::string& path);

}  // namespace spca
