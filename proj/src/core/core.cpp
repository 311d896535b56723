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

#include "spca/core.hpp"

#include <cmath>
#include <fstream>

#include "spca/csv.hpp"

namespace spca {

DataMatrix::DataMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw DataError("data matrix must have at least one row and one column");
  }
  if (!values_.allFinite()) {
    throw DataError("data matrix contains a non-finite entry");
  }
}

SparseLoadings::SparseLoadings(Matrix values) : values_(std::move(values)) {
  pattern_.resize(static_cast<std::size_t>(values_.cols()));
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    auto& support = pattern_[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      if (values_(i, j) != 0.0) support.push_back(static_cast<std::size_t>(i));
    }
    if (!support.empty() && std::abs(values_.col(j).norm() - 1.0) > 1e-12) {
      throw ArgumentError("loading column " + std::to_string(j) +
                          " is neither zero nor unit norm");
    }
  }
}

SparseLoadings SparseLoadings::normalized(Matrix values) {
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    const double norm = values.col(j).norm();
    if (norm > 0.0) values.col(j) /= norm;
  }
  return SparseLoadings(std::move(values));
}

std::vector<std::size_t> SparseLoadings::nnz_per_component() const {
  std::vector<std::size_t> nnz;
  nnz.reserve(pattern_.size());
  for (const auto& s : pattern_) nnz.push_back(s.size());
  return nnz;
}

double orthonormality_error(const Matrix& x) {
  const Matrix gram = x.transpose() * x;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).norm();
}

StiefelPoint::StiefelPoint(Matrix values, double tolerance) : values_(std::move(values)) {
  if (values_.cols() < 1 || values_.cols() > values_.rows()) {
    throw ArgumentError("Stiefel point must satisfy 1 <= m <= p");
  }
  if (!(spca::orthonormality_error(values_) <= tolerance)) {
    throw ArgumentError("matrix columns are not orthonormal");
  }
}

double StiefelPoint::orthonormality_error() const { return spca::orthonormality_error(values_); }

SolverConfig SolverConfig::validated() const {
  SolverConfig c = *this;
  if (c.m < 1) throw ArgumentError("m must be at least 1");
  auto broadcast = [&](std::vector<double>& v, const char* name) {
    if (v.size() == 1 && c.m > 1) v.assign(c.m, v.front());
    if (v.size() != c.m) {
      throw ArgumentError(std::string(name) + " needs 1 or m = " + std::to_string(c.m) +
                          " entries, got " + std::to_string(v.size()));
    }
  };
  broadcast(c.gamma, "gamma");
  broadcast(c.mu, "mu");
  for (double g : c.gamma) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ArgumentError("gamma entries must be finite and >= 0");
  }
  for (double u : c.mu) {
    if (!(u > 0.0) || !std::isfinite(u)) throw ArgumentError("mu entries must be finite and > 0");
  }
  if (!(c.tol > 0.0)) throw ArgumentError("tol must be > 0");
  if (!(c.step_tol >= 0.0)) throw ArgumentError("step_tol must be >= 0");
  if (c.max_iter < 1) throw ArgumentError("max_iter must be >= 1");
  if (c.workers < 1) throw ArgumentError("workers must be >= 1");
  if (c.chunk < 1) throw ArgumentError("chunk must be >= 1");
  if (!c.init) {
    c.init = c.mode == Mode::Block ? InitStrategy::RandomOrthonormal : InitStrategy::MaxNormColumn;
  }
  if (c.init == InitStrategy::UserSupplied && !c.initial_point) {
    throw ArgumentError("init = user_supplied requires an initial point");
  }
  return c;
}

Matrix center_columns(const Matrix& a) {
  const Eigen::RowVectorXd mean = a.colwise().mean();
  return a.rowwise() - mean;
}

DataMatrix center_columns(const DataMatrix& a) { return DataMatrix(center_columns(a.values())); }

Vector column_norms(const DataMatrix& a) { return a.values().colwise().norm().transpose(); }

double gram_quadratic(const DataMatrix& a, const Vector& z) {
  if (static_cast<std::size_t>(z.size()) != a.cols()) {
    throw ArgumentError("gram_quadratic: z has length " + std::to_string(z.size()) +
                        ", expected " + std::to_string(a.cols()));
  }
  return (a.values() * z).squaredNorm();
}

Matrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);

  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = csv::clean_line(raw, line_no == 1);
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    std::vector<double> row;
    row.reserve(fields.size());
    bool numeric = true;
    for (auto f : fields) {
      const auto v = csv::parse_double(f);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (rows == 0 && line_no == 1) continue;  // header
      throw DataError(path + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    if (rows == 0) {
      width = row.size();
    } else if (row.size() != width) {
      throw DataError(path + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(width) + " fields, found " + std::to_string(row.size()));
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) throw DataError(path + ": no data rows");

  Matrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < width; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * width + c];
    }
  }
  return out;
}

}  // namespace spca
