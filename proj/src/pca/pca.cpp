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

#include "spca/pca.hpp"

#include <algorithm>
#include <string>

#include <Eigen/SVD>

namespace spca {

void canonicalize_signs(Matrix& loadings) {
  for (Eigen::Index j = 0; j < loadings.cols(); ++j) {
    Eigen::Index arg = 0;
    const double peak = loadings.col(j).cwiseAbs().maxCoeff(&arg);
    if (peak > 0.0 && loadings(arg, j) < 0.0) loadings.col(j) *= -1.0;
  }
}

PcaModel pca_fit(const Matrix& samples, std::size_t m) {
  const auto rows = static_cast<std::size_t>(samples.rows());
  const auto cols = static_cast<std::size_t>(samples.cols());
  if (m < 1 || m > std::min(rows, cols)) {
    throw ArgumentError("pca_fit: m = " + std::to_string(m) + " must lie in [1, " +
                        std::to_string(std::min(rows, cols)) + "]");
  }
  if (!samples.allFinite()) throw DataError("pca_fit: samples contain a non-finite entry");

  PcaModel model;
  model.mean = samples.colwise().mean().transpose();
  const Matrix centered = samples.rowwise() - model.mean.transpose();
  const Eigen::BDCSVD<Matrix> svd(centered, Eigen::ComputeThinV);
  const auto k = static_cast<Eigen::Index>(m);
  model.components = svd.matrixV().leftCols(k);
  model.singular_values = svd.singularValues().head(k);
  canonicalize_signs(model.components);
  return model;
}

Matrix project(const Matrix& samples, const Matrix& loadings, const Vector& mean) {
  if (samples.cols() != loadings.rows() || mean.size() != samples.cols()) {
    throw ArgumentError("project: samples have " + std::to_string(samples.cols()) +
                        " variables, loadings " + std::to_string(loadings.rows()) + ", mean " +
                        std::to_string(mean.size()));
  }
  if (loadings.cols() < 1) throw ArgumentError("project: loadings need at least one column");
  return (samples.rowwise() - mean.transpose()) * loadings;
}

Matrix project(const PcaModel& model, const Matrix& samples) {
  return project(samples, model.components, model.mean);
}

Vector explained_variance(const Matrix& samples, const Matrix& loadings) {
  if (samples.cols() != loadings.rows()) throw ArgumentError("explained_variance: dimension mismatch");
  if (samples.rows() < 2) throw ArgumentError("explained_variance needs at least two samples");
  const Matrix centered = samples.rowwise() - samples.colwise().mean();
  const double dof = static_cast<double>(samples.rows() - 1);

  Vector variance = Vector::Zero(loadings.cols());
  Matrix basis(loadings.rows(), 0);
  for (Eigen::Index j = 0; j < loadings.cols(); ++j) {
    Vector v = loadings.col(j);
    const double original = v.norm();
    if (!(original > 0.0)) continue;
    for (int pass = 0; pass < 2; ++pass) v -= basis * (basis.transpose() * v);
    variance[j] = (centered * v).squaredNorm() / dof;
    const double residual = v.norm();
    if (residual > 1e-12 * original) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = v / residual;
    }
  }
  return variance;
}

}  // namespace spca
