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
#include <map>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "spca/bench/dataset.hpp"
#include "spca/bench/experiments.hpp"
#include "spca/bench/knn.hpp"
#include "spca/bench/report.hpp"
#include "spca/bench/synthetic.hpp"
#include "spca/block.hpp"
#include "spca/pca.hpp"

using namespace spca;
using namespace spca::bench;

namespace {

std::filesystem::path temp_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "spca_bench_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
  const auto path = temp_dir() / name;
  std::ofstream(path, std::ios::binary) << body;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

LabeledDataset small_synthetic(std::uint64_t seed, std::size_t classes = 5, std::size_t per_class = 20) {
  SparseFactorSpec spec;
  spec.classes = classes;
  spec.per_class = per_class;
  spec.features = 80;
  spec.seed = seed;
  return make_sparse_factor_dataset(spec);
}

}  // namespace

TEST_CASE("load_dataset reads labeled CSV") {
  const LabeledDataset d = load_dataset(write_file("four.csv", "label,f1,f2\n1,0.5,2\n2,1,1\n1,3,-4\n"));
  CHECK(d.size() == 3);
  CHECK(d.features() == 2);
  CHECK(d.labels == std::vector<int>{1, 2, 1});
  CHECK(d.samples(2, 1) == -4.0);
  CHECK(d.groups.empty());
  CHECK(d.classes() == std::vector<int>{1, 2});

  const LabeledDataset g = load_dataset(write_file("group.csv", "label,group,a\n3,1,0.5\n4,2,1.5\n"));
  CHECK(g.groups == std::vector<int>{1, 2});
  CHECK(g.features() == 1);

  const LabeledDataset bare = load_dataset(write_file("bare.csv", "1,2,3\n4,5,6\n"));
  CHECK(bare.size() == 2);
  CHECK(bare.features() == 2);

  try {
    load_dataset(write_file("missing.csv", "label,f1,f2\n1,0.5,2\n2,1\n"));
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  CHECK_THROWS_AS(load_dataset(write_file("text.csv", "label,f1\n1,abc\n")), DataError);
  CHECK_THROWS_AS(load_dataset(write_file("badlabel.csv", "label,f1\nx1,2\n1,2\n")), DataError);
  CHECK_THROWS_AS(load_dataset((temp_dir() / "absent.csv").string()), DataError);
}

TEST_CASE("a USPS-shaped file splits 7291 / 2007") {
  std::string body = "label";
  for (int f = 1; f <= 256; ++f) body += ",f" + std::to_string(f);
  body += "\n";
  for (int r = 0; r < 9298; ++r) {
    body += std::to_string(r % 10);
    for (int f = 0; f < 256; ++f) body += (f == r % 256) ? ",1" : ",0";
    body += "\n";
  }
  const LabeledDataset d = load_dataset(write_file("usps_shaped.csv", body));
  CHECK(d.size() == 9298);
  CHECK(d.features() == 256);
  const LabeledDataset s = make_splits(d, SplitPolicy::parse("fixed:7291"), 0);
  CHECK(s.split.train.size() == 7291);
  CHECK(s.split.test.size() == 2007);
}

TEST_CASE("split policies") {
  const LabeledDataset d = small_synthetic(1, 20, 72);
  const LabeledDataset a = make_splits(d, SplitPolicy::parse("per_class:24"), 9);
  CHECK(a.split.train.size() == 480);
  CHECK(a.split.test.size() == 960);
  std::map<int, int> per;
  for (auto i : a.split.train) ++per[a.labels[i]];
  for (const auto& [label, count] : per) CHECK(count == 24);
  CHECK(make_splits(d, SplitPolicy::parse("per_class:24"), 9).split.train == a.split.train);
  CHECK(make_splits(d, SplitPolicy::parse("per_class:24"), 10).split.train != a.split.train);
  CHECK_THROWS_AS(make_splits(d, SplitPolicy::parse("per_class:73"), 0), DataError);

  SplitPolicy fixed;
  fixed.train_indices = {5, 1, 3};
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i != 5 && i != 1 && i != 3) fixed.test_indices.push_back(i);
  }
  // Only classes 0 (rows 0..71) appear in train, so the test set must be restricted.
  LabeledDataset one_class = d;
  one_class.samples = d.samples.topRows(72);
  one_class.labels.resize(72);
  fixed.test_indices.erase(std::remove_if(fixed.test_indices.begin(), fixed.test_indices.end(),
                                          [](std::size_t i) { return i >= 72; }),
                           fixed.test_indices.end());
  const LabeledDataset echoed = make_splits(one_class, fixed, 0);
  CHECK(echoed.split.train == fixed.train_indices);
  CHECK(echoed.split.test == fixed.test_indices);

  SplitPolicy overlap = fixed;
  overlap.test_indices.push_back(5);
  CHECK_THROWS_AS(make_splits(one_class, overlap, 0), DataError);
  SplitPolicy gap = fixed;
  gap.test_indices.pop_back();
  CHECK_THROWS_AS(make_splits(one_class, gap, 0), DataError);

  // Labels seen only in test are rejected.
  CHECK_THROWS_AS(make_splits(d, SplitPolicy::parse("fixed:72"), 0), DataError);

  LabeledDataset grouped = d;
  for (std::size_t i = 0; i < d.size(); ++i) grouped.groups.push_back(static_cast<int>(i % 5) + 1);
  const LabeledDataset g = make_splits(grouped, SplitPolicy::parse("grouped:5"), 0);
  for (auto i : g.split.test) CHECK(grouped.groups[i] == 5);
  for (auto i : g.split.train) CHECK(grouped.groups[i] != 5);
  CHECK(g.split.test.size() == d.size() / 5);
  CHECK(make_splits(grouped, SplitPolicy::parse("grouped:4;5"), 0).split.test.size() == 2 * d.size() / 5);
  CHECK_THROWS_AS(make_splits(d, SplitPolicy::parse("grouped:5"), 0), DataError);
  CHECK_THROWS_AS(SplitPolicy::parse("random:3"), ArgumentError);
  CHECK(SplitPolicy::parse("grouped:4;5").to_string() == "grouped:4;5");
}

TEST_CASE("nearest neighbour classification") {
  Matrix train(2, 1);
  train << 0, 10;
  Matrix test(1, 1);
  test << 2;
  const KnnResult r = knn_classify(train, {7, 9}, test, {7});
  CHECK(r.predicted == std::vector<int>{7});
  CHECK(r.accuracy == 1.0);

  Matrix same(3, 2);
  same << 1, 2, 3, 4, 5, 6;
  Matrix probe(1, 2);
  probe << 3, 4;
  CHECK(knn_classify(same, {1, 2, 3}, probe, {}).predicted == std::vector<int>{2});

  Matrix tie(2, 1);
  tie << -1, 1;
  Matrix mid(1, 1);
  mid << 0;
  CHECK(knn_classify(tie, {4, 5}, mid, {}).predicted == std::vector<int>{4});

  CHECK_THROWS_AS(knn_classify(Matrix(0, 1), {}, mid, {}), ArgumentError);
  CHECK_THROWS_AS(knn_classify(tie, {4, 5}, Matrix(1, 2), {}), ArgumentError);
}

TEST_CASE("1-NN on separated blobs agrees with a brute-force distance matrix") {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> normal;
  Matrix points(300, 3);
  std::vector<int> labels(300);
  for (int i = 0; i < 300; ++i) {
    labels[static_cast<std::size_t>(i)] = i % 3;
    for (int f = 0; f < 3; ++f) points(i, f) = normal(rng) + (f == i % 3 ? 10.0 : 0.0);
  }
  std::vector<std::size_t> tr;
  std::vector<std::size_t> te;
  for (std::size_t i = 0; i < 300; ++i) (i % 2 ? te : tr).push_back(i);
  Matrix train(150, 3);
  Matrix test(150, 3);
  std::vector<int> ltr;
  std::vector<int> lte;
  for (std::size_t k = 0; k < 150; ++k) {
    train.row(static_cast<Eigen::Index>(k)) = points.row(static_cast<Eigen::Index>(tr[k]));
    test.row(static_cast<Eigen::Index>(k)) = points.row(static_cast<Eigen::Index>(te[k]));
    ltr.push_back(labels[tr[k]]);
    lte.push_back(labels[te[k]]);
  }
  const KnnResult r = knn_classify(train, ltr, test, lte, 1, KernelPlan{3, 256});
  CHECK(r.accuracy >= 0.99);
  for (Eigen::Index t = 0; t < 150; ++t) {
    Eigen::Index arg = 0;
    (train.rowwise() - test.row(t)).rowwise().squaredNorm().minCoeff(&arg);
    CHECK(r.predicted[static_cast<std::size_t>(t)] == ltr[static_cast<std::size_t>(arg)]);
  }
  const KnnResult r3 = knn_classify(train, ltr, test, lte, 3);
  CHECK(r3.accuracy >= 0.99);
  const auto per = per_class_accuracy(lte, r.predicted, {0, 1, 2, 9});
  CHECK(std::isnan(per[3]));
  CHECK(per[0] >= 0.95);
}

TEST_CASE("emit_report") {
  Table empty;
  empty.header = {"a"};
  const auto none = temp_dir() / "none.csv";
  std::filesystem::remove(none);
  CHECK_THROWS_AS(emit_report(empty, none.string()), ArgumentError);
  CHECK_FALSE(std::filesystem::exists(none));

  Table one;
  one.header = {"name", "value", "count"};
  one.rows.push_back({std::string("x"), 0.1, 3LL});
  const auto path = (temp_dir() / "one.csv").string();
  emit_report(one, path);
  CHECK(slurp(path) == "name,value,count\nx,0.10000000000000001,3\n");

  Table bad = one;
  bad.rows.push_back({std::string("y")});
  CHECK_THROWS_AS(emit_report(bad, path), ArgumentError);
  CHECK_THROWS_AS(emit_report(one, "/nonexistent-dir/x.csv"), DataError);

  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  Table many;
  many.header = {"v", "w"};
  std::vector<double> values;
  for (int i = 0; i < 500; ++i) {
    const double v = u(rng) / 7.0;
    const double w = std::ldexp(u(rng), -900);
    values.push_back(v);
    values.push_back(w);
    many.rows.push_back({v, w});
  }
  const auto round = (temp_dir() / "round.csv").string();
  emit_report(many, round);
  CHECK(slurp(round).find('\r') == std::string::npos);
  const Table back = read_report(round);
  REQUIRE(back.rows.size() == 500);
  for (std::size_t r = 0; r < 500; ++r) {
    for (std::size_t c = 0; c < 2; ++c) {
      const double parsed = std::stod(std::get<std::string>(back.rows[r][c]));
      CHECK(std::memcmp(&parsed, &values[2 * r + c], sizeof(double)) == 0);
    }
  }
}

TEST_CASE("recognition with gamma = 0 reproduces PCA") {
  const LabeledDataset d = small_synthetic(3);
  ExperimentConfig c;
  c.dims = {1, 2, 4};
  c.split = SplitPolicy::parse("per_class:8");
  c.repetitions = 2;
  c.seed = 4;
  c.record_timing = false;
  c.tol = 1e-15;
  c.max_iter = 100000;
  c.method = Method::PCA;
  const RecognitionResult pca = run_recognition_experiment(c, d);
  for (Method method : {Method::SL1, Method::SL0}) {
    c.method = method;
    c.gamma = {0.0};
    const RecognitionResult spca = run_recognition_experiment(c, d);
    REQUIRE(spca.records.size() == pca.records.size());
    for (std::size_t i = 0; i < pca.records.size(); ++i) {
      CHECK(spca.records[i].status == "ok");
      CHECK(std::abs(spca.records[i].overall_accuracy - pca.records[i].overall_accuracy) <= 1e-6);
    }
  }
}

TEST_CASE("recognition output is deterministic and honest") {
  const LabeledDataset d = small_synthetic(5);
  ExperimentConfig c;
  c.method = Method::SL1;
  c.dims = {2, 3};
  c.gamma = {3.0};
  c.split = SplitPolicy::parse("per_class:10");
  c.repetitions = 3;
  c.seed = 8;
  c.record_timing = false;
  const RecognitionResult a = run_recognition_experiment(c, d);
  c.workers = 4;
  c.chunk = 16;
  const RecognitionResult b = run_recognition_experiment(c, d);
  CHECK(a.table.to_csv() == b.table.to_csv());

  CHECK(a.table.header.front() == "method");
  CHECK(a.table.header[4] == "overall_accuracy");
  CHECK(a.table.header[5] == "acc_class_0");
  CHECK(a.table.rows.size() == 3 * 2 + 2);
  CHECK(std::get<std::string>(a.table.rows.back()[3]) == "mean");

  for (const auto& r : a.records) {
    REQUIRE(r.status == "ok");
    // Refit this record's model and count true supports.
    const LabeledDataset s = make_splits(d, c.split, derive_seed(c.seed, {r.repetition}));
    const Matrix train = s.rows(s.split.train);
    SolverConfig sc = solver_config(Method::SL1, r.m, {3.0}, {1.0});
    sc.seed = derive_seed(c.seed, {r.repetition});
    const SolveResult fit = solve(DataMatrix(Matrix(train.rowwise() - train.colwise().mean())), sc);
    std::vector<std::size_t> nnz;
    for (Eigen::Index j = 0; j < fit.loadings.values().cols(); ++j) {
      nnz.push_back(static_cast<std::size_t>((fit.loadings.values().col(j).array() != 0.0).count()));
    }
    CHECK(r.nnz_per_component == nnz);
  }
}

TEST_CASE("permuting test rows permutes predictions") {
  const LabeledDataset d = small_synthetic(6);
  const LabeledDataset s = make_splits(d, SplitPolicy::parse("per_class:10"), 1);
  const Matrix train = s.rows(s.split.train);
  const Vector mean = train.colwise().mean().transpose();
  SolverConfig sc = solver_config(Method::SL0, 3, {4.0}, {1.0});
  const SolveResult fit = solve(DataMatrix(Matrix(train.rowwise() - mean.transpose())), sc);
  const Matrix z = fit.loadings.values();
  std::vector<std::size_t> test = s.split.test;
  const auto labels = s.labels_of(s.split.train);
  const KnnResult base = knn_classify(project(train, z, mean), labels, project(s.rows(test), z, mean), {});
  std::vector<std::size_t> order(test.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937_64(3));
  std::vector<std::size_t> permuted;
  for (auto o : order) permuted.push_back(test[o]);
  const KnnResult moved = knn_classify(project(train, z, mean), labels, project(s.rows(permuted), z, mean), {});
  for (std::size_t k = 0; k < order.size(); ++k) CHECK(moved.predicted[k] == base.predicted[order[k]]);
}

TEST_CASE("solver failures are recorded, not fatal") {
  const LabeledDataset d = small_synthetic(7);
  ExperimentConfig c;
  c.method = Method::BL1;
  c.dims = {2, 200};
  c.gamma = {0.5};
  c.split = SplitPolicy::parse("per_class:10");
  const RecognitionResult r = run_recognition_experiment(c, d);
  REQUIRE(r.records.size() == 2);
  CHECK(r.records[0].status == "ok");
  CHECK(r.records[1].status.rfind("error:", 0) == 0);
  CHECK(std::isnan(r.records[1].overall_accuracy));
}

TEST_CASE("timing sweep") {
  TimingConfig t;
  t.sizes = {100, 200};
  t.instances = 3;
  t.seed = 2;
  std::vector<TimingRecord> records;
  const Table table = run_timing_experiment(t, &records);
  CHECK(table.header == std::vector<std::string>{"variant", "N", "P", "gamma", "workers", "instance", "seconds",
                                                 "iterations", "status"});
  CHECK(records.size() == 2 * 3 * 4 * 2);
  CHECK(table.rows.size() == records.size() + 2 * 4 * 2);
  for (const auto& r : records) {
    CHECK(r.p * 10 == r.n);
    CHECK((r.gamma == 0.01 || r.gamma == 0.05));
    CHECK(r.status == "ok");
  }
  std::vector<TimingRecord> again;
  run_timing_experiment(t, &again);
  for (std::size_t i = 0; i < records.size(); ++i) CHECK(again[i].iterations == records[i].iterations);

  t.sizes = {105};
  CHECK_THROWS_AS(run_timing_experiment(t), ArgumentError);
  t.sizes = {100, 200};
  t.memory_limit_bytes = 20000;
  std::vector<TimingRecord> limited;
  run_timing_experiment(t, &limited);
  std::size_t failed = 0;
  for (const auto& r : limited) failed += r.status != "ok";
  CHECK(failed == limited.size() / 2);
}

TEST_CASE("sparse factor generator") {
  SparseFactorSpec spec;
  spec.classes = 4;
  spec.per_class = 6;
  spec.features = 60;
  spec.seed = 11;
  const LabeledDataset a = make_sparse_factor_dataset(spec);
  const LabeledDataset b = make_sparse_factor_dataset(spec);
  CHECK(a.samples == b.samples);
  CHECK(a.size() == 24);
  CHECK(a.features() == 60);
  const Matrix v = sparse_factor_loadings(spec);
  CHECK(orthonormality_error(v) < 1e-12);
  for (Eigen::Index k = 0; k < v.cols(); ++k) CHECK((v.col(k).array() != 0.0).count() == 10);
  spec.features = 40;
  CHECK_THROWS_AS(make_sparse_factor_dataset(spec), ArgumentError);
  CHECK(derive_seed(1, {2}) != derive_seed(1, {3}));
  CHECK(derive_seed(1, {2}) == derive_seed(1, {2}));
}
