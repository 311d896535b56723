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

#include <cstring>
#include <string>

#include "oracles.hpp"
#include "spca/simd.hpp"

using namespace spca;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = normal(rng);
  return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("generic table follows the documented lane order") {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 17u, 63u, 64u, 65u, 1000u}) {
    const auto a = random_vector(n, rng);
    const auto b = random_vector(n, rng);
    CHECK(same_bits(simd::generic::dot(a.data(), b.data(), n), oracle::lane_dot(a.data(), b.data(), n)));
  }
}

TEST_CASE("every available backend is bitwise identical to the generic kernels") {
  const auto tables = simd::available_tables();
  REQUIRE(!tables.empty());
  CHECK(std::string(tables.front()->name) == "generic");
  std::mt19937_64 rng(2);
  for (const auto* table : tables) {
    CAPTURE(table->name);
    for (std::size_t n = 0; n <= 130; ++n) {
      const auto a = random_vector(n, rng);
      const auto b = random_vector(n, rng);
      CHECK(same_bits(table->dot(a.data(), b.data(), n), simd::generic::dot(a.data(), b.data(), n)));

      auto y1 = b;
      auto y2 = b;
      table->axpy(-0.75, a.data(), y1.data(), n);
      simd::generic::axpy(-0.75, a.data(), y2.data(), n);
      CHECK(std::memcmp(y1.data(), y2.data(), n * sizeof(double)) == 0);

      table->add(a.data(), y1.data(), n);
      simd::generic::add(a.data(), y2.data(), n);
      CHECK(std::memcmp(y1.data(), y2.data(), n * sizeof(double)) == 0);
    }
    // Unaligned starting addresses.
    const auto a = random_vector(4099, rng);
    const auto b = random_vector(4099, rng);
    for (std::size_t off = 0; off < 4; ++off) {
      CHECK(same_bits(table->dot(a.data() + off, b.data() + 3 - off, 4096),
                      simd::generic::dot(a.data() + off, b.data() + 3 - off, 4096)));
    }
  }
}

TEST_CASE("dot product is accurate") {
  std::mt19937_64 rng(3);
  const auto a = random_vector(10000, rng);
  const auto b = random_vector(10000, rng);
  long double exact = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) exact += static_cast<long double>(a[i]) * b[i];
  CHECK(simd::active().dot(a.data(), b.data(), a.size()) == doctest::Approx(static_cast<double>(exact)).epsilon(1e-12));
}

TEST_CASE("backend selection") {
  const std::string original = simd::active().name;
  CHECK(simd::select("generic"));
  CHECK(std::string(simd::active().name) == "generic");
  CHECK_FALSE(simd::select("no-such-backend"));
  CHECK(std::string(simd::active().name) == "generic");
  CHECK(simd::select(original));
  CHECK(std::string(simd::active().name) == original);
}
