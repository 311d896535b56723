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

#include <atomic>
#include <cstdlib>

#include "spca/simd.hpp"

namespace spca::simd {

#if defined(SPCA_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif
#if defined(SPCA_HAVE_NEON)
namespace neon {
extern const KernelTable kTable;
}
#endif

namespace {

const KernelTable kGeneric{"generic", &generic::dot, &generic::axpy, &generic::add};

const KernelTable* resolve_default() {
  if (const char* env = std::getenv("SPCA_SIMD")) {
    for (const KernelTable* t : available_tables()) {
      if (std::string_view(env) == t->name) return t;
    }
  }
  return available_tables().back();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{resolve_default()};
  return slot;
}

}  // namespace

const KernelTable& generic_table() { return kGeneric; }

const KernelTable* avx2_table() {
#if defined(SPCA_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2::kTable : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(SPCA_HAVE_NEON)
  // Advanced SIMD is mandatory on AArch64.
  return &neon::kTable;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> tables{&kGeneric};
  if (const KernelTable* t = neon_table()) tables.push_back(t);
  if (const KernelTable* t = avx2_table()) tables.push_back(t);
  return tables;
}

const KernelTable& active() { return *active_slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  for (const KernelTable* t : available_tables()) {
    if (name == t->name) {
      active_slot().store(t, std::memory_order_release);
      return true;
    }
  }
  return false;
}

}  // namespace spca::simd
