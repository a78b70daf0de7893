#include "bsbl/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "bsbl/errors.hpp"

namespace bsbl::kernels {

namespace {

std::atomic<const KernelTable*> g_active{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const KernelTable* table_for(Backend b) {
  if (b == Backend::avx2) return detail::avx2_table();
  return &detail::scalar_table;
}

void init_once() {
  if (g_active.load(std::memory_order_acquire) != nullptr) return;
  Backend b = cpu_supports_avx2() ? Backend::avx2 : Backend::scalar;
  if (const char* env = std::getenv("BSBL_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
    else if (std::strcmp(env, "avx2") == 0 && cpu_supports_avx2()) b = Backend::avx2;
  }
  g_backend.store(b, std::memory_order_relaxed);
  g_active.store(table_for(b), std::memory_order_release);
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
         detail::avx2_table() != nullptr;
#else
  return false;
#endif
}

const KernelTable& active() {
  init_once();
  return *g_active.load(std::memory_order_acquire);
}

Backend active_backend() {
  init_once();
  return g_backend.load(std::memory_order_relaxed);
}

void force_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_supports_avx2())
    throw ConfigError("kernels: AVX2 backend not available on this CPU");
  g_backend.store(b, std::memory_order_relaxed);
  g_active.store(table_for(b), std::memory_order_release);
}

std::string backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

}  // namespace bsbl::kernels
