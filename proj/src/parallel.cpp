#include "cfdyn/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cfdyn {

namespace {
std::atomic<std::size_t> g_override{0};
}

std::size_t thread_count() {
  if (std::size_t n = g_override.load(); n > 0) return n;
  if (const char* env = std::getenv("CFDYN_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(std::size_t n) { g_override = n; }

}  // namespace cfdyn
