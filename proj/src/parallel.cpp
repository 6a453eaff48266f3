#include "plateau/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace plateau {

namespace {
std::atomic<unsigned> g_override{0};
}

unsigned worker_count() {
  if (const unsigned o = g_override.load()) return o;
  if (const char* env = std::getenv("PLATEAU_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
      // fall through to the hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_worker_count(unsigned workers) { g_override.store(workers); }

}  // namespace plateau
