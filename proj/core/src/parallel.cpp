#include "kr/parallel.hpp"

#include <cstdlib>
#include <string>

namespace kr {

int default_thread_count() {
  if (const char* env = std::getenv("KR_THREADS")) {
    try {
      int n = std::stoi(env);
      return n >= 1 ? n : 1;
    } catch (...) {
      return 1;
    }
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc >= 1 ? static_cast<int>(hc) : 1;
}

}  // namespace kr
