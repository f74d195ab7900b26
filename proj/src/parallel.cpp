#include "psn/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "psn/errors.hpp"

namespace psn {

int worker_threads() {
  if (const char* env = std::getenv("PSN_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || value <= 0) {
      throw InvalidArgument("PSN_THREADS must be a positive integer, got '" + std::string(env) + "'");
    }
    return static_cast<int>(std::min(value, 1024L));
  }
  return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

void parallel_blocks(int n, int workers, const std::function<void(int, int, int)>& body) {
  workers = std::max(1, std::min(workers, n));
  if (workers == 1) {
    body(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::jthread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    threads.emplace_back([&, w, begin, end] {
      try {
        body(w, begin, end);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  threads.clear();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace psn
