#include "markedpoints/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace markedpoints {

namespace {

std::size_t env_threads()
{
  const char* s = std::getenv("MARKEDPOINTS_THREADS");
  if (!s || !*s)
    return 0;
  try {
    const long v = std::stol(s);
    return v > 0 ? static_cast<std::size_t>(v) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

} // namespace

std::size_t resolve_threads(std::size_t requested)
{
  const std::size_t cap = env_threads();
  if (requested > 0)
    return cap > 0 ? std::min(requested, cap) : requested;
  if (cap > 0)
    return cap;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body)
{
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::size_t> error_index(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::size_t begin = n * t / threads;
      const std::size_t end = n * (t + 1) / threads;
      for (std::size_t i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[t] = std::current_exception();
          error_index[t] = i;
          return;
        }
      }
    });
  }
  for (auto& th : pool)
    th.join();
  const auto first = std::min_element(error_index.begin(), error_index.end());
  if (*first < n)
    std::rethrow_exception(errors[static_cast<std::size_t>(first - error_index.begin())]);
}

} // namespace markedpoints
