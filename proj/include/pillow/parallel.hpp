#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pillow {

/// Either a value or the message of the exception that replaced it.
template <class T>
struct Outcome {
  std::optional<T> value;
  std::string error;

  bool ok() const noexcept { return value.has_value(); }
};

inline std::size_t default_thread_count() {
  if (const char* env = std::getenv("PILLOWCASE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/**
 * Evaluates fn(0), ..., fn(n-1) on up to `threads` workers. Results come
 * back in index order whatever the schedule, and an exception in one item
 * becomes that item's error instead of ending the run.
 */
template <class Fn>
auto parallel_map(std::size_t n, std::size_t threads, Fn fn) -> std::vector<Outcome<decltype(fn(std::size_t{}))>> {
  using T = decltype(fn(std::size_t{}));
  std::vector<Outcome<T>> out(n);
  auto run = [&](std::size_t i) {
    try {
      out[i].value.emplace(fn(i));
    } catch (const std::exception& e) {
      out[i].error = e.what();
    } catch (...) {
      out[i].error = "unknown failure";
    }
  };
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) run(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::size_t workers = std::min(threads, n);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) run(i);
    });
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace pillow
