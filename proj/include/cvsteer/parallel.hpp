#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace cvsteer {

// Maps f over [0, count); results land in index order.
template <class F>
auto map_serial(std::size_t count, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(f(i));
  return out;
}

template <class F>
auto map_parallel(std::size_t count, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  std::vector<decltype(f(std::size_t{}))> out(count);
  std::exception_ptr failure;
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(cvsteer_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class F>
auto map_indices(std::size_t count, bool parallel, F&& f) {
  return parallel ? map_parallel(count, f) : map_serial(count, f);
}

}  // namespace cvsteer
