#pragma once

#include <cstddef>
#include <type_traits>
#include <utility>

namespace ztf {

/// Worker threads used for element-parallel loops. Never changes results:
/// parallelism only ever splits independent output elements, each of which is
/// reduced sequentially in a fixed order.
void set_worker_count(int workers);
int worker_count();

/// Cascade summation of term(0) + ... + term(count-1). The reduction tree
/// depends only on count, so a call is bit-reproducible regardless of the
/// process-wide worker setting.
template <class T, class Fn>
T pairwise_sum_impl(std::size_t begin, std::size_t count, Fn& term) {
  if (count <= 8) {
    T acc{};
    for (std::size_t i = 0; i < count; ++i) acc += term(begin + i);
    return acc;
  }
  const std::size_t half = count / 2;
  return pairwise_sum_impl<T>(begin, half, term) +
         pairwise_sum_impl<T>(begin + half, count - half, term);
}

template <class T, class Fn>
T pairwise_sum(std::size_t count, Fn&& term) {
  return pairwise_sum_impl<T>(0, count, term);
}

namespace detail {
void run_blocks(std::size_t count, void* ctx, void (*body)(void*, std::size_t, std::size_t));
}

/// Runs fn(i) for every i in [0, count), split into contiguous blocks across
/// the configured workers. fn(i) must touch only output slot i.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  using Body = std::remove_reference_t<Fn>;
  auto body = [](void* ctx, std::size_t begin, std::size_t end) {
    Body& f = *static_cast<Body*>(ctx);
    for (std::size_t i = begin; i < end; ++i) f(i);
  };
  Body& ref = fn;
  detail::run_blocks(count, static_cast<void*>(&ref), body);
}

}  // namespace ztf
