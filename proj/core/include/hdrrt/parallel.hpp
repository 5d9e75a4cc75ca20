#pragma once

#include <cstddef>
#include <functional>

namespace hdrrt {

/// Upper bound on worker threads used by parallel_for. Defaults to the
/// HDRRT_THREADS environment variable when set, otherwise the hardware
/// concurrency.
std::size_t thread_limit();
void set_thread_limit(std::size_t n);
/// Re-read HDRRT_THREADS; returns the resulting limit.
std::size_t reload_thread_limit_from_env();

/// Runs body(i) for i in [0, n). Each index is visited exactly once; the
/// body must only write state owned by index i, which keeps results
/// independent of the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hdrrt
