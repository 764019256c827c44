#pragma once

// Loop driver shared by the kernels: OpenMP dynamic scheduling when asked
// for, a plain loop otherwise. Exceptions thrown by the body are rethrown on
// the calling thread.

#include <cstdint>
#include <exception>
#include <mutex>

#include "idap/variety.hpp"

namespace idap::detail {

template <class Body>
void parallel_for(std::int64_t begin, std::int64_t end, Exec exec, Body&& body) {
  if (exec == Exec::serial) {
    for (std::int64_t i = begin; i < end; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = begin; i < end; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace idap::detail
