#pragma once

// Objectwise kernels: every constructor and functor computes its value at each
// object of the box independently. Exec::Parallel distributes the objects over
// OpenMP threads; Exec::Serial is the reference path used by the tests and the
// benchmark. Both produce identical results because each object writes only
// its own slot.

#include <exception>
#include <mutex>
#include <utility>

namespace fimkit {

enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec e);

/// Restores the previous default on scope exit.
class ExecScope {
public:
  explicit ExecScope(Exec e) : saved_(default_exec()) { set_default_exec(e); }
  ~ExecScope() { set_default_exec(saved_); }
  ExecScope(const ExecScope&) = delete;
  ExecScope& operator=(const ExecScope&) = delete;

private:
  Exec saved_;
};

template <class Fn>
void for_each_index(int count, Exec exec, Fn&& fn) {
  if (exec == Exec::Serial || count < 2) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::exception_ptr first;
  std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 0; k < count; ++k) {
    try {
      fn(k);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

template <class Fn>
void for_each_index(int count, Fn&& fn) {
  for_each_index(count, default_exec(), std::forward<Fn>(fn));
}

}  // namespace fimkit
