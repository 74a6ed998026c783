#include "fimkit/parallel.hpp"

#include <atomic>

namespace fimkit {

namespace {
std::atomic<Exec> g_exec{Exec::Parallel};
}

Exec default_exec() { return g_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec e) { g_exec.store(e, std::memory_order_relaxed); }

}  // namespace fimkit
