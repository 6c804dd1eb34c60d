#pragma once

#include <cstddef>
#include <functional>

namespace dispent {

// Caps the worker count used by parallel scans; 0 restores the runtime default.
void set_max_threads(int n);
int max_threads();

// Runs body(i) for i in [0, n). Each index writes its own output slot, so
// results do not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dispent
