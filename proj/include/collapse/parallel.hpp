#pragma once

#include <functional>

namespace collapse {

// Worker count used by data-parallel loops; defaults to 1.
void set_num_threads(int n);
int num_threads();

// Runs body(i) for i in [0, n) on num_threads() workers with a static
// interleaved partition; results must be written to per-index slots.
void parallel_for(int n, const std::function<void(int)>& body);

} // namespace collapse
