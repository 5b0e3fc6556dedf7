#pragma once

#include <cstddef>
#include <functional>

namespace nnls {

// Thread count used by parallel sweeps. Resolution order:
// explicit set_thread_count() > NNLS_SPECTRA_THREADS env var > hardware.
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [0, n). Chunks the index range over thread_count()
// threads; falls back to a serial loop for small n. fn must not touch
// shared mutable state.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace nnls
