#pragma once

#include <functional>
#include <vector>

namespace weylab {

// Global worker cap for the scan/table-build parallelism (CLI --threads).
void set_max_threads(int n);
int max_threads();

// Runs fn(chunk) for chunk = 0..n_chunks-1 on up to max_threads() workers.
// The chunk decomposition is fixed, so deterministic per-chunk results can be
// combined in chunk order independently of the worker count.
void parallel_chunks(int n_chunks, const std::function<void(int)>& fn);

// Fixed-order pairwise tree sum; the result does not depend on how the
// partials were produced.
template <typename T>
T pairwise_sum(std::vector<T> v) {
    if (v.empty()) return T{};
    while (v.size() > 1) {
        size_t half = (v.size() + 1) / 2;
        for (size_t i = 0; i + half < v.size(); ++i) v[i] = v[i] + v[i + half];
        v.resize(half);
    }
    return v[0];
}

}  // namespace weylab
