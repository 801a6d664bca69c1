#include "weylab/util.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace weylab {

namespace {
int g_max_threads = 0;  // 0: use hardware concurrency
}

void set_max_threads(int n) { g_max_threads = n; }

int max_threads() {
    if (g_max_threads > 0) return g_max_threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_chunks(int n_chunks, const std::function<void(int)>& fn) {
    int workers = std::min(n_chunks, max_threads());
    if (workers <= 1) {
        for (int c = 0; c < n_chunks; ++c) fn(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int c = next.fetch_add(1); c < n_chunks; c = next.fetch_add(1)) fn(c);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace weylab
