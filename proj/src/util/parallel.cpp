#include "gsqg/util/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace gsqg::util {

int worker_count() {
    static const int n = [] {
        int cap = 0;
        if (const char* env = std::getenv("GSQG_THREADS")) cap = std::atoi(env);
        if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
        return cap > 0 ? cap : 1;
    }();
    return n;
}

void parallel_for(int n, const std::function<void(int, int)>& fn) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1 || n <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int begin = w * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end);
    }
    for (std::thread& t : pool) t.join();
}

}  // namespace gsqg::util
