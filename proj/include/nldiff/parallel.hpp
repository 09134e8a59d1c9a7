#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nldiff {

/// 0 means "use all cores".
inline int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Static contiguous row blocks; fn(begin, end, worker). Deterministic
/// partition so repeated runs produce identical results.
template <typename Fn>
void parallel_rows(int n_rows, int workers, Fn&& fn) {
    workers = std::max(1, std::min(workers, n_rows));
    if (workers == 1) {
        fn(0, n_rows, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const int base = n_rows / workers;
    const int extra = n_rows % workers;
    int begin = 0;
    for (int t = 0; t < workers; ++t) {
        const int end = begin + base + (t < extra ? 1 : 0);
        pool.emplace_back([&fn, &errors, t, begin, end]() {
            try {
                fn(begin, end, t);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace nldiff
