// Index-parallel loop used by the batch APIs.

#ifndef LOCHOM_PARALLEL_HPP
#define LOCHOM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lochom::detail {

// Calls body(i) for i in [0, n) on up to `threads` threads. Each index is
// visited once; the exception of the lowest failing index is rethrown.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body)
{
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int count = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace lochom::detail

#endif
