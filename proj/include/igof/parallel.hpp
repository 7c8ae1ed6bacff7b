#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace igof {

/// Worker count: explicit request, else IGOF_THREADS, else hardware concurrency.
[[nodiscard]] unsigned resolve_threads(unsigned requested = 0);

/// Runs body(worker, begin, end) over contiguous chunks of [0, count).
///
/// Chunk boundaries depend only on count and the worker count, so callers that
/// reduce per-chunk results in chunk order get reproducible output. The first
/// exception thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    if (workers == 1) {
        body(std::size_t{0}, std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                body(w, begin, end);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// body(i) for every i in [0, count).
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    parallel_chunks(count, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) body(i);
    });
}

}  // namespace igof
