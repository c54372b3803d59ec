#pragma once

#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

/**
 * Shared plumbing for the moninv library: error taxonomy, resource limits,
 * checked 64-bit arithmetic and a deterministic fork-join helper.
 *
 * Error taxonomy (mirrored by the CLI exit codes):
 *   InputError    -> malformed or semantically invalid input          (exit 2)
 *   ResourceError -> a configured node/size limit was exceeded        (exit 3)
 *   InternalError -> an internal invariant failed; always a bug       (exit 4)
 */
namespace moninv {

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

#define MONINV_CHECK(cond, msg)                                                 \
    do {                                                                        \
        if (!(cond)) throw ::moninv::InternalError(std::string("internal: ") + (msg)); \
    } while (0)

/** Tunable resource limits; all searches take them explicitly. */
struct Limits {
    /** Max nodes expanded by the Hilbert-basis search before ResourceError. */
    long long node_limit = 100'000'000;
    /** Max factorizations enumerated for a single element before ResourceError. */
    std::size_t factorization_cap = 1'000'000;
    /** Max group order for which dense add/neg tables are built. */
    std::size_t sum_table_cap = 4096;
    /** Worker threads; 0 means use the hardware count. */
    int threads = 0;
};

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/** Overflow-checked signed 64-bit helpers (throw InternalError on overflow). */
inline long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw InternalError("64-bit add overflow");
    return r;
}

inline long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw InternalError("64-bit mul overflow");
    return r;
}

inline long long gcd_ll(long long a, long long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/**
 * Runs fn(chunk_index, begin, end) over a partition of [0, n) into contiguous
 * chunks, possibly on several threads.  Chunks are indexed in range order, so
 * callers that collect per-chunk buffers and concatenate them by chunk index
 * obtain a result independent of the number of worker threads.
 */
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    int workers = resolve_threads(threads);
    if (n == 0) return;
    std::size_t chunk_count = static_cast<std::size_t>(workers);
    if (chunk_count > n) chunk_count = n;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    ranges.reserve(chunk_count);
    std::size_t base = n / chunk_count, rem = n % chunk_count, pos = 0;
    for (std::size_t c = 0; c < chunk_count; ++c) {
        std::size_t len = base + (c < rem ? 1 : 0);
        ranges.emplace_back(pos, pos + len);
        pos += len;
    }
    if (chunk_count == 1) {
        fn(std::size_t{0}, ranges[0].first, ranges[0].second);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(chunk_count);
    std::exception_ptr first_error;
    std::mutex err_mx;
    for (std::size_t c = 0; c < chunk_count; ++c) {
        pool.emplace_back([&, c]() {
            try {
                fn(c, ranges[c].first, ranges[c].second);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mx);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace moninv
