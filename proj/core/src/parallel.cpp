#include "rankguard/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace rankguard {

std::size_t worker_count() {
    std::size_t n = 0;
    if (const char* env = std::getenv("RANKGUARD_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') n = static_cast<std::size_t>(v);
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

void parallel_chunks(std::uint64_t total, std::size_t chunks,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    if (chunks > total) chunks = static_cast<std::size_t>(total);
    if (chunks <= 1) {
        fn(0, 0, total);
        return;
    }
    const std::uint64_t base = total / chunks;
    const std::uint64_t rem = total % chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    std::uint64_t begin = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::uint64_t len = base + (c < rem ? 1 : 0);
        const std::uint64_t end = begin + len;
        pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

}  // namespace rankguard
