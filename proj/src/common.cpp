#include "ppde/common.hpp"

#include <algorithm>
#include <charconv>
#include <thread>

namespace ppde {

namespace {
std::size_t g_threads = 1;
}

std::size_t thread_count() { return g_threads; }

void set_thread_count(std::size_t n) { g_threads = std::max<std::size_t>(1, n); }

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& chunk) {
    const std::size_t workers = std::min(g_threads, n == 0 ? std::size_t{1} : n);
    if (workers <= 1) {
        chunk(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t base = n / workers, rem = n % workers;
    std::size_t begin = 0;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t len = base + (w < rem ? 1 : 0);
        pool.emplace_back(chunk, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace ppde
