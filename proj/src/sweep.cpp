#include "qkdlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace qkdlab {

unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("QKDLAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && static_cast<unsigned>(cap) < hw) {
            return static_cast<unsigned>(cap);
        }
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                fn(i);
            }
        });
    }
    for (std::thread& t : pool) t.join();
}

std::string format_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < points; ++i) {
        out.push_back(lo + (hi - lo) * i / (points - 1));
    }
    return out;
}

std::vector<double> logspace(double lo, double hi, int points) {
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
        out.push_back(lo);
        return out;
    }
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (int i = 0; i < points; ++i) {
        out.push_back(std::pow(10.0, llo + (lhi - llo) * i / (points - 1)));
    }
    return out;
}

}  // namespace qkdlab
