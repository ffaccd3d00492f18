#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace bbmstab {

// Worker cap for modules that parallelize over independent samples.
// BBMSTAB_THREADS overrides hardware concurrency; values < 1 mean 1.
inline int thread_cap() {
    if (const char* env = std::getenv("BBMSTAB_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

inline double rel_diff(double a, double b) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

inline bool close_abs(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace bbmstab
