#pragma once

// Test-side reference computations. These deliberately avoid the library's
// own search and norm code so that agreement is meaningful.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;

inline double sup_norm(const Vec& v) {
    double m = 0;
    for (auto& x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double weighted_l1(const Vec& v, const std::vector<double>& w) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += w[i] * std::abs(v[i]);
    return s;
}

inline double l2(const Vec& v) {
    double s = 0;
    for (auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Every real sign vector of length n, by recursion.
inline std::vector<Vec> all_sign_vectors(std::size_t n) {
    if (n == 0) return {Vec{}};
    std::vector<Vec> out;
    for (const auto& tail : all_sign_vectors(n - 1)) {
        for (double s : {1.0, -1.0}) {
            Vec v{C(s)};
            v.insert(v.end(), tail.begin(), tail.end());
            out.push_back(v);
        }
    }
    return out;
}

// max f over a uniform grid of [-1,1]^d with `steps` points per axis (d <= 3).
inline double grid_max(std::size_t d, int steps, const std::function<double(const Vec&)>& f, Vec* argmax = nullptr) {
    double best = -INFINITY;
    Vec x(d);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == d) {
            const double v = f(x);
            if (v > best) {
                best = v;
                if (argmax) *argmax = x;
            }
            return;
        }
        for (int k = 0; k < steps; ++k) {
            x[i] = -1.0 + 2.0 * k / (steps - 1);
            rec(i + 1);
        }
    };
    rec(0);
    return best;
}

// Small deterministic generator for property tests (xorshift64*).
struct Gen {
    std::uint64_t s;
    explicit Gen(std::uint64_t seed) : s(seed * 2685821657736338717ULL + 1) {}
    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 2685821657736338717ULL;
    }
    double unit() { return static_cast<double>(next() >> 11) / 9007199254740992.0; }
    double in(double lo, double hi) { return lo + (hi - lo) * unit(); }
    Vec vec(std::size_t n, double r = 1.0) {
        Vec v(n);
        for (auto& x : v) x = in(-r, r);
        return v;
    }
    Vec cvec(std::size_t n) {
        Vec v(n);
        for (auto& x : v) x = C(in(-1, 1), in(-1, 1));
        return v;
    }
};

}  // namespace oracle
