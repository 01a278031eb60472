#ifndef LINDFOREST_WEIGHT_HPP
#define LINDFOREST_WEIGHT_HPP

#include <cmath>
#include <cstdint>
#include <string>

namespace lindforest {

using int128 = __int128;

std::string int128_to_string(int128 v);

// Edge weight with an exact integer mirror when the double holds an integer
// small enough to round-trip.
struct EdgeWeight {
    double value = 0.0;
    int128 exact = 0;
    bool integral = false;

    EdgeWeight() = default;
    explicit EdgeWeight(double w) : value(w) {
        if (std::isfinite(w) && w == std::floor(w) && std::fabs(w) < 9.0e15) {
            exact = static_cast<int128>(static_cast<long long>(w));
            integral = true;
        }
    }
};

// Product of edge weights. Tracked in double always and in 128-bit integers
// while every factor is integral and no overflow occurs.
struct Weight {
    double value = 1.0;
    int128 exact = 1;
    bool is_exact = true;

    void multiply(const EdgeWeight& w) {
        value *= w.value;
        if (is_exact && w.integral) {
            int128 out;
            if (__builtin_mul_overflow(exact, w.exact, &out)) {
                is_exact = false;
            } else {
                exact = out;
            }
        } else {
            is_exact = false;
        }
    }

    std::string str() const;
};

// Sum of weights with the same exact/float duality.
struct WeightSum {
    double value = 0.0;
    int128 exact = 0;
    bool is_exact = true;

    void add(const Weight& w) {
        value += w.value;
        if (is_exact && w.is_exact) {
            int128 out;
            if (__builtin_add_overflow(exact, w.exact, &out)) {
                is_exact = false;
            } else {
                exact = out;
            }
        } else {
            is_exact = false;
        }
    }

    void add(const WeightSum& w) {
        value += w.value;
        if (is_exact && w.is_exact) {
            int128 out;
            if (__builtin_add_overflow(exact, w.exact, &out)) {
                is_exact = false;
            } else {
                exact = out;
            }
        } else {
            is_exact = false;
        }
    }

    // Prefers the exact integer when available; the double otherwise.
    double best() const { return is_exact ? static_cast<double>(exact) : value; }

    std::string str() const;
};

}  // namespace lindforest

#endif
