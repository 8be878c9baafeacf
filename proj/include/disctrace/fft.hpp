#pragma once

#include "disctrace/error.hpp"

#include <complex>
#include <numbers>
#include <utility>
#include <vector>

namespace disctrace::fft {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 transform X_k = Σ x_j e^{−2πi jk/N} (unnormalized).
inline void forward(std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    if (!is_power_of_two(n)) throw Error(ErrorKind::InvalidArgument, "FFT length must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        for (std::size_t k = 0; k < half; ++k) {
            // Twiddles from the exact angle, not by repeated multiplication.
            const auto w = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(len));
            for (std::size_t i = 0; i < n; i += len) {
                const auto u = x[i + k];
                const auto v = x[i + k + half] * w;
                x[i + k] = u + v;
                x[i + k + half] = u - v;
            }
        }
    }
}

} // namespace disctrace::fft
