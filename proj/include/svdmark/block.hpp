#pragma once

#include <array>
#include <cstddef>

namespace svdmark {

// Dense 8x8 matrix of doubles, row-major. Used both for pixel blocks
// (intensities 0..255 before embedding, unconstrained reals after
// reconstruction) and for the U/V factors of the decomposition.
struct Mat8 {
    static constexpr int kSize = 8;

    std::array<double, 64> m{};

    double& operator()(int row, int col) { return m[static_cast<std::size_t>(row * kSize + col)]; }
    double operator()(int row, int col) const { return m[static_cast<std::size_t>(row * kSize + col)]; }

    static Mat8 identity() {
        Mat8 id;
        for (int i = 0; i < kSize; ++i) id(i, i) = 1.0;
        return id;
    }

    static Mat8 diagonal(const std::array<double, 8>& d) {
        Mat8 out;
        for (int i = 0; i < kSize; ++i) out(i, i) = d[static_cast<std::size_t>(i)];
        return out;
    }

    Mat8 transposed() const {
        Mat8 out;
        for (int r = 0; r < kSize; ++r)
            for (int c = 0; c < kSize; ++c) out(c, r) = (*this)(r, c);
        return out;
    }

    friend Mat8 operator*(const Mat8& a, const Mat8& b) {
        Mat8 out;
        for (int r = 0; r < kSize; ++r) {
            for (int k = 0; k < kSize; ++k) {
                const double arb = a(r, k);
                if (arb == 0.0) continue;
                for (int c = 0; c < kSize; ++c) out(r, c) += arb * b(k, c);
            }
        }
        return out;
    }
};

// An image block is just an 8x8 real matrix.
using Block8 = Mat8;

}  // namespace svdmark
