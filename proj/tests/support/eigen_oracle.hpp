#pragma once

// Test-only oracle: cyclic Jacobi eigenvalue iteration for symmetric 8x8
// matrices. Kept independent of the library's SVD so the two can check
// each other (the squared singular values of B must match the eigenvalues
// of B * B^T).

#include <algorithm>
#include <array>
#include <cmath>

#include "svdmark/block.hpp"

namespace svdmark::testing {

inline std::array<double, 8> symmetric_eigenvalues_desc(const Mat8& sym) {
    Mat8 a = sym;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 8; ++p)
            for (int q = p + 1; q < 8; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-24) break;

        for (int p = 0; p < 8 - 1; ++p) {
            for (int q = p + 1; q < 8; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                // A <- J^T A J with J the (p,q) rotation
                for (int k = 0; k < 8; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < 8; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::array<double, 8> eig{};
    for (int i = 0; i < 8; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

}  // namespace svdmark::testing
