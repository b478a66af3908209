#include "svdmark/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "svdmark/errors.hpp"

namespace svdmark {

namespace {

constexpr double kOrthTol = 1e-12;  // relative off-diagonal threshold
constexpr int kMaxSweeps = 60;

// Columns whose norm falls below this fraction of the input norm are
// rounding debris (rank-deficient inputs leave them behind); they carry no
// usable direction, so pair sweeps skip them and extraction reads them as
// exact zeros. Without the floor two parallel leftover columns ping-pong
// forever: their mutual cosine is 1 at any magnitude.
constexpr double kColumnFloor = 1e-13;

double column_dot(const Mat8& a, int p, int q) {
    double s = 0.0;
    for (int r = 0; r < Mat8::kSize; ++r) s += a(r, p) * a(r, q);
    return s;
}

void rotate_columns(Mat8& a, int p, int q, double c, double s) {
    for (int r = 0; r < Mat8::kSize; ++r) {
        const double ap = a(r, p);
        const double aq = a(r, q);
        a(r, p) = c * ap - s * aq;
        a(r, q) = s * ap + c * aq;
    }
}

}  // namespace

SvdFactors svd8(const Block8& block) {
    Mat8 a = block;               // columns get rotated in place
    Mat8 v = Mat8::identity();    // accumulates the right rotations

    double norm_sq = 0.0;
    for (double x : a.m) norm_sq += x * x;
    const double zero_sq = kColumnFloor * kColumnFloor * norm_sq;

    // One-sided Jacobi (Hestenes): orthogonalize column pairs until every
    // inner product is negligible relative to the column norms.
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < Mat8::kSize - 1; ++p) {
            for (int q = p + 1; q < Mat8::kSize; ++q) {
                const double app = column_dot(a, p, p);
                const double aqq = column_dot(a, q, q);
                if (app <= zero_sq || aqq <= zero_sq) continue;
                const double apq = column_dot(a, p, q);
                if (std::abs(apq) <= kOrthTol * std::sqrt(app * aqq)) continue;
                converged = false;

                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                rotate_columns(a, p, q, c, s);
                rotate_columns(v, p, q, c, s);
            }
        }
    }
    if (!converged) throw InternalError("svd8: Jacobi sweeps did not converge");

    // Column norms are the singular values; sort them descending. Columns at
    // or below the debris floor read as exactly zero.
    std::array<double, 8> sigma{};
    for (int j = 0; j < Mat8::kSize; ++j) {
        const double ajj = column_dot(a, j, j);
        sigma[static_cast<std::size_t>(j)] = ajj <= zero_sq ? 0.0 : std::sqrt(ajj);
    }

    std::array<int, 8> order{};
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return sigma[static_cast<std::size_t>(i)] > sigma[static_cast<std::size_t>(j)]; });

    SvdFactors f;
    Mat8 u;
    for (int j = 0; j < Mat8::kSize; ++j) {
        const int src = order[static_cast<std::size_t>(j)];
        const double s = sigma[static_cast<std::size_t>(src)];
        f.singular_values[static_cast<std::size_t>(j)] = s;
        if (s > 0.0) {
            for (int r = 0; r < Mat8::kSize; ++r) u(r, j) = a(r, src) / s;
        }
        for (int r = 0; r < Mat8::kSize; ++r) f.v(r, j) = v(r, src);
    }

    // Exactly-zero columns (rank-deficient input) carry no direction; fill
    // them with an orthonormal completion so u stays orthogonal. For each
    // missing column take the standard basis vector with the largest
    // residual after projecting out the columns already in place.
    for (int j = 0; j < Mat8::kSize; ++j) {
        if (f.singular_values[static_cast<std::size_t>(j)] > 0.0) continue;
        std::array<double, 8> best{};
        double best_norm = -1.0;
        for (int basis = 0; basis < Mat8::kSize; ++basis) {
            std::array<double, 8> cand{};
            cand[static_cast<std::size_t>(basis)] = 1.0;
            for (int k = 0; k < Mat8::kSize; ++k) {
                if (k == j || (f.singular_values[static_cast<std::size_t>(k)] == 0.0 && k > j)) continue;
                double d = 0.0;
                for (int r = 0; r < Mat8::kSize; ++r) d += cand[static_cast<std::size_t>(r)] * u(r, k);
                for (int r = 0; r < Mat8::kSize; ++r) cand[static_cast<std::size_t>(r)] -= d * u(r, k);
            }
            double norm = 0.0;
            for (double x : cand) norm += x * x;
            if (norm > best_norm) {
                best_norm = norm;
                best = cand;
            }
        }
        const double norm = std::sqrt(best_norm);
        for (int r = 0; r < Mat8::kSize; ++r) u(r, j) = best[static_cast<std::size_t>(r)] / norm;
    }

    // Sign convention: largest-magnitude entry of each u column non-negative.
    for (int j = 0; j < Mat8::kSize; ++j) {
        int peak = 0;
        for (int r = 1; r < Mat8::kSize; ++r)
            if (std::abs(u(r, j)) > std::abs(u(peak, j))) peak = r;
        if (u(peak, j) < 0.0) {
            for (int r = 0; r < Mat8::kSize; ++r) {
                u(r, j) = -u(r, j);
                f.v(r, j) = -f.v(r, j);
            }
        }
    }

    f.u = u;
    return f;
}

Block8 reconstruct(const SvdFactors& factors) {
    return factors.u * Mat8::diagonal(factors.singular_values) * factors.v.transposed();
}

}  // namespace svdmark
