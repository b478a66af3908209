#pragma once

#include <array>

#include "svdmark/block.hpp"

namespace svdmark {

// Result of decomposing an 8x8 block: block = u * diag(singular_values) * v^T.
// u and v have orthonormal columns; singular_values are non-negative and
// sorted descending. The sign ambiguity of the factor pairs is resolved by
// forcing the largest-magnitude entry of each u column to be non-negative.
struct SvdFactors {
    Mat8 u;
    std::array<double, 8> singular_values{};
    Mat8 v;
};

// One-sided Jacobi SVD specialized to 8x8. Sweeps run until every column
// pair is orthogonal to relative tolerance 1e-12, capped at 60 sweeps;
// hitting the cap throws InternalError. Rank-deficient inputs decompose
// cleanly: negligible columns count as zero singular values and u is
// completed to a full orthonormal basis.
SvdFactors svd8(const Block8& block);

// u * diag(singular_values) * v^T, exactly as computed in double precision.
// Descending order of the singular values is not required; embedding relies
// on reconstructing with a repositioned middle value.
Block8 reconstruct(const SvdFactors& factors);

}  // namespace svdmark
