#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "svdmark/image.hpp"

namespace svdmark {

// The 64-bit binary payload, row-major over the 8x8 mark image.
struct Mark {
    static constexpr int kBits = 64;

    std::array<std::uint8_t, 64> bits{};  // each 0 or 1

    bool operator==(const Mark& other) const { return bits == other.bits; }
};

// Mark file format: exactly 64 characters from {'0','1'}, optional
// trailing newline.
Mark parse_mark(std::string_view text);
std::string format_mark(const Mark& mark);
Mark load_mark(const std::filesystem::path& path);
void save_mark(const Mark& mark, const std::filesystem::path& path);

// Distortion measurement between an original and a modified image.
// psnr_db is +infinity exactly when eqm is 0.
struct FidelityReport {
    double eqm = 0.0;
    double psnr_db = 0.0;
    int peak = 0;  // max intensity of the original image

    bool infinite() const;
};

// Mean squared error over all pixels; images must share dimensions.
double eqm(const GrayImage& a, const GrayImage& b);

// 10*log10(peak^2 / eqm) with peak taken over the ORIGINAL image.
FidelityReport psnr(const GrayImage& original, const GrayImage& modified);

// Pearson correlation of the two bit sequences, in [-1, 1]. A constant
// sequence has no defined correlation and raises DegenerateError.
double correlation(const Mark& w, const Mark& w_prime);

}  // namespace svdmark
