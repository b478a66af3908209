#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "svdmark/image.hpp"

namespace svdmark {

// In-repo JPEG quantization pipeline (not an external codec): per 8x8 block,
// level shift, orthonormal 2-D DCT, quantize with the standard luminance
// table scaled by the quality factor, dequantize, inverse DCT, round, clamp.
GrayImage jpeg_attack(const GrayImage& img, int quality);

// The scaled luminance quantization table for a quality factor in 1..100.
// scale = 5000/q for q < 50 else 200 - 2q; entry = clamp((base*scale+50)/100, 1, 255).
std::array<int, 64> jpeg_quant_table(int quality);

// Affine remap sending the image minimum to 0 and maximum to 255.
// A constant image has no histogram to stretch: DegenerateError.
GrayImage histogram_stretch(const GrayImage& img);

// Uniform intensity quantization to the given number of levels (2..256),
// modelling palette reduction on a grayscale image.
GrayImage level_reduce(const GrayImage& img, int levels);

// 3x3 median filter with replicated borders.
GrayImage median3(const GrayImage& img);

// Each pixel is independently replaced with the given probability,
// equiprobably by 0 or 255. Deterministic for a fixed seed.
GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed);

// Adds N(0, sigma^2) noise per pixel (Box-Muller over seeded uniforms),
// rounds and clamps. Deterministic for a fixed seed.
GrayImage gaussian_noise(const GrayImage& img, double sigma, std::uint64_t seed);

// One attack selection for the bench, parseable from a compact spec string:
//   "none", "jpeg:60", "histogram_stretch", "level_reduce:32", "median3",
//   "salt_pepper:0.01", "gaussian_noise:3".
struct AttackSpec {
    enum class Kind { none, jpeg, histogram_stretch, level_reduce, median3, salt_pepper, gaussian_noise };

    Kind kind = Kind::none;
    int quality = 60;       // jpeg
    int levels = 32;        // level_reduce
    double density = 0.01;  // salt_pepper
    double sigma = 3.0;     // gaussian_noise
    std::uint64_t noise_seed = 1;

    std::string name() const;
    std::string params() const;  // e.g. "quality=60", empty for parameterless kinds
};

AttackSpec parse_attack_spec(std::string_view text, std::uint64_t noise_seed);
GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec);

}  // namespace svdmark
