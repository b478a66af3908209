#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "svdmark/block.hpp"

namespace svdmark {

// 8-bit single-channel raster, row-major. Values are immutable at the
// operation level: functions that modify pixels take a copy and return it.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // size = width * height

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }

    bool same_geometry(const GrayImage& other) const {
        return width == other.width && height == other.height;
    }
};

// The 8x8 block partition of an image. Block (bx, by) covers pixels
// [8*bx, 8*bx+8) x [8*by, 8*by+8).
struct BlockGrid {
    int blocks_x = 0;
    int blocks_y = 0;
    int width = 0;
    int height = 0;

    int block_count() const { return blocks_x * blocks_y; }
    bool contains(int bx, int by) const {
        return bx >= 0 && bx < blocks_x && by >= 0 && by < blocks_y;
    }
};

// Binary PGM (P5), maxval 255 only. Comments ('#' to end of line) are
// accepted in the header on read and never emitted on write.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const GrayImage& img, const std::filesystem::path& path);

// Rejects dimensions not divisible by 8; no implicit cropping.
BlockGrid partition(const GrayImage& img);

// Copies the block's pixels as reals.
Block8 get_block(const GrayImage& img, int bx, int by);

// Rounds each entry half away from zero, clamps to [0,255], writes it back.
// All pixels outside the block are untouched.
void set_block(GrayImage& img, int bx, int by, const Block8& block);

// The rounding/clamping rule applied by set_block, exposed so key
// generation can verify the exact store path.
std::uint8_t quantize_intensity(double value);
Block8 quantize_block(const Block8& block);

}  // namespace svdmark
