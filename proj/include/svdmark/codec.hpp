#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "svdmark/image.hpp"
#include "svdmark/metrics.hpp"
#include "svdmark/svd.hpp"

namespace svdmark {

struct BlockCoord {
    int bx = 0;
    int by = 0;

    bool operator==(const BlockCoord&) const = default;
};

// Secret shared between embedder and detector: the seed that drove block
// selection, the gap parameter, and the ordered list of selected block
// coordinates, bound to a specific image geometry.
struct EmbedKey {
    std::uint64_t seed = 0;
    double gap_e = 64.0;
    int image_width = 0;
    int image_height = 0;
    std::vector<BlockCoord> coords;  // one block per mark bit, all distinct

    int bit_count() const { return static_cast<int>(coords.size()); }
};

// The three singular values the detector looks at, plus their decision
// boundary moy = (sigma2 + sigma4) / 2.
struct GapProfile {
    double sigma2 = 0.0;
    double sigma3 = 0.0;
    double sigma4 = 0.0;

    double moy() const { return (sigma2 + sigma4) / 2.0; }
};

GapProfile gap_profile(const SvdFactors& factors);

// Scans the blocks of img in a seed-determined shuffled order and selects
// the first n_bits blocks that (a) satisfy sigma2-sigma3 >= gap_e and
// sigma3-sigma4 >= gap_e, and (b) survive a store round trip for both bit
// values (embed, round, clamp, re-extract). Throws CapacityError when fewer
// than n_bits blocks qualify.
EmbedKey generate_key(const GrayImage& img, std::uint64_t seed, double gap_e,
                      int n_bits = Mark::kBits);

// Repositions the third singular value inside (moy, sigma2) for a 1 or
// (sigma4, moy) for a 0 -- at the interval midpoint -- and reconstructs.
// Every other factor is untouched. The result is real-valued; rounding
// happens when the block is stored.
Block8 embed_bit(int bit, const SvdFactors& factors);

// Blind decision rule: decompose, compare sigma3 against moy. Strictly
// greater reads as 1, so an exact tie reads as 0.
int extract_bit(const Block8& block);

// Embeds mark bit i into block key.coords[i]. Pixels outside the selected
// blocks are byte-identical to the input.
GrayImage embed(const GrayImage& img, const Mark& mark, const EmbedKey& key);

// Blind extraction: needs only the (possibly attacked) image and the key.
Mark extract(const GrayImage& img, const EmbedKey& key);

// Key file format (text, line-based):
//   SVDMARK-KEY 1
//   <width> <height> 8
//   <seed> <gap_e> <n_bits>
//   <bx> <by>          (n_bits lines)
std::string write_key(const EmbedKey& key);
EmbedKey parse_key(std::string_view text);
EmbedKey load_key(const std::filesystem::path& path);
void save_key(const EmbedKey& key, const std::filesystem::path& path);

}  // namespace svdmark
