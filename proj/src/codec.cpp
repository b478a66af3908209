#include "svdmark/codec.hpp"

#include <iomanip>
#include <fstream>
#include <set>
#include <sstream>

#include "svdmark/errors.hpp"
#include "svdmark/rng.hpp"

namespace svdmark {

GapProfile gap_profile(const SvdFactors& factors) {
    GapProfile p;
    p.sigma2 = factors.singular_values[1];
    p.sigma3 = factors.singular_values[2];
    p.sigma4 = factors.singular_values[3];
    return p;
}

Block8 embed_bit(int bit, const SvdFactors& factors) {
    SvdFactors marked = factors;
    const GapProfile p = gap_profile(factors);
    const double moy = p.moy();
    marked.singular_values[2] = bit ? (moy + p.sigma2) / 2.0 : (moy + p.sigma4) / 2.0;
    return reconstruct(marked);
}

int extract_bit(const Block8& block) {
    const GapProfile p = gap_profile(svd8(block));
    return p.sigma3 > p.moy() ? 1 : 0;
}

namespace {

// Eligibility is decided on the unmarked block: both gaps must clear gap_e,
// and both bit values must survive the integer store path.
bool block_is_eligible(const Block8& block, double gap_e) {
    const SvdFactors factors = svd8(block);
    const GapProfile p = gap_profile(factors);
    if (p.sigma2 - p.sigma3 < gap_e || p.sigma3 - p.sigma4 < gap_e) return false;
    for (int bit = 0; bit <= 1; ++bit) {
        const Block8 stored = quantize_block(embed_bit(bit, factors));
        if (extract_bit(stored) != bit) return false;
    }
    return true;
}

}  // namespace

EmbedKey generate_key(const GrayImage& img, std::uint64_t seed, double gap_e, int n_bits) {
    if (gap_e < 0.0) throw Error("generate_key: gap parameter must be non-negative");
    if (n_bits <= 0) throw Error("generate_key: bit count must be positive");
    const BlockGrid grid = partition(img);

    // All block coordinates in row-major index order, then one seeded
    // shuffle; the scan below is first-accepted-wins over that order.
    std::vector<BlockCoord> order;
    order.reserve(static_cast<std::size_t>(grid.block_count()));
    for (int by = 0; by < grid.blocks_y; ++by)
        for (int bx = 0; bx < grid.blocks_x; ++bx) order.push_back({bx, by});
    Splitmix64 rng(seed);
    fisher_yates_shuffle(order, rng);

    EmbedKey key;
    key.seed = seed;
    key.gap_e = gap_e;
    key.image_width = img.width;
    key.image_height = img.height;
    for (const BlockCoord& coord : order) {
        if (block_is_eligible(get_block(img, coord.bx, coord.by), gap_e)) {
            key.coords.push_back(coord);
            if (key.bit_count() == n_bits) return key;
        }
    }
    throw CapacityError(key.bit_count(), n_bits);
}

namespace {

void check_geometry(const GrayImage& img, const EmbedKey& key) {
    if (img.width != key.image_width || img.height != key.image_height) {
        throw DimensionError("key geometry " + std::to_string(key.image_width) + "x" +
                             std::to_string(key.image_height) + " does not match image " +
                             std::to_string(img.width) + "x" + std::to_string(img.height));
    }
}

}  // namespace

GrayImage embed(const GrayImage& img, const Mark& mark, const EmbedKey& key) {
    check_geometry(img, key);
    if (key.bit_count() != Mark::kBits) {
        throw Error("embed: key holds " + std::to_string(key.bit_count()) + " blocks, need " +
                    std::to_string(Mark::kBits));
    }
    GrayImage out = img;
    for (int i = 0; i < Mark::kBits; ++i) {
        const BlockCoord& coord = key.coords[static_cast<std::size_t>(i)];
        const SvdFactors factors = svd8(get_block(out, coord.bx, coord.by));
        set_block(out, coord.bx, coord.by, embed_bit(mark.bits[static_cast<std::size_t>(i)], factors));
    }
    return out;
}

Mark extract(const GrayImage& img, const EmbedKey& key) {
    check_geometry(img, key);
    if (key.bit_count() != Mark::kBits) {
        throw Error("extract: key holds " + std::to_string(key.bit_count()) + " blocks, need " +
                    std::to_string(Mark::kBits));
    }
    Mark mark;
    for (int i = 0; i < Mark::kBits; ++i) {
        const BlockCoord& coord = key.coords[static_cast<std::size_t>(i)];
        mark.bits[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(extract_bit(get_block(img, coord.bx, coord.by)));
    }
    return mark;
}

std::string write_key(const EmbedKey& key) {
    std::ostringstream out;
    out << "SVDMARK-KEY 1\n";
    out << key.image_width << ' ' << key.image_height << ' ' << Mat8::kSize << '\n';
    out << key.seed << ' ' << std::setprecision(17) << key.gap_e << ' ' << key.bit_count() << '\n';
    for (const BlockCoord& coord : key.coords) out << coord.bx << ' ' << coord.by << '\n';
    return out.str();
}

EmbedKey parse_key(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;

    if (!std::getline(in, line)) throw FormatError("key: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "SVDMARK-KEY 1") throw FormatError("key: unsupported header '" + line + "'");

    EmbedKey key;
    int block_size = 0;
    int n_bits = 0;
    if (!(in >> key.image_width >> key.image_height >> block_size)) {
        throw FormatError("key: malformed geometry line");
    }
    if (block_size != Mat8::kSize) {
        throw FormatError("key: unsupported block size " + std::to_string(block_size));
    }
    if (key.image_width <= 0 || key.image_height <= 0 ||
        key.image_width % Mat8::kSize != 0 || key.image_height % Mat8::kSize != 0) {
        throw FormatError("key: invalid geometry " + std::to_string(key.image_width) + "x" +
                          std::to_string(key.image_height));
    }
    if (!(in >> key.seed >> key.gap_e >> n_bits)) {
        throw FormatError("key: malformed parameter line");
    }
    if (n_bits <= 0) throw FormatError("key: bit count must be positive");
    if (key.gap_e < 0.0) throw FormatError("key: gap parameter must be non-negative");

    const int blocks_x = key.image_width / Mat8::kSize;
    const int blocks_y = key.image_height / Mat8::kSize;
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < n_bits; ++i) {
        BlockCoord coord;
        if (!(in >> coord.bx >> coord.by)) {
            throw FormatError("key: expected " + std::to_string(n_bits) + " coordinates, got " +
                              std::to_string(i));
        }
        if (coord.bx < 0 || coord.bx >= blocks_x || coord.by < 0 || coord.by >= blocks_y) {
            throw FormatError("key: block (" + std::to_string(coord.bx) + "," +
                              std::to_string(coord.by) + ") outside grid");
        }
        if (!seen.insert({coord.bx, coord.by}).second) {
            throw FormatError("key: duplicate block (" + std::to_string(coord.bx) + "," +
                              std::to_string(coord.by) + ")");
        }
        key.coords.push_back(coord);
    }
    int trailing = 0;
    if (in >> trailing) throw FormatError("key: trailing data after coordinate list");
    return key;
}

EmbedKey load_key(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return parse_key(text);
}

void save_key(const EmbedKey& key, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << write_key(key);
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

}  // namespace svdmark
