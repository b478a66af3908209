#include "svdmark/image.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "svdmark/errors.hpp"

namespace svdmark {

namespace {

// Incremental scanner over the PGM header. Whitespace between tokens may
// contain '#' comments running to end of line.
class HeaderScanner {
public:
    explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_separators() {
        while (pos_ < bytes_.size()) {
            const char c = static_cast<char>(bytes_[pos_]);
            if (c == '#') {
                while (pos_ < bytes_.size() && static_cast<char>(bytes_[pos_]) != '\n') ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string next_token(const char* field) {
        skip_separators();
        std::string tok;
        while (pos_ < bytes_.size()) {
            const char c = static_cast<char>(bytes_[pos_]);
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v' || c == '#') break;
            tok.push_back(c);
            ++pos_;
        }
        if (tok.empty()) throw FormatError(std::string("pgm: missing ") + field);
        return tok;
    }

    int next_int(const char* field) {
        const std::string tok = next_token(field);
        try {
            std::size_t used = 0;
            const int value = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return value;
        } catch (const std::exception&) {
            throw FormatError(std::string("pgm: ") + field + " is not an integer: '" + tok + "'");
        }
    }

    // Exactly one whitespace byte separates the maxval from the payload.
    void consume_payload_separator() {
        if (pos_ >= bytes_.size()) throw FormatError("pgm: truncated header before pixel data");
        const char c = static_cast<char>(bytes_[pos_]);
        if (c != ' ' && c != '\t' && c != '\r' && c != '\n') {
            throw FormatError("pgm: expected whitespace before pixel data");
        }
        ++pos_;
    }

    std::size_t position() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    HeaderScanner scan(bytes);
    const std::string magic = scan.next_token("magic");
    if (magic != "P5") throw FormatError("pgm: unsupported magic '" + magic + "'");

    const int width = scan.next_int("width");
    const int height = scan.next_int("height");
    if (width <= 0) throw FormatError("pgm: width must be positive, got " + std::to_string(width));
    if (height <= 0) throw FormatError("pgm: height must be positive, got " + std::to_string(height));

    const int maxval = scan.next_int("maxval");
    if (maxval != 255) throw FormatError("pgm: unsupported maxval " + std::to_string(maxval) + ", only 255");
    scan.consume_payload_separator();

    const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t available = bytes.size() - scan.position();
    if (available < expected) {
        throw FormatError("pgm: truncated pixel data, expected " + std::to_string(expected) +
                          " bytes, got " + std::to_string(available));
    }

    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(scan.position()),
                      bytes.begin() + static_cast<std::ptrdiff_t>(scan.position() + expected));
    return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
    const std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out;
    out.reserve(header.size() + img.pixels.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

GrayImage load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return read_pgm(bytes);
}

void save_pgm(const GrayImage& img, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> bytes = write_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

BlockGrid partition(const GrayImage& img) {
    if (img.width % Mat8::kSize != 0 || img.height % Mat8::kSize != 0) {
        throw DimensionError("image dimensions " + std::to_string(img.width) + "x" +
                             std::to_string(img.height) + " are not a multiple of 8");
    }
    BlockGrid grid;
    grid.blocks_x = img.width / Mat8::kSize;
    grid.blocks_y = img.height / Mat8::kSize;
    grid.width = img.width;
    grid.height = img.height;
    return grid;
}

namespace {

void check_block_coords(const GrayImage& img, int bx, int by) {
    const BlockGrid grid = partition(img);
    if (!grid.contains(bx, by)) {
        throw DimensionError("block (" + std::to_string(bx) + "," + std::to_string(by) +
                             ") outside grid " + std::to_string(grid.blocks_x) + "x" +
                             std::to_string(grid.blocks_y));
    }
}

}  // namespace

Block8 get_block(const GrayImage& img, int bx, int by) {
    check_block_coords(img, bx, by);
    Block8 block;
    for (int r = 0; r < Mat8::kSize; ++r)
        for (int c = 0; c < Mat8::kSize; ++c)
            block(r, c) = static_cast<double>(img.at(bx * Mat8::kSize + c, by * Mat8::kSize + r));
    return block;
}

void set_block(GrayImage& img, int bx, int by, const Block8& block) {
    check_block_coords(img, bx, by);
    for (int r = 0; r < Mat8::kSize; ++r)
        for (int c = 0; c < Mat8::kSize; ++c)
            img.at(bx * Mat8::kSize + c, by * Mat8::kSize + r) = quantize_intensity(block(r, c));
}

std::uint8_t quantize_intensity(double value) {
    // Round half away from zero, then clamp to the 8-bit range.
    const double rounded = (value >= 0.0) ? std::floor(value + 0.5) : std::ceil(value - 0.5);
    if (rounded <= 0.0) return 0;
    if (rounded >= 255.0) return 255;
    return static_cast<std::uint8_t>(rounded);
}

Block8 quantize_block(const Block8& block) {
    Block8 out;
    for (int r = 0; r < Mat8::kSize; ++r)
        for (int c = 0; c < Mat8::kSize; ++c)
            out(r, c) = static_cast<double>(quantize_intensity(block(r, c)));
    return out;
}

}  // namespace svdmark
