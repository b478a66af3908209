#include <doctest.h>

#include <cstring>
#include <string>
#include <vector>

#include "support/test_util.hpp"
#include "svdmark/errors.hpp"
#include "svdmark/image.hpp"

using namespace svdmark;
using namespace svdmark::testing;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& header, std::initializer_list<int> payload) {
    std::vector<std::uint8_t> out(header.begin(), header.end());
    for (int v : payload) out.push_back(static_cast<std::uint8_t>(v));
    return out;
}

}  // namespace

TEST_SUITE_BEGIN("image");

TEST_CASE("minimal well-formed file parses") {
    const auto bytes = bytes_of("P5\n2 2\n255\n", {0, 128, 200, 255});
    const GrayImage img = read_pgm(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.at(0, 0) == 0);
    CHECK(img.at(1, 0) == 128);
    CHECK(img.at(0, 1) == 200);
    CHECK(img.at(1, 1) == 255);
}

TEST_CASE("header comments are accepted on read") {
    const auto bytes = bytes_of("P5\n# a comment\n2 # inline\n1\n255\n", {7, 9});
    const GrayImage img = read_pgm(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.at(1, 0) == 9);
}

TEST_CASE("malformed files are rejected with the offending field") {
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P6\n2 2\n255\n", {0, 0, 0, 0})),
                         doctest::Contains("magic"), FormatError);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n2 2\n254\n", {0, 0, 0, 0})),
                         doctest::Contains("maxval"), FormatError);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n0 2\n255\n", {})),
                         doctest::Contains("width"), FormatError);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n2 -1\n255\n", {})),
                         doctest::Contains("height"), FormatError);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\n2 2\n255\n", {0, 0, 0})),
                         doctest::Contains("truncated"), FormatError);
    CHECK_THROWS_WITH_AS(read_pgm(bytes_of("P5\nx 2\n255\n", {0, 0})),
                         doctest::Contains("integer"), FormatError);
}

TEST_CASE("write emits the exact canonical encoding") {
    GrayImage img;
    img.width = 1;
    img.height = 1;
    img.pixels = {0};
    const auto bytes = write_pgm(img);
    const std::string expected = "P5\n1 1\n255\n";
    REQUIRE(bytes.size() == expected.size() + 1);
    CHECK(std::memcmp(bytes.data(), expected.data(), expected.size()) == 0);
    CHECK(bytes.back() == 0);
}

TEST_CASE("512x512 write has the right payload size") {
    Splitmix64 rng(3);
    const GrayImage img = random_image(512, 512, rng);
    const auto bytes = write_pgm(img);
    CHECK(bytes.size() == std::string("P5\n512 512\n255\n").size() + 262144);
}

TEST_CASE("round trips are exact over the full value range") {
    GrayImage img;
    img.width = 16;
    img.height = 16;
    for (int i = 0; i < 256; ++i) img.pixels.push_back(static_cast<std::uint8_t>(i));

    const GrayImage back = read_pgm(write_pgm(img));
    CHECK(back.width == img.width);
    CHECK(back.height == img.height);
    CHECK(back.pixels == img.pixels);

    // re-encoding a commented file keeps the payload bytes and drops comments
    auto commented = bytes_of("P5 # note\n16\n16\n255\n", {});
    commented.insert(commented.end(), img.pixels.begin(), img.pixels.end());
    const auto canonical = write_pgm(read_pgm(commented));
    CHECK(canonical == write_pgm(img));
}

TEST_CASE("partition accepts multiples of 8 and nothing else") {
    Splitmix64 rng(5);
    const GrayImage big = random_image(512, 512, rng);
    const BlockGrid grid = partition(big);
    CHECK(grid.blocks_x == 64);
    CHECK(grid.blocks_y == 64);
    CHECK(grid.block_count() == 4096);

    const GrayImage tiny = random_image(8, 8, rng);
    CHECK(partition(tiny).block_count() == 1);

    GrayImage odd = random_image(8, 8, rng);
    odd.width = 500;  // 500 x 512 is not partitionable
    odd.height = 512;
    odd.pixels.resize(500 * 512);
    CHECK_THROWS_AS(partition(odd), DimensionError);
}

TEST_CASE("block reads and writes are exact inverses on integer images") {
    Splitmix64 rng(11);
    GrayImage img = random_image(64, 32, rng);
    const GrayImage original = img;
    const BlockGrid grid = partition(img);
    for (int by = 0; by < grid.blocks_y; ++by) {
        for (int bx = 0; bx < grid.blocks_x; ++bx) {
            set_block(img, bx, by, get_block(img, bx, by));
        }
    }
    CHECK(img.pixels == original.pixels);
}

TEST_CASE("reassembling every block reproduces the image") {
    Splitmix64 rng(13);
    const GrayImage src = random_image(40, 24, rng);
    GrayImage dst = constant_image(40, 24, 0);
    const BlockGrid grid = partition(src);
    for (int by = 0; by < grid.blocks_y; ++by)
        for (int bx = 0; bx < grid.blocks_x; ++bx) set_block(dst, bx, by, get_block(src, bx, by));
    CHECK(dst.pixels == src.pixels);
}

TEST_CASE("stores round half away from zero and clamp to [0,255]") {
    GrayImage img = constant_image(8, 8, 100);
    Block8 block = get_block(img, 0, 0);
    block(0, 0) = 255.7;
    block(0, 1) = -3.2;
    block(0, 2) = 127.5;
    block(0, 3) = 126.5;
    block(0, 4) = -0.5;
    set_block(img, 0, 0, block);
    CHECK(img.at(0, 0) == 255);
    CHECK(img.at(1, 0) == 0);
    CHECK(img.at(2, 0) == 128);
    CHECK(img.at(3, 0) == 127);
    CHECK(img.at(4, 0) == 0);
}

TEST_CASE("out-of-range block coordinates are rejected") {
    GrayImage img = constant_image(16, 16, 0);
    CHECK_THROWS_AS(get_block(img, 2, 0), DimensionError);
    CHECK_THROWS_AS(get_block(img, 0, -1), DimensionError);
    Block8 b;
    CHECK_THROWS_AS(set_block(img, -1, 0, b), DimensionError);
    CHECK_THROWS_AS(set_block(img, 0, 2, b), DimensionError);
}

TEST_CASE("corpus images load with the expected geometry") {
    const GrayImage grass = load_pgm(data_file("grass.pgm"));
    CHECK(grass.width == 512);
    CHECK(grass.height == 512);
    const GrayImage gravel = load_pgm(data_file("gravel.pgm"));
    CHECK(gravel.width == 512);
    CHECK(gravel.height == 512);
}

TEST_CASE("loading a missing file raises an I/O error") {
    CHECK_THROWS_AS(load_pgm(data_file("does_not_exist.pgm")), IoError);
}

TEST_SUITE_END();
