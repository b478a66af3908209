#include "svdmark/attacks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "svdmark/errors.hpp"
#include "svdmark/rng.hpp"

namespace svdmark {

namespace {

// Standard JPEG luminance quantization table.
constexpr std::array<int, 64> kLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,  //
    12, 12, 14, 19, 26,  58,  60,  55,  //
    14, 13, 16, 24, 40,  57,  69,  56,  //
    14, 17, 22, 29, 51,  87,  80,  62,  //
    18, 22, 37, 56, 68,  109, 103, 77,  //
    24, 35, 55, 64, 81,  104, 113, 92,  //
    49, 64, 78, 87, 103, 121, 120, 101, //
    72, 92, 95, 98, 112, 100, 103, 99,
};

double round_half_away(double x) {
    return (x >= 0.0) ? std::floor(x + 0.5) : std::ceil(x - 0.5);
}

// Orthonormal DCT-II basis: row u holds the u-th basis vector, so the
// forward transform of a block B is C * B * C^T and the inverse C^T * D * C.
const Mat8& dct_basis() {
    static const Mat8 basis = [] {
        Mat8 c;
        for (int u = 0; u < 8; ++u) {
            const double amp = std::sqrt((u == 0 ? 0.5 : 1.0) / 4.0);
            for (int x = 0; x < 8; ++x) {
                c(u, x) = amp * std::cos((2 * x + 1) * u * std::numbers::pi / 16.0);
            }
        }
        return c;
    }();
    return basis;
}

}  // namespace

std::array<int, 64> jpeg_quant_table(int quality) {
    if (quality < 1 || quality > 100) {
        throw Error("jpeg: quality " + std::to_string(quality) + " outside 1..100");
    }
    const int scale = quality < 50 ? 5000 / quality : 200 - 2 * quality;
    std::array<int, 64> table{};
    for (std::size_t i = 0; i < table.size(); ++i) {
        table[i] = std::clamp((kLuminanceTable[i] * scale + 50) / 100, 1, 255);
    }
    return table;
}

GrayImage jpeg_attack(const GrayImage& img, int quality) {
    const std::array<int, 64> table = jpeg_quant_table(quality);
    const BlockGrid grid = partition(img);
    const Mat8& c = dct_basis();

    GrayImage out = img;
    for (int by = 0; by < grid.blocks_y; ++by) {
        for (int bx = 0; bx < grid.blocks_x; ++bx) {
            Block8 block = get_block(img, bx, by);
            for (double& v : block.m) v -= 128.0;

            Mat8 coeff = c * block * c.transposed();
            for (int i = 0; i < 64; ++i) {
                const double step = static_cast<double>(table[static_cast<std::size_t>(i)]);
                coeff.m[static_cast<std::size_t>(i)] =
                    round_half_away(coeff.m[static_cast<std::size_t>(i)] / step) * step;
            }
            Block8 restored = c.transposed() * coeff * c;
            for (double& v : restored.m) v += 128.0;
            set_block(out, bx, by, restored);
        }
    }
    return out;
}

GrayImage histogram_stretch(const GrayImage& img) {
    const auto [lo_it, hi_it] = std::minmax_element(img.pixels.begin(), img.pixels.end());
    const int lo = *lo_it;
    const int hi = *hi_it;
    if (lo == hi) throw DegenerateError("histogram_stretch: constant image");

    GrayImage out = img;
    for (std::uint8_t& p : out.pixels) {
        p = quantize_intensity((static_cast<double>(p) - lo) * 255.0 / (hi - lo));
    }
    return out;
}

GrayImage level_reduce(const GrayImage& img, int levels) {
    if (levels < 2 || levels > 256) {
        throw Error("level_reduce: levels " + std::to_string(levels) + " outside 2..256");
    }
    const double steps = static_cast<double>(levels - 1);
    GrayImage out = img;
    for (std::uint8_t& p : out.pixels) {
        const double index = round_half_away(static_cast<double>(p) * steps / 255.0);
        p = quantize_intensity(index * 255.0 / steps);
    }
    return out;
}

GrayImage median3(const GrayImage& img) {
    GrayImage out = img;
    std::array<std::uint8_t, 9> window{};
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                const int yy = std::clamp(y + dy, 0, img.height - 1);
                for (int dx = -1; dx <= 1; ++dx) {
                    const int xx = std::clamp(x + dx, 0, img.width - 1);
                    window[static_cast<std::size_t>(n++)] = img.at(xx, yy);
                }
            }
            std::nth_element(window.begin(), window.begin() + 4, window.end());
            out.at(x, y) = window[4];
        }
    }
    return out;
}

GrayImage salt_pepper(const GrayImage& img, double density, std::uint64_t seed) {
    if (density < 0.0 || density > 1.0) {
        throw Error("salt_pepper: density " + std::to_string(density) + " outside [0,1]");
    }
    GrayImage out = img;
    Splitmix64 rng(seed);
    // Two draws per pixel regardless of outcome, so the stream position is a
    // fixed function of the pixel index.
    for (std::uint8_t& p : out.pixels) {
        const double roll = rng.next_unit();
        const std::uint64_t value = rng.next();
        if (roll < density) p = (value & 1u) ? 255 : 0;
    }
    return out;
}

GrayImage gaussian_noise(const GrayImage& img, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw Error("gaussian_noise: sigma must be non-negative");
    GrayImage out = img;
    if (sigma == 0.0) return out;

    Splitmix64 rng(seed);
    bool have_spare = false;
    double spare = 0.0;
    for (std::uint8_t& p : out.pixels) {
        double z;
        if (have_spare) {
            z = spare;
            have_spare = false;
        } else {
            const double u1 = rng.next_unit_open();
            const double u2 = rng.next_unit();
            const double radius = std::sqrt(-2.0 * std::log(u1));
            const double angle = 2.0 * std::numbers::pi * u2;
            z = radius * std::cos(angle);
            spare = radius * std::sin(angle);
            have_spare = true;
        }
        p = quantize_intensity(static_cast<double>(p) + sigma * z);
    }
    return out;
}

std::string AttackSpec::name() const {
    switch (kind) {
        case Kind::none: return "none";
        case Kind::jpeg: return "jpeg";
        case Kind::histogram_stretch: return "histogram_stretch";
        case Kind::level_reduce: return "level_reduce";
        case Kind::median3: return "median3";
        case Kind::salt_pepper: return "salt_pepper";
        case Kind::gaussian_noise: return "gaussian_noise";
    }
    return "?";
}

std::string AttackSpec::params() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::jpeg: out << "quality=" << quality; break;
        case Kind::level_reduce: out << "levels=" << levels; break;
        case Kind::salt_pepper: out << "density=" << density; break;
        case Kind::gaussian_noise: out << "sigma=" << sigma; break;
        default: break;
    }
    return out.str();
}

AttackSpec parse_attack_spec(std::string_view text, std::uint64_t noise_seed) {
    AttackSpec spec;
    spec.noise_seed = noise_seed;

    std::string kind(text);
    std::string arg;
    if (const std::size_t colon = kind.find(':'); colon != std::string::npos) {
        arg = kind.substr(colon + 1);
        kind.resize(colon);
    }
    const auto numeric_arg = [&](const char* what) {
        try {
            std::size_t used = 0;
            const double v = std::stod(arg, &used);
            if (used != arg.size() || arg.empty()) throw std::invalid_argument(arg);
            return v;
        } catch (const std::exception&) {
            throw Error(std::string("attack spec: bad ") + what + " '" + arg + "'");
        }
    };

    if (kind == "none") {
        spec.kind = AttackSpec::Kind::none;
    } else if (kind == "jpeg") {
        spec.kind = AttackSpec::Kind::jpeg;
        if (!arg.empty()) spec.quality = static_cast<int>(numeric_arg("quality"));
    } else if (kind == "histogram_stretch") {
        spec.kind = AttackSpec::Kind::histogram_stretch;
    } else if (kind == "level_reduce") {
        spec.kind = AttackSpec::Kind::level_reduce;
        if (!arg.empty()) spec.levels = static_cast<int>(numeric_arg("levels"));
    } else if (kind == "median3") {
        spec.kind = AttackSpec::Kind::median3;
    } else if (kind == "salt_pepper") {
        spec.kind = AttackSpec::Kind::salt_pepper;
        if (!arg.empty()) spec.density = numeric_arg("density");
    } else if (kind == "gaussian_noise") {
        spec.kind = AttackSpec::Kind::gaussian_noise;
        if (!arg.empty()) spec.sigma = numeric_arg("sigma");
    } else {
        throw Error("attack spec: unknown kind '" + kind + "'");
    }
    return spec;
}

GrayImage apply_attack(const GrayImage& img, const AttackSpec& spec) {
    switch (spec.kind) {
        case AttackSpec::Kind::none: return img;
        case AttackSpec::Kind::jpeg: return jpeg_attack(img, spec.quality);
        case AttackSpec::Kind::histogram_stretch: return histogram_stretch(img);
        case AttackSpec::Kind::level_reduce: return level_reduce(img, spec.levels);
        case AttackSpec::Kind::median3: return median3(img);
        case AttackSpec::Kind::salt_pepper: return salt_pepper(img, spec.density, spec.noise_seed);
        case AttackSpec::Kind::gaussian_noise: return gaussian_noise(img, spec.sigma, spec.noise_seed);
    }
    throw Error("attack spec: unknown kind");
}

}  // namespace svdmark
