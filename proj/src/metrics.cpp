#include "svdmark/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "svdmark/errors.hpp"

namespace svdmark {

Mark parse_mark(std::string_view text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
    if (text.size() != Mark::kBits) {
        throw FormatError("mark: expected 64 bits, got " + std::to_string(text.size()));
    }
    Mark mark;
    for (int i = 0; i < Mark::kBits; ++i) {
        const char c = text[static_cast<std::size_t>(i)];
        if (c != '0' && c != '1') {
            throw FormatError(std::string("mark: invalid character '") + c + "' at position " +
                              std::to_string(i));
        }
        mark.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(c - '0');
    }
    return mark;
}

std::string format_mark(const Mark& mark) {
    std::string out;
    out.reserve(Mark::kBits);
    for (const std::uint8_t b : mark.bits) out.push_back(b ? '1' : '0');
    return out;
}

Mark load_mark(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
    return parse_mark(text);
}

void save_mark(const Mark& mark, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << format_mark(mark) << '\n';
    if (!out) throw IoError("write failure on '" + path.string() + "'");
}

bool FidelityReport::infinite() const {
    return psnr_db == std::numeric_limits<double>::infinity();
}

double eqm(const GrayImage& a, const GrayImage& b) {
    if (!a.same_geometry(b)) {
        throw DimensionError("eqm: image dimensions differ (" + std::to_string(a.width) + "x" +
                             std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                             std::to_string(b.height) + ")");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - static_cast<double>(b.pixels[i]);
        sum += d * d;
    }
    return sum / static_cast<double>(a.pixels.size());
}

FidelityReport psnr(const GrayImage& original, const GrayImage& modified) {
    FidelityReport report;
    report.eqm = eqm(original, modified);
    report.peak = static_cast<int>(*std::max_element(original.pixels.begin(), original.pixels.end()));
    if (report.eqm == 0.0) {
        report.psnr_db = std::numeric_limits<double>::infinity();
    } else {
        const double peak = static_cast<double>(report.peak);
        report.psnr_db = 10.0 * std::log10(peak * peak / report.eqm);
    }
    return report;
}

double correlation(const Mark& w, const Mark& w_prime) {
    const int n = Mark::kBits;
    double mean_w = 0.0;
    double mean_wp = 0.0;
    for (int i = 0; i < n; ++i) {
        mean_w += w.bits[static_cast<std::size_t>(i)];
        mean_wp += w_prime.bits[static_cast<std::size_t>(i)];
    }
    mean_w /= n;
    mean_wp /= n;

    double cov = 0.0;
    double var_w = 0.0;
    double var_wp = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dw = w.bits[static_cast<std::size_t>(i)] - mean_w;
        const double dwp = w_prime.bits[static_cast<std::size_t>(i)] - mean_wp;
        cov += dw * dwp;
        var_w += dw * dw;
        var_wp += dwp * dwp;
    }
    if (var_w == 0.0 || var_wp == 0.0) {
        throw DegenerateError("correlation undefined for a constant mark");
    }
    const double r = cov / (std::sqrt(var_w) * std::sqrt(var_wp));
    return std::clamp(r, -1.0, 1.0);
}

}  // namespace svdmark
