#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svdmark/attacks.hpp"
#include "svdmark/codec.hpp"
#include "svdmark/errors.hpp"
#include "svdmark/image.hpp"
#include "svdmark/metrics.hpp"

namespace {

using namespace svdmark;

// Exit codes: 0 success, 1 validation error, 2 capacity error, 3 I/O error.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitIo = 3;

std::string format_db(double db, int decimals) {
    if (db == std::numeric_limits<double>::infinity()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, db);
    return buf;
}

std::string format_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
    return buf;
}

struct BenchOptions {
    std::string image_path;
    std::string mark_path;
    std::string key_path;
    std::string out_csv;
    std::vector<std::string> suite;
    double threshold = 0.7;
    std::uint64_t noise_seed = 1;
};

std::vector<std::string> default_suite() {
    std::vector<std::string> suite = {"none"};
    for (int q = 100; q >= 10; q -= 10) suite.push_back("jpeg:" + std::to_string(q));
    suite.insert(suite.end(),
                 {"histogram_stretch", "level_reduce:32", "median3", "salt_pepper:0.01",
                  "gaussian_noise:3"});
    return suite;
}

int run_bench(const BenchOptions& opt) {
    const GrayImage original = load_pgm(opt.image_path);
    const Mark mark = load_mark(opt.mark_path);
    const EmbedKey key = load_key(opt.key_path);
    const std::string image_name = std::filesystem::path(opt.image_path).stem().string();

    const std::vector<std::string> suite = opt.suite.empty() ? default_suite() : opt.suite;

    // Embed once; every attack runs against the same watermarked image.
    const GrayImage watermarked = embed(original, mark, key);

    std::ofstream csv(opt.out_csv, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot open '" + opt.out_csv + "' for writing");
    csv << "image,attack,params,psnr_db,correlation,detected\n";

    for (const std::string& entry : suite) {
        const AttackSpec spec = parse_attack_spec(entry, opt.noise_seed);
        const GrayImage attacked = apply_attack(watermarked, spec);
        const FidelityReport fidelity = psnr(watermarked, attacked);
        const Mark extracted = extract(attacked, key);

        std::string corr_text;
        bool detected = false;
        try {
            const double corr = correlation(mark, extracted);
            corr_text = format_fixed(corr, 6);
            detected = corr >= opt.threshold;
        } catch (const DegenerateError&) {
            corr_text = "degenerate";
        }
        csv << image_name << ',' << spec.name() << ',' << spec.params() << ','
            << format_db(fidelity.psnr_db, 4) << ',' << corr_text << ','
            << (detected ? "true" : "false") << '\n';
    }
    if (!csv) throw IoError("write failure on '" + opt.out_csv + "'");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"svdmark: blind image watermarking in the singular-value domain"};
    app.require_subcommand(1);

    // keygen
    std::string kg_image, kg_out = "svdmark.key";
    std::uint64_t kg_seed = 0;
    double kg_gap = 64.0;
    int kg_bits = Mark::kBits;
    auto* keygen_cmd = app.add_subcommand("keygen", "Select embeddable blocks and write a key file");
    keygen_cmd->add_option("image", kg_image, "Host image (binary PGM)")->required();
    keygen_cmd->add_option("--seed", kg_seed, "Seed for the block-selection shuffle")->required();
    keygen_cmd->add_option("--gap-e", kg_gap, "Minimum singular-value gap E")->capture_default_str();
    keygen_cmd->add_option("--bits", kg_bits, "Number of blocks to select")->capture_default_str();
    keygen_cmd->add_option("--out", kg_out, "Key file destination")->capture_default_str();

    // embed
    std::string em_image, em_mark, em_key, em_out = "marked.pgm";
    auto* embed_cmd = app.add_subcommand("embed", "Embed a 64-bit mark and report the distortion");
    embed_cmd->add_option("image", em_image, "Host image (binary PGM)")->required();
    embed_cmd->add_option("mark", em_mark, "Mark file (64 characters of 0/1)")->required();
    embed_cmd->add_option("key", em_key, "Key file from keygen")->required();
    embed_cmd->add_option("--out", em_out, "Watermarked image destination")->capture_default_str();

    // extract
    std::string ex_image, ex_key, ex_ref;
    auto* extract_cmd = app.add_subcommand("extract", "Blindly extract the mark from an image");
    extract_cmd->add_option("image", ex_image, "Image to read (binary PGM)")->required();
    extract_cmd->add_option("key", ex_key, "Key file from keygen")->required();
    extract_cmd->add_option("--mark", ex_ref, "Reference mark; prints the correlation when given");

    // attack
    std::string at_image, at_kind, at_out = "attacked.pgm";
    int at_quality = 60, at_levels = 32;
    double at_density = 0.01, at_sigma = 3.0;
    std::uint64_t at_noise_seed = 1;
    auto* attack_cmd = app.add_subcommand("attack", "Apply one attack to an image");
    attack_cmd->add_option("image", at_image, "Image to attack (binary PGM)")->required();
    attack_cmd
        ->add_option("--kind", at_kind,
                     "One of: jpeg, histogram_stretch, level_reduce, median3, salt_pepper, gaussian_noise")
        ->required();
    attack_cmd->add_option("--quality", at_quality, "JPEG quality factor")->capture_default_str();
    attack_cmd->add_option("--levels", at_levels, "Gray levels to keep")->capture_default_str();
    attack_cmd->add_option("--density", at_density, "Salt-and-pepper density")->capture_default_str();
    attack_cmd->add_option("--sigma", at_sigma, "Gaussian noise sigma")->capture_default_str();
    attack_cmd->add_option("--noise-seed", at_noise_seed, "Seed for noise attacks")->capture_default_str();
    attack_cmd->add_option("--out", at_out, "Attacked image destination")->capture_default_str();

    // psnr
    std::string ps_a, ps_b;
    auto* psnr_cmd = app.add_subcommand("psnr", "Report EQM and PSNR between two images");
    psnr_cmd->add_option("original", ps_a, "Original image")->required();
    psnr_cmd->add_option("modified", ps_b, "Modified image")->required();

    // bench
    BenchOptions bench;
    auto* bench_cmd = app.add_subcommand("bench", "Run the attack battery and write a CSV report");
    bench_cmd->add_option("image", bench.image_path, "Host image (binary PGM)")->required();
    bench_cmd->add_option("mark", bench.mark_path, "Mark file")->required();
    bench_cmd->add_option("key", bench.key_path, "Key file")->required();
    bench_cmd->add_option("--out", bench.out_csv, "CSV destination")->required();
    bench_cmd->add_option("--suite", bench.suite,
                          "Attack specs, e.g. jpeg:60 median3 (default: full battery)");
    bench_cmd->add_option("--threshold", bench.threshold, "Detection threshold on the correlation")
        ->capture_default_str();
    bench_cmd->add_option("--noise-seed", bench.noise_seed, "Seed for noise attacks")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (keygen_cmd->parsed()) {
            const GrayImage img = load_pgm(kg_image);
            const EmbedKey key = generate_key(img, kg_seed, kg_gap, kg_bits);
            save_key(key, kg_out);
            std::cout << "key written to " << kg_out << " (" << key.bit_count() << " blocks)\n";
        } else if (embed_cmd->parsed()) {
            const GrayImage img = load_pgm(em_image);
            const Mark mark = load_mark(em_mark);
            const EmbedKey key = load_key(em_key);
            const GrayImage marked = embed(img, mark, key);
            save_pgm(marked, em_out);
            const FidelityReport fidelity = psnr(img, marked);
            std::cout << "PSNR=" << format_db(fidelity.psnr_db, 2) << " dB\n";
        } else if (extract_cmd->parsed()) {
            const GrayImage img = load_pgm(ex_image);
            const EmbedKey key = load_key(ex_key);
            const Mark extracted = extract(img, key);
            std::cout << format_mark(extracted) << '\n';
            if (!ex_ref.empty()) {
                const Mark reference = load_mark(ex_ref);
                try {
                    std::cout << "corr=" << format_fixed(correlation(reference, extracted), 4) << '\n';
                } catch (const DegenerateError&) {
                    std::cout << "corr=degenerate\n";
                }
            }
        } else if (attack_cmd->parsed()) {
            AttackSpec spec = parse_attack_spec(at_kind, at_noise_seed);
            spec.quality = at_quality;
            spec.levels = at_levels;
            spec.density = at_density;
            spec.sigma = at_sigma;
            const GrayImage img = load_pgm(at_image);
            save_pgm(apply_attack(img, spec), at_out);
            std::cout << "attacked image written to " << at_out << '\n';
        } else if (psnr_cmd->parsed()) {
            const FidelityReport fidelity = psnr(load_pgm(ps_a), load_pgm(ps_b));
            std::cout << "EQM=" << format_fixed(fidelity.eqm, 6) << '\n';
            std::cout << "PSNR=" << format_db(fidelity.psnr_db, 2) << " dB\n";
        } else if (bench_cmd->parsed()) {
            return run_bench(bench);
        }
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
