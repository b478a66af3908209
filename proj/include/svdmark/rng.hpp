#pragma once

#include <cstdint>
#include <vector>

namespace svdmark {

// splitmix64 (Vigna's public-domain generator). Chosen because the output
// stream is a pure function of the 64-bit seed, with no platform- or
// library-dependent state, so key generation and seeded attacks are
// bit-reproducible everywhere.
class Splitmix64 {
public:
    explicit Splitmix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform double in (0, 1]; safe as a log() argument.
    double next_unit_open() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Classic Fisher-Yates: swap a[i] with a[rng % (i+1)] for i = n-1 .. 1.
// The modulo bias is irrelevant here; what matters is that the permutation
// is a fixed function of the seed.
template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, Splitmix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next() % i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace svdmark
