#pragma once

#include <cstdint>

namespace netlearn {

// Counter-based generator: output i of a stream with key K is
// mix(K + (i+1)*GOLDEN), i.e. the splitmix64 sequence seeded at K.
// Streams are addressed by tags hashed into the key, so per-vertex,
// per-edge and per-trial substreams can be drawn in any order (including
// concurrently) without changing any value.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Uniform integer in [0, n), n >= 1.
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    // Child stream addressed by tag; independent of this stream's counter.
    CounterRng split(std::uint64_t tag) const { return CounterRng(mix(key_ ^ mix(tag + kSalt))); }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kSalt = 0x632be59bd9b4e019ULL;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Fixed stream tags; part of the reproducibility contract.
namespace stream {
inline constexpr std::uint64_t kVertex = 1;
inline constexpr std::uint64_t kLabel = 2;
inline constexpr std::uint64_t kTrial = 3;
inline constexpr std::uint64_t kTest = 4;
inline constexpr std::uint64_t kInstance = 5;
inline constexpr std::uint64_t kProbe = 6;
}  // namespace stream

}  // namespace netlearn
