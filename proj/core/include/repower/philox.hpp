#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC'11). A stream is
// fully determined by its key and counter, so replicate r of a simulation
// draws the same numbers no matter which thread runs it or in what order.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace repower {

class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block generate(Block counter, Key key) noexcept
    {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kW0;
                key[1] += kW1;
            }
            const std::uint64_t p0 = std::uint64_t{kM0} * counter[0];
            const std::uint64_t p1 = std::uint64_t{kM1} * counter[2];
            counter = {static_cast<std::uint32_t>(p1 >> 32) ^ counter[1] ^ key[0],
                       static_cast<std::uint32_t>(p1),
                       static_cast<std::uint32_t>(p0 >> 32) ^ counter[3] ^ key[1],
                       static_cast<std::uint32_t>(p0)};
        }
        return counter;
    }

private:
    static constexpr std::uint32_t kM0 = 0xD2511F53;
    static constexpr std::uint32_t kM1 = 0xCD9E8D57;
    static constexpr std::uint32_t kW0 = 0x9E3779B9;
    static constexpr std::uint32_t kW1 = 0xBB67AE85;
};

/// Sequential draws from the stream (seed, index, domain). Different domains
/// give independent streams for the same index.
class StreamRng {
public:
    StreamRng(std::uint64_t seed, std::uint64_t index, std::uint32_t domain = 0) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          index_(index),
          domain_(domain)
    {
    }

    /// Uniform on the open interval (0,1) with 53 random bits.
    double uniform() noexcept
    {
        const std::uint64_t hi = next_word();
        const std::uint64_t lo = next_word();
        const std::uint64_t bits = ((hi << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draws are produced in pairs.
    double normal() noexcept
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform()));
        const double angle = 2.0 * std::numbers::pi * uniform();
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint32_t next_word() noexcept
    {
        if (used_ == 4) {
            block_ = Philox4x32::generate(
                {block_counter_++, domain_, static_cast<std::uint32_t>(index_),
                 static_cast<std::uint32_t>(index_ >> 32)},
                key_);
            used_ = 0;
        }
        return block_[used_++];
    }

    Philox4x32::Key key_;
    std::uint64_t index_;
    std::uint32_t domain_;
    std::uint32_t block_counter_ = 0;
    Philox4x32::Block block_{};
    int used_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer, used to derive per-cell seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace repower
