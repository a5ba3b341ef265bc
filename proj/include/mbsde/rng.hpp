#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "mbsde/normal.hpp"

namespace mbsde {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
// A (seed, stream) pair addresses an independent sequence; outputs depend
// only on (seed, stream, counter), so draws are reproducible bit-for-bit
// no matter how work is scheduled across threads.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t key,
                                              const std::array<std::uint32_t, 4>& counter) {
        std::uint32_t k0 = static_cast<std::uint32_t>(key);
        std::uint32_t k1 = static_cast<std::uint32_t>(key >> 32);
        std::array<std::uint32_t, 4> c = counter;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(0xD2511F53u) * c[0];
            const std::uint64_t p1 = std::uint64_t(0xCD9E8D57u) * c[2];
            c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k0,
                 static_cast<std::uint32_t>(p1),
                 static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k1,
                 static_cast<std::uint32_t>(p0)};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return c;
    }
};

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Uniform on (0,1) with 52-bit resolution; never returns an endpoint.
    double next_uniform() {
        if (pos_ == 2) refill();
        return buf_[pos_++];
    }

    double next_gaussian() { return normal_inv_cdf(next_uniform()); }

    void fill_gaussian(std::span<double> out) {
        for (double& v : out) v = next_gaussian();
    }

private:
    void refill() {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(counter_),
            static_cast<std::uint32_t>(counter_ >> 32),
            static_cast<std::uint32_t>(stream_),
            static_cast<std::uint32_t>(stream_ >> 32)};
        const auto out = Philox4x32::block(seed_, ctr);
        ++counter_;
        buf_[0] = to_unit(out[0], out[1]);
        buf_[1] = to_unit(out[2], out[3]);
        pos_ = 0;
    }

    static double to_unit(std::uint32_t hi, std::uint32_t lo) {
        const std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
        return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    int pos_ = 2;
    double buf_[2] = {0.0, 0.0};
};

} // namespace mbsde
