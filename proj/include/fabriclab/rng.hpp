#pragma once

#include <cstdint>
#include <vector>

namespace fabriclab {

// Finalizer of the splitmix64 generator; used to fold indices into stream keys.
std::uint64_t splitmix64(std::uint64_t x);

// Counter-based generator (Philox4x32-10, Salmon et al. 2011). Each stream is
// identified by a 128-bit (stream, key) pair; the 128-bit input block is
// (block counter, stream id), so distinct stream ids give statistically
// independent sequences and replications can be assigned streams up front
// without any skip-ahead bookkeeping. Output order is fixed by construction,
// which is what makes runner output independent of the thread count.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t stream_id, std::uint64_t key) noexcept
        : stream_(stream_id), key_(key) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type(0); }

    result_type operator()() {
        if (pos_ == 2) refill();
        return out_[pos_++];
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform() { return double((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Unbiased uniform draw from {0, ..., n-1} by masked rejection.
    std::uint64_t below(std::uint64_t n);

    // k distinct values from {0..n-1} \ {exclude} (pass exclude >= n to keep
    // all of them). Floyd's subset sampling; k is assumed small.
    std::vector<std::uint32_t> distinct(std::uint32_t k, std::uint32_t n,
                                        std::uint32_t exclude);

    // Index draw from a normalized probability vector (inverse CDF walk).
    std::uint32_t sample_pmf(const std::vector<double>& probs);

    template <class Vec>
    void shuffle(Vec& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    void refill();

    std::uint64_t stream_;
    std::uint64_t key_;
    std::uint64_t block_ = 0;
    std::uint64_t out_[2] = {0, 0};
    int pos_ = 2;
};

// Splittable stream addressing: a key plus a path of child indices. Replication
// r of scenario s runs on master_key(seed).child(s).child(r).stream().
struct StreamKey {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;

    StreamKey child(std::uint64_t index) const;
    RngStream stream() const { return RngStream(hi, lo); }
};

StreamKey master_key(std::uint64_t seed);

} // namespace fabriclab
