#include "fabriclab/rng.hpp"

#include <bit>

#include "fabriclab/errors.hpp"

namespace fabriclab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

namespace {

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
    std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

} // namespace

void RngStream::refill() {
    std::uint32_t c0 = std::uint32_t(block_);
    std::uint32_t c1 = std::uint32_t(block_ >> 32);
    std::uint32_t c2 = std::uint32_t(stream_);
    std::uint32_t c3 = std::uint32_t(stream_ >> 32);
    std::uint32_t k0 = std::uint32_t(key_);
    std::uint32_t k1 = std::uint32_t(key_ >> 32);
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(0xD2511F53u, c0, hi0, lo0);
        mulhilo(0xCD9E8D57u, c2, hi1, lo1);
        c0 = hi1 ^ c1 ^ k0;
        c1 = lo1;
        c2 = hi0 ^ c3 ^ k1;
        c3 = lo0;
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    out_[0] = (std::uint64_t(c1) << 32) | c0;
    out_[1] = (std::uint64_t(c3) << 32) | c2;
    ++block_;
    pos_ = 0;
}

std::uint64_t RngStream::below(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t(0) >> std::countl_zero(n - 1);
    for (;;) {
        std::uint64_t v = (*this)() & mask;
        if (v < n) return v;
    }
}

std::vector<std::uint32_t> RngStream::distinct(std::uint32_t k, std::uint32_t n,
                                               std::uint32_t exclude) {
    std::uint32_t m = n - (exclude < n ? 1 : 0);
    if (k > m) throw std::domain_error("distinct: sample size exceeds population");
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::uint32_t j = m - k; j < m; ++j) {
        auto v = std::uint32_t(below(j + 1));
        bool dup = false;
        for (auto u : out) dup = dup || (u == v);
        out.push_back(dup ? j : v);
    }
    if (exclude < n)
        for (auto& u : out)
            if (u >= exclude) ++u;
    return out;
}

std::uint32_t RngStream::sample_pmf(const std::vector<double>& probs) {
    double u = uniform();
    double acc = 0.0;
    for (std::uint32_t d = 0; d + 1 < probs.size(); ++d) {
        acc += probs[d];
        if (u < acc) return d;
    }
    // Rounding residue lands on the top index.
    return std::uint32_t(probs.size() - 1);
}

StreamKey StreamKey::child(std::uint64_t index) const {
    StreamKey c;
    c.hi = splitmix64(hi + splitmix64(index ^ 0xBF58476D1CE4E5B9ULL));
    c.lo = splitmix64(lo ^ splitmix64(index + 0x9E3779B97F4A7C15ULL));
    return c;
}

StreamKey master_key(std::uint64_t seed) {
    StreamKey k;
    k.hi = splitmix64(seed ^ 0x243F6A8885A308D3ULL);
    k.lo = splitmix64(seed + 0x13198A2E03707344ULL);
    return k;
}

} // namespace fabriclab
