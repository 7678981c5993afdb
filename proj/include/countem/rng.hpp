#pragma once

#include <cstdint>
#include <string_view>

namespace countem {

/// splitmix64 step; also used as the general-purpose integer mixer.
std::uint64_t splitmix64(std::uint64_t& state);

/// Stateless mix of up to four words into one, for counter-based draws.
std::uint64_t mix_u64(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0,
                      std::uint64_t d = 0);

/// Derive an independent stream seed from (seed, tag). Tags are short
/// literals like "pitch" or "noise"; the same tag always yields the
/// same stream so generator layouts stay stable across runs.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

/// xoshiro256++ with hand-rolled distributions. std:: distributions are
/// implementation-defined, which would break cross-platform reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n);
    /// Standard normal via Box-Muller.
    double normal();
    /// Exponential with the given mean.
    double exponential(double mean);

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// One uniform in [0,1) keyed by (seed, a, b); order-independent draws.
double counter_uniform(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace countem
