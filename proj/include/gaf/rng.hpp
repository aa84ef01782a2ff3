#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace gaf {

// Deterministic random source. Every draw goes through the helpers below, so
// the consumed engine stream depends only on the seed and never on standard
// library distribution internals. The engine state round-trips through text,
// which is what makes checkpoint/resume reproduce an uninterrupted run.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::size_t uniform_index(std::size_t n);

    // Uniform double in [0, 1) with 53 bits of precision.
    double uniform_real();

    // True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) { return uniform_real() < p; }

    std::string serialize() const;
    static Rng deserialize(const std::string& text);

    bool operator==(const Rng& other) const { return engine_ == other.engine_; }

private:
    std::mt19937_64 engine_;
};

}  // namespace gaf
