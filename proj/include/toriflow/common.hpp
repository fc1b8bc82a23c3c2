// Shared primitives: coordinate type, error classes, resource caps, seeded RNG.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace toriflow {

using Coord = long long;
using Vec = std::vector<Coord>;

// Bad user input (malformed JSON, inconsistent spec, index out of range).
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was hit (point count, wall clock).
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal invariant violation; indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

inline void check(bool cond, const char* msg) {
    if (!cond) throw InvariantError(msg);
}

struct Caps {
    long long max_points = 1000000;  // lattice-point / fiber-element budget
    double max_seconds = 0.0;        // 0 = unlimited
    int degree_cap = 0;              // 0 = unlimited (Buchberger)
};

// Deterministic RNG. splitmix64 core with an explicit bounded draw so that
// streams are identical across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n >= 1. Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~0ULL - (~0ULL % n + 1) % n;
        for (;;) {
            std::uint64_t v = next();
            if (v <= limit) return v % n;
        }
    }

    double unit() {  // [0,1)
        return static_cast<double>(next() >> 11) * (1.0 / 9007199254740992.0);
    }

  private:
    std::uint64_t state_;
};

}  // namespace toriflow
