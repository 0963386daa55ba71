#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace searchgame {

inline constexpr double kProbTolerance = 1e-12;

/// Invalid inputs: malformed distributions, mismatched sizes, out-of-range parameters.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical failures: failed bracketing, non-convergence, reducible chains.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic uniform generator. The engine is seeded explicitly and the
/// uniform mapping is done by hand so that streams are identical across
/// standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    int below(int n) { return static_cast<int>(uniform() * n) % n; }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

/// Shortest text that round-trips a double exactly (17 significant digits).
std::string format_real(double x);

} // namespace searchgame
