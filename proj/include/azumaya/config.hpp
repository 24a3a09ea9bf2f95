#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace azumaya {

/// Malformed input: wrong shapes, non-closed complexes, schema violations.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// The input is well-formed but numerically degenerate or inconsistent
/// (singular intertwiner after all retries, wrong commutant rank, ...).
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numerical knobs shared by every floating-point operation.
///
/// `abs_tol` bounds all residual checks; rank decisions treat a singular
/// value as nonzero when it exceeds `sqrt(abs_tol)`.
struct ToleranceConfig {
  double abs_tol = 1e-9;
  int retry_limit = 8;
  std::uint64_t rng_seed = 0;

  ToleranceConfig() = default;
  ToleranceConfig(double tol, int retries, std::uint64_t seed)
      : abs_tol(tol), retry_limit(retries), rng_seed(seed) {
    validate();
  }

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol))
      throw InputError("ToleranceConfig: abs_tol must be positive");
    if (retry_limit < 1)
      throw InputError("ToleranceConfig: retry_limit must be >= 1");
  }

  double rank_cutoff() const { return std::sqrt(abs_tol); }

  ToleranceConfig with_seed(std::uint64_t seed) const {
    ToleranceConfig c = *this;
    c.rng_seed = seed;
    return c;
  }
};

using Rng = std::mt19937_64;

/// Derives an independent stream from a base seed and a stream index
/// (splitmix64 finalizer), so callers never share generator state.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

} // namespace azumaya
