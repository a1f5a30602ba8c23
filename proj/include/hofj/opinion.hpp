#pragma once

#include <cstdint>
#include <string>

#include "hofj/polynomial.hpp"
#include "hofj/rng.hpp"

namespace hofj {

enum class Distribution { Uniform, Exponential, PowerLaw };

Distribution distribution_from_name(const std::string& name);
std::string distribution_name(Distribution d);

/// Innate-opinion generator configuration. `x_min` is the lower support
/// bound of the exponential / power-law draws (default 1.0, echoed in every
/// report); `alpha_pl` is the power-law exponent (default 2.5).
struct GenSpec {
  Distribution distribution = Distribution::Uniform;
  double x_min = 1.0;
  double alpha_pl = 2.5;
  std::uint64_t seed = 0;
  NodeId n = 0;

  void validate() const;
};

/// Raw draws before normalization: uniform on [0,1); shifted exponential
/// x = x_min - ln(1-u); power-law x = x_min (1-u)^{-1/(alpha-1)} by inverse
/// CDF. Deterministic per (spec, seed).
Vector draw_raw(const GenSpec& spec);

/// Innate opinions in [0,1]: the uniform draws directly, the exponential
/// and power-law draws divided by their observed maximum (so one entry is
/// exactly 1).
Vector generate_innate(const GenSpec& spec);

/// Resistances iid uniform on the open interval (0,1); draws hitting an
/// endpoint at floating precision are resampled.
Vector generate_resistance(NodeId n, std::uint64_t seed);

}  // namespace hofj
