#include "hofj/opinion.hpp"

#include <cmath>
#include <stdexcept>

namespace hofj {

Distribution distribution_from_name(const std::string& name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "exponential") return Distribution::Exponential;
  if (name == "power-law" || name == "powerlaw") return Distribution::PowerLaw;
  throw std::invalid_argument("unknown distribution '" + name +
                              "' (expected uniform, exponential, or power-law)");
}

std::string distribution_name(Distribution d) {
  switch (d) {
    case Distribution::Uniform: return "uniform";
    case Distribution::Exponential: return "exponential";
    case Distribution::PowerLaw: return "power-law";
  }
  return "?";
}

void GenSpec::validate() const {
  if (n < 1) throw std::invalid_argument("opinion gen: n must be >= 1");
  if (!(x_min > 0.0)) throw std::invalid_argument("opinion gen: x_min must be positive");
  if (!(alpha_pl > 1.0)) throw std::invalid_argument("opinion gen: power-law exponent must be > 1");
}

Vector draw_raw(const GenSpec& spec) {
  spec.validate();
  RandomStream rng = RandomStream::derive(spec.seed, 0);
  Vector out(spec.n);
  switch (spec.distribution) {
    case Distribution::Uniform:
      for (NodeId i = 0; i < spec.n; ++i) out[i] = rng.uniform01();
      break;
    case Distribution::Exponential:
      for (NodeId i = 0; i < spec.n; ++i)
        out[i] = spec.x_min - std::log(1.0 - rng.uniform01());
      break;
    case Distribution::PowerLaw: {
      const double inv_exp = -1.0 / (spec.alpha_pl - 1.0);
      for (NodeId i = 0; i < spec.n; ++i)
        out[i] = spec.x_min * std::pow(1.0 - rng.uniform01(), inv_exp);
      break;
    }
  }
  return out;
}

Vector generate_innate(const GenSpec& spec) {
  Vector raw = draw_raw(spec);
  if (spec.distribution == Distribution::Uniform) return raw;
  const double max = raw.maxCoeff();
  return raw / max;
}

Vector generate_resistance(NodeId n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("generate_resistance: n must be >= 1");
  RandomStream rng = RandomStream::derive(seed, 1);
  Vector out(n);
  for (NodeId i = 0; i < n; ++i) {
    double a = rng.uniform01();
    while (a == 0.0 || a == 1.0) a = rng.uniform01();
    out[i] = a;
  }
  return out;
}

}  // namespace hofj
