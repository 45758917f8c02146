#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "charp/connections.hpp"
#include "charp/torsor.hpp"

namespace charp {

/// Seeded generator of random polynomials, rational functions and forms
/// over one ring. Uses only mt19937_64 output, so runs are reproducible.
class RandomSource {
 public:
  RandomSource(Ring ring, std::uint64_t seed) : ring_(ring), engine_(seed) {}

  const Ring& ring() const noexcept { return ring_; }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool chance(unsigned percent) { return below(100) < percent; }
  Coeff coeff() { return static_cast<Coeff>(below(ring_.p())); }
  Coeff nonzero_coeff() { return static_cast<Coeff>(1 + below(ring_.p() - 1)); }

  /// Up to max_terms random terms of total degree <= max_degree.
  MultiPoly poly(unsigned max_degree, unsigned max_terms);
  /// Monic, of total degree between 1 and max_degree.
  MultiPoly nonconstant_poly(unsigned max_degree, unsigned max_terms);
  /// Numerator of degree <= num_degree over a product of up to two monic
  /// factors with total degree <= den_degree.
  RatFunc ratfunc(unsigned num_degree, unsigned den_degree);
  /// A nonzero rational function: a constant times x^a (entries of a in
  /// [-2, 2]) times up to `factors` random factors with exponents +-1, +-2.
  RatFunc unit(unsigned factors);
  OneForm form(unsigned num_degree, unsigned den_degree);
  /// Random mix of an exact part df, a Cartier-lifted part gamma(eta) and a
  /// logarithmic part c dlog(g); always closed.
  OneForm closed_form();

 private:
  Ring ring_;
  std::mt19937_64 engine_;
};

struct BatteryResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// Instances excluded from the verdict (for example, no witness found).
  std::size_t skipped = 0;
  double seconds = 0;
  std::vector<std::string> samples;  // first few failing instances
  std::string note;

  bool passed() const noexcept { return failures == 0; }
};

/// Battery names in criterion order: cartier-identities, oracle-1var,
/// gm-equivalence, ga-equivalence, abelian-formula, aff1-classifier,
/// boundary-roundtrip, cocycle, flatness.
const std::vector<std::string>& battery_names();

/// Runs one battery. trials == 0 uses the default batch size; otherwise it
/// is the number of random instances per configuration. Throws
/// IndexOutOfRange for an unknown name.
BatteryResult run_battery(const std::string& name, std::uint64_t seed, std::size_t trials = 0);

}  // namespace charp
