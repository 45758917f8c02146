#pragma once

#include <cstdint>

namespace charp {

using Coeff = std::uint32_t;

/// Computation context: the prime field F_p and the number of variables of
/// the ambient affine space. Every polynomial carries its ring; mixing rings
/// is an error.
class Ring {
 public:
  static constexpr unsigned kMaxVars = 4;
  static constexpr std::uint32_t kMaxPrime = 65521;

  /// Throws InvalidContext unless p is an odd prime below kMaxPrime and
  /// 1 <= nvars <= kMaxVars.
  static Ring create(std::uint32_t p, unsigned nvars);

  std::uint32_t p() const noexcept { return p_; }
  unsigned nvars() const noexcept { return nvars_; }

  Coeff reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Coeff>(r < 0 ? r + p_ : r);
  }
  Coeff add(Coeff a, Coeff b) const noexcept {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Coeff pow(Coeff a, std::uint64_t e) const noexcept;
  /// Throws InverseOfZero for a == 0.
  Coeff inv(Coeff a) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  Ring(std::uint32_t p, unsigned nvars) : p_(p), nvars_(nvars) {}

  std::uint32_t p_;
  unsigned nvars_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Throws RingMismatch when the two rings differ.
void require_same_ring(const Ring& a, const Ring& b);

}  // namespace charp
