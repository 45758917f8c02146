#include "charp/field.hpp"

#include <string>

#include "charp/error.hpp"

namespace charp {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidContext: return "InvalidContext";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ExponentOverflow: return "ExponentOverflow";
    case ErrorCode::DivisionNotExact: return "DivisionNotExact";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::NotAPthPower: return "NotAPthPower";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InverseOfZero: return "InverseOfZero";
    case ErrorCode::ZeroArgument: return "ZeroArgument";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::NotCartierFixed: return "NotCartierFixed";
    case ErrorCode::NoWitnessOnChart: return "NoWitnessOnChart";
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::ShapeViolation: return "ShapeViolation";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::CharTwo: return "CharTwo";
    case ErrorCode::ZeroUnit: return "ZeroUnit";
    case ErrorCode::InconsistentWitnesses: return "InconsistentWitnesses";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SortError: return "SortError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::InternalAssertion: return "InternalAssertion";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Ring Ring::create(std::uint32_t p, unsigned nvars) {
  if (p == 2) fail(ErrorCode::InvalidContext, "characteristic 2 is not supported");
  if (!is_prime(p)) fail(ErrorCode::InvalidContext, std::to_string(p) + " is not prime");
  if (p > kMaxPrime) fail(ErrorCode::InvalidContext, "prime " + std::to_string(p) + " too large");
  if (nvars < 1 || nvars > kMaxVars)
    fail(ErrorCode::InvalidContext, "variable count must be in 1.." + std::to_string(kMaxVars));
  return Ring(p, nvars);
}

Coeff Ring::pow(Coeff a, std::uint64_t e) const noexcept {
  Coeff result = 1 % p_;
  Coeff base = a % p_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

Coeff Ring::inv(Coeff a) const {
  if (a % p_ == 0) fail(ErrorCode::InverseOfZero, "inverse of 0 in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

void require_same_ring(const Ring& a, const Ring& b) {
  if (!(a == b))
    fail(ErrorCode::RingMismatch, "operands live in F_" + std::to_string(a.p()) + "[" +
                                      std::to_string(a.nvars()) + " vars] and F_" + std::to_string(b.p()) +
                                      "[" + std::to_string(b.nvars()) + " vars]");
}

}  // namespace charp
