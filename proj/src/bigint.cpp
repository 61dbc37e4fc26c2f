#include "fekete/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace fekete {

BigInt pow_big(std::uint64_t base, std::uint64_t exponent) {
  return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exponent));
}

double log2_big(const BigInt& value) {
  if (value <= 0) throw std::domain_error("log2_big: value must be positive");
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 63) return std::log2(static_cast<double>(value.convert_to<std::uint64_t>()));
  // Keep the top 63 bits; the discarded tail only perturbs the last ulp.
  const std::size_t shift = bits - 63;
  const BigInt top = value >> shift;
  return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) + static_cast<double>(shift);
}

std::optional<std::uint64_t> exact_log(const BigInt& value, std::uint64_t base) {
  if (value <= 0 || base < 2) return std::nullopt;
  BigInt rest = value;
  std::uint64_t k = 0;
  while (rest > 1) {
    if (rest % base != 0) return std::nullopt;
    rest /= base;
    ++k;
  }
  return k;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exponent) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > UINT64_MAX / base) return std::nullopt;
    result *= base;
  }
  return result;
}

}  // namespace fekete
