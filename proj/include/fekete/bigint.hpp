#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace fekete {

/// Exact unbounded integer used for pattern counts.
using BigInt = boost::multiprecision::cpp_int;

BigInt pow_big(std::uint64_t base, std::uint64_t exponent);

/// log2 of a positive integer of any size (does not overflow to inf).
double log2_big(const BigInt& value);

/// Returns k when value == base^k exactly.
std::optional<std::uint64_t> exact_log(const BigInt& value, std::uint64_t base);

/// base^exponent if it fits in 64 bits.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exponent);

inline std::string to_decimal(const BigInt& value) { return value.str(); }

}  // namespace fekete
