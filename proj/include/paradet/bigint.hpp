// Minimal arbitrary-precision unsigned integer for exact structure counts
// (factorial squares leave 64 bits quickly).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace paradet {

class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);  // NOLINT: implicit by design

  BigUint& operator+=(const BigUint& other);
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  friend BigUint operator*(const BigUint& a, const BigUint& b);

  bool operator==(const BigUint& other) const = default;
  std::strong_ordering operator<=>(const BigUint& other) const;

  bool is_zero() const { return limbs_.empty(); }
  std::string to_string() const;
  double to_double() const;
  // Exact value if it fits into 64 bits; throws otherwise.
  std::uint64_t to_u64() const;

  static BigUint factorial(std::uint32_t n);
  // n is small everywhere we count, so this fits 64 bits.
  static std::uint64_t binomial_u64(std::uint32_t n, std::uint32_t k);

 private:
  std::vector<std::uint32_t> limbs_;  // base 2^32, little endian, no leading zero
  void trim();
};

}  // namespace paradet
