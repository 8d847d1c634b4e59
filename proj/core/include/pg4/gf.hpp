#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pg4 {

/// An element of GF(2^h), stored as the coefficient bits of its polynomial
/// residue. The owning field is not recorded; elements are only meaningful
/// together with the GaloisField that produced them.
struct FieldElement {
  std::uint32_t bits = 0;

  friend constexpr bool operator==(FieldElement, FieldElement) = default;
  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomials over GF(2) are packed into integers, bit i holding the
/// coefficient of x^i.
int poly_degree(std::uint64_t poly) noexcept;
bool is_irreducible(std::uint64_t poly) noexcept;

/// Default modulus for GF(2^degree): x^2+x+1, x^3+x+1, x^4+x+1, x^5+x^2+1 for
/// degrees 2..5, otherwise the numerically smallest irreducible polynomial.
std::uint32_t default_modulus(unsigned degree);

/// GF(q), q = 2^h, with log/antilog tables. Immutable after construction.
class GaloisField {
 public:
  static constexpr unsigned kMaxDegree = 16;

  explicit GaloisField(unsigned degree);
  GaloisField(unsigned degree, std::uint32_t modulus);

  /// Throws FieldError unless q is a power of two in [2, 2^16].
  static GaloisField of_order(std::uint32_t q);
  static GaloisField of_order(std::uint32_t q, std::uint32_t modulus);

  unsigned degree() const noexcept { return degree_; }
  std::uint32_t order() const noexcept { return order_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  /// Checked construction; bits must be below the field order.
  FieldElement element(std::uint32_t bits) const;
  bool contains(FieldElement a) const noexcept { return a.bits < order_; }

  static constexpr FieldElement zero() noexcept { return {0}; }
  static constexpr FieldElement one() noexcept { return {1}; }

  static constexpr FieldElement add(FieldElement a, FieldElement b) noexcept {
    return {a.bits ^ b.bits};
  }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept {
    if (a.bits == 0 || b.bits == 0) return {0};
    return {exp_[log_[a.bits] + log_[b.bits]]};
  }
  FieldElement square(FieldElement a) const noexcept { return mul(a, a); }
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t n) const noexcept;

  /// Absolute trace a + a^2 + ... + a^(q/2); always 0 or 1.
  FieldElement trace(FieldElement a) const noexcept;
  /// The unique square root a^(q/2).
  FieldElement sqrt(FieldElement a) const noexcept;

  /// A primitive element (generator of the multiplicative group).
  FieldElement generator() const noexcept { return {exp_[1]}; }

  /// Lowercase hex of the element bits, no prefix.
  static std::string to_hex(FieldElement a);
  FieldElement parse_hex(std::string_view text) const;

  friend bool operator==(const GaloisField& a, const GaloisField& b) noexcept {
    return a.degree_ == b.degree_ && a.modulus_ == b.modulus_;
  }

 private:
  unsigned degree_;
  std::uint32_t order_;
  std::uint32_t modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1), so log sums never wrap
  std::vector<std::uint32_t> log_;
};

}  // namespace pg4
