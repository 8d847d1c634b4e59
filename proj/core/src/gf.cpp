#include "pg4/gf.hpp"

#include <bit>
#include <charconv>

namespace pg4 {
namespace {

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) noexcept {
  const int dm = poly_degree(m);
  for (int da = poly_degree(a); da >= dm; da = poly_degree(a)) {
    a ^= m << (da - dm);
  }
  return a;
}

// Carry-less product reduced by the modulus; only used to build the tables.
std::uint32_t slow_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t m) noexcept {
  std::uint64_t acc = 0;
  for (int i = 0; b >> i; ++i) {
    if ((b >> i) & 1u) acc ^= std::uint64_t{a} << i;
  }
  return static_cast<std::uint32_t>(poly_mod(acc, m));
}

}  // namespace

int poly_degree(std::uint64_t poly) noexcept {
  return poly == 0 ? -1 : 63 - std::countl_zero(poly);
}

bool is_irreducible(std::uint64_t poly) noexcept {
  const int d = poly_degree(poly);
  if (d < 1) return false;
  // Any factorization has a factor of degree at most d/2.
  for (std::uint64_t f = 2; poly_degree(f) <= d / 2; ++f) {
    if (poly_mod(poly, f) == 0) return false;
  }
  return true;
}

std::uint32_t default_modulus(unsigned degree) {
  switch (degree) {
    case 1: return 0b11;
    case 2: return 0b111;
    case 3: return 0b1011;
    case 4: return 0b10011;
    case 5: return 0b100101;
    default: break;
  }
  if (degree == 0 || degree > GaloisField::kMaxDegree) {
    throw FieldError("field degree must be in [1, 16]");
  }
  for (std::uint32_t p = (1u << degree) | 1u; p < (2u << degree); p += 2) {
    if (is_irreducible(p)) return p;
  }
  throw FieldError("no irreducible polynomial found");  // unreachable
}

GaloisField::GaloisField(unsigned degree) : GaloisField(degree, default_modulus(degree)) {}

GaloisField::GaloisField(unsigned degree, std::uint32_t modulus)
    : degree_(degree), order_(0), modulus_(modulus) {
  if (degree == 0 || degree > kMaxDegree) {
    throw FieldError("field degree must be in [1, 16]");
  }
  if (poly_degree(modulus) != static_cast<int>(degree)) {
    throw FieldError("modulus degree does not match field degree");
  }
  if (!is_irreducible(modulus)) {
    throw FieldError("modulus is not irreducible over GF(2)");
  }
  order_ = 1u << degree;
  const std::uint32_t group = order_ - 1;

  // The modulus need not be primitive, so search for a generator.
  std::uint32_t gen = 1;
  for (std::uint32_t g = (order_ == 2 ? 1 : 2); g < order_; ++g) {
    std::uint32_t x = g;
    std::uint32_t ord = 1;
    while (x != 1) {
      x = slow_mulmod(x, g, modulus_);
      ++ord;
    }
    if (ord == group) {
      gen = g;
      break;
    }
  }

  exp_.assign(2 * std::size_t{group}, 0);
  log_.assign(order_, 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < group; ++i) {
    exp_[i] = x;
    exp_[i + group] = x;
    log_[x] = i;
    x = slow_mulmod(x, gen, modulus_);
  }
}

GaloisField GaloisField::of_order(std::uint32_t q) {
  if (q < 2 || !std::has_single_bit(q)) {
    throw FieldError("q must be a power of two, q >= 2");
  }
  return GaloisField(static_cast<unsigned>(std::countr_zero(q)));
}

GaloisField GaloisField::of_order(std::uint32_t q, std::uint32_t modulus) {
  if (q < 2 || !std::has_single_bit(q)) {
    throw FieldError("q must be a power of two, q >= 2");
  }
  return GaloisField(static_cast<unsigned>(std::countr_zero(q)), modulus);
}

FieldElement GaloisField::element(std::uint32_t bits) const {
  if (bits >= order_) {
    throw FieldError("element " + std::to_string(bits) + " does not belong to GF(" +
                     std::to_string(order_) + ")");
  }
  return {bits};
}

FieldElement GaloisField::inv(FieldElement a) const {
  if (a.bits == 0) throw FieldError("inverse of zero");
  const std::uint32_t group = order_ - 1;
  return {exp_[(group - log_[a.bits]) % group]};
}

FieldElement GaloisField::pow(FieldElement a, std::uint64_t n) const noexcept {
  if (n == 0) return one();
  if (a.bits == 0) return zero();
  const std::uint64_t group = order_ - 1;
  return {exp_[(std::uint64_t{log_[a.bits]} * (n % group)) % group]};
}

FieldElement GaloisField::trace(FieldElement a) const noexcept {
  FieldElement sum = a;
  FieldElement power = a;
  for (unsigned i = 1; i < degree_; ++i) {
    power = square(power);
    sum = add(sum, power);
  }
  return sum;
}

FieldElement GaloisField::sqrt(FieldElement a) const noexcept {
  for (unsigned i = 1; i < degree_; ++i) a = square(a);
  return a;
}

std::string GaloisField::to_hex(FieldElement a) {
  char buf[16];
  auto res = std::to_chars(buf, buf + sizeof buf, a.bits, 16);
  return std::string(buf, res.ptr);
}

FieldElement GaloisField::parse_hex(std::string_view text) const {
  std::uint32_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto res = std::from_chars(first, last, value, 16);
  if (text.empty() || res.ec != std::errc{} || res.ptr != last) {
    throw FieldError("malformed hex field element '" + std::string(text) + "'");
  }
  return element(value);
}

}  // namespace pg4
