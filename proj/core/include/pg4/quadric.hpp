#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pg4/bitset.hpp"
#include "pg4/gf.hpp"
#include "pg4/linalg.hpp"
#include "pg4/projgeom.hpp"

namespace pg4 {

class SingularFormError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Q(x) = sum_{i<=j} a_ij x_i x_j on GF(q)^5. Coefficients are kept in (i,j)
/// lexicographic order: a00 a01 a02 a03 a04 a11 ... a44.
class QuadraticForm {
 public:
  static constexpr std::size_t kCoefficients = 15;
  using Coefficients = std::array<FieldElement, kCoefficients>;

  QuadraticForm() = default;
  explicit QuadraticForm(const Coefficients& coeffs) : coeffs_(coeffs) {}

  static constexpr std::size_t slot(std::size_t i, std::size_t j) noexcept {
    if (i > j) std::swap(i, j);
    // rows 0..i-1 hold 5, 4, ... entries
    return i * kAmbientRank - i * (i - 1) / 2 + (j - i);
  }

  FieldElement coeff(std::size_t i, std::size_t j) const noexcept { return coeffs_[slot(i, j)]; }
  void set(std::size_t i, std::size_t j, FieldElement v) noexcept { coeffs_[slot(i, j)] = v; }
  const Coefficients& coefficients() const noexcept { return coeffs_; }

  FieldElement evaluate(const GaloisField& field, const Coords& x) const noexcept;
  FieldElement evaluate(const GaloisField& field, const ProjectivePoint& p) const noexcept {
    return evaluate(field, p.coords);
  }

  /// Gram matrix of the polar form b(x,y) = Q(x+y) + Q(x) + Q(y). In
  /// characteristic 2 it is alternating (zero diagonal).
  Matrix polar_matrix() const;

  /// The form x -> Q(M x).
  QuadraticForm compose(const GaloisField& field, const Matrix& m) const;

  /// Scales so the first nonzero coefficient is 1.
  QuadraticForm normalized(const GaloisField& field) const;
  bool is_zero() const noexcept;

  /// 15 hex coefficients joined by ':'.
  std::string to_string() const;
  static QuadraticForm parse(const GaloisField& field, std::string_view text);

  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;

 private:
  Coefficients coeffs_{};
};

/// x0^2 + x1 x2 + x3 x4.
QuadraticForm standard_parabolic(const GaloisField& field);

/// Unique point of the polar radical, for a non-singular parabolic form over
/// GF(2^h). Throws SingularFormError when the radical is not a single point
/// or the form vanishes on it.
ProjectivePoint nucleus(const GaloisField& field, const QuadraticForm& f);

Bitset zero_set(const Geometry& geometry, const QuadraticForm& f);

enum class SectionKind { Elliptic, Hyperbolic, Cone, Other };

struct SectionType {
  SectionKind kind = SectionKind::Other;
  std::size_t points = 0;

  friend bool operator==(const SectionType&, const SectionType&) = default;
};

std::string_view to_string(SectionKind kind) noexcept;

/// Classifies by point count: q^2+1 elliptic, (q+1)^2 hyperbolic, q^2+q+1 cone.
SectionType classify_section_size(std::uint32_t q, std::size_t points) noexcept;
SectionType section_type(const Geometry& geometry, const Bitset& zeros, std::uint32_t hyperplane);
SectionType section_type(const Geometry& geometry, const QuadraticForm& f, const Hyperplane& h);

struct SectionPartition {
  std::vector<std::uint32_t> elliptic;
  std::vector<std::uint32_t> hyperbolic;
  std::vector<std::uint32_t> cone;
};

/// Partitions every solid by its section with f. Throws SingularFormError if
/// some solid meets the zero set in an unexpected number of points.
SectionPartition solids_by_section(const Geometry& geometry, const QuadraticForm& f);

struct Hyperoval {
  std::vector<ProjectivePoint> points;
  Subspace carrier;
};

/// Conic {(1,t,t^2,0,0)} plus its nucleus (0,1,0,0,0) and (0,0,1,0,0), in the
/// plane x3 = x4 = 0.
Hyperoval regular_hyperoval(const GaloisField& field);

/// True if the points lie in `carrier` and no three are collinear.
bool is_hyperoval(const GaloisField& field, const Hyperoval& h);

/// Solids containing no point of the hyperoval, ascending by index.
std::vector<std::uint32_t> solids_disjoint_from(const Geometry& geometry, const Hyperoval& h);

}  // namespace pg4
