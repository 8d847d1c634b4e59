#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pg4/bitset.hpp"
#include "pg4/gf.hpp"
#include "pg4/linalg.hpp"

namespace pg4 {

inline constexpr std::size_t kAmbientRank = 5;  // PG(4,q) = subspaces of GF(q)^5

using Coords = std::array<FieldElement, kAmbientRank>;

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a requested table would not fit the configured memory budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scales v so its first nonzero coordinate is 1. Throws GeometryError on the
/// zero vector.
Coords normalize(const GaloisField& field, Coords v);

FieldElement dot(const GaloisField& field, const Coords& a, const Coords& b) noexcept;

/// "a:b:c:d:e" with lowercase hex entries.
std::string coords_to_string(const Coords& v);
Coords parse_coords(const GaloisField& field, std::string_view text);

struct ProjectivePoint {
  Coords coords{};

  /// Normalizes any nonzero representative.
  static ProjectivePoint from(const GaloisField& field, const Coords& v) { return {normalize(field, v)}; }

  std::string to_string() const { return coords_to_string(coords); }
  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend auto operator<=>(const ProjectivePoint&, const ProjectivePoint&) = default;
};

/// A solid, given by normalized dual coordinates: {x : dual . x = 0}.
struct Hyperplane {
  Coords dual{};

  static Hyperplane from(const GaloisField& field, const Coords& v) { return {normalize(field, v)}; }

  std::string to_string() const { return coords_to_string(dual); }
  friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
  friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
};

bool incident(const GaloisField& field, const ProjectivePoint& p, const Hyperplane& h) noexcept;

/// A projective subspace, stored as a basis in reduced row echelon form so
/// equal subspaces compare equal.
class Subspace {
 public:
  /// Span of the given vectors; throws GeometryError if they are all zero.
  static Subspace span(const GaloisField& field, std::span<const Coords> vectors);
  static Subspace span(const GaloisField& field, std::initializer_list<Coords> vectors) {
    return span(field, std::span<const Coords>(vectors.begin(), vectors.size()));
  }
  static Subspace of(const GaloisField& field, const Hyperplane& h);
  /// Wraps a basis that is already in reduced echelon form with no zero rows.
  static Subspace from_rref(Matrix rref);

  std::size_t rank() const noexcept { return basis_.rows(); }
  int dim() const noexcept { return static_cast<int>(basis_.rows()) - 1; }
  const Matrix& basis() const noexcept { return basis_; }
  Coords row(std::size_t i) const;

  bool contains(const GaloisField& field, const Coords& v) const;
  bool contains(const GaloisField& field, const Subspace& other) const;

  /// Rows joined with '/', e.g. "1:0:0:0:0/0:1:0:0:0".
  std::string to_string() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {}
  Matrix basis_;
};

/// The dual subspace {y : y . x = 0 for all x in s}; empty for the whole space.
std::optional<Subspace> annihilator(const GaloisField& field, const Subspace& s);

/// Intersection; empty when only the zero vector is shared.
std::optional<Subspace> meet(const GaloisField& field, const Subspace& a, const Subspace& b);
std::optional<Subspace> meet(const GaloisField& field, const Hyperplane& a, const Subspace& b);
std::optional<Subspace> meet(const GaloisField& field, const Hyperplane& a, const Hyperplane& b);

/// Calls fn(Coords) once for every point of the subspace spanned by the rows
/// of `rref`. Points come out already normalized.
template <class Fn>
void for_each_point(const GaloisField& field, const Matrix& rref, Fn&& fn) {
  const std::size_t k = rref.rows();
  const std::uint32_t q = field.order();
  std::vector<std::uint32_t> coef(k);
  // Coefficient vectors with first nonzero entry 1, one per point.
  for (std::size_t lead = 0; lead < k; ++lead) {
    std::fill(coef.begin(), coef.end(), 0u);
    coef[lead] = 1;
    bool more = true;
    while (more) {
      Coords v{};
      for (std::size_t i = lead; i < k; ++i) {
        if (coef[i] == 0) continue;
        const FieldElement a{coef[i]};
        for (std::size_t c = 0; c < kAmbientRank; ++c) {
          v[c] = GaloisField::add(v[c], field.mul(a, rref(i, c)));
        }
      }
      fn(static_cast<const Coords&>(v));
      more = false;
      for (std::size_t i = k; i > lead + 1; --i) {
        if (++coef[i - 1] < q) {
          more = true;
          break;
        }
        coef[i - 1] = 0;
      }
    }
  }
}

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q);

/// Ranking of reduced echelon k x 5 matrices (Schubert cells). Cells are
/// ordered by pivot pattern in descending lexicographic order, then by the
/// free entries read row-major as a base-q number. For k = 1 this is exactly
/// the lexicographic order of normalized coordinate tuples.
class EchelonCells {
 public:
  EchelonCells(std::uint32_t q, std::size_t rank);

  std::size_t rank() const noexcept { return rank_; }
  std::uint64_t size() const noexcept { return size_; }
  Matrix unrank(std::uint64_t index) const;
  std::uint64_t rank_of(const Matrix& rref) const;

 private:
  struct Cell {
    std::vector<std::size_t> pivots;
    std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col)
    std::uint64_t offset;
    std::uint64_t count;
  };
  std::uint32_t q_;
  std::size_t rank_;
  std::uint64_t size_ = 0;
  std::vector<Cell> cells_;
};

/// All lines (or all planes) of PG(4,q), each with its sorted point indices
/// and the index of its dual subspace in the complementary table. Planes and
/// lines are dual to each other, and hyperplane indices coincide with point
/// indices, so the solids through a plane are the points of its dual line.
class SubspaceTable {
 public:
  SubspaceTable(std::uint32_t q, std::size_t rank, std::size_t points_per);

  std::size_t rank() const noexcept { return cells_.rank(); }
  int dim() const noexcept { return static_cast<int>(cells_.rank()) - 1; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(cells_.size()); }
  std::size_t points_per() const noexcept { return points_per_; }

  std::span<const std::uint32_t> points(std::size_t i) const noexcept {
    return {points_.data() + i * points_per_, points_per_};
  }
  std::uint32_t dual(std::size_t i) const noexcept { return dual_[i]; }
  Subspace subspace(std::size_t i) const { return Subspace::from_rref(cells_.unrank(i)); }
  std::size_t find(const Subspace& s) const;

 private:
  friend class Geometry;
  EchelonCells cells_;
  std::size_t points_per_;
  std::vector<std::uint32_t> points_;
  std::vector<std::uint32_t> dual_;
};

/// Enumeration backbone for PG(4,q): canonical point order, per-solid
/// incidence bitsets, and lazily built line/plane tables. Points and
/// hyperplanes share one index space (a hyperplane's index is the index of
/// its dual coordinate vector). Queries are read-only and thread-safe.
class Geometry {
 public:
  static constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

  explicit Geometry(GaloisField field, unsigned workers = 0,
                    std::size_t memory_budget = kDefaultMemoryBudget);
  Geometry(Geometry&&) noexcept;
  Geometry& operator=(Geometry&&) noexcept;
  ~Geometry();

  const GaloisField& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_.order(); }
  unsigned workers() const noexcept { return workers_; }

  std::size_t num_points() const noexcept { return points_.size(); }
  std::size_t num_hyperplanes() const noexcept { return points_.size(); }
  std::size_t points_per_hyperplane() const noexcept;

  const Coords& coords(std::uint32_t index) const noexcept { return points_[index]; }
  ProjectivePoint point(std::uint32_t index) const { return {points_[index]}; }
  Hyperplane hyperplane(std::uint32_t index) const { return {points_[index]}; }

  /// Index of a normalized vector (no validation).
  std::uint32_t index_of_normalized(const Coords& v) const noexcept;
  /// Index of any nonzero representative; validates field membership.
  std::uint32_t locate(const Coords& v) const;
  std::uint32_t index_of(const ProjectivePoint& p) const { return locate(p.coords); }
  std::uint32_t index_of(const Hyperplane& h) const { return locate(h.dual); }

  /// Points on hyperplane h. By symmetry of the incidence form, this is also
  /// the set of hyperplanes through point h.
  const Bitset& hyperplane_points(std::uint32_t h) const noexcept { return incidence_[h]; }
  bool incident(std::uint32_t point, std::uint32_t hyperplane) const noexcept {
    return incidence_[hyperplane].test(point);
  }

  std::vector<std::uint32_t> points_of(const Subspace& s) const;
  Bitset point_set(const Subspace& s) const;
  /// Solids containing s, ascending by index. s must have dimension <= 2.
  std::vector<std::uint32_t> hyperplanes_through(const Subspace& s) const;

  const SubspaceTable& lines() const;
  const SubspaceTable& planes() const;
  std::span<const std::uint32_t> hyperplanes_through_line(std::size_t line) const {
    return planes().points(lines().dual(line));
  }
  std::span<const std::uint32_t> hyperplanes_through_plane(std::size_t plane) const {
    return lines().points(planes().dual(plane));
  }

  /// Stable 64-bit hash of the point order and incidence structure.
  std::uint64_t fingerprint() const noexcept;

 private:
  std::unique_ptr<SubspaceTable> build_table(std::size_t rank) const;

  GaloisField field_;
  unsigned workers_;
  std::size_t memory_budget_;
  std::vector<Coords> points_;
  std::vector<Bitset> incidence_;
  struct Lazy;
  std::unique_ptr<Lazy> lazy_;
};

/// All (q^5-1)/(q-1) points in canonical order.
std::vector<ProjectivePoint> enumerate_points(const GaloisField& field);

/// Number of points of PG(n-1,q) spanned by a rank-n space: (q^n-1)/(q-1).
std::uint64_t projective_points(unsigned rank, std::uint64_t q);

}  // namespace pg4
