#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pg4/bitset.hpp"
#include "pg4/projgeom.hpp"

namespace pg4 {

/// A set of solids, as a bitset over the hyperplane indices of a Geometry.
class SolidSet {
 public:
  SolidSet() = default;
  explicit SolidSet(std::size_t universe) : members_(universe) {}

  static SolidSet of(const Geometry& geometry, std::span<const std::uint32_t> hyperplanes);
  static SolidSet all(const Geometry& geometry);

  std::size_t universe() const noexcept { return members_.size(); }
  std::size_t size() const noexcept { return size_; }
  bool contains(std::uint32_t h) const noexcept { return members_.test(h); }
  /// Returns false if h was already a member.
  bool insert(std::uint32_t h);
  bool erase(std::uint32_t h);

  const Bitset& bits() const noexcept { return members_; }
  std::vector<std::uint32_t> indices() const { return members_.indices(); }

  friend bool operator==(const SolidSet& a, const SolidSet& b) { return a.members_ == b.members_; }

 private:
  Bitset members_;
  std::size_t size_ = 0;
};

/// Multiset of integer values: value -> multiplicity.
using Spectrum = std::map<std::uint64_t, std::uint64_t>;

Spectrum spectrum_of(std::span<const std::uint32_t> counts);

/// Number of members of S through each point / plane / line, indexed like
/// the geometry's points and its plane/line tables.
std::vector<std::uint32_t> point_counts(const Geometry& geometry, const SolidSet& s);
std::vector<std::uint32_t> plane_counts(const Geometry& geometry, const SolidSet& s);
std::vector<std::uint32_t> line_counts(const Geometry& geometry, const SolidSet& s);

/// Integer thresholds of the three hypotheses at a given q.
struct Thresholds {
  std::uint64_t q;
  std::uint64_t white;        // q^3/2 solids through a white point
  std::uint64_t black;        // (q^3-q^2)/2 solids through a black point
  std::uint64_t plane_half;   // q/2
  std::uint64_t plane_full;   // q
  std::uint64_t special_line; // q(q+1)/2

  static Thresholds at(std::uint64_t q) noexcept {
    return {q, q * q * q / 2, (q * q * q - q * q) / 2, q / 2, q, q * (q + 1) / 2};
  }
};

enum class ObjectKind { Point, Line, Plane };

struct Witness {
  ObjectKind kind;
  std::uint32_t index;
  std::uint64_t count;

  friend bool operator==(const Witness&, const Witness&) = default;
};

std::string describe(const Geometry& geometry, const Witness& w);

struct ConditionReport {
  std::uint32_t q = 0;
  std::size_t size = 0;
  std::optional<std::uint64_t> e;  // |S| / (q^2/2) when integral
  bool cond_i = false;
  bool cond_ii = false;
  bool cond_iii = false;
  Spectrum point_spectrum;
  Spectrum plane_spectrum;
  Spectrum line_spectrum;
  std::vector<Witness> violations;  // (I) and (II) failures, points first
  std::size_t witness_cap = 0;
  bool truncated = false;
  bool theorem_applicable = false;  // q > 2
};

inline constexpr std::size_t kDefaultWitnessCap = 100;

/// Checks (I), (II) and (III) over every point, plane and line. Failures are
/// reported in the result, never thrown.
ConditionReport check_conditions(const Geometry& geometry, const SolidSet& s,
                                 std::size_t witness_cap = kDefaultWitnessCap);

std::optional<std::uint64_t> e_value(std::uint32_t q, std::size_t size) noexcept;

enum class PointColor : std::uint8_t { Red, White, Black };

struct ColorMap {
  std::vector<PointColor> colors;
  Bitset red;
  Bitset white;
  Bitset black;

  std::size_t r() const noexcept { return red.count(); }
  std::size_t w() const noexcept { return white.count(); }
  std::size_t b() const noexcept { return black.count(); }
};

class ConditionIViolated : public std::runtime_error {
 public:
  ConditionIViolated(std::string what, std::vector<Witness> witnesses)
      : std::runtime_error(std::move(what)), witnesses_(std::move(witnesses)) {}
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }

 private:
  std::vector<Witness> witnesses_;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Red: on no member. White: on q^3/2. Black: on (q^3-q^2)/2. Throws
/// ConditionIViolated listing up to witness_cap offending points.
ColorMap color_points(const Geometry& geometry, const SolidSet& s,
                      std::size_t witness_cap = kDefaultWitnessCap);

/// E = the input set, T = solids with a red point, H = everything else.
struct SolidPartition {
  Bitset e;
  Bitset t;
  Bitset h;
};

SolidPartition partition_solids(const Geometry& geometry, const SolidSet& s, const ColorMap& colors);

enum class LemmaCase { A, B, NotApplicable };
std::string_view to_string(LemmaCase c) noexcept;

/// One checked statement. Values are integer tuples; `observed` holds the
/// distinct tuples actually seen, sorted.
struct LemmaEntry {
  enum class Relation { Equal, Subset };
  using Tuple = std::vector<std::int64_t>;

  std::string id;
  std::string claim;
  Relation relation = Relation::Equal;
  std::vector<Tuple> expected;
  std::vector<Tuple> observed;
  bool pass = false;
};

struct LemmaReport {
  std::uint32_t q = 0;
  LemmaCase lemma_case = LemmaCase::NotApplicable;
  std::optional<std::uint64_t> e;
  std::vector<LemmaEntry> entries;

  bool all_pass() const noexcept;
  const LemmaEntry* find(std::string_view id) const noexcept;
};

/// Runs the counting-lemma checks for the case selected by e mod q. Throws
/// PreconditionError unless (I) and (II) hold.
LemmaReport verify_lemma_suite(const Geometry& geometry, const SolidSet& s);

}  // namespace pg4
