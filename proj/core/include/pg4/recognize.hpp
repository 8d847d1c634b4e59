#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "pg4/bitset.hpp"
#include "pg4/projgeom.hpp"
#include "pg4/quadric.hpp"
#include "pg4/spectrum.hpp"

namespace pg4 {

/// Multiset of |line ∩ set| over all lines of PG(4,q).
using LineTypeProfile = Spectrum;

LineTypeProfile line_type_profile(const Geometry& geometry, const Bitset& points);

/// Fits Q(P) = 0 for every P in `points` as a homogeneous system in the 15
/// coefficients. Returns the form only when the solution space is a single
/// projective point AND the form's zero set equals `points` exactly.
std::optional<QuadraticForm> fit_quadric(const Geometry& geometry, const Bitset& points);

class RecognitionError : public std::runtime_error {
 public:
  enum class Kind { WrongRedCount, NotCoplanar, Collinear };

  RecognitionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Red points of a coloring as a hyperoval: exactly q+2 of them, spanning a
/// plane, no three collinear. Points come back in index order.
Hyperoval recover_hyperoval(const Geometry& geometry, const ColorMap& colors);

struct CaseA {
  Hyperoval hyperoval;
};

struct CaseB {
  QuadraticForm form;
  ProjectivePoint nucleus;
  std::size_t zero_set_size = 0;
};

struct NotApplicable {
  ConditionReport report;
  std::string reason;
};

struct Verdict {
  std::variant<NotApplicable, CaseA, CaseB> outcome;
  std::size_t size = 0;
  std::optional<std::uint64_t> e;
  bool theorem_applicable = false;  // q > 2

  bool is_case_a() const noexcept { return std::holds_alternative<CaseA>(outcome); }
  bool is_case_b() const noexcept { return std::holds_alternative<CaseB>(outcome); }
  bool not_applicable() const noexcept { return std::holds_alternative<NotApplicable>(outcome); }
};

/// Decides which extremal family S belongs to and certifies it by
/// reconstruction: a hyperoval whose disjoint solids are exactly S, or a
/// parabolic quadric whose elliptic solids are exactly S and whose nucleus is
/// the red point. Anything else is NotApplicable with a reason.
Verdict classify(const Geometry& geometry, const SolidSet& s, std::size_t witness_cap = kDefaultWitnessCap);

/// True iff some line lies in exactly q(q+1)/2 members. Throws
/// PreconditionError unless (I) and (II) hold.
bool condition_iii_disambiguation(const Geometry& geometry, const SolidSet& s);

}  // namespace pg4
