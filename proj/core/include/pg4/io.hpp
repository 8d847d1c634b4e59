#pragma once

#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "pg4/projgeom.hpp"
#include "pg4/quadric.hpp"
#include "pg4/recognize.hpp"
#include "pg4/spectrum.hpp"

namespace pg4::io {

/// Key order is insertion order, so documents are byte-stable.
using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// [[value, multiplicity], ...] in ascending value order.
Json to_json(const Spectrum& spectrum);
Json to_json(const Geometry& geometry, const ConditionReport& report);
Json to_json(const LemmaReport& report);
Json to_json(const Geometry& geometry, const Verdict& verdict);
Json to_json(const QuadraticForm& form);

/// JSON Lines, one {"dual": "a:b:c:d:e"} object per solid. Blank lines are
/// skipped; malformed lines, bad coordinates and duplicates raise InputError.
SolidSet read_solid_set(const Geometry& geometry, std::istream& in);
void write_solids(const Geometry& geometry, std::span<const std::uint32_t> hyperplanes, std::ostream& out);

/// JSON Lines, one {"point": "a:b:c:d:e"} object per point.
Bitset read_point_set(const Geometry& geometry, std::istream& in);
void write_points(const Geometry& geometry, std::span<const std::uint32_t> points, std::ostream& out);

}  // namespace pg4::io
