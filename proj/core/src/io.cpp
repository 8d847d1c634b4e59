#include "pg4/io.hpp"

#include <string>

namespace pg4::io {

namespace {

std::string_view kind_name(ObjectKind k) {
  switch (k) {
    case ObjectKind::Point: return "point";
    case ObjectKind::Line: return "line";
    case ObjectKind::Plane: return "plane";
  }
  return "?";
}

Json optional_int(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

// Reads JSONL objects and returns the index of the coordinate string under `key`.
template <class Fn>
void read_jsonl(const Geometry& geometry, std::istream& in, const std::string& key, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw InputError(where + "malformed JSON (" + e.what() + ")");
    }
    if (!obj.is_object() || !obj.contains(key) || !obj[key].is_string()) {
      throw InputError(where + "expected an object with a string field \"" + key + "\"");
    }
    std::uint32_t index = 0;
    try {
      index = geometry.locate(parse_coords(geometry.field(), obj[key].get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw InputError(where + e.what());
    }
    if (!fn(index)) throw InputError(where + "duplicate entry");
  }
  if (in.bad()) throw InputError("read error");
}

}  // namespace

Json to_json(const Spectrum& spectrum) {
  Json out = Json::array();
  for (const auto& [value, mult] : spectrum) out.push_back(Json::array({value, mult}));
  return out;
}

Json to_json(const QuadraticForm& form) { return form.to_string(); }

Json to_json(const Geometry& geometry, const ConditionReport& r) {
  const Thresholds t = Thresholds::at(r.q);
  Json out;
  out["q"] = r.q;
  out["size"] = r.size;
  out["e"] = optional_int(r.e);
  out["theorem_applicable"] = r.theorem_applicable;
  out["condI"] = {{"holds", r.cond_i}, {"allowed", {0, t.black, t.white}}, {"counts", to_json(r.point_spectrum)}};
  out["condII"] = {{"holds", r.cond_ii},
                   {"allowed", {0, t.plane_half, t.plane_full}},
                   {"counts", to_json(r.plane_spectrum)}};
  out["condIII"] = {{"holds", r.cond_iii}, {"target", t.special_line}, {"counts", to_json(r.line_spectrum)}};
  Json violations = Json::array();
  for (const auto& w : r.violations) {
    violations.push_back({{"kind", kind_name(w.kind)}, {"object", describe(geometry, w)}, {"count", w.count}});
  }
  out["violations"] = std::move(violations);
  out["witness_cap"] = r.witness_cap;
  out["violations_truncated"] = r.truncated;
  return out;
}

Json to_json(const LemmaReport& r) {
  Json out;
  out["q"] = r.q;
  out["case"] = to_string(r.lemma_case);
  out["e"] = optional_int(r.e);
  out["all_pass"] = r.all_pass();
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"id", e.id},
                       {"claim", e.claim},
                       {"relation", e.relation == LemmaEntry::Relation::Equal ? "equal" : "subset"},
                       {"expected", e.expected},
                       {"observed", e.observed},
                       {"pass", e.pass}});
  }
  out["lemmas"] = std::move(entries);
  return out;
}

Json to_json(const Geometry& geometry, const Verdict& v) {
  Json out;
  Json diagnostics;
  diagnostics["q"] = geometry.q();
  diagnostics["size"] = v.size;
  diagnostics["e"] = optional_int(v.e);
  diagnostics["theorem_applicable"] = v.theorem_applicable;

  if (const auto* a = std::get_if<CaseA>(&v.outcome)) {
    out["case"] = "A";
    Json pts = Json::array();
    for (const auto& p : a->hyperoval.points) pts.push_back(p.to_string());
    out["hyperoval"] = std::move(pts);
    out["form"] = nullptr;
    out["nucleus"] = nullptr;
    diagnostics["carrier"] = a->hyperoval.carrier.to_string();
  } else if (const auto* b = std::get_if<CaseB>(&v.outcome)) {
    out["case"] = "B";
    out["hyperoval"] = Json::array();
    out["form"] = b->form.to_string();
    out["nucleus"] = b->nucleus.to_string();
    diagnostics["zero_set_size"] = b->zero_set_size;
  } else {
    const auto& na = std::get<NotApplicable>(v.outcome);
    out["case"] = "NA";
    out["hyperoval"] = Json::array();
    out["form"] = nullptr;
    out["nucleus"] = nullptr;
    diagnostics["reason"] = na.reason;
    diagnostics["conditions"] = to_json(geometry, na.report);
  }
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

SolidSet read_solid_set(const Geometry& geometry, std::istream& in) {
  SolidSet s(geometry.num_hyperplanes());
  read_jsonl(geometry, in, "dual", [&](std::uint32_t h) { return s.insert(h); });
  return s;
}

void write_solids(const Geometry& geometry, std::span<const std::uint32_t> hyperplanes, std::ostream& out) {
  for (auto h : hyperplanes) out << "{\"dual\":\"" << geometry.hyperplane(h).to_string() << "\"}\n";
}

Bitset read_point_set(const Geometry& geometry, std::istream& in) {
  Bitset pts(geometry.num_points());
  read_jsonl(geometry, in, "point", [&](std::uint32_t p) {
    if (pts.test(p)) return false;
    pts.set(p);
    return true;
  });
  return pts;
}

void write_points(const Geometry& geometry, std::span<const std::uint32_t> points, std::ostream& out) {
  for (auto p : points) out << "{\"point\":\"" << geometry.point(p).to_string() << "\"}\n";
}

}  // namespace pg4::io
