#include "pg4/spectrum.hpp"

#include <algorithm>
#include <set>

#include "pg4/parallel.hpp"

namespace pg4 {

// ---------------------------------------------------------------------------
// SolidSet

SolidSet SolidSet::of(const Geometry& geometry, std::span<const std::uint32_t> hyperplanes) {
  SolidSet s(geometry.num_hyperplanes());
  for (auto h : hyperplanes) s.insert(h);
  return s;
}

SolidSet SolidSet::all(const Geometry& geometry) {
  SolidSet s(geometry.num_hyperplanes());
  for (std::uint32_t h = 0; h < geometry.num_hyperplanes(); ++h) s.insert(h);
  return s;
}

bool SolidSet::insert(std::uint32_t h) {
  if (h >= members_.size()) throw std::out_of_range("hyperplane index out of range");
  if (members_.test(h)) return false;
  members_.set(h);
  ++size_;
  return true;
}

bool SolidSet::erase(std::uint32_t h) {
  if (h >= members_.size() || !members_.test(h)) return false;
  members_.reset(h);
  --size_;
  return true;
}

// ---------------------------------------------------------------------------
// Spectra

Spectrum spectrum_of(std::span<const std::uint32_t> counts) {
  Spectrum out;
  for (auto c : counts) ++out[c];
  return out;
}

std::vector<std::uint32_t> point_counts(const Geometry& geometry, const SolidSet& s) {
  std::vector<std::uint32_t> out(geometry.num_points());
  parallel_for(out.size(), geometry.workers(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      // the solids through p form the bitset of the dual solid p
      out[p] = static_cast<std::uint32_t>(geometry.hyperplane_points(static_cast<std::uint32_t>(p)).and_count(s.bits()));
    }
  });
  return out;
}

namespace {

template <class Through>
std::vector<std::uint32_t> subspace_counts(const Geometry& geometry, std::size_t n, const SolidSet& s,
                                           Through&& through) {
  std::vector<std::uint32_t> out(n);
  parallel_for(n, geometry.workers(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint32_t c = 0;
      for (auto h : through(i)) c += s.contains(h) ? 1u : 0u;
      out[i] = c;
    }
  });
  return out;
}

}  // namespace

std::vector<std::uint32_t> plane_counts(const Geometry& geometry, const SolidSet& s) {
  return subspace_counts(geometry, geometry.planes().size(), s,
                         [&](std::size_t i) { return geometry.hyperplanes_through_plane(i); });
}

std::vector<std::uint32_t> line_counts(const Geometry& geometry, const SolidSet& s) {
  return subspace_counts(geometry, geometry.lines().size(), s,
                         [&](std::size_t i) { return geometry.hyperplanes_through_line(i); });
}

std::string describe(const Geometry& geometry, const Witness& w) {
  switch (w.kind) {
    case ObjectKind::Point: return geometry.point(w.index).to_string();
    case ObjectKind::Line: return geometry.lines().subspace(w.index).to_string();
    case ObjectKind::Plane: return geometry.planes().subspace(w.index).to_string();
  }
  return {};
}

std::optional<std::uint64_t> e_value(std::uint32_t q, std::size_t size) noexcept {
  const std::uint64_t half_q2 = std::uint64_t{q} * q / 2;
  if (size % half_q2 != 0) return std::nullopt;
  return size / half_q2;
}

ConditionReport check_conditions(const Geometry& geometry, const SolidSet& s, std::size_t witness_cap) {
  const Thresholds t = Thresholds::at(geometry.q());
  ConditionReport r;
  r.q = geometry.q();
  r.size = s.size();
  r.e = e_value(geometry.q(), s.size());
  r.witness_cap = witness_cap;
  r.theorem_applicable = geometry.q() > 2;

  auto record = [&](ObjectKind kind, std::size_t i, std::uint64_t count) {
    if (r.violations.size() < witness_cap) {
      r.violations.push_back({kind, static_cast<std::uint32_t>(i), count});
    } else {
      r.truncated = true;
    }
  };

  const auto pc = point_counts(geometry, s);
  r.point_spectrum = spectrum_of(pc);
  r.cond_i = true;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (pc[i] != 0 && pc[i] != t.white && pc[i] != t.black) {
      r.cond_i = false;
      record(ObjectKind::Point, i, pc[i]);
    }
  }

  const auto plc = plane_counts(geometry, s);
  r.plane_spectrum = spectrum_of(plc);
  r.cond_ii = true;
  for (std::size_t i = 0; i < plc.size(); ++i) {
    if (plc[i] != 0 && plc[i] != t.plane_half && plc[i] != t.plane_full) {
      r.cond_ii = false;
      record(ObjectKind::Plane, i, plc[i]);
    }
  }

  const auto lc = line_counts(geometry, s);
  r.line_spectrum = spectrum_of(lc);
  r.cond_iii = r.line_spectrum.contains(t.special_line);
  return r;
}

// ---------------------------------------------------------------------------
// Coloring and partition

ColorMap color_points(const Geometry& geometry, const SolidSet& s, std::size_t witness_cap) {
  const Thresholds t = Thresholds::at(geometry.q());
  const auto pc = point_counts(geometry, s);
  const std::size_t n = geometry.num_points();
  ColorMap m{std::vector<PointColor>(n), Bitset(n), Bitset(n), Bitset(n)};
  std::vector<Witness> bad;
  std::size_t bad_total = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (pc[p] == 0) {
      m.colors[p] = PointColor::Red;
      m.red.set(p);
    } else if (pc[p] == t.white) {
      m.colors[p] = PointColor::White;
      m.white.set(p);
    } else if (pc[p] == t.black) {
      m.colors[p] = PointColor::Black;
      m.black.set(p);
    } else {
      ++bad_total;
      if (bad.size() < witness_cap) bad.push_back({ObjectKind::Point, static_cast<std::uint32_t>(p), pc[p]});
    }
  }
  if (bad_total != 0) {
    throw ConditionIViolated(std::to_string(bad_total) + " points violate condition (I)", std::move(bad));
  }
  return m;
}

SolidPartition partition_solids(const Geometry& geometry, const SolidSet& s, const ColorMap& colors) {
  const std::size_t n = geometry.num_hyperplanes();
  SolidPartition out{Bitset(n), Bitset(n), Bitset(n)};
  for (std::uint32_t h = 0; h < n; ++h) {
    if (geometry.hyperplane_points(h).intersects(colors.red)) {
      out.t.set(h);
    } else if (s.contains(h)) {
      out.e.set(h);
    } else {
      out.h.set(h);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemma suite

std::string_view to_string(LemmaCase c) noexcept {
  switch (c) {
    case LemmaCase::A: return "A";
    case LemmaCase::B: return "B";
    case LemmaCase::NotApplicable: break;
  }
  return "NA";
}

bool LemmaReport::all_pass() const noexcept {
  return lemma_case != LemmaCase::NotApplicable &&
         std::all_of(entries.begin(), entries.end(), [](const LemmaEntry& e) { return e.pass; });
}

const LemmaEntry* LemmaReport::find(std::string_view id) const noexcept {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

namespace {

using Tuple = LemmaEntry::Tuple;
using TupleSet = std::set<Tuple>;

class SuiteBuilder {
 public:
  explicit SuiteBuilder(LemmaReport& report) : report_(report) {}

  void add(std::string id, std::string claim, LemmaEntry::Relation rel, TupleSet expected, const TupleSet& observed) {
    LemmaEntry e;
    e.id = std::move(id);
    e.claim = std::move(claim);
    e.relation = rel;
    e.expected.assign(expected.begin(), expected.end());
    e.observed.assign(observed.begin(), observed.end());
    if (rel == LemmaEntry::Relation::Equal) {
      e.pass = e.expected == e.observed;
    } else {
      e.pass = std::includes(expected.begin(), expected.end(), observed.begin(), observed.end());
    }
    report_.entries.push_back(std::move(e));
  }

  void equal(std::string id, std::string claim, TupleSet expected, const TupleSet& observed) {
    add(std::move(id), std::move(claim), LemmaEntry::Relation::Equal, std::move(expected), observed);
  }
  void subset(std::string id, std::string claim, TupleSet expected, const TupleSet& observed) {
    add(std::move(id), std::move(claim), LemmaEntry::Relation::Subset, std::move(expected), observed);
  }

 private:
  LemmaReport& report_;
};

TupleSet one(Tuple t) { return TupleSet{std::move(t)}; }

TupleSet singletons(std::initializer_list<std::int64_t> values) {
  TupleSet out;
  for (auto v : values) out.insert(Tuple{v});
  return out;
}

// Distinct values of |line ∩ marked| over lines, split by which solid class
// contains the line. Sizes are collected as bitmasks (q+1 < 64).
struct LineTypesByClass {
  std::uint64_t all = 0;
  std::uint64_t in_e = 0;
  std::uint64_t in_h = 0;
  std::uint64_t in_t = 0;
};

TupleSet mask_values(std::uint64_t mask) {
  TupleSet out;
  for (std::int64_t v = 0; v < 64; ++v) {
    if ((mask >> v) & 1u) out.insert(Tuple{v});
  }
  return out;
}

std::vector<std::uint32_t> marked_counts(const SubspaceTable& table, const Bitset& marked, unsigned workers) {
  std::vector<std::uint32_t> out(table.size());
  parallel_for(table.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint32_t c = 0;
      for (auto p : table.points(i)) c += marked.test(p) ? 1u : 0u;
      out[i] = c;
    }
  });
  return out;
}

LineTypesByClass line_types_by_class(const Geometry& g, const std::vector<std::uint32_t>& line_black,
                                     const SolidPartition& part) {
  const std::size_t n = g.lines().size();
  // bit 0: inside some E-solid, bit 1: some H-solid, bit 2: some T-solid
  std::vector<std::uint8_t> inside(n);
  parallel_for(n, g.workers(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint8_t f = 0;
      for (auto h : g.hyperplanes_through_line(i)) {
        f |= part.e.test(h) ? 1 : (part.h.test(h) ? 2 : 4);
      }
      inside[i] = f;
    }
  });
  LineTypesByClass out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << line_black[i];
    out.all |= bit;
    if (inside[i] & 1) out.in_e |= bit;
    if (inside[i] & 2) out.in_h |= bit;
    if (inside[i] & 4) out.in_t |= bit;
  }
  return out;
}

void common_entries(SuiteBuilder& b, const Geometry& g, const SolidSet& s, const ColorMap& colors,
                    const std::vector<std::uint32_t>& pc) {
  const std::int64_t q = g.q();
  const Thresholds t = Thresholds::at(g.q());
  const auto e = e_value(g.q(), s.size());
  const std::int64_t E = static_cast<std::int64_t>(s.size());

  b.equal("e-integral", "|E| is a multiple of q^2/2", one({1}), one({e ? 1 : 0}));
  b.subset("e-residue", "e is 0 or -1 modulo q", singletons({0, q - 1}),
           e ? one({static_cast<std::int64_t>(*e % g.q())}) : one({-1}));

  const std::int64_t w = static_cast<std::int64_t>(colors.w());
  const std::int64_t bl = static_cast<std::int64_t>(colors.b());
  const std::int64_t tw = static_cast<std::int64_t>(t.white);
  const std::int64_t tb = static_cast<std::int64_t>(t.black);
  b.equal("incidence-pairs", "r*0 + w*q^3/2 + b*(q^3-q^2)/2 = |E|(q^3+q^2+q+1)",
          one({E * (q * q * q + q * q + q + 1)}), one({w * tw + bl * tb}));

  std::int64_t triples = 0;
  for (auto c : pc) triples += std::int64_t{c} * (std::int64_t{c} - 1);
  b.equal("incidence-triples", "w*q^3/2*(q^3/2-1) + b*(q^3-q^2)/2*((q^3-q^2)/2-1) = |E|(|E|-1)(q^2+q+1)",
          one({E * (E - 1) * (q * q + q + 1)}), one({w * tw * (tw - 1) + bl * tb * (tb - 1)}));
  b.equal("incidence-triples-direct", "sum over points of c(c-1) = |E|(|E|-1)(q^2+q+1)",
          one({E * (E - 1) * (q * q + q + 1)}), one({triples}));

  if (e) {
    TupleSet s_values;
    s.bits().for_each([&](std::size_t h) {
      s_values.insert(Tuple{static_cast<std::int64_t>(g.hyperplane_points(static_cast<std::uint32_t>(h)).and_count(colors.black))});
    });
    const std::int64_t ev = static_cast<std::int64_t>(*e);
    b.equal("e-solid-black-relation", "each member holds s black points with s + q = (q^2 - e)(q^2+q+1)",
            one({(q * q - ev) * (q * q + q + 1) - q}), s_values);
  }
}

void case_b_entries(SuiteBuilder& b, const Geometry& g, const SolidSet& s, const ColorMap& colors,
                    const SolidPartition& part) {
  const std::int64_t q = g.q();
  const std::int64_t q2 = q * q;
  const std::int64_t q3 = q2 * q;

  b.equal("B-size", "|E| = q^2(q^2-1)/2", one({q2 * (q2 - 1) / 2}), one({static_cast<std::int64_t>(s.size())}));
  b.equal("B-census", "(red, white, black) = (1, q^4-1, q^3+q^2+q+1)", one({1, q2 * q2 - 1, q3 + q2 + q + 1}),
          one({static_cast<std::int64_t>(colors.r()), static_cast<std::int64_t>(colors.w()),
               static_cast<std::int64_t>(colors.b())}));
  b.equal("B-partition-sizes", "(|E|, |T|, |H|) = (q^2(q^2-1)/2, q^3+q^2+q+1, q^2(q^2+1)/2)",
          one({q2 * (q2 - 1) / 2, q3 + q2 + q + 1, q2 * (q2 + 1) / 2}),
          one({static_cast<std::int64_t>(part.e.count()), static_cast<std::int64_t>(part.t.count()),
               static_cast<std::int64_t>(part.h.count())}));

  TupleSet e_profile, h_black, t_black;
  for (std::uint32_t h = 0; h < g.num_hyperplanes(); ++h) {
    const Bitset& pts = g.hyperplane_points(h);
    const auto black = static_cast<std::int64_t>(pts.and_count(colors.black));
    if (part.e.test(h)) {
      e_profile.insert(Tuple{black, static_cast<std::int64_t>(pts.and_count(colors.white))});
    } else if (part.h.test(h)) {
      h_black.insert(Tuple{black});
    } else {
      t_black.insert(Tuple{black});
    }
  }
  b.equal("B-e-solid-profile", "each E-solid holds q^2+1 black and q^3+q white points", one({q2 + 1, q3 + q}),
          e_profile);
  b.equal("B-h-solid-black", "each H-solid holds (q+1)^2 black points", one({(q + 1) * (q + 1)}), h_black);
  b.equal("B-t-solid-black", "each T-solid holds q^2+q+1 black points", one({q2 + q + 1}), t_black);

  if (colors.r() != 1) return;
  const std::uint32_t red = colors.red.indices().front();
  const unsigned workers = g.workers();

  // Planes: through the red point, or classified by (black, e, h).
  const SubspaceTable& planes = g.planes();
  const auto plane_black = marked_counts(planes, colors.black, workers);
  TupleSet through_red, classes, identity;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const auto pts = planes.points(i);
    const auto x = static_cast<std::int64_t>(plane_black[i]);
    if (std::binary_search(pts.begin(), pts.end(), red)) {
      through_red.insert(Tuple{x});
      continue;
    }
    std::int64_t ne = 0, nh = 0;
    for (auto h : g.hyperplanes_through_plane(i)) {
      ne += part.e.test(h) ? 1 : 0;
      nh += part.h.test(h) ? 1 : 0;
    }
    classes.insert(Tuple{x, ne, nh});
    identity.insert(Tuple{x + 2 * ne});
  }
  b.equal("B-planes-through-red", "every plane through the red point holds q+1 black points", one({q + 1}),
          through_red);
  b.equal("B-plane-classes", "planes off the red point: (black, e, h) in {(1,q,0), (q+1,q/2,q/2), (2q+1,0,q)}",
          TupleSet{{1, q, 0}, {q + 1, q / 2, q / 2}, {2 * q + 1, 0, q}}, classes);
  b.equal("B-plane-black-identity", "planes off the red point hold 2q+1-2e black points", one({2 * q + 1}),
          identity);

  const SubspaceTable& lines = g.lines();
  const auto line_black = marked_counts(lines, colors.black, workers);
  TupleSet lines_red;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto pts = lines.points(i);
    if (std::binary_search(pts.begin(), pts.end(), red)) lines_red.insert(Tuple{line_black[i]});
  }
  b.equal("B-lines-through-red", "every line through the red point holds exactly one black point", one({1}),
          lines_red);

  const auto types = line_types_by_class(g, line_black, part);
  b.subset("B-e-solid-ovoid", "lines inside E-solids hold at most 2 black points (ovoid)", singletons({0, 1, 2}),
           mask_values(types.in_e));
  b.subset("B-h-solid-line-types", "lines inside H-solids hold 0, 1, 2 or q+1 black points",
           singletons({0, 1, 2, q + 1}), mask_values(types.in_h));
  b.subset("B-t-solid-line-types", "lines inside T-solids hold 0, 1, 2 or q+1 black points",
           singletons({0, 1, 2, q + 1}), mask_values(types.in_t));
  b.subset("B-black-line-types", "the black set is of line type (0, 1, 2, q+1)", singletons({0, 1, 2, q + 1}),
           mask_values(types.all));
}

void case_a_entries(SuiteBuilder& b, const Geometry& g, const SolidSet& s, const ColorMap& colors,
                    const SolidPartition& part) {
  const std::int64_t q = g.q();
  const std::int64_t q2 = q * q;
  const std::int64_t q3 = q2 * q;
  const auto& field = g.field();

  b.equal("A-size", "|E| = q^3(q-1)/2", one({q3 * (q - 1) / 2}), one({static_cast<std::int64_t>(s.size())}));
  b.equal("A-census", "(red, white, black) = (q+2, q^2-1, q^4+q^3)", one({q + 2, q2 - 1, q2 * q2 + q3}),
          one({static_cast<std::int64_t>(colors.r()), static_cast<std::int64_t>(colors.w()),
               static_cast<std::int64_t>(colors.b())}));

  TupleSet e_profile;
  s.bits().for_each([&](std::size_t h) {
    const Bitset& pts = g.hyperplane_points(static_cast<std::uint32_t>(h));
    e_profile.insert(Tuple{static_cast<std::int64_t>(pts.and_count(colors.black)),
                           static_cast<std::int64_t>(pts.and_count(colors.white))});
  });
  b.equal("A-e-solid-profile", "each E-solid holds q^3+q^2 black and q+1 white points", one({q3 + q2, q + 1}),
          e_profile);

  // Planes of each E-solid by how many members contain them (0, q/2, q).
  const SubspaceTable& planes = g.planes();
  const auto pl = plane_counts(g, s);
  const Thresholds th = Thresholds::at(g.q());
  std::vector<std::array<std::int64_t, 3>> tally(g.num_hyperplanes(), {0, 0, 0});
  for (std::size_t i = 0; i < planes.size(); ++i) {
    const std::size_t cls = pl[i] == 0 ? 0 : (pl[i] == th.plane_half ? 1 : 2);
    for (auto h : g.hyperplanes_through_plane(i)) {
      if (s.contains(h)) ++tally[h][cls];
    }
  }
  TupleSet xyz;
  s.bits().for_each([&](std::size_t h) { xyz.insert(Tuple{tally[h][0], tally[h][1], tally[h][2]}); });
  b.equal("A-e-solid-planes", "planes of an E-solid in (0, q/2, q) members: (0, q^3+q^2, q+1)",
          one({0, q3 + q2, q + 1}), xyz);

  std::vector<Coords> reds;
  colors.red.for_each([&](std::size_t p) { reds.push_back(g.coords(static_cast<std::uint32_t>(p))); });
  const std::optional<Subspace> carrier =
      reds.empty() ? std::nullopt : std::optional<Subspace>(Subspace::span(field, reds));
  b.equal("A-red-coplanar", "the red points span a plane", one({3}),
          one({carrier ? static_cast<std::int64_t>(carrier->rank()) : 0}));

  if (carrier && carrier->rank() == 3) {
    const Bitset carrier_pts = g.point_set(*carrier);
    b.equal("A-carrier-colors", "the carrier plane holds (q+2, q^2-1, 0) red, white, black points",
            one({q + 2, q2 - 1, 0}),
            one({static_cast<std::int64_t>(carrier_pts.and_count(colors.red)),
                 static_cast<std::int64_t>(carrier_pts.and_count(colors.white)),
                 static_cast<std::int64_t>(carrier_pts.and_count(colors.black))}));

    const SubspaceTable& lines = g.lines();
    TupleSet secants;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto pts = lines.points(i);
      if (!carrier_pts.test(pts[0]) || !carrier_pts.test(pts[1])) continue;
      std::int64_t c = 0;
      for (auto p : pts) c += colors.red.test(p) ? 1 : 0;
      secants.insert(Tuple{c});
    }
    b.equal("A-hyperoval", "every line of the carrier meets the red points in 0 or 2 points", singletons({0, 2}),
            secants);
  }

  std::int64_t mismatch = 0;
  for (std::uint32_t h = 0; h < g.num_hyperplanes(); ++h) {
    const bool disjoint = !g.hyperplane_points(h).intersects(colors.red);
    mismatch += disjoint != s.contains(h) ? 1 : 0;
  }
  b.equal("A-disjoint", "E is exactly the set of solids disjoint from the red points", one({0}), one({mismatch}));
  b.equal("A-h-empty", "H is empty", one({0}), one({static_cast<std::int64_t>(part.h.count())}));
}

}  // namespace

LemmaReport verify_lemma_suite(const Geometry& geometry, const SolidSet& s) {
  const ConditionReport cond = check_conditions(geometry, s, 1);
  if (!cond.cond_i || !cond.cond_ii) {
    throw PreconditionError("lemma suite requires conditions (I) and (II)");
  }
  LemmaReport report;
  report.q = geometry.q();
  report.e = cond.e;
  if (cond.e && *cond.e % geometry.q() == 0) {
    report.lemma_case = LemmaCase::A;
  } else if (cond.e && *cond.e % geometry.q() == geometry.q() - 1) {
    report.lemma_case = LemmaCase::B;
  }

  const ColorMap colors = color_points(geometry, s);
  const SolidPartition part = partition_solids(geometry, s, colors);
  const auto pc = point_counts(geometry, s);

  SuiteBuilder b(report);
  common_entries(b, geometry, s, colors, pc);
  if (report.lemma_case == LemmaCase::B) {
    case_b_entries(b, geometry, s, colors, part);
  } else if (report.lemma_case == LemmaCase::A) {
    case_a_entries(b, geometry, s, colors, part);
  }
  return report;
}

}  // namespace pg4
