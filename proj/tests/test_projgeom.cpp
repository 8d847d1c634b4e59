#include <doctest.h>

#include <set>

#include "oracle.hpp"
#include "pg4/projgeom.hpp"
#include "support.hpp"

using namespace pg4;

namespace {

Coords unit(std::size_t k) {
  Coords v{};
  v[k] = GaloisField::one();
  return v;
}

Coords c(std::initializer_list<std::uint32_t> xs) {
  Coords v{};
  std::size_t i = 0;
  for (auto x : xs) v[i++] = FieldElement{x};
  return v;
}

}  // namespace

TEST_CASE("point counts and canonical order") {
  for (std::uint32_t q : {2u, 4u, 8u}) {
    CAPTURE(q);
    const auto f = GaloisField::of_order(q);
    const auto pts = enumerate_points(f);
    const std::uint64_t expect = (std::uint64_t{q} * q * q * q * q - 1) / (q - 1);
    CHECK(pts.size() == expect);
    CHECK(projective_points(5, q) == expect);
    // strictly increasing lexicographic order of normalized tuples
    for (std::size_t i = 1; i < pts.size(); ++i) REQUIRE(pts[i - 1].coords < pts[i].coords);
    if (q <= 4) {
      const auto o = oracle::all_points(support::oracle_field(f));
      std::set<oracle::Vec> mine;
      for (const auto& p : pts) mine.insert(support::to_vec(p.coords));
      CHECK(mine == o);
    }
  }
}

TEST_CASE("normalization and parsing") {
  const auto f = GaloisField::of_order(4);
  CHECK(normalize(f, c({0, 2, 3, 0, 1})) == c({0, 1, 2, 0, 3}));
  CHECK_THROWS_AS(normalize(f, Coords{}), GeometryError);
  CHECK(parse_coords(f, "1:0:3:2:0") == c({1, 0, 3, 2, 0}));
  CHECK(coords_to_string(c({1, 0, 3, 2, 0})) == "1:0:3:2:0");
  CHECK_THROWS_AS(parse_coords(f, "1:0:3:2"), GeometryError);
  CHECK_THROWS_AS(parse_coords(f, "1:0:3:2:0:0"), GeometryError);
  CHECK_THROWS_AS(parse_coords(f, "1:0:4:2:0"), FieldError);
  const Geometry& g = support::geometry(4);
  CHECK_THROWS(g.locate(Coords{}));
  CHECK(g.locate(c({2, 0, 0, 0, 0})) == g.locate(c({1, 0, 0, 0, 0})));
}

TEST_CASE("incidence examples") {
  const auto f = GaloisField::of_order(4);
  const ProjectivePoint p{unit(0)};
  CHECK(incident(f, p, Hyperplane{unit(1)}));
  CHECK_FALSE(incident(f, p, Hyperplane{unit(0)}));
  CHECK(incident(f, ProjectivePoint{c({1, 1, 0, 0, 0})}, Hyperplane{c({1, 1, 0, 0, 0})}));
}

TEST_CASE("incidence bitsets agree with dot products") {
  for (std::uint32_t q : {2u, 4u}) {
    const Geometry& g = support::geometry(q);
    const auto o = support::oracle_field(g.field());
    CHECK(g.num_hyperplanes() == g.num_points());
    const std::size_t per = q * q * q + q * q + q + 1;
    CHECK(g.points_per_hyperplane() == per);
    for (std::uint32_t h = 0; h < g.num_hyperplanes(); ++h) {
      REQUIRE(g.hyperplane_points(h).count() == per);
      for (std::uint32_t p = 0; p < g.num_points(); ++p) {
        const bool on = oracle::dot(o, support::to_vec(g.coords(p)), support::to_vec(g.hyperplane(h).dual)) == 0;
        REQUIRE(g.incident(p, h) == on);
      }
    }
  }
}

TEST_CASE("span examples") {
  const auto f = GaloisField::of_order(4);
  CHECK(Subspace::span(f, {c({0, 2, 0, 0, 0})}).dim() == 0);
  CHECK(Subspace::span(f, {c({0, 2, 0, 0, 0})}).row(0) == unit(1));
  const auto l = Subspace::span(f, {unit(0), unit(1)});
  CHECK(l.dim() == 1);
  CHECK(l.row(0) == unit(0));
  CHECK(l.row(1) == unit(1));
  // (1,1,0,0,0) lies on that line
  CHECK(Subspace::span(f, {unit(0), unit(1), c({1, 1, 0, 0, 0})}).dim() == 1);
  CHECK(Subspace::span(f, {unit(1), unit(0)}) == l);
  CHECK_THROWS_AS(Subspace::span(f, {Coords{}}), GeometryError);
}

TEST_CASE("meet examples") {
  const auto f = GaloisField::of_order(4);
  const Hyperplane h0{unit(0)}, h1{unit(1)};
  const auto pl = meet(f, h0, h1);
  REQUIRE(pl);
  CHECK(pl->dim() == 2);
  const auto line = Subspace::span(f, {unit(2), unit(3)});
  const auto m = meet(f, h0, line);
  REQUIRE(m);
  CHECK(*m == line);
  // two planes inside the solid x0 = 0
  const auto a = Subspace::span(f, {unit(1), unit(2), unit(3)});
  const auto b = Subspace::span(f, {unit(1), unit(2), unit(4)});
  const auto ab = meet(f, a, b);
  REQUIRE(ab);
  CHECK(*ab == Subspace::span(f, {unit(1), unit(2)}));
  // disjoint: a line and a plane in general position can miss
  const auto p0 = Subspace::span(f, {unit(0)});
  CHECK_FALSE(meet(f, p0, Subspace::span(f, {unit(1)})));
}

TEST_CASE("meet dimension formula (random)") {
  support::Rng rng(0x5eed'0002);
  const auto f = GaloisField::of_order(8);
  for (int i = 0; i < 300; ++i) {
    std::vector<Coords> va, vb;
    const auto ka = 1 + support::below(rng, 4), kb = 1 + support::below(rng, 4);
    for (std::uint64_t k = 0; k < ka; ++k) va.push_back(support::nonzero_vector(rng, f));
    for (std::uint64_t k = 0; k < kb; ++k) vb.push_back(support::nonzero_vector(rng, f));
    const auto a = Subspace::span(f, va), b = Subspace::span(f, vb);
    std::vector<Coords> both = va;
    both.insert(both.end(), vb.begin(), vb.end());
    const auto sum = Subspace::span(f, both).rank();
    const auto m = meet(f, a, b);
    const std::size_t mr = m ? m->rank() : 0;
    CHECK(mr + sum == a.rank() + b.rank());
    if (m) {
      CHECK(a.contains(f, *m));
      CHECK(b.contains(f, *m));
    }
  }
}

TEST_CASE("gaussian binomials") {
  for (std::uint64_t q : {2u, 3u, 4u, 8u, 16u}) {
    for (unsigned n = 0; n <= (q == 16 ? 5u : 6u); ++n) {
      for (unsigned k = 0; k <= n; ++k) CHECK(gaussian_binomial(n, k, q) == oracle::gaussian(n, k, q));
    }
  }
  CHECK(gaussian_binomial(5, 2, 4) == 5797);
  CHECK(gaussian_binomial(5, 2, 2) == 155);
  CHECK(gaussian_binomial(5, 3, 8) == 304265);
}

TEST_CASE("echelon cells rank and unrank are inverse") {
  for (std::uint32_t q : {2u, 4u}) {
    const auto f = GaloisField::of_order(q);
    for (std::size_t k = 1; k <= 5; ++k) {
      const EchelonCells cells(q, k);
      CHECK(cells.size() == gaussian_binomial(5, static_cast<unsigned>(k), q));
      for (std::uint64_t i = 0; i < cells.size(); ++i) {
        Matrix m = cells.unrank(i);
        Matrix r = m;
        REQUIRE(row_reduce(f, r) == k);
        REQUIRE(r == m);
        REQUIRE(cells.rank_of(m) == i);
      }
    }
  }
}

TEST_CASE("line and plane tables") {
  for (std::uint32_t q : {2u, 4u}) {
    CAPTURE(q);
    const Geometry& g = support::geometry(q);
    const auto& lines = g.lines();
    const auto& planes = g.planes();
    CHECK(lines.size() == oracle::gaussian(5, 2, q));
    CHECK(planes.size() == oracle::gaussian(5, 3, q));
    CHECK(lines.points_per() == q + 1);
    CHECK(planes.points_per() == q * q + q + 1);

    // same lines as spanning every pair of points and deduplicating
    const auto o = support::oracle_field(g.field());
    std::set<std::vector<oracle::Vec>> mine;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::vector<oracle::Vec> pts;
      for (auto p : lines.points(i)) pts.push_back(support::to_vec(g.coords(p)));
      std::sort(pts.begin(), pts.end());
      mine.insert(pts);
    }
    CHECK(mine.size() == lines.size());
    CHECK(mine == oracle::lines_by_pairs(o));

    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto s = lines.subspace(i);
      REQUIRE(lines.find(s) == i);
      REQUIRE(g.points_of(s) == std::vector<std::uint32_t>(lines.points(i).begin(), lines.points(i).end()));
      const auto through = g.hyperplanes_through_line(i);
      REQUIRE(through.size() == q * q + q + 1);
      REQUIRE(std::vector<std::uint32_t>(through.begin(), through.end()) == g.hyperplanes_through(s));
    }
    for (std::size_t i = 0; i < planes.size(); ++i) {
      const auto s = planes.subspace(i);
      REQUIRE(planes.find(s) == i);
      const auto through = g.hyperplanes_through_plane(i);
      REQUIRE(through.size() == q + 1);
      REQUIRE(std::vector<std::uint32_t>(through.begin(), through.end()) == g.hyperplanes_through(s));
      for (auto h : through) {
        for (auto p : planes.points(i)) REQUIRE(g.incident(p, h));
      }
    }
  }
}

TEST_CASE("two points determine one line") {
  const Geometry& g = support::geometry(4);
  const auto& lines = g.lines();
  std::vector<std::uint32_t> seen(g.num_points() * g.num_points(), 0);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto pts = lines.points(i);
    for (auto a : pts) {
      for (auto b : pts) {
        if (a != b) ++seen[a * g.num_points() + b];
      }
    }
  }
  for (std::size_t a = 0; a < g.num_points(); ++a) {
    for (std::size_t b = 0; b < g.num_points(); ++b) {
      REQUIRE(seen[a * g.num_points() + b] == (a == b ? 0u : 1u));
    }
  }
}

TEST_CASE("solids through a point, line and plane") {
  const Geometry& g = support::geometry(4);
  CHECK(g.hyperplanes_through(Subspace::span(g.field(), {unit(0)})).size() == 85);
  CHECK(g.hyperplanes_through(Subspace::span(g.field(), {unit(0), unit(1)})).size() == 21);
  CHECK(g.hyperplanes_through(Subspace::span(g.field(), {unit(0), unit(1), unit(2)})).size() == 5);
}

TEST_CASE("geometry is deterministic across worker counts") {
  const auto f = GaloisField::of_order(4);
  const Geometry a(f, 1), b(f, 3);
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() == support::geometry(4).fingerprint());
  for (std::size_t i = 0; i < a.lines().size(); ++i) {
    REQUIRE(std::equal(a.lines().points(i).begin(), a.lines().points(i).end(), b.lines().points(i).begin()));
    REQUIRE(a.lines().dual(i) == b.lines().dual(i));
  }
  CHECK(Geometry(f, 2).fingerprint() != Geometry(GaloisField::of_order(2), 2).fingerprint());
}

TEST_CASE("memory budget is enforced") {
  const Geometry g(GaloisField::of_order(4), 1, 1 << 16);
  CHECK_THROWS_AS(g.planes(), ResourceError);
}
