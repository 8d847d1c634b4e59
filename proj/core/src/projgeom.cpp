#include "pg4/projgeom.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "pg4/parallel.hpp"

namespace pg4 {

Coords normalize(const GaloisField& field, Coords v) {
  auto lead = std::find_if(v.begin(), v.end(), [](FieldElement x) { return x.bits != 0; });
  if (lead == v.end()) throw GeometryError("the zero vector is not a projective point");
  if (lead->bits != 1) {
    const FieldElement s = field.inv(*lead);
    for (auto& x : v) x = field.mul(x, s);
  }
  return v;
}

FieldElement dot(const GaloisField& field, const Coords& a, const Coords& b) noexcept {
  FieldElement acc{};
  for (std::size_t i = 0; i < kAmbientRank; ++i) acc = GaloisField::add(acc, field.mul(a[i], b[i]));
  return acc;
}

bool incident(const GaloisField& field, const ProjectivePoint& p, const Hyperplane& h) noexcept {
  return dot(field, p.coords, h.dual).bits == 0;
}

std::string coords_to_string(const Coords& v) {
  std::string out;
  for (std::size_t i = 0; i < kAmbientRank; ++i) {
    if (i) out += ':';
    out += GaloisField::to_hex(v[i]);
  }
  return out;
}

Coords parse_coords(const GaloisField& field, std::string_view text) {
  Coords v{};
  std::size_t i = 0;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    const std::string_view part =
        text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start);
    if (i == kAmbientRank) throw GeometryError("expected 5 coordinates in '" + std::string(text) + "'");
    v[i++] = field.parse_hex(part);
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (i != kAmbientRank) throw GeometryError("expected 5 coordinates in '" + std::string(text) + "'");
  return v;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace Subspace::span(const GaloisField& field, std::span<const Coords> vectors) {
  Matrix m(0, kAmbientRank);
  for (const auto& v : vectors) m.append_row(v);
  if (row_reduce(field, m) == 0) throw GeometryError("span of zero vectors");
  return Subspace(std::move(m));
}

Subspace Subspace::of(const GaloisField& field, const Hyperplane& h) {
  Matrix m(0, kAmbientRank);
  m.append_row(h.dual);
  if (row_reduce(field, m) == 0) throw GeometryError("hyperplane with zero dual coordinates");
  return Subspace(nullspace(field, m));
}

Subspace Subspace::from_rref(Matrix rref) { return Subspace(std::move(rref)); }

Coords Subspace::row(std::size_t i) const {
  Coords v{};
  std::copy_n(basis_.row(i).begin(), kAmbientRank, v.begin());
  return v;
}

bool Subspace::contains(const GaloisField& field, const Coords& v) const {
  Coords r = v;
  const auto pivots = pivot_columns(basis_);
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    const FieldElement f = r[pivots[i]];
    if (f.bits == 0) continue;
    for (std::size_t c = 0; c < kAmbientRank; ++c) r[c] = GaloisField::add(r[c], field.mul(f, basis_(i, c)));
  }
  return std::all_of(r.begin(), r.end(), [](FieldElement x) { return x.bits == 0; });
}

bool Subspace::contains(const GaloisField& field, const Subspace& other) const {
  for (std::size_t i = 0; i < other.rank(); ++i) {
    if (!contains(field, other.row(i))) return false;
  }
  return true;
}

std::string Subspace::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (i) out += '/';
    out += coords_to_string(row(i));
  }
  return out;
}

std::optional<Subspace> annihilator(const GaloisField& field, const Subspace& s) {
  Matrix k = nullspace(field, s.basis());
  if (k.rows() == 0) return std::nullopt;
  return Subspace::from_rref(std::move(k));
}

std::optional<Subspace> meet(const GaloisField& field, const Subspace& a, const Subspace& b) {
  const auto da = annihilator(field, a);
  const auto db = annihilator(field, b);
  if (!da) return b;
  if (!db) return a;
  Matrix stacked(0, kAmbientRank);
  for (std::size_t i = 0; i < da->rank(); ++i) stacked.append_row(da->basis().row(i));
  for (std::size_t i = 0; i < db->rank(); ++i) stacked.append_row(db->basis().row(i));
  Matrix k = nullspace(field, stacked);
  if (k.rows() == 0) return std::nullopt;
  return Subspace::from_rref(std::move(k));
}

std::optional<Subspace> meet(const GaloisField& field, const Hyperplane& a, const Subspace& b) {
  return meet(field, Subspace::of(field, a), b);
}

std::optional<Subspace> meet(const GaloisField& field, const Hyperplane& a, const Hyperplane& b) {
  return meet(field, Subspace::of(field, a), Subspace::of(field, b));
}

// ---------------------------------------------------------------------------
// Counting

std::uint64_t projective_points(unsigned rank, std::uint64_t q) {
  std::uint64_t n = 0;
  std::uint64_t p = 1;
  for (unsigned i = 0; i < rank; ++i, p *= q) n += p;
  return n;
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
  if (k > n) return 0;
  // q-Pascal rule: [n,k] = [n-1,k-1] + q^k [n-1,k]
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (unsigned m = 1; m <= n; ++m) {
    for (unsigned j = std::min(m, k); j >= 1; --j) {
      std::uint64_t qj = 1;
      for (unsigned i = 0; i < j; ++i) qj *= q;
      row[j] = row[j - 1] + qj * row[j];
    }
  }
  return row[k];
}

// ---------------------------------------------------------------------------
// EchelonCells

EchelonCells::EchelonCells(std::uint32_t q, std::size_t rank) : q_(q), rank_(rank) {
  if (rank == 0 || rank > kAmbientRank) throw GeometryError("echelon rank must be in [1, 5]");
  std::vector<std::vector<std::size_t>> patterns;
  for (unsigned mask = 0; mask < (1u << kAmbientRank); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != rank) continue;
    std::vector<std::size_t> p;
    for (std::size_t c = 0; c < kAmbientRank; ++c) {
      if ((mask >> c) & 1u) p.push_back(c);
    }
    patterns.push_back(std::move(p));
  }
  std::sort(patterns.begin(), patterns.end(), std::greater<>());

  for (auto& pivots : patterns) {
    Cell cell;
    for (std::size_t r = 0; r < rank; ++r) {
      for (std::size_t c = pivots[r] + 1; c < kAmbientRank; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) cell.free.emplace_back(r, c);
      }
    }
    cell.pivots = std::move(pivots);
    cell.offset = size_;
    cell.count = 1;
    for (std::size_t i = 0; i < cell.free.size(); ++i) cell.count *= q;
    size_ += cell.count;
    cells_.push_back(std::move(cell));
  }
}

Matrix EchelonCells::unrank(std::uint64_t index) const {
  auto it = std::upper_bound(cells_.begin(), cells_.end(), index,
                             [](std::uint64_t i, const Cell& c) { return i < c.offset; });
  const Cell& cell = *std::prev(it);
  std::uint64_t value = index - cell.offset;
  Matrix m(rank_, kAmbientRank);
  for (std::size_t r = 0; r < rank_; ++r) m(r, cell.pivots[r]) = GaloisField::one();
  for (std::size_t i = cell.free.size(); i-- > 0;) {
    m(cell.free[i].first, cell.free[i].second) = FieldElement{static_cast<std::uint32_t>(value % q_)};
    value /= q_;
  }
  return m;
}

std::uint64_t EchelonCells::rank_of(const Matrix& rref) const {
  if (rref.rows() != rank_) throw GeometryError("subspace rank does not match table");
  const auto pivots = pivot_columns(rref);
  auto it = std::find_if(cells_.begin(), cells_.end(), [&](const Cell& c) { return c.pivots == pivots; });
  if (it == cells_.end()) throw GeometryError("matrix is not in reduced echelon form");
  std::uint64_t value = 0;
  for (const auto& [r, c] : it->free) value = value * q_ + rref(r, c).bits;
  return it->offset + value;
}

// ---------------------------------------------------------------------------
// SubspaceTable

SubspaceTable::SubspaceTable(std::uint32_t q, std::size_t rank, std::size_t points_per)
    : cells_(q, rank), points_per_(points_per) {}

std::size_t SubspaceTable::find(const Subspace& s) const {
  return static_cast<std::size_t>(cells_.rank_of(s.basis()));
}

// ---------------------------------------------------------------------------
// Geometry

struct Geometry::Lazy {
  std::once_flag lines_once;
  std::once_flag planes_once;
  std::unique_ptr<SubspaceTable> lines;
  std::unique_ptr<SubspaceTable> planes;
};

Geometry::Geometry(GaloisField field, unsigned workers, std::size_t memory_budget)
    : field_(std::move(field)),
      workers_(resolve_workers(workers)),
      memory_budget_(memory_budget),
      lazy_(std::make_unique<Lazy>()) {
  const EchelonCells cells(field_.order(), 1);
  const std::size_t n = static_cast<std::size_t>(cells.size());
  if (n * (n / 8 + 8) > memory_budget_) {
    throw ResourceError("incidence bitsets for q=" + std::to_string(q()) + " exceed the memory budget");
  }
  points_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix m = cells.unrank(i);
    std::copy_n(m.row(0).begin(), kAmbientRank, points_[i].begin());
  }
  incidence_.assign(n, Bitset(n));
  parallel_for(n, workers_, [&](std::size_t begin, std::size_t end) {
    Matrix dual(1, kAmbientRank);
    for (std::size_t h = begin; h < end; ++h) {
      std::copy_n(points_[h].begin(), kAmbientRank, dual.row(0).begin());
      const Matrix solid = nullspace(field_, dual);
      Bitset& bits = incidence_[h];
      for_each_point(field_, solid, [&](const Coords& v) { bits.set(index_of_normalized(v)); });
    }
  });
}

Geometry::Geometry(Geometry&&) noexcept = default;
Geometry& Geometry::operator=(Geometry&&) noexcept = default;
Geometry::~Geometry() = default;

std::size_t Geometry::points_per_hyperplane() const noexcept {
  return static_cast<std::size_t>(projective_points(4, q()));
}

std::uint32_t Geometry::index_of_normalized(const Coords& v) const noexcept {
  const unsigned h = field_.degree();
  std::size_t lead = 0;
  while (v[lead].bits == 0) ++lead;
  // Points with a later leading coordinate come first: 1 + q + ... + q^(3-lead).
  std::uint64_t offset = 0;
  for (std::size_t c = lead + 1; c < kAmbientRank; ++c) offset = (offset << h) + 1;
  std::uint64_t value = 0;
  for (std::size_t c = lead + 1; c < kAmbientRank; ++c) value = (value << h) | v[c].bits;
  return static_cast<std::uint32_t>(offset + value);
}

std::uint32_t Geometry::locate(const Coords& v) const {
  for (auto x : v) {
    if (!field_.contains(x)) throw FieldError("coordinate outside GF(" + std::to_string(q()) + ")");
  }
  return index_of_normalized(normalize(field_, v));
}

std::vector<std::uint32_t> Geometry::points_of(const Subspace& s) const {
  std::vector<std::uint32_t> out;
  for_each_point(field_, s.basis(), [&](const Coords& v) { out.push_back(index_of_normalized(v)); });
  std::sort(out.begin(), out.end());
  return out;
}

Bitset Geometry::point_set(const Subspace& s) const {
  Bitset bits(num_points());
  for_each_point(field_, s.basis(), [&](const Coords& v) { bits.set(index_of_normalized(v)); });
  return bits;
}

std::vector<std::uint32_t> Geometry::hyperplanes_through(const Subspace& s) const {
  const auto dual = annihilator(field_, s);
  if (!dual) return {};
  return points_of(*dual);
}

std::unique_ptr<SubspaceTable> Geometry::build_table(std::size_t rank) const {
  const auto per = static_cast<std::size_t>(projective_points(static_cast<unsigned>(rank), q()));
  auto table = std::make_unique<SubspaceTable>(q(), rank, per);
  const std::size_t count = table->size();
  if (count * (per + 1) * sizeof(std::uint32_t) > memory_budget_) {
    throw ResourceError("subspace table of rank " + std::to_string(rank) + " for q=" + std::to_string(q()) +
                        " exceeds the memory budget");
  }
  const EchelonCells dual_cells(q(), kAmbientRank - rank);
  table->points_.resize(count * per);
  table->dual_.resize(count);
  parallel_for(count, workers_, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Matrix m = table->cells_.unrank(i);
      std::uint32_t* out = table->points_.data() + i * per;
      std::size_t n = 0;
      for_each_point(field_, m, [&](const Coords& v) { out[n++] = index_of_normalized(v); });
      std::sort(out, out + per);
      table->dual_[i] = static_cast<std::uint32_t>(dual_cells.rank_of(nullspace(field_, m)));
    }
  });
  return table;
}

const SubspaceTable& Geometry::lines() const {
  std::call_once(lazy_->lines_once, [this] { lazy_->lines = build_table(2); });
  return *lazy_->lines;
}

const SubspaceTable& Geometry::planes() const {
  std::call_once(lazy_->planes_once, [this] { lazy_->planes = build_table(3); });
  return *lazy_->planes;
}

std::uint64_t Geometry::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (const auto& p : points_) {
    for (auto x : p) mix(x.bits);
  }
  for (const auto& b : incidence_) {
    for (auto w : b.words()) mix(w);
  }
  return h;
}

std::vector<ProjectivePoint> enumerate_points(const GaloisField& field) {
  const EchelonCells cells(field.order(), 1);
  std::vector<ProjectivePoint> out(static_cast<std::size_t>(cells.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Matrix m = cells.unrank(i);
    std::copy_n(m.row(0).begin(), kAmbientRank, out[i].coords.begin());
  }
  return out;
}

}  // namespace pg4
