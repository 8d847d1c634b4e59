#include "pg4/quadric.hpp"

#include "pg4/parallel.hpp"

namespace pg4 {

FieldElement QuadraticForm::evaluate(const GaloisField& field, const Coords& x) const noexcept {
  FieldElement acc{};
  std::size_t k = 0;
  for (std::size_t i = 0; i < kAmbientRank; ++i) {
    if (x[i].bits == 0) {
      k += kAmbientRank - i;
      continue;
    }
    for (std::size_t j = i; j < kAmbientRank; ++j, ++k) {
      if (coeffs_[k].bits == 0 || x[j].bits == 0) continue;
      acc = GaloisField::add(acc, field.mul(coeffs_[k], field.mul(x[i], x[j])));
    }
  }
  return acc;
}

Matrix QuadraticForm::polar_matrix() const {
  Matrix b(kAmbientRank, kAmbientRank);
  for (std::size_t i = 0; i < kAmbientRank; ++i) {
    for (std::size_t j = i + 1; j < kAmbientRank; ++j) {
      b(i, j) = coeff(i, j);
      b(j, i) = coeff(i, j);
    }
  }
  return b;
}

QuadraticForm QuadraticForm::compose(const GaloisField& field, const Matrix& m) const {
  auto column = [&](std::size_t k) {
    Coords v{};
    for (std::size_t r = 0; r < kAmbientRank; ++r) v[r] = m(r, k);
    return v;
  };
  QuadraticForm out;
  std::array<FieldElement, kAmbientRank> diag{};
  for (std::size_t k = 0; k < kAmbientRank; ++k) {
    diag[k] = evaluate(field, column(k));
    out.set(k, k, diag[k]);
  }
  for (std::size_t k = 0; k < kAmbientRank; ++k) {
    for (std::size_t l = k + 1; l < kAmbientRank; ++l) {
      Coords sum = column(k);
      const Coords cl = column(l);
      for (std::size_t r = 0; r < kAmbientRank; ++r) sum[r] = GaloisField::add(sum[r], cl[r]);
      out.set(k, l, GaloisField::add(evaluate(field, sum), GaloisField::add(diag[k], diag[l])));
    }
  }
  return out;
}

QuadraticForm QuadraticForm::normalized(const GaloisField& field) const {
  QuadraticForm out = *this;
  for (auto c : coeffs_) {
    if (c.bits == 0) continue;
    const FieldElement s = field.inv(c);
    for (auto& x : out.coeffs_) x = field.mul(x, s);
    break;
  }
  return out;
}

bool QuadraticForm::is_zero() const noexcept {
  for (auto c : coeffs_) {
    if (c.bits != 0) return false;
  }
  return true;
}

std::string QuadraticForm::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < kCoefficients; ++k) {
    if (k) out += ':';
    out += GaloisField::to_hex(coeffs_[k]);
  }
  return out;
}

QuadraticForm QuadraticForm::parse(const GaloisField& field, std::string_view text) {
  Coefficients c{};
  std::size_t k = 0;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = text.find(':', start);
    if (k == kCoefficients) throw FieldError("expected 15 form coefficients");
    c[k++] = field.parse_hex(
        text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (k != kCoefficients) throw FieldError("expected 15 form coefficients");
  return QuadraticForm(c);
}

QuadraticForm standard_parabolic(const GaloisField&) {
  QuadraticForm f;
  f.set(0, 0, GaloisField::one());
  f.set(1, 2, GaloisField::one());
  f.set(3, 4, GaloisField::one());
  return f;
}

ProjectivePoint nucleus(const GaloisField& field, const QuadraticForm& f) {
  const Matrix radical = nullspace(field, f.polar_matrix());
  if (radical.rows() != 1) {
    throw SingularFormError("polar radical has dimension " + std::to_string(radical.rows()) + ", expected 1");
  }
  Coords n{};
  std::copy_n(radical.row(0).begin(), kAmbientRank, n.begin());
  if (f.evaluate(field, n).bits == 0) throw SingularFormError("form vanishes on its polar radical");
  return ProjectivePoint::from(field, n);
}

Bitset zero_set(const Geometry& geometry, const QuadraticForm& f) {
  Bitset zeros(geometry.num_points());
  for (std::uint32_t i = 0; i < geometry.num_points(); ++i) {
    if (f.evaluate(geometry.field(), geometry.coords(i)).bits == 0) zeros.set(i);
  }
  return zeros;
}

std::string_view to_string(SectionKind kind) noexcept {
  switch (kind) {
    case SectionKind::Elliptic: return "elliptic";
    case SectionKind::Hyperbolic: return "hyperbolic";
    case SectionKind::Cone: return "cone";
    case SectionKind::Other: break;
  }
  return "other";
}

SectionType classify_section_size(std::uint32_t q, std::size_t points) noexcept {
  const std::size_t qq = q;
  if (points == qq * qq + 1) return {SectionKind::Elliptic, points};
  if (points == (qq + 1) * (qq + 1)) return {SectionKind::Hyperbolic, points};
  if (points == qq * qq + qq + 1) return {SectionKind::Cone, points};
  return {SectionKind::Other, points};
}

SectionType section_type(const Geometry& geometry, const Bitset& zeros, std::uint32_t hyperplane) {
  return classify_section_size(geometry.q(), geometry.hyperplane_points(hyperplane).and_count(zeros));
}

SectionType section_type(const Geometry& geometry, const QuadraticForm& f, const Hyperplane& h) {
  return section_type(geometry, zero_set(geometry, f), geometry.index_of(h));
}

SectionPartition solids_by_section(const Geometry& geometry, const QuadraticForm& f) {
  const Bitset zeros = zero_set(geometry, f);
  const std::size_t n = geometry.num_hyperplanes();
  std::vector<SectionType> types(n);
  parallel_for(n, geometry.workers(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t h = begin; h < end; ++h) {
      types[h] = section_type(geometry, zeros, static_cast<std::uint32_t>(h));
    }
  });
  SectionPartition out;
  for (std::uint32_t h = 0; h < n; ++h) {
    switch (types[h].kind) {
      case SectionKind::Elliptic: out.elliptic.push_back(h); break;
      case SectionKind::Hyperbolic: out.hyperbolic.push_back(h); break;
      case SectionKind::Cone: out.cone.push_back(h); break;
      case SectionKind::Other:
        throw SingularFormError("solid " + geometry.hyperplane(h).to_string() + " meets the zero set in " +
                                std::to_string(types[h].points) + " points");
    }
  }
  return out;
}

Hyperoval regular_hyperoval(const GaloisField& field) {
  auto unit = [](std::size_t k) {
    Coords v{};
    v[k] = GaloisField::one();
    return v;
  };
  Hyperoval h{{}, Subspace::span(field, {unit(0), unit(1), unit(2)})};
  for (std::uint32_t t = 0; t < field.order(); ++t) {
    const FieldElement x{t};
    h.points.push_back({Coords{GaloisField::one(), x, field.square(x), {}, {}}});
  }
  h.points.push_back({unit(1)});
  h.points.push_back({unit(2)});
  return h;
}

bool is_hyperoval(const GaloisField& field, const Hyperoval& h) {
  if (h.carrier.rank() != 3 || h.points.size() != field.order() + 2) return false;
  for (const auto& p : h.points) {
    if (!h.carrier.contains(field, p.coords)) return false;
  }
  const std::size_t n = h.points.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        if (Subspace::span(field, {h.points[a].coords, h.points[b].coords, h.points[c].coords}).rank() != 3) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::uint32_t> solids_disjoint_from(const Geometry& geometry, const Hyperoval& h) {
  Bitset oval(geometry.num_points());
  for (const auto& p : h.points) oval.set(geometry.index_of(p));
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < geometry.num_hyperplanes(); ++s) {
    if (!geometry.hyperplane_points(s).intersects(oval)) out.push_back(s);
  }
  return out;
}

}  // namespace pg4
