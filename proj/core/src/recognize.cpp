#include "pg4/recognize.hpp"

#include <array>

#include "pg4/linalg.hpp"
#include "pg4/parallel.hpp"

namespace pg4 {

LineTypeProfile line_type_profile(const Geometry& geometry, const Bitset& points) {
  const SubspaceTable& lines = geometry.lines();
  std::vector<std::uint32_t> sizes(lines.size());
  parallel_for(lines.size(), geometry.workers(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::uint32_t c = 0;
      for (auto p : lines.points(i)) c += points.test(p) ? 1u : 0u;
      sizes[i] = c;
    }
  });
  return spectrum_of(sizes);
}

std::optional<QuadraticForm> fit_quadric(const Geometry& geometry, const Bitset& points) {
  const GaloisField& field = geometry.field();
  EchelonBasis conditions(field, QuadraticForm::kCoefficients);
  std::array<FieldElement, QuadraticForm::kCoefficients> monomials{};
  bool saturated = false;
  points.for_each([&](std::size_t p) {
    if (saturated) return;
    const Coords& x = geometry.coords(static_cast<std::uint32_t>(p));
    std::size_t k = 0;
    for (std::size_t i = 0; i < kAmbientRank; ++i) {
      for (std::size_t j = i; j < kAmbientRank; ++j) monomials[k++] = field.mul(x[i], x[j]);
    }
    conditions.insert(monomials);
    saturated = conditions.rank() == QuadraticForm::kCoefficients;
  });
  if (saturated) return std::nullopt;

  const Matrix kernel = nullspace(field, conditions.basis());
  if (kernel.rows() != 1) return std::nullopt;

  QuadraticForm::Coefficients c{};
  std::copy_n(kernel.row(0).begin(), QuadraticForm::kCoefficients, c.begin());
  const QuadraticForm form = QuadraticForm(c).normalized(field);
  if (zero_set(geometry, form) != points) return std::nullopt;
  return form;
}

Hyperoval recover_hyperoval(const Geometry& geometry, const ColorMap& colors) {
  const GaloisField& field = geometry.field();
  const std::size_t expected = std::size_t{geometry.q()} + 2;
  if (colors.r() != expected) {
    throw RecognitionError(RecognitionError::Kind::WrongRedCount,
                           std::to_string(colors.r()) + " red points, expected " + std::to_string(expected));
  }
  std::vector<ProjectivePoint> reds;
  std::vector<Coords> vecs;
  colors.red.for_each([&](std::size_t p) {
    reds.push_back(geometry.point(static_cast<std::uint32_t>(p)));
    vecs.push_back(reds.back().coords);
  });
  Subspace carrier = Subspace::span(field, vecs);
  if (carrier.rank() != 3) {
    throw RecognitionError(RecognitionError::Kind::NotCoplanar,
                           "red points span a subspace of projective dimension " + std::to_string(carrier.dim()));
  }
  for (std::size_t a = 0; a < reds.size(); ++a) {
    for (std::size_t b = a + 1; b < reds.size(); ++b) {
      for (std::size_t c = b + 1; c < reds.size(); ++c) {
        if (Subspace::span(field, {vecs[a], vecs[b], vecs[c]}).rank() < 3) {
          throw RecognitionError(RecognitionError::Kind::Collinear, "red points " + reds[a].to_string() + ", " +
                                                                        reds[b].to_string() + ", " +
                                                                        reds[c].to_string() + " are collinear");
        }
      }
    }
  }
  return Hyperoval{std::move(reds), std::move(carrier)};
}

namespace {

Verdict not_applicable(Verdict v, ConditionReport report, std::string reason) {
  v.outcome = NotApplicable{std::move(report), std::move(reason)};
  return v;
}

}  // namespace

Verdict classify(const Geometry& geometry, const SolidSet& s, std::size_t witness_cap) {
  Verdict v;
  v.size = s.size();
  v.theorem_applicable = geometry.q() > 2;
  ConditionReport report = check_conditions(geometry, s, witness_cap);
  v.e = report.e;

  if (!report.cond_i || !report.cond_ii) {
    std::string why = !report.cond_i ? "condition (I) fails" : "condition (II) fails";
    if (!report.cond_i && !report.cond_ii) why = "conditions (I) and (II) fail";
    return not_applicable(std::move(v), std::move(report), why);
  }
  if (!report.e) return not_applicable(std::move(v), std::move(report), "|E| is not a multiple of q^2/2");

  const std::uint64_t residue = *report.e % geometry.q();
  const ColorMap colors = color_points(geometry, s, witness_cap);

  if (residue == 0) {
    std::optional<Hyperoval> oval;
    try {
      oval.emplace(recover_hyperoval(geometry, colors));
    } catch (const RecognitionError& err) {
      return not_applicable(std::move(v), std::move(report), std::string("hyperoval recovery failed: ") + err.what());
    }
    const auto disjoint = solids_disjoint_from(geometry, *oval);
    if (SolidSet::of(geometry, disjoint) != s) {
      return not_applicable(std::move(v), std::move(report), "members differ from the solids disjoint from the hyperoval");
    }
    v.outcome = CaseA{std::move(*oval)};
    return v;
  }

  if (residue == geometry.q() - 1) {
    const auto form = fit_quadric(geometry, colors.black);
    if (!form) return not_applicable(std::move(v), std::move(report), "black points are not the zero set of a unique quadric");
    ProjectivePoint n;
    try {
      n = nucleus(geometry.field(), *form);
    } catch (const SingularFormError& err) {
      return not_applicable(std::move(v), std::move(report), std::string("fitted quadric is singular: ") + err.what());
    }
    if (colors.r() != 1 || !colors.red.test(geometry.index_of(n))) {
      return not_applicable(std::move(v), std::move(report), "nucleus is not the unique red point");
    }
    SectionPartition sections;
    try {
      sections = solids_by_section(geometry, *form);
    } catch (const SingularFormError& err) {
      return not_applicable(std::move(v), std::move(report), std::string("section classification failed: ") + err.what());
    }
    if (SolidSet::of(geometry, sections.elliptic) != s) {
      return not_applicable(std::move(v), std::move(report), "members differ from the elliptic solids of the fitted quadric");
    }
    v.outcome = CaseB{*form, n, colors.b()};
    return v;
  }

  return not_applicable(std::move(v), std::move(report), "e is neither 0 nor -1 modulo q");
}

bool condition_iii_disambiguation(const Geometry& geometry, const SolidSet& s) {
  const ConditionReport report = check_conditions(geometry, s, 0);
  if (!report.cond_i || !report.cond_ii) {
    throw PreconditionError("condition (III) test requires conditions (I) and (II)");
  }
  return report.cond_iii;
}

}  // namespace pg4
