#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "oracle.hpp"
#include "pg4/projgeom.hpp"
#include "pg4/quadric.hpp"
#include "pg4/spectrum.hpp"

namespace support {

inline oracle::Field oracle_field(const pg4::GaloisField& f) { return {f.degree(), f.modulus()}; }

inline oracle::Vec to_vec(const pg4::Coords& c) {
  oracle::Vec v{};
  for (std::size_t i = 0; i < 5; ++i) v[i] = c[i].bits;
  return v;
}

inline pg4::Coords to_coords(const oracle::Vec& v) {
  pg4::Coords c{};
  for (std::size_t i = 0; i < 5; ++i) c[i] = pg4::FieldElement{v[i]};
  return c;
}

// One geometry per q for the whole test binary; tables are lazy anyway.
inline const pg4::Geometry& geometry(std::uint32_t q) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<pg4::Geometry>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[q];
  if (!slot) slot = std::make_unique<pg4::Geometry>(pg4::GaloisField::of_order(q));
  return *slot;
}

inline pg4::SolidSet elliptic_family(const pg4::Geometry& g) {
  return pg4::SolidSet::of(g, pg4::solids_by_section(g, pg4::standard_parabolic(g.field())).elliptic);
}

inline pg4::SolidSet hyperoval_family(const pg4::Geometry& g) {
  return pg4::SolidSet::of(g, pg4::solids_disjoint_from(g, pg4::regular_hyperoval(g.field())));
}

// Raw 64-bit engine output is fixed by the standard, unlike the
// distributions, so draws are reproduced by hand from it.
using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return rng() % n; }

inline pg4::FieldElement element(Rng& rng, const pg4::GaloisField& f) {
  return {static_cast<std::uint32_t>(below(rng, f.order()))};
}

inline pg4::FieldElement nonzero(Rng& rng, const pg4::GaloisField& f) {
  return {static_cast<std::uint32_t>(1 + below(rng, f.order() - 1))};
}

inline pg4::Coords vector(Rng& rng, const pg4::GaloisField& f) {
  pg4::Coords v{};
  for (auto& x : v) x = element(rng, f);
  return v;
}

inline pg4::Coords nonzero_vector(Rng& rng, const pg4::GaloisField& f) {
  for (;;) {
    const auto v = vector(rng, f);
    for (auto x : v) {
      if (x.bits) return v;
    }
  }
}

// k distinct indices from [0, n) by a partial Fisher-Yates shuffle.
inline std::vector<std::uint32_t> sample(Rng& rng, std::uint32_t n, std::uint32_t k) {
  std::vector<std::uint32_t> idx(n);
  for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::uint32_t>(below(rng, n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

// Random invertible 5x5 matrix.
inline pg4::Matrix invertible(Rng& rng, const pg4::GaloisField& f) {
  for (;;) {
    pg4::Matrix m(5, 5);
    for (std::size_t r = 0; r < 5; ++r) {
      for (std::size_t c = 0; c < 5; ++c) m(r, c) = element(rng, f);
    }
    pg4::Matrix copy = m;
    if (pg4::row_reduce(f, copy) == 5) return m;
  }
}

inline pg4::Coords apply(const pg4::GaloisField& f, const pg4::Matrix& m, const pg4::Coords& x) {
  pg4::Coords y{};
  for (std::size_t r = 0; r < 5; ++r) {
    for (std::size_t c = 0; c < 5; ++c) y[r] = pg4::GaloisField::add(y[r], f.mul(m(r, c), x[c]));
  }
  return y;
}

}  // namespace support
