#pragma once

#include "intmat.hpp"

namespace k3walls {

// An integral lattice given by its Gram matrix in a fixed basis.
struct Lattice {
  Mat gram;
  size_t rank() const { return gram.size(); }
};

inline Lattice make_lattice(Mat gram) {
  size_t n = gram.size();
  for (size_t i = 0; i < n; ++i) {
    if (gram[i].size() != n) throw InputError("gram matrix not square");
    for (size_t j = 0; j < n; ++j)
      if (gram[i][j] != gram[j][i]) throw InputError("gram matrix not symmetric");
  }
  return Lattice{std::move(gram)};
}

inline Int pairing(const Lattice& L, const Vec& a, const Vec& b) {
  if (a.size() != L.rank() || b.size() != L.rank())
    throw InputError("vector length does not match lattice rank");
  Int s = 0;
  for (size_t i = 0; i < L.rank(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < L.rank(); ++j) s += a[i] * L.gram[i][j] * b[j];
  }
  return s;
}

inline Int norm2(const Lattice& L, const Vec& a) { return pairing(L, a, a); }

// Extend a Neron-Severi Gram matrix N to the full algebraic Mukai pairing,
// coordinates ordered (r, c_1..c_rho, s):
//   ((r,c,s),(r',c',s')) = c.N.c' - r s' - s r'.
inline Lattice mukai_from_ns(const Mat& N) {
  size_t rho = N.size();
  Mat G(rho + 2, Vec(rho + 2, 0));
  for (size_t i = 0; i < rho; ++i) {
    if (N[i].size() != rho) throw InputError("NS gram matrix not square");
    for (size_t j = 0; j < rho; ++j) G[i + 1][j + 1] = N[i][j];
  }
  G[0][rho + 1] = -1;
  G[rho + 1][0] = -1;
  return make_lattice(std::move(G));
}

inline std::array<int, 3> signature(const Lattice& L) {
  return signature_of_gram(L.gram);
}

// Saturated sublattice of L, with its basis (rows, ambient coordinates,
// Hermite-normalized) and the restricted Gram matrix in that basis.
struct Sublattice {
  Mat basis;
  Mat gram;
  size_t rank() const { return basis.size(); }
};

inline Mat gram_in_basis(const Lattice& L, const Mat& rows) {
  Mat G(rows.size(), Vec(rows.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows.size(); ++j) G[i][j] = pairing(L, rows[i], rows[j]);
  return G;
}

inline Sublattice saturate(const Lattice& L, const Mat& gens) {
  for (const auto& g : gens)
    if (g.size() != L.rank()) throw InputError("generator length mismatch");
  Mat basis = saturate_rows(gens, L.rank());
  return Sublattice{basis, gram_in_basis(L, basis)};
}

// {x : (x, v) = 0}, saturated.
inline Sublattice vperp(const Lattice& L, const Vec& v) {
  Vec gv = mat_vec(L.gram, v);
  Mat basis = row_hnf(kernel_basis(Mat{gv}));
  return Sublattice{basis, gram_in_basis(L, basis)};
}

// Ambient vector from coordinates in a sublattice basis.
inline Vec from_sub(const Sublattice& S, const Vec& coords) {
  Vec out(S.basis.empty() ? 0 : S.basis[0].size(), 0);
  for (size_t i = 0; i < S.basis.size(); ++i)
    for (size_t j = 0; j < out.size(); ++j) out[j] += coords[i] * S.basis[i][j];
  return out;
}

// Coordinates of an ambient vector in the sublattice basis; false if outside.
// The basis is saturated, so membership in the rational span gives integer
// coordinates automatically.
inline bool to_sub(const Sublattice& S, const Vec& ambient, Vec& coords) {
  RatVec c;
  if (!coords_in_basis(S.basis, ambient, c)) return false;
  return rat_vec_integral(c, &coords);
}

inline Lattice sub_as_lattice(const Sublattice& S) { return Lattice{S.gram}; }

// Reflection in a (-2)-class: rho_s(u) = u + (u,s) s.
inline Vec reflect(const Lattice& L, const Vec& s, const Vec& u) {
  if (norm2(L, s) != -2) throw InputError("reflection class must have square -2");
  return addmul(u, pairing(L, u, s), s);
}

inline bool is_primitive(const Vec& v) { return content(v) == 1; }

// Orthogonal projection of a onto v-perp, as a rational vector:
// a - ((v,a)/(v,v)) v.
inline RatVec perp_project(const Lattice& L, const Vec& v, const Vec& a) {
  Int vv = norm2(L, v);
  if (vv == 0) throw InputError("projection needs (v,v) != 0");
  Rat f = Rat(pairing(L, v, a)) / Rat(vv);
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(a[i]) - f * Rat(v[i]);
  return out;
}

inline Rat rat_norm2(const Lattice& L, const RatVec& a) {
  Rat s = 0;
  for (size_t i = 0; i < L.rank(); ++i)
    for (size_t j = 0; j < L.rank(); ++j) s += a[i] * Rat(L.gram[i][j]) * a[j];
  return s;
}

inline Rat rat_pairing(const Lattice& L, const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < L.rank(); ++i)
    for (size_t j = 0; j < L.rank(); ++j) s += a[i] * Rat(L.gram[i][j]) * b[j];
  return s;
}

}  // namespace k3walls
