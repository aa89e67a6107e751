#pragma once

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "intmat.hpp"
#include "wall.hpp"

namespace k3walls {

inline bool verbose_enabled() {
  const char* e = std::getenv("K3WALLS_VERBOSE");
  return e && *e && std::string(e) != "0";
}

inline RatVec project_to_vperp(const Lattice& L, const Vec& v, const Vec& a) {
  return perp_project(L, v, a);
}

inline RatVec rat_of(const Vec& a) {
  RatVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Rat(a[i]);
  return r;
}

struct SearchRegion {
  std::vector<RatVec> rays;  // ambient coordinates, all inside the positive cone of v-perp
};

inline void validate_region(const Lattice& L, const Vec& v, const SearchRegion& R) {
  if (R.rays.empty()) throw InputError("region needs at least one ray");
  for (const auto& r : R.rays) {
    if (r.size() != L.rank()) throw InputError("region ray length does not match lattice rank");
    if (rat_pairing(L, r, rat_of(v)) != 0) throw InputError("region ray not orthogonal to v");
    if (rat_norm2(L, r) <= 0)
      throw InputError("region ray not strictly inside the positive cone");
  }
  for (size_t i = 0; i < R.rays.size(); ++i)
    for (size_t j = i + 1; j < R.rays.size(); ++j)
      if (rat_pairing(L, R.rays[i], R.rays[j]) <= 0)
        throw InputError("region rays do not span a cone inside one positive component");
}

// Diagonal of the inverse of a positive definite rational matrix.
inline RatVec inverse_diagonal(std::vector<RatVec> T) {
  size_t n = T.size();
  std::vector<RatVec> inv(n, RatVec(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && T[piv][col] == 0) ++piv;
    if (piv == n) throw InputError("internal: singular majorant form");
    std::swap(T[piv], T[col]);
    std::swap(inv[piv], inv[col]);
    Rat d = T[col][col];
    for (size_t j = 0; j < n; ++j) {
      T[col][j] /= d;
      inv[col][j] /= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || T[r][col] == 0) continue;
      Rat f = T[r][col];
      for (size_t j = 0; j < n; ++j) {
        T[r][j] -= f * T[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  RatVec diag(n);
  for (size_t i = 0; i < n; ++i) diag[i] = inv[i][i];
  return diag;
}

struct WallInfo {
  Vec normal;  // primitive class of v-perp cutting the wall, pairing > 0 with ample
  Vec witness;
  Int witness_square;
  Int witness_pairing;
  WallKind kind;
  TotallySemistable tss;
};

struct WallList {
  std::vector<WallInfo> walls;
  bool complete = true;
};

namespace detail {

inline Vec unit_vec(size_t n, size_t i) {
  Vec e(n, Int(0));
  e[i] = 1;
  return e;
}

// Exhaustive box for wall witnesses a: with A the sum of the region rays and
// P the projection to v-perp, the positive definite form
//   T(a) = 2 (Pa, A)^2 / (A,A) - (Pa, Pa) + (v,a)^2
// is bounded on every class whose wall meets the region:
//   T(a) <= (2 + v^2/4) ((A,A) + cK) / ((A,A) - cK) + max(v^4/4, 4),
// cK = max over rays of -q(ray component orthogonal to A).  Per-coordinate
// bounds come from the diagonal of T^{-1}.
template <typename Filter>
inline std::map<Vec, std::vector<Vec>> enumerate_wall_classes(const Lattice& L, const Vec& v,
                                                              const SearchRegion& region,
                                                              Filter&& keep) {
  validate_region(L, v, region);
  size_t n = L.rank();
  Int vv = norm2(L, v);
  if (vv <= 0) throw InputError("v^2 must be positive");
  if (!is_primitive(v)) throw InputError("v must be primitive");

  RatVec A(n, Rat(0));
  for (const auto& r : region.rays)
    for (size_t i = 0; i < n; ++i) A[i] += r[i];
  Rat qA = rat_norm2(L, A);
  Rat cK(0);
  for (const auto& r : region.rays) {
    Rat alpha = rat_pairing(L, r, A) / qA;
    RatVec e(n);
    for (size_t i = 0; i < n; ++i) e[i] = r[i] / alpha - A[i];
    Rat c = -rat_norm2(L, e);
    if (c > cK) cK = c;
  }
  if (cK >= qA) throw InputError("internal: region defect exceeds its center");

  Rat B = Rat(2) + Rat(vv) / 4;
  Rat m2cap = Rat(vv) * Rat(vv) / 4;
  if (m2cap < 4) m2cap = 4;
  Rat Rfull = B * (qA + cK) / (qA - cK) + m2cap;

  // projections of the basis vectors
  std::vector<RatVec> Pe(n);
  RatVec vr = rat_of(v);
  for (size_t i = 0; i < n; ++i) {
    RatVec e(n, Rat(0));
    e[i] = 1;
    Rat mi = rat_pairing(L, e, vr);
    Pe[i] = e;
    for (size_t j = 0; j < n; ++j) Pe[i][j] -= mi / Rat(vv) * vr[j];
  }
  std::vector<RatVec> T(n, RatVec(n, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j < n; ++j) {
      Rat t = Rat(2) * rat_pairing(L, Pe[i], A) * rat_pairing(L, Pe[j], A) / qA -
              rat_pairing(L, Pe[i], Pe[j]) +
              Rat(pairing(L, unit_vec(n, i), v)) * Rat(pairing(L, unit_vec(n, j), v));
      T[i][j] = T[j][i] = t;
    }
  RatVec diag = inverse_diagonal(T);
  std::vector<Int> box(n);
  for (size_t i = 0; i < n; ++i) box[i] = rat_floor_sqrt(Rfull * diag[i]);
  if (verbose_enabled()) {
    std::cerr << "[k3walls] wall enumeration box:";
    for (size_t i = 0; i < n; ++i) std::cerr << " " << box[i];
    std::cerr << " (T-bound " << rat_to_string(Rfull) << ")\n";
  }

  std::map<Vec, std::vector<Vec>> groups;
  Vec a(n, Int(0));
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == n) {
      if (is_zero_vec(a)) return;
      Int m = pairing(L, v, a);
      Int q = norm2(L, a);
      if (!keep(q, m)) return;
      Vec nraw = sub(scale(vv, a), scale(m, v));
      if (is_zero_vec(nraw)) return;
      // the wall must meet the (closed) region
      bool has_le = false, has_ge = false;
      for (const auto& r : region.rays) {
        Rat s = rat_pairing(L, rat_of(nraw), r);
        if (s <= 0) has_le = true;
        if (s >= 0) has_ge = true;
      }
      if (!has_le || !has_ge) return;
      // hyperbolicity of <v, a>: v^2 a^2 - (v,a)^2 < 0
      if (vv * q - m * m >= 0) return;
      Vec key = make_primitive(nraw);
      Vec keyn = key;
      for (auto& x : keyn) x = -x;
      if (lex_less(keyn, key)) key = keyn;  // sign-free grouping key
      groups[key].push_back(a);
      return;
    }
    for (Int x = -box[idx]; x <= box[idx]; ++x) {
      a[idx] = x;
      rec(idx + 1);
    }
    a[idx] = 0;
  };
  rec(0);
  return groups;
}

inline Vec pick_witness(const Lattice& L, const Vec& v, std::vector<Vec> cands) {
  for (auto& c : cands)
    if (pairing(L, v, c) < 0 || (pairing(L, v, c) == 0 && !lex_less(Vec(c.size(), Int(0)), c)))
      for (auto& x : c) x = -x;
  Vec best = cands[0];
  for (const auto& c : cands) {
    if (max_abs(c) < max_abs(best) || (max_abs(c) == max_abs(best) && lex_less(c, best)))
      best = c;
  }
  return best;
}

inline Vec orient_normal(const Lattice& L, Vec normal, const RatVec& ample) {
  Rat s = rat_pairing(L, rat_of(normal), ample);
  if (s < 0)
    for (auto& x : normal) x = -x;
  if (s == 0) {
    Vec neg = normal;
    for (auto& x : neg) x = -x;
    if (lex_less(neg, normal)) normal = neg;
  }
  return normal;
}

}  // namespace detail

// Walls of the nef chamber decomposition meeting the region: classes a with
// a^2 >= -2 and 0 <= (v,a) <= v^2/2 spanning a hyperbolic pair with v.
inline WallList nef_walls(const Lattice& L, const Vec& v, const SearchRegion& region,
                          const RatVec& ample) {
  Int vv = norm2(L, v);
  auto groups = detail::enumerate_wall_classes(
      L, v, region, [&](const Int& q, const Int& m) { return q >= -2 && m >= 0 && 2 * m <= vv; });
  WallList out;
  for (auto& [key, cands] : groups) {
    WallInfo w;
    w.witness = detail::pick_witness(L, v, cands);
    w.normal = detail::orient_normal(L, key, ample);
    w.witness_square = norm2(L, w.witness);
    w.witness_pairing = pairing(L, v, w.witness);
    auto W = make_wall_lattice(L, v, w.witness);
    if (!W) continue;
    auto cls = classify(*W);
    w.kind = cls.kind;
    w.tss = cls.tss;
    out.walls.push_back(std::move(w));
  }
  return out;
}

// Walls of the movable chamber decomposition meeting the region: spherical
// classes in v-perp and isotropic classes pairing 1 or 2 with v.
inline WallList movable_walls(const Lattice& L, const Vec& v, const SearchRegion& region) {
  auto groups = detail::enumerate_wall_classes(L, v, region, [&](const Int& q, const Int& m) {
    return (q == -2 && m == 0) || (q == 0 && (m == 1 || m == 2));
  });
  RatVec A(L.rank(), Rat(0));
  for (const auto& r : region.rays)
    for (size_t i = 0; i < L.rank(); ++i) A[i] += r[i];
  WallList out;
  for (auto& [key, cands] : groups) {
    WallInfo w;
    w.witness = detail::pick_witness(L, v, cands);
    w.normal = detail::orient_normal(L, key, A);
    w.witness_square = norm2(L, w.witness);
    w.witness_pairing = pairing(L, v, w.witness);
    auto W = make_wall_lattice(L, v, w.witness);
    if (!W) continue;
    auto cls = classify(*W);
    w.kind = cls.kind;
    w.tss = cls.tss;
    out.walls.push_back(std::move(w));
  }
  return out;
}

// Extremal curve classes dual to the nef walls (projections theta-dual of the
// wall witnesses), plus the positive-curve cone.
struct MoriGenerators {
  std::vector<Vec> generators;
  bool positive_curve_cone = true;
  bool complete = true;
};

inline MoriGenerators mori_generators(const Lattice& L, const Vec& v, const SearchRegion& region,
                                      const RatVec& ample) {
  WallList walls = nef_walls(L, v, region, ample);
  MoriGenerators out;
  out.complete = walls.complete;
  for (const auto& w : walls.walls) out.generators.push_back(w.normal);
  return out;
}

// ---- effective cone generators ----------------------------------------------

struct EffectiveGenerators {
  std::vector<Vec> generators;  // exceptional divisor classes, (D, ample) > 0
  bool positive_cone = true;
  bool irrational_boundary = false;
  bool complete = true;
};

namespace detail {

// Extremal negative candidates per side of the ample direction in a rank-2
// plane: among candidates normalized to pair positively with alpha, the
// boundary of the spanned cone on each side is the one farthest from alpha.
struct SideExtremes {
  std::optional<Pair2> a, b;
  void offer(const BinaryForm& Q, const Pair2& alpha, Pair2 x) {
    Int f = pf(Q, alpha, x);
    if (f < 0) {
      x = p2neg(x);
      f = -f;
    }
    if (f == 0) return;  // orthogonal to ample: ambiguous side, not a generator
    int side = sgn(det2(alpha, x));
    if (side == 0) return;
    auto& slot = side > 0 ? b : a;
    if (!slot) {
      slot = x;
      return;
    }
    // wider angle from alpha on side b means counterclockwise of the current
    Int d = det2(*slot, x);
    if ((side > 0 && d > 0) || (side < 0 && d < 0)) slot = x;
  }
};

}  // namespace detail

// Generators of the effective cone: spherical classes of v-perp and the
// reductions v^2 w - (v,w) v of isotropic w with (v,w) in {1,2}.  For
// Picard-rank-one ambient input (rank-2 v-perp) the extremal generators are
// computed exactly; in higher rank a coordinate box of the given bound is
// scanned and the listing is marked incomplete.
inline EffectiveGenerators effective_generators(const Lattice& L, const Vec& v,
                                                const RatVec& ample, const Int& box_bound = 25) {
  EffectiveGenerators out;
  Int vv = norm2(L, v);
  if (vv <= 0) throw InputError("v^2 must be positive");
  if (!is_primitive(v)) throw InputError("v must be primitive");
  if (rat_pairing(L, ample, rat_of(v)) != 0) throw InputError("ample class must lie in v-perp");
  if (rat_norm2(L, ample) <= 0) throw InputError("ample class must have positive square");
  Sublattice W = vperp(L, v);

  if (W.rank() == 2) {
    BinaryForm Q = form_of_gram(W.gram);
    // ample direction in the v-perp basis, as a primitive integer pair
    Pair2 alpha;
    {
      Int den = 1;
      for (const auto& x : ample) den = den / gcd_int(den, rat_den(x)) * rat_den(x);
      Vec ample_int(ample.size());
      for (size_t i = 0; i < ample.size(); ++i)
        ample_int[i] = rat_num(ample[i]) * (den / rat_den(ample[i]));
      RatVec t;
      if (!coords_in_basis(W.basis, ample_int, t))
        throw InputError("ample class must lie in v-perp");
      Int d2 = rat_den(t[0]) / gcd_int(rat_den(t[0]), rat_den(t[1])) * rat_den(t[1]);
      Vec ai{rat_num(t[0]) * (d2 / rat_den(t[0])), rat_num(t[1]) * (d2 / rat_den(t[1]))};
      ai = make_primitive(ai);
      alpha = {ai[0], ai[1]};
    }
    detail::SideExtremes ext;

    // spherical classes of v-perp
    SphericalData sph = spherical_data(Q);
    if (sph.any && sph.infinite) {
      for (const auto& rep : sph.reps) {
        OrbitCrossing cr = orbit_crossing(Q, alpha, rep, sph.M, sph.Minv);
        ext.offer(Q, alpha, cr.first_pos);
        ext.offer(Q, alpha, p2neg(cr.last_neg));
      }
    } else if (sph.any) {
      for (const auto& s : sph.reps) ext.offer(Q, alpha, s);
    }

    // isotropic reductions: D = v^2 w - k v lands in v-perp with q(D) = -k^2 v^2
    for (int k = 1; k <= 2; ++k) {
      RepresentResult rr = represent(Q, -Int(k) * Int(k) * vv);
      auto try_D = [&](const Pair2& Dc) {
        Vec D = from_sub(W, Vec{Dc.first, Dc.second});
        // w = (D + k v) / v^2 must be an integral isotropic class
        Vec wnum = add(D, scale(Int(k), v));
        for (const auto& x : wnum)
          if (x % vv != 0) return;
        ext.offer(Q, alpha, Dc);
      };
      if (rr.kind == RepKind::Finite) {
        for (const auto& s : rr.sols) try_D({s.first, s.second});
      } else if (rr.kind == RepKind::Classes) {
        Mat M = form_automorph(Q), Minv = inv2(M);
        // Integrality of w only depends on D modulo v^2 and the automorph acts
        // on that finite quotient, so every residue appearing in the orbit
        // shows up within one period; walking that far from the sign crossing
        // reaches the extremal integral element on each side.
        long period_cap;
        {
          Int m4 = vv * vv * vv * vv;
          period_cap = m4 > 4096 ? 4096 : static_cast<long>(m4) + 4;
        }
        for (const auto& s : rr.sols) {
          OrbitCrossing cr = orbit_crossing(Q, alpha, {s.first, s.second}, M, Minv);
          for (long dir = 0; dir < 2; ++dir) {
            Pair2 c = cr.first_pos;
            for (long j = 0; j <= period_cap; ++j) {
              try_D(c);
              try_D(p2neg(c));
              c = apply2(dir == 0 ? M : Minv, c);
            }
          }
        }
      }
    }

    if (ext.a) out.generators.push_back(from_sub(W, Vec{ext.a->first, ext.a->second}));
    if (ext.b) out.generators.push_back(from_sub(W, Vec{ext.b->first, ext.b->second}));
    if (out.generators.empty())
      out.irrational_boundary = isotropic_primitive(Q).empty();
    return out;
  }

  // higher rank: box scan, not exhaustive
  out.complete = false;
  size_t k = W.rank();
  Vec c(k, Int(0));
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == k) {
      if (is_zero_vec(c)) return;
      Vec s = from_sub(W, c);
      if (norm2(L, s) != -2) return;
      if (rat_pairing(L, rat_of(s), ample) < 0)
        for (auto& x : s) x = -x;
      out.generators.push_back(s);
      return;
    }
    for (Int x = -box_bound; x <= box_bound; ++x) {
      c[idx] = x;
      rec(idx + 1);
    }
    c[idx] = 0;
  };
  rec(0);
  // isotropic reductions from an ambient box
  Vec w(L.rank(), Int(0));
  std::function<void(size_t)> recw = [&](size_t idx) {
    if (idx == L.rank()) {
      if (is_zero_vec(w) || norm2(L, w) != 0) return;
      Int m = pairing(L, v, w);
      if (m != 1 && m != 2) return;
      Vec D = sub(scale(vv, w), scale(m, v));
      if (rat_pairing(L, rat_of(D), ample) < 0)
        for (auto& x : D) x = -x;
      out.generators.push_back(make_primitive(D));
      return;
    }
    for (Int x = -box_bound; x <= box_bound; ++x) {
      w[idx] = x;
      recw(idx + 1);
    }
    w[idx] = 0;
  };
  recw(0);
  std::sort(out.generators.begin(), out.generators.end(), lex_less);
  out.generators.erase(std::unique(out.generators.begin(), out.generators.end()),
                       out.generators.end());
  return out;
}

// ---- numerical wall bound and witness ---------------------------------------

// A class a0 of v-perp spans a wall of the nef decomposition iff some a with
// a^2 >= -2 and 0 <= (v,a) <= v^2/2 projects to it; existence requires
// q(a0) in [-2 - v^2/4, 0).
struct HtBound {
  Rat q_value;
  bool passes;
};

inline HtBound ht_bound_check(const Lattice& L, const Vec& v, const RatVec& a0) {
  Int vv = norm2(L, v);
  if (vv <= 0) throw InputError("v^2 must be positive");
  if (rat_pairing(L, a0, rat_of(v)) != 0) throw InputError("a0 must lie in v-perp");
  Rat q = rat_norm2(L, a0);
  bool pass = q < 0 && q >= Rat(-2) - Rat(vv) / 4;
  return {q, pass};
}

// Integral witness a = a0 + (k/v^2) v with a^2 >= -2, searched over
// |k| <= v^2/2 (positive k first).
inline std::optional<std::pair<Vec, Int>> ht_witness(const Lattice& L, const Vec& v,
                                                     const RatVec& a0) {
  Int vv = norm2(L, v);
  HtBound hb = ht_bound_check(L, v, a0);
  if (!hb.passes) return std::nullopt;
  RatVec vr = rat_of(v);
  for (Int ak = 0; 2 * ak <= vv; ++ak) {
    for (int s = 0; s < 2; ++s) {
      Int k = s == 0 ? ak : -ak;
      if (s == 1 && ak == 0) continue;
      if (Rat(k) * Rat(k) < Rat(vv) * (Rat(-2) - hb.q_value)) continue;
      RatVec a(a0.size());
      bool integral = true;
      Vec ai(a0.size());
      for (size_t i = 0; i < a0.size(); ++i) {
        a[i] = a0[i] + Rat(k) / Rat(vv) * vr[i];
        if (denominator(a[i]) != 1) {
          integral = false;
          break;
        }
        ai[i] = numerator(a[i]);
      }
      if (!integral) continue;
      return std::make_pair(ai, k);
    }
  }
  return std::nullopt;
}

// ---- Weyl reflections into the movable chamber -------------------------------

// Reflect D across exceptional divisors until it pairs non-negatively with
// all of them; word replays the result back to D when applied left to right.
inline std::pair<RatVec, std::vector<Vec>> weyl_map_to_movable(const Lattice& L, const Vec& v,
                                                               RatVec D,
                                                               const std::vector<Vec>& exceptional) {
  for (const auto& E : exceptional) {
    if (norm2(L, E) >= 0) throw InputError("exceptional class must have negative square");
    if (pairing(L, v, E) != 0) throw InputError("exceptional class must lie in v-perp");
  }
  std::vector<Vec> word;
  for (long guard = 0;; ++guard) {
    if (guard > 1000000) throw InputError("weyl descent did not terminate");
    bool moved = false;
    for (const auto& E : exceptional) {
      Rat p = rat_pairing(L, D, rat_of(E));
      if (p < 0) {
        Rat f = Rat(2) * p / Rat(norm2(L, E));
        for (size_t i = 0; i < D.size(); ++i) D[i] -= f * Rat(E[i]);
        word.push_back(E);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  std::reverse(word.begin(), word.end());
  return {D, word};
}

// ---- Lagrangian fibration classes -------------------------------------------

struct FibrationClasses {
  std::vector<Vec> classes;  // primitive isotropic in v-perp
  bool complete;
};

inline FibrationClasses fibration_classes(const Lattice& L, const Vec& v,
                                          const Int& box_bound = 25) {
  if (norm2(L, v) <= 0) throw InputError("v^2 must be positive");
  if (!is_primitive(v)) throw InputError("v must be primitive");
  Sublattice W = vperp(L, v);
  FibrationClasses out{{}, true};
  if (W.rank() == 2) {
    BinaryForm Q = form_of_gram(W.gram);
    for (const auto& r : isotropic_primitive(Q)) {
      Vec w = from_sub(W, Vec{r.first, r.second});
      w = make_primitive(w);
      for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        if (w[i] < 0)
          for (auto& x : w) x = -x;
        break;
      }
      out.classes.push_back(w);
    }
    std::sort(out.classes.begin(), out.classes.end(), lex_less);
    out.classes.erase(std::unique(out.classes.begin(), out.classes.end()), out.classes.end());
    return out;
  }
  out.complete = false;
  size_t k = W.rank();
  Vec c(k, Int(0));
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == k) {
      if (is_zero_vec(c)) return;
      Vec w = from_sub(W, c);
      if (norm2(L, w) != 0 || !is_primitive(w)) return;
      for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0) continue;
        if (w[i] < 0)
          for (auto& x : w) x = -x;
        break;
      }
      out.classes.push_back(w);
      return;
    }
    for (Int x = -box_bound; x <= box_bound; ++x) {
      c[idx] = x;
      rec(idx + 1);
    }
    c[idx] = 0;
  };
  rec(0);
  std::sort(out.classes.begin(), out.classes.end(), lex_less);
  out.classes.erase(std::unique(out.classes.begin(), out.classes.end()), out.classes.end());
  return out;
}

// ---- central charge to divisor ----------------------------------------------

// I(Omega) = Im( Omega / -(Omega, v) ), a rational divisor class in v-perp.
inline RatVec central_charge_to_divisor(const Lattice& L, const Vec& v, const RatVec& re,
                                        const RatVec& im) {
  Rat zr = rat_pairing(L, re, rat_of(v));
  Rat zi = rat_pairing(L, im, rat_of(v));
  if (zr == 0 && zi == 0) throw InputError("central charge vanishes on v");
  Rat n2 = zr * zr + zi * zi;
  RatVec out(re.size());
  for (size_t i = 0; i < re.size(); ++i) out[i] = (re[i] * zi - im[i] * zr) / n2;
  return out;
}

}  // namespace k3walls
