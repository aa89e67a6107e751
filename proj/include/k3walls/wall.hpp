#pragma once

#include <map>
#include <optional>
#include <string>

#include "forms.hpp"
#include "lattice.hpp"

namespace k3walls {

enum class WallKind { BrillNoether, HilbertChow, LiGiesekerUhlenbeck, Flopping, NoContraction };
enum class TotallySemistable { No, ForSomeOrientation, ForAllOrientations };
enum class Orientation { PlusSide, MinusSide };

inline const char* wall_kind_name(WallKind k) {
  switch (k) {
    case WallKind::BrillNoether: return "Brill-Noether";
    case WallKind::HilbertChow: return "Hilbert-Chow";
    case WallKind::LiGiesekerUhlenbeck: return "Li-Gieseker-Uhlenbeck";
    case WallKind::Flopping: return "Flopping";
    default: return "NoContraction";
  }
}

inline const char* tss_name(TotallySemistable t) {
  switch (t) {
    case TotallySemistable::No: return "No";
    case TotallySemistable::ForSomeOrientation: return "ForSomeOrientation";
    default: return "ForAllOrientations";
  }
}

// Table label: divisorial kinds and flops are named directly; a wall with no
// contraction is a fake wall when some orientation makes it totally
// semistable, and otherwise is not a wall at all.
inline const char* wall_label(WallKind k, TotallySemistable t) {
  switch (k) {
    case WallKind::BrillNoether:
    case WallKind::HilbertChow:
    case WallKind::LiGiesekerUhlenbeck: return "divisorial contraction";
    case WallKind::Flopping: return "flop";
    default: return t == TotallySemistable::No ? "not a wall" : "fake wall";
  }
}

using Pair2 = std::pair<Int, Int>;

inline Pair2 p2(const Int& x, const Int& y) { return {x, y}; }
inline Pair2 p2add(const Pair2& a, const Pair2& b) { return {a.first + b.first, a.second + b.second}; }
inline Pair2 p2sub(const Pair2& a, const Pair2& b) { return {a.first - b.first, a.second - b.second}; }
inline Pair2 p2neg(const Pair2& a) { return {-a.first, -a.second}; }
inline bool p2zero(const Pair2& a) { return a.first == 0 && a.second == 0; }
inline Int det2(const Pair2& a, const Pair2& b) { return a.first * b.second - a.second * b.first; }

inline Int pf(const BinaryForm& Q, const Pair2& u, const Pair2& w) {
  return Q.a * u.first * w.first + Q.b * (u.first * w.second + u.second * w.first) +
         Q.c * u.second * w.second;
}

inline Int pf2(const BinaryForm& Q, const Pair2& u) { return pf(Q, u, u); }

// rho_s(u) = u + (u,s) s for s with q(s) = -2.
inline Pair2 reflect2(const BinaryForm& Q, const Pair2& s, const Pair2& u) {
  Int c = pf(Q, u, s);
  return {u.first + c * s.first, u.second + c * s.second};
}

inline Pair2 p2primitive(Pair2 a) {
  Int g = gcd_int(a.first, a.second);
  if (g > 1) {
    a.first /= g;
    a.second /= g;
  }
  return a;
}

// A saturated rank-2 hyperbolic sublattice H containing v, with v's
// coordinates in the chosen basis.  When {v,a} is itself saturated that pair
// is kept as the basis, so v reads as (1,0).
struct WallLattice {
  Lattice ambient;
  Sublattice sub;
  BinaryForm form;
  Vec v_ambient;
  Pair2 v;
};

inline Vec wall_to_ambient(const WallLattice& W, const Pair2& u) {
  return from_sub(W.sub, Vec{u.first, u.second});
}

// nullopt = span{v,a} is not hyperbolic (det >= 0); such classes define no wall.
inline std::optional<WallLattice> make_wall_lattice(const Lattice& L, const Vec& v,
                                                    const Vec& a) {
  if (!is_primitive(v)) throw InputError("v must be primitive");
  if (norm2(L, v) <= 0) throw InputError("v^2 must be positive");
  if (a.size() != L.rank() || v.size() != L.rank())
    throw InputError("vector length does not match lattice rank");
  bool indep = false;
  for (size_t i = 0; i < v.size() && !indep; ++i)
    for (size_t j = i + 1; j < v.size() && !indep; ++j)
      if (v[i] * a[j] - v[j] * a[i] != 0) indep = true;
  if (!indep) throw InputError("a must not be proportional to v");

  // gcd of the 2x2 minors = 1 means {v, a} is already a saturated basis
  Int minor_gcd = 0;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      minor_gcd = gcd_int(minor_gcd, v[i] * a[j] - v[j] * a[i]);
  Sublattice S;
  if (minor_gcd == 1) {
    Mat basis{v, a};
    S = Sublattice{basis, gram_in_basis(L, basis)};
  } else {
    S = saturate(L, Mat{v, a});
  }
  BinaryForm Q = form_of_gram(S.gram);
  if (Q.a * Q.c - Q.b * Q.b >= 0) return std::nullopt;
  Vec vc;
  if (!to_sub(S, v, vc)) throw InputError("internal: v outside its own span");
  return WallLattice{L, S, Q, v, {vc[0], vc[1]}};
}

// ---- spherical classes of a rank-2 hyperbolic form -------------------------

struct SphericalData {
  bool any = false;
  bool infinite = false;           // nonsquare discriminant: orbits under M
  std::vector<Pair2> reps;         // orbit representatives, or all solutions
  Mat M, Minv;                     // automorph when infinite
};

inline SphericalData spherical_data(const BinaryForm& Q) {
  SphericalData out;
  RepresentResult r = represent(Q, Int(-2));
  if (r.kind == RepKind::Empty) return out;
  out.any = true;
  if (r.kind == RepKind::Classes) {
    out.infinite = true;
    out.M = form_automorph(Q);
    out.Minv = inv2(out.M);
  }
  for (const auto& s : r.sols) out.reps.push_back({s.first, s.second});
  return out;
}

// Along one automorph orbit the pairing (v, M^k s) is strictly monotone in k
// (v has positive square, sphericals negative), so each orbit crosses the
// hyperplane (v,.) = 0 exactly once.
struct OrbitCrossing {
  Pair2 last_neg, first_pos;       // adjacent elements around the crossing
  Int f_neg = 0, f_pos = 0;
  std::vector<Pair2> zeros;        // orbit elements orthogonal to v (0 or 1)
  Mat step_up;                     // matrix advancing the orbit with increasing (v,.)
};

inline OrbitCrossing orbit_crossing(const BinaryForm& Q, const Pair2& v, Pair2 cur,
                                    const Mat& M, const Mat& Minv) {
  auto f = [&](const Pair2& s) { return pf(Q, v, s); };
  Int f0 = f(cur);
  Pair2 up = apply2(M, cur);
  Mat stepU = M, stepD = Minv;
  if (f(up) < f0) std::swap(stepU, stepD);
  OrbitCrossing out;
  out.step_up = stepU;
  // descend |f| to the crossing
  for (;;) {
    Int fc = f(cur);
    if (fc == 0) {
      out.zeros.push_back(cur);
      out.last_neg = apply2(stepD, cur);
      out.first_pos = apply2(stepU, cur);
      out.f_neg = f(out.last_neg);
      out.f_pos = f(out.first_pos);
      return out;
    }
    Pair2 nxt = fc > 0 ? apply2(stepD, cur) : apply2(stepU, cur);
    Int fn = f(nxt);
    if (fn == 0 || (fn > 0) != (fc > 0)) {
      if (fn == 0) {
        cur = nxt;
        continue;
      }
      out.last_neg = fc < 0 ? cur : nxt;
      out.first_pos = fc < 0 ? nxt : cur;
      out.f_neg = f(out.last_neg);
      out.f_pos = f(out.first_pos);
      return out;
    }
    cur = nxt;
  }
}

// All elements s of the +-orbit of `rep` with 0 < (v,s) <= bound.
inline void collect_positive_window(const BinaryForm& Q, const Pair2& v, const Pair2& rep,
                                    const Mat& M, const Mat& Minv, const Int& bound,
                                    std::vector<Pair2>& out) {
  OrbitCrossing cr = orbit_crossing(Q, v, rep, M, Minv);
  Mat step_dn = inv2(cr.step_up);
  for (Pair2 s = cr.first_pos; pf(Q, v, s) <= bound; s = apply2(cr.step_up, s))
    out.push_back(s);
  for (Pair2 s = cr.last_neg; -pf(Q, v, s) <= bound; s = apply2(step_dn, s))
    out.push_back(p2neg(s));
}

// ---- effective cone ---------------------------------------------------------

struct EffCone {
  std::vector<Pair2> rays;            // two boundary rays (empty if irrational)
  std::vector<Pair2> spherical_rays;  // the rays with q = -2, ordered (side A, side B)
  bool irrational_boundary = false;
  Orientation orientation = Orientation::PlusSide;
};

// Effective cone of the wall in H-coordinates: contains the positive cone
// P_H = {u : q(u) >= 0, (v,u) > 0}; spherical classes extend it.  When the
// form is isotropic the unique spherical pair (if any) is effective on only
// one side; `orientation` resolves that choice (PlusSide = the class with
// det(v, s) > 0).  With irrational null directions the extremal rays are, on
// each side of v, the effective spherical with the smallest positive pairing.
inline EffCone effective_cone_core(const BinaryForm& Q, const Pair2& v, Orientation ori) {
  EffCone out;
  out.orientation = ori;
  auto iso = isotropic_primitive(Q);
  SphericalData sph = spherical_data(Q);
  if (!iso.empty()) {
    std::vector<Pair2> nulls;
    for (auto r : iso) {
      Pair2 w{r.first, r.second};
      if (pf(Q, v, w) < 0) w = p2neg(w);
      nulls.push_back(w);
    }
    if (!sph.any) {
      out.rays = nulls;
      return out;
    }
    // square discriminant admits at most one spherical pair (the integral
    // automorph group is finite), so reps holds exactly {s, -s}
    Pair2 sigma = sph.reps[0];
    int want = ori == Orientation::PlusSide ? 1 : -1;
    if (sgn(det2(v, sigma)) != want) sigma = p2neg(sigma);
    Pair2 other = nulls[0];
    for (const auto& w : nulls)
      if (sgn(det2(v, w)) != want) other = w;
    out.rays = {sigma, other};
    out.spherical_rays = {sigma};
    return out;
  }
  if (!sph.any) {
    out.irrational_boundary = true;
    return out;
  }
  // one candidate per side from each orbit: the first element past the
  // crossing, and the negation of the last element before it
  std::optional<std::pair<Int, Pair2>> best_a, best_b;  // min positive pairing per side
  auto offer = [&](const Pair2& s, const Int& f) {
    int side = sgn(det2(v, s));
    auto& slot = side > 0 ? best_b : best_a;
    if (!slot || f < slot->first) slot = {f, s};
  };
  for (const auto& rep : sph.reps) {
    OrbitCrossing cr = orbit_crossing(Q, v, rep, sph.M, sph.Minv);
    if (!cr.zeros.empty()) {
      // a spherical orthogonal to v: effective on the side picked by the
      // orientation, bounding the cone with pairing 0
      Pair2 z = cr.zeros[0];
      int want = ori == Orientation::PlusSide ? 1 : -1;
      if (sgn(det2(v, z)) != want) z = p2neg(z);
      offer(z, 0);
    }
    offer(cr.first_pos, cr.f_pos);
    offer(p2neg(cr.last_neg), -cr.f_neg);
  }
  out.rays = {best_a->second, best_b->second};
  out.spherical_rays = out.rays;
  return out;
}

// ---- minimal class and reflection orbit -------------------------------------

// Weyl descent: reflect v into the chamber pairing non-negatively with both
// extremal effective sphericals.  `word` replays the result back to v when
// applied left to right.
inline std::pair<Pair2, std::vector<Pair2>> minimal_class_core(const BinaryForm& Q,
                                                               const Pair2& v,
                                                               const EffCone& cone) {
  Pair2 cur = v;
  std::vector<Pair2> word;
  for (long guard = 0;; ++guard) {
    if (guard > 1000000) throw InputError("minimal_class descent did not terminate");
    bool moved = false;
    for (const auto& s : cone.spherical_rays)
      if (pf(Q, cur, s) < 0) {
        cur = reflect2(Q, s, cur);
        word.push_back(s);
        moved = true;
        break;
      }
    if (!moved) break;
  }
  std::reverse(word.begin(), word.end());
  return {cur, word};
}

// Spherical chain continuation: from consecutive chain elements (prev, cur)
// the next one outward is +-rho_cur(prev), the sign fixed so the result stays
// on the effective side ((v,.) > 0, ties by lexicographic positivity).
inline Pair2 chain_next(const BinaryForm& Q, const Pair2& v, const Pair2& prev,
                        const Pair2& cur) {
  Pair2 n = reflect2(Q, cur, prev);
  Int f = pf(Q, v, n);
  if (f < 0 || (f == 0 && (n.first < 0 || (n.first == 0 && n.second < 0)))) n = p2neg(n);
  return n;
}

// Orbit elements v_i, i in [-count, count], slope-ordered: v_{i} for i>0 are
// produced by reflecting in the chain sphericals walking out on the B side,
// v_{-i} on the A side.  With fewer sphericals than steps the orbit repeats
// (adjacent classes coincide when v is orthogonal to the reflecting class).
inline std::vector<Pair2> orbit_list_core(const BinaryForm& Q, const Pair2& v0, long count,
                                          const EffCone& cone) {
  std::vector<Pair2> out(2 * count + 1);
  out[count] = v0;
  Pair2 sA, sB;
  bool haveA = false, haveB = false;
  for (const auto& s : cone.spherical_rays) {
    if (det2(v0, s) > 0 || (det2(v0, s) == 0 && !haveB)) {
      sB = s;
      haveB = true;
    } else {
      sA = s;
      haveA = true;
    }
  }
  // B side (i > 0)
  {
    Pair2 cur = v0, cprev = sA, ccur = sB;
    for (long i = 1; i <= count; ++i) {
      if (haveB) {
        cur = reflect2(Q, ccur, cur);
        if (haveA || i > 1) {
          Pair2 nxt = chain_next(Q, v0, cprev, ccur);
          cprev = ccur;
          ccur = nxt;
        }
      }
      out[count + i] = cur;
    }
  }
  // A side (i < 0)
  {
    Pair2 cur = v0, cprev = sB, ccur = sA;
    for (long i = 1; i <= count; ++i) {
      if (haveA) {
        cur = reflect2(Q, ccur, cur);
        if (haveB || i > 1) {
          Pair2 nxt = chain_next(Q, v0, cprev, ccur);
          cprev = ccur;
          ccur = nxt;
        }
      }
      out[count - i] = cur;
    }
  }
  return out;
}

// ---- classification ----------------------------------------------------------

struct CoreClassification {
  WallKind kind = WallKind::NoContraction;
  TotallySemistable tss = TotallySemistable::No;
  bool has_bn = false;
  Pair2 bn;                                      // primitive generator of v-perp in H
  std::vector<Pair2> iso1, iso2;                 // isotropic with (v,w) = 1 / 2
  std::vector<Pair2> flop_sphericals;            // 0 < (v,s) <= v^2/2
  std::vector<std::pair<Pair2, Pair2>> decomps;  // v = a + b into positive classes
  std::vector<Pair2> tss_sphericals;             // minimal positive (v,s), per orbit
};

// All decompositions v = a + b with a,b nonzero, q >= 0, (v,.) > 0.  For each
// pairing value m the classes with (v,a) = m form a line a_p + k u0 with
// q(u0) < 0, so q(a) >= 0 cuts a finite k-window walked outward from its
// vertex.
inline std::vector<Pair2> classes_with_pairing(const BinaryForm& Q, const Pair2& v,
                                               const Int& m) {
  std::vector<Pair2> out;
  Pair2 p{Q.a * v.first + Q.b * v.second, Q.b * v.first + Q.c * v.second};
  Int g = gcd_int(p.first, p.second);
  if (m % g != 0) return out;
  Pair2 u0{-p.second / g, p.first / g};
  // extended Euclid: e1 p1 + e2 p2 = g
  Int x0 = 0, y0 = 0;
  {
    Int old_r = p.first, r = p.second, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      Int q = old_r / r;
      Int tmp = old_r - q * r; old_r = r; r = tmp;
      tmp = old_s - q * s; old_s = s; s = tmp;
      tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_s = -old_s; old_t = -old_t; old_r = -old_r; }
    x0 = old_s;
    y0 = old_t;
  }
  Int A2 = -pf2(Q, u0);  // positive
  Pair2 ap{x0 * (m / g), y0 * (m / g)};
  Int beta = pf(Q, ap, u0), gamma = pf2(Q, ap);
  auto ok = [&](const Int& k) { return A2 * k * k - 2 * beta * k - gamma <= 0; };
  Int k0 = floor_div(beta, A2);
  Int kstart = k0;
  if (!ok(kstart)) {
    kstart = k0 + 1;
    if (!ok(kstart)) return out;
  }
  for (Int k = kstart; ok(k); ++k) out.push_back(p2add(ap, {k * u0.first, k * u0.second}));
  for (Int k = kstart - 1; ok(k); --k) out.push_back(p2add(ap, {k * u0.first, k * u0.second}));
  return out;
}

inline std::vector<std::pair<Pair2, Pair2>> positive_decompositions(const BinaryForm& Q,
                                                                    const Pair2& v) {
  std::vector<std::pair<Pair2, Pair2>> out;
  Int vv = pf2(Q, v);
  for (Int m = 1; m <= vv - 1; ++m) {
    for (const auto& a : classes_with_pairing(Q, v, m)) {
      Pair2 b = p2sub(v, a);
      if (pf2(Q, b) >= 0 && !p2zero(b)) out.push_back({a, b});
    }
  }
  return out;
}

inline CoreClassification classify_core(const BinaryForm& Q, const Pair2& v) {
  CoreClassification out;
  Int vv = pf2(Q, v);
  if (vv <= 0) throw InputError("v^2 must be positive");

  Pair2 p{Q.a * v.first + Q.b * v.second, Q.b * v.first + Q.c * v.second};
  out.bn = p2primitive({-p.second, p.first});
  if (out.bn.first < 0 || (out.bn.first == 0 && out.bn.second < 0)) out.bn = p2neg(out.bn);
  out.has_bn = pf2(Q, out.bn) == -2;

  for (auto r : isotropic_primitive(Q)) {
    Pair2 w{r.first, r.second};
    Int k = pf(Q, v, w);
    if (abs_int(k) == 1) out.iso1.push_back(k > 0 ? w : p2neg(w));
    if (abs_int(k) == 2) out.iso2.push_back(k > 0 ? w : p2neg(w));
  }

  SphericalData sph = spherical_data(Q);
  bool sph_nonzero_pairing = false;
  Int half = vv / 2;
  if (sph.any && sph.infinite) {
    sph_nonzero_pairing = true;  // pairings along an orbit are unbounded
    for (const auto& rep : sph.reps) {
      collect_positive_window(Q, v, rep, sph.M, sph.Minv, half, out.flop_sphericals);
      OrbitCrossing cr = orbit_crossing(Q, v, rep, sph.M, sph.Minv);
      out.tss_sphericals.push_back(-cr.f_neg < cr.f_pos ? p2neg(cr.last_neg) : cr.first_pos);
    }
  } else if (sph.any) {
    std::optional<std::pair<Int, Pair2>> best;
    for (auto s : sph.reps) {
      Int f = pf(Q, v, s);
      if (f == 0) continue;
      sph_nonzero_pairing = true;
      if (f < 0) {
        s = p2neg(s);
        f = -f;
      }
      if (f <= half) out.flop_sphericals.push_back(s);
      if (!best || f < best->first) best = {f, s};
    }
    if (best) out.tss_sphericals.push_back(best->second);
  }
  std::sort(out.flop_sphericals.begin(), out.flop_sphericals.end());
  out.flop_sphericals.erase(
      std::unique(out.flop_sphericals.begin(), out.flop_sphericals.end()),
      out.flop_sphericals.end());

  out.decomps = positive_decompositions(Q, v);

  if (out.has_bn)
    out.kind = WallKind::BrillNoether;
  else if (!out.iso1.empty())
    out.kind = WallKind::HilbertChow;
  else if (!out.iso2.empty())
    out.kind = WallKind::LiGiesekerUhlenbeck;
  else if (!out.flop_sphericals.empty() || !out.decomps.empty())
    out.kind = WallKind::Flopping;
  else
    out.kind = WallKind::NoContraction;

  // Totally semistable: an isotropic class with (v,w)=1 forces it for every
  // orientation; otherwise any spherical pairing nonzero with v is effective
  // with negative pairing for one admissible orientation.
  if (!out.iso1.empty())
    out.tss = TotallySemistable::ForAllOrientations;
  else if (sph_nonzero_pairing)
    out.tss = TotallySemistable::ForSomeOrientation;
  else
    out.tss = TotallySemistable::No;
  return out;
}

struct WallClassification {
  WallKind kind;
  TotallySemistable tss;
  std::vector<std::pair<std::string, Vec>> witnesses;  // condition -> ambient class
};

inline WallClassification classify(const WallLattice& W) {
  CoreClassification c = classify_core(W.form, W.v);
  WallClassification out;
  out.kind = c.kind;
  out.tss = c.tss;
  auto add = [&](const std::string& name, const Pair2& u) {
    out.witnesses.push_back({name, wall_to_ambient(W, u)});
  };
  if (c.has_bn) add("spherical_orthogonal", c.bn);
  if (!c.iso1.empty()) add("isotropic_pairing_1", c.iso1[0]);
  if (!c.iso2.empty()) add("isotropic_pairing_2", c.iso2[0]);
  if (!c.flop_sphericals.empty()) {
    Pair2 best = c.flop_sphericals[0];
    for (const auto& s : c.flop_sphericals) {
      Vec sv = wall_to_ambient(W, s), bv = wall_to_ambient(W, best);
      if (max_abs(sv) < max_abs(bv) || (max_abs(sv) == max_abs(bv) && lex_less(sv, bv)))
        best = s;
    }
    add("flop_spherical", best);
  }
  if (!c.decomps.empty()) {
    auto norm = [&](const std::pair<Pair2, Pair2>& d) {
      return std::max(max_abs(wall_to_ambient(W, d.first)),
                      max_abs(wall_to_ambient(W, d.second)));
    };
    auto best = c.decomps[0];
    for (const auto& d : c.decomps)
      if (norm(d) < norm(best)) best = d;
    add("sum_part_a", best.first);
    add("sum_part_b", best.second);
  }
  if (c.kind == WallKind::NoContraction && !c.tss_sphericals.empty()) {
    Pair2 best = c.tss_sphericals[0];
    for (const auto& s : c.tss_sphericals)
      if (abs_int(pf(W.form, W.v, s)) < abs_int(pf(W.form, W.v, best))) best = s;
    add("semistable_spherical", best);
  }
  return out;
}

inline std::optional<std::pair<Vec, Vec>> has_positive_sum_decomposition(const WallLattice& W) {
  auto ds = positive_decompositions(W.form, W.v);
  if (ds.empty()) return std::nullopt;
  auto norm = [&](const std::pair<Pair2, Pair2>& d) {
    return std::max(max_abs(wall_to_ambient(W, d.first)),
                    max_abs(wall_to_ambient(W, d.second)));
  };
  auto best = ds[0];
  for (const auto& d : ds)
    if (norm(d) < norm(best)) best = d;
  return std::make_pair(wall_to_ambient(W, best.first), wall_to_ambient(W, best.second));
}

// Exact angular order (counterclockwise from the positive x-axis).
inline bool angle_less(const Pair2& a, const Pair2& b) {
  auto half = [](const Pair2& u) {  // 0: upper (y>0 or y=0,x>0), 1: lower
    return (u.second > 0 || (u.second == 0 && u.first > 0)) ? 0 : 1;
  };
  if (half(a) != half(b)) return half(a) < half(b);
  Int d = det2(a, b);
  if (d != 0) return d > 0;
  return abs_int(a.first) + abs_int(a.second) < abs_int(b.first) + abs_int(b.second);
}

// All q = -2 classes with |x|,|y| <= box, ordered by angle along the branches.
inline std::vector<Pair2> spherical_enumerate(const BinaryForm& Q, const Int& box) {
  std::vector<Pair2> out;
  for (const auto& s : represent_box(Q, Int(-2), box)) out.push_back({s.first, s.second});
  std::sort(out.begin(), out.end(), angle_less);
  return out;
}

}  // namespace k3walls
