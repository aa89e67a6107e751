#pragma once

#include <iostream>
#include <map>
#include <set>
#include <string>

#include "cones.hpp"
#include "pell.hpp"
#include "wall.hpp"

namespace k3walls {

// Moduli of n points on a degree-2d surface: ambient lattice of rank 3 with
// pairing ((r,c,s),(r',c',s')) = 2d c c' - r s' - s r', v = (1,0,1-n).
struct HilbSetup {
  Int d, n;
  Lattice lattice;
  Vec v, Htilde, B;
};

inline HilbSetup make_hilb(const Int& d, const Int& n) {
  if (d < 1) throw InputError("degree parameter d must be >= 1");
  if (n < 2) throw InputError("point count n must be >= 2");
  HilbSetup S;
  S.d = d;
  S.n = n;
  S.lattice = mukai_from_ns(Mat{{2 * d}});
  S.v = {1, 0, 1 - n};
  S.Htilde = {0, -1, 0};
  S.B = {-1, 0, 1 - n};
  return S;
}

// Slope of the wall cut by a on the (Htilde, B) half-plane: the wall through
// the divisor direction Htilde + Gamma/(2d) B... rendered as the scalar Gamma.
inline Rat gamma_of_wall(const HilbSetup& S, const Vec& a) {
  if (a.size() != 3) throw InputError("class must have 3 coordinates");
  Int den = a[2] + (S.n - 1) * a[0];
  if (den == 0) throw InputError("class spans no slope: denominator vanishes");
  return make_rat(-2 * S.d * a[1], den);
}

// Divisor class of slope Gamma (rational in general).
inline RatVec divisor_of_slope(const HilbSetup& S, const Rat& gamma) {
  return {gamma, Rat(-1), gamma * Rat(S.n - 1)};
}

// Minimal x,y > 0 with x^2 - D y^2 = N, D, N > 0; for square D = s^2 the
// factorizations (x - s y)(x + s y) = N are finite, otherwise Pell descent.
inline std::optional<PellSolution> solve_min_positive_general(const Int& D, const Int& N) {
  if (D <= 0 || N <= 0) throw InputError("needs D > 0 and N > 0");
  Int s0;
  if (is_square(D, &s0)) {
    std::optional<PellSolution> best;
    for (const Int& dv : divisors_of(N)) {
      for (int sg = 0; sg < 2; ++sg) {
        Int a = sg ? Int(-dv) : dv;
        Int b = N / a;
        if ((a + b) % 2 != 0) continue;
        Int x = (a + b) / 2;
        Int sy = (b - a) / 2;
        if (sy % s0 != 0) continue;
        Int y = sy / s0;
        if (x <= 0 || y <= 0) continue;
        if (!best || y < best->y || (y == best->y && x < best->x))
          best = PellSolution{x, y};
      }
    }
    return best;
  }
  return pell_min_positive(D, N);
}

// Movable-cone boundary slope, by the trichotomy on D = d(n-1):
//   1. D a square: the boundary is spanned by a null divisor class.
//   2. (n-1)X^2 - dY^2 = 1 soluble: spanned by a spherical class of v-perp.
//   3. otherwise X^2 - DY^2 = 1 with (n-1) | X+1: an isotropic class pairing
//      1 or 2 with v spans the boundary wall.
struct MovableHilb {
  int case_id;
  Rat gamma;
  Vec witness;
  std::string witness_kind;  // null_divisor | spherical | isotropic_hc | isotropic_lgu
  Int pell_x = 0, pell_y = 0;
};

inline MovableHilb movable_hilb(const Int& d, const Int& n) {
  HilbSetup S = make_hilb(d, n);
  Int m = n - 1;
  MovableHilb out;
  Int s0;
  if (is_square(d * m, &s0)) {
    Int g = gcd_int(s0, m);
    Int k = s0 / g, h = m / g;
    out.case_id = 1;
    out.gamma = make_rat(k, h);
    out.witness = {k, -h, k * m};
    out.witness_kind = "null_divisor";
    return out;
  }
  if (auto sol = pell_min_positive(d * m, m, m)) {
    Int X = sol->x / m, Y = sol->y;
    out.case_id = 2;
    out.gamma = make_rat(d * Y, m * X);
    out.witness = {X, -Y, m * X};
    out.witness_kind = "spherical";
    out.pell_x = X;
    out.pell_y = Y;
    return out;
  }
  PellSolution f = pell_fundamental(d * m);
  Int t = ((f.x % m) + m) % m;
  Int k0 = 0, cur = 1;
  for (Int k = 1; k <= m + 1; ++k) {
    cur = (cur * t) % m;
    if (cur == (m - 1) % m) {
      k0 = k;
      break;
    }
  }
  if (k0 == 0) throw InputError("no movable boundary: every unit power misses -1");
  PellSolution s = pell_power(f.x, f.y, d * m, k0);
  Int X = s.x, Y = s.y;
  out.case_id = 3;
  out.gamma = make_rat(d * Y, X);
  out.pell_x = X;
  out.pell_y = Y;
  if ((X + 1) % (2 * m) == 0 && Y % 2 == 0) {
    out.witness = {(X + 1) / (2 * m), -Y / 2, (X - 1) / 2};
    out.witness_kind = "isotropic_hc";
  } else {
    out.witness = {(X + 1) / m, -Y, X - 1};
    out.witness_kind = "isotropic_lgu";
  }
  return out;
}

// Nef-cone boundary slope for n = 2: minimal x,y > 0 with x^2 - 4dy^2 = 5
// gives Gamma = 2dy/x and the spherical class ((x+1)/2, -y, (x-1)/2);
// insoluble means the nef and movable cones share the boundary.
struct NefHilb2 {
  bool equals_movable = false;
  Rat gamma;
  Vec witness;
  Int pell_x = 0, pell_y = 0;
};

inline NefHilb2 nef_hilb_n2(const Int& d) {
  NefHilb2 out;
  auto sol = solve_min_positive_general(4 * d, 5);
  if (!sol) {
    MovableHilb mv = movable_hilb(d, 2);
    out.equals_movable = true;
    out.gamma = mv.gamma;
    out.witness = mv.witness;
    return out;
  }
  Int X = sol->x, Y = sol->y;  // X^2 = 5 + 4dY^2 is odd
  out.gamma = make_rat(2 * d * Y, X);
  out.witness = {(X + 1) / 2, -Y, (X - 1) / 2};
  out.pell_x = X;
  out.pell_y = Y;
  return out;
}

// ---- the full wall table in the movable range --------------------------------

struct WallRow {
  Rat gamma;
  Vec witness;
  Int witness_square;
  Int witness_pairing;
  WallKind kind;
  TotallySemistable tss;
};

struct WallTable {
  Int d, n;
  MovableHilb movable;
  std::vector<WallRow> rows;
  Int spherical_pairing_cap;  // spherical walls searched up to this |(v,s)|
};

namespace detail {

// Candidates of square e = q(a) and pairing c = (v,a) lie on
// R^2 - 4d(n-1) x^2 = c^2 - 2(n-1) e with R = y + (n-1) r, r = (R+c)/(2(n-1)).
inline void hilb_push_RC(const HilbSetup& S, const Int& x, const Int& R, const Int& c,
                         std::set<Vec>& out) {
  Int m = S.n - 1;
  if (R == 0) return;
  if ((R + c) % (2 * m) != 0) return;
  Int r = (R + c) / (2 * m);
  Int y = m * r - c;
  if (make_rat(-2 * S.d * x, R) < 0) return;
  Vec a{r, x, y};
  if (is_zero_vec(a)) return;
  out.insert(make_primitive(a));
}

}  // namespace detail

// Every wall of slope in [0, movable bound]: isotropic classes pairing 1 or 2,
// spherical classes of v-perp, spherical classes pairing up to the cap, and
// parts of positive sum decompositions.  In the square case the quadratic
// windows degenerate and divisor factoring replaces them.
inline WallTable walls_table(const Int& d, const Int& n) {
  HilbSetup S = make_hilb(d, n);
  Int m = n - 1;
  Int vv = 2 * m;
  MovableHilb mov = movable_hilb(d, n);
  Rat cap = mov.gamma;
  Int num = rat_num(cap) * rat_num(cap);  // cap^2 = num/den
  Int den = rat_den(cap) * rat_den(cap);
  Int Dfull = 4 * d * m;
  Int ccap = vv / 2 + 1;
  std::set<Vec> cands;

  Int s0;
  bool square = is_square(d * m, &s0);
  if (!square) {
    // isotropic, pairing k: x^2 = r((n-1)r - k)/d within the slope window
    for (Int k = 1; k <= 2; ++k) {
      Int A2 = 4 * m * (d * den - m * num);
      Int B1 = -4 * k * (d * den - m * num);
      Int C0 = -num * k * k;
      auto ok = [&](const Int& r) { return ((A2 * r) + B1) * r + C0 <= 0; };
      for (int dir = 0; dir < 2; ++dir) {
        for (Int r = dir ? Int(-1) : Int(0); ok(r); dir ? --r : ++r) {
          Int val = r * (m * r - k);
          if (val < 0 || val % d != 0) continue;
          Int x;
          if (!is_square(val / d, &x)) continue;
          Int R = 2 * m * r - k;
          detail::hilb_push_RC(S, x, R, k, cands);
          detail::hilb_push_RC(S, -x, R, k, cands);
        }
      }
    }
    // spherical in v-perp: (n-1)r^2 - dx^2 = 1
    {
      Int coeff = d * (d * den - m * num);
      for (Int x = 0; coeff * x * x <= num * m; ++x) {
        Int rr = 1 + d * x * x;
        if (rr % m != 0) continue;
        Int r;
        if (!is_square(rr / m, &r)) continue;
        for (int sr = 0; sr < 2; ++sr) {
          Int rs = sr ? -r : r;
          if (rs == 0 && sr) continue;
          for (int sx = 0; sx < 2; ++sx) {
            Int xs = sx ? -x : x;
            if (xs == 0 && sx) continue;
            if (make_rat(-d * xs, m * rs) < 0) continue;
            cands.insert(make_primitive(Vec{rs, xs, m * rs}));
          }
        }
      }
    }
    // spherical of pairing c and decomposition parts of square e
    auto scan_RC = [&](const Int& c, const Int& e) {
      Int M = c * c - 2 * m * e;
      if (M <= 0) return;
      Int coeff = 4 * d * (d * den - m * num);
      for (Int x = 0; coeff * x * x <= num * M; ++x) {
        Int R2 = M + Dfull * x * x;
        Int R;
        if (!is_square(R2, &R)) continue;
        for (int sR = 0; sR < 2; ++sR) {
          Int Rs = sR ? -R : R;
          if (Rs == 0 && sR) continue;
          detail::hilb_push_RC(S, x, Rs, c, cands);
          detail::hilb_push_RC(S, -x, Rs, c, cands);
        }
      }
    };
    for (Int c = 1; c <= ccap; ++c) scan_RC(c, -2);
    for (Int c = 1; c <= vv - 1; ++c)
      for (Int e = 0; c * c - 2 * m * e > 0; e += 2) scan_RC(c, e);
  } else {
    // square discriminant: factor (R - 2 s0 x)(R + 2 s0 x) = M
    Int Sq = 2 * s0;
    auto factor_RC = [&](const Int& c, const Int& M) {
      if (M <= 0) return;
      for (const Int& d1 : divisors_of(M)) {
        for (int sg = 0; sg < 2; ++sg) {
          Int a1 = sg ? Int(-d1) : d1;
          Int a2 = M / a1;
          if ((a1 + a2) % 2 != 0) continue;
          Int R = (a1 + a2) / 2;
          Int sx = (a2 - a1) / 2;
          if (sx % Sq != 0) continue;
          Int x = sx / Sq;
          detail::hilb_push_RC(S, x, R, c, cands);
        }
      }
    };
    for (Int k = 1; k <= 2; ++k) factor_RC(k, k * k);
    // spherical in v-perp: ((n-1)r - s0 x)((n-1)r + s0 x) = n-1
    for (const Int& d1 : divisors_of(m)) {
      for (int sg = 0; sg < 2; ++sg) {
        Int a1 = sg ? Int(-d1) : d1;
        Int a2 = m / a1;
        if ((a1 + a2) % 2 != 0) continue;
        Int U = (a1 + a2) / 2, sx = (a2 - a1) / 2;
        if (U % m != 0 || sx % s0 != 0) continue;
        Int r = U / m, x = sx / s0;
        if (r == 0) continue;
        if (make_rat(-d * x, m * r) < 0) continue;
        cands.insert(make_primitive(Vec{r, x, m * r}));
      }
    }
    for (Int c = 1; c <= ccap; ++c) factor_RC(c, c * c + 4 * m);
    for (Int c = 1; c <= vv - 1; ++c)
      for (Int e = 0; c * c - 2 * m * e > 0; e += 2) factor_RC(c, c * c - 2 * m * e);
  }

  // group by slope, keep the movable range
  std::map<Rat, std::vector<Vec>> by_gamma;
  for (const auto& a : cands) {
    if (a[2] + m * a[0] == 0) continue;
    Rat g = gamma_of_wall(S, a);
    if (g < 0 || g > cap) continue;
    if (g == cap && mov.case_id == 1) continue;  // square case: boundary is a null ray, not a wall
    // decomposition parts need a positive complement
    Int c = pairing(S.lattice, S.v, a);
    if (norm2(S.lattice, a) >= 0 && c >= 1) {
      Vec b = sub(S.v, a);
      Int qb = norm2(S.lattice, b);
      Int cb = vv - c;
      bool dec_ok = qb >= 0 && cb >= 1 && !is_zero_vec(b);
      bool iso_ok = norm2(S.lattice, a) == 0 && (c == 1 || c == 2);
      if (!dec_ok && !iso_ok) continue;
    }
    by_gamma[g].push_back(a);
  }

  WallTable out;
  out.d = d;
  out.n = n;
  out.movable = mov;
  out.spherical_pairing_cap = ccap;
  if (verbose_enabled())
    std::cerr << "[k3walls] wall table for d=" << d << " n=" << n
              << ": spherical search capped at |(v,s)| <= " << ccap
              << "; rows whose only witnesses pair higher are not listed\n";

  for (const auto& [g, group] : by_gamma) {
    auto W = make_wall_lattice(S.lattice, S.v, group[0]);
    if (!W) continue;
    CoreClassification core = classify_core(W->form, W->v);
    std::vector<Vec> pool;
    auto push = [&](const Pair2& u) {
      Vec w = wall_to_ambient(*W, u);
      Int pw = pairing(S.lattice, S.v, w);
      if (pw < 0 || (pw == 0 && !lex_less(Vec(w.size(), Int(0)), w))) w = neg(w);
      pool.push_back(w);
    };
    switch (core.kind) {
      case WallKind::BrillNoether:
        push(core.bn);
        break;
      case WallKind::HilbertChow:
        for (const auto& u : core.iso1) push(u);
        break;
      case WallKind::LiGiesekerUhlenbeck:
        for (const auto& u : core.iso2) push(u);
        break;
      case WallKind::Flopping:
        for (const auto& u : core.flop_sphericals) push(u);
        for (const auto& dc : core.decomps) {
          push(dc.first);
          push(dc.second);
        }
        break;
      case WallKind::NoContraction:
        for (const auto& u : core.tss_sphericals) push(u);
        break;
    }
    if (pool.empty()) continue;
    Vec best = pool[0];
    for (const auto& w : pool)
      if (max_abs(w) < max_abs(best) || (max_abs(w) == max_abs(best) && lex_less(w, best)))
        best = w;
    WallRow row;
    row.gamma = g;
    row.witness = best;
    row.witness_square = norm2(S.lattice, best);
    row.witness_pairing = pairing(S.lattice, S.v, best);
    row.kind = core.kind;
    row.tss = core.tss;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace k3walls
