#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ints.hpp"

namespace k3walls {

struct PellSolution {
  Int x, y;
};

// Least (x,y) with x,y > 0 and x^2 - D y^2 = 1, via the continued fraction
// of sqrt(D).  D must be positive and not a square.
inline PellSolution pell_fundamental(const Int& D) {
  if (D <= 0 || is_square(D))
    throw InputError("pell_fundamental needs a positive nonsquare D");
  Int a0 = isqrt(D);
  Int m = 0, d = 1, a = a0;
  Int pm1 = 1, p = a0, qm1 = 0, q = 1;
  while (p * p - D * q * q != 1) {
    m = d * a - m;
    d = (D - m * m) / d;
    a = (a0 + m) / d;
    Int pn = a * p + pm1, qn = a * q + qm1;
    pm1 = p;
    p = pn;
    qm1 = q;
    q = qn;
  }
  return {p, q};
}

// (t + u sqrt(D))^k as a solution pair.
inline PellSolution pell_power(const Int& t, const Int& u, const Int& D, Int k) {
  PellSolution r{1, 0}, b{t, u};
  while (k > 0) {
    if (k % 2 == 1) r = {r.x * b.x + D * r.y * b.y, r.x * b.y + r.y * b.x};
    b = {b.x * b.x + D * b.y * b.y, 2 * b.x * b.y};
    k /= 2;
  }
  return r;
}

// True iff two solutions of x^2 - D y^2 = N lie in one orbit of the group
// generated by the fundamental unit and -1 (their quotient is an integral
// unit of Z[sqrt(D)]).
inline bool pell_same_class(const Int& D, const Int& N, const PellSolution& s1,
                            const PellSolution& s2) {
  return (s1.x * s2.x - D * s1.y * s2.y) % N == 0 &&
         (s1.x * s2.y - s2.x * s1.y) % N == 0;
}

struct PellClasses {
  std::vector<PellSolution> reps;  // one canonical representative per orbit
  Int t = 1, u = 0;                // fundamental unit: x' = t x + D u y, y' = u x + t y
};

namespace detail {

// Key used to pick the canonical representative of an orbit.
struct PellKey {
  Int ay, ax;
  int xneg, yneg;
  bool operator<(const PellKey& o) const {
    if (ay != o.ay) return ay < o.ay;
    if (ax != o.ax) return ax < o.ax;
    if (xneg != o.xneg) return xneg < o.xneg;
    return yneg < o.yneg;
  }
};

inline PellKey pell_key(const PellSolution& s) {
  return {abs_int(s.y), abs_int(s.x), s.x < 0 ? 1 : 0, s.y < 0 ? 1 : 0};
}

}  // namespace detail

// All orbits of {(x,y) : x^2 - D y^2 = N} under the fundamental unit and -1.
// D > 0 nonsquare, N != 0.  The minimal-|y| element of every orbit satisfies
// y^2 <= N (t - 1) / (2D) for N > 0 and y^2 <= |N| (t + 1) / (2D) for N < 0,
// so scanning y in [0, bound] with both signs of x meets every orbit
// (solutions with negative y are negations of these).
inline PellClasses pell_like_solve(const Int& D, const Int& N) {
  if (N == 0) throw InputError("pell_like_solve needs N != 0");
  PellSolution f = pell_fundamental(D);
  Int ybound = isqrt(abs_int(N) * (N > 0 ? Int(f.x - 1) : Int(f.x + 1)) / (2 * D)) + 1;
  std::vector<PellSolution> cand;
  for (Int y = 0; y <= ybound; ++y) {
    Int xx = N + D * y * y;
    Int x;
    if (xx >= 0 && is_square(xx, &x)) {
      cand.push_back({x, y});
      if (x != 0) cand.push_back({-x, y});
    }
  }
  PellClasses out;
  out.t = f.x;
  out.u = f.y;
  std::vector<std::vector<PellSolution>> orbits;
  for (const auto& s : cand) {
    bool placed = false;
    for (auto& orb : orbits)
      if (pell_same_class(D, N, orb[0], s)) {
        orb.push_back(s);
        placed = true;
        break;
      }
    if (!placed) orbits.push_back({s});
  }
  for (auto& orb : orbits) {
    // Negations are in the same orbit; include them so the canonical pick
    // ranges over every minimal-|y| element.
    size_t m = orb.size();
    for (size_t i = 0; i < m; ++i) orb.push_back({-orb[i].x, -orb[i].y});
    PellSolution best = orb[0];
    for (const auto& s : orb)
      if (detail::pell_key(s) < detail::pell_key(best)) best = s;
    out.reps.push_back(best);
  }
  std::sort(out.reps.begin(), out.reps.end(),
            [](const PellSolution& a, const PellSolution& b) {
              return detail::pell_key(a) < detail::pell_key(b);
            });
  return out;
}

// Minimal solution with x > 0 and y > 0 of x^2 - D y^2 = N (N > 0),
// restricted to x divisible by `modulus`.  Divisibility by a divisor of D is
// orbit-invariant, so orbits are filtered by their representative.
inline std::optional<PellSolution> pell_min_positive(const Int& D, const Int& N,
                                                     const Int& modulus = 1) {
  if (N <= 0) throw InputError("pell_min_positive needs N > 0");
  if (modulus > 1 && D % modulus != 0)
    throw InputError("pell_min_positive filter needs modulus | D");
  PellClasses cl = pell_like_solve(D, N);
  std::optional<PellSolution> best;
  for (PellSolution s : cl.reps) {
    if (modulus > 1 && s.x % modulus != 0) continue;
    if (s.x < 0) s = {-s.x, -s.y};
    if (s.x == 0) continue;
    while (s.y <= 0) s = {cl.t * s.x + D * cl.u * s.y, cl.u * s.x + cl.t * s.y};
    for (;;) {
      PellSolution prev{cl.t * s.x - D * cl.u * s.y, -cl.u * s.x + cl.t * s.y};
      if (prev.x > 0 && prev.y > 0)
        s = prev;
      else
        break;
    }
    if (!best || s.y < best->y || (s.y == best->y && s.x < best->x)) best = s;
  }
  return best;
}

}  // namespace k3walls
