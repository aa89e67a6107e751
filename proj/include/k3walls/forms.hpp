#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "intmat.hpp"
#include "pell.hpp"

namespace k3walls {

// q(x,y) = a x^2 + 2 b x y + c y^2  (even binary form, e.g. a rank-2 Gram matrix).
struct BinaryForm {
  Int a, b, c;
};

inline Int form_eval(const BinaryForm& Q, const Int& x, const Int& y) {
  return Q.a * x * x + 2 * Q.b * x * y + Q.c * y * y;
}

// Quarter discriminant b^2 - a c; positive iff the form is indefinite
// nondegenerate, a square iff the form has rational null directions.
inline Int form_disc4(const BinaryForm& Q) { return Q.b * Q.b - Q.a * Q.c; }

inline BinaryForm form_of_gram(const Mat& G) { return {G[0][0], G[0][1], G[1][1]}; }

inline std::pair<Int, Int> normalize_ray(std::pair<Int, Int> r) {
  Int g = gcd_int(r.first, r.second);
  if (g > 1) {
    r.first /= g;
    r.second /= g;
  }
  if (r.first < 0 || (r.first == 0 && r.second < 0)) {
    r.first = -r.first;
    r.second = -r.second;
  }
  return r;
}

// Primitive null rays of q, one per projective direction, each normalized so
// its first nonzero coordinate is positive.  Nonempty iff the discriminant is
// a perfect square (or the form is zero, which yields the two axes).
inline std::vector<std::pair<Int, Int>> isotropic_primitive(const BinaryForm& Q) {
  std::vector<std::pair<Int, Int>> rays;
  if (Q.a == 0 && Q.b == 0 && Q.c == 0) {
    rays = {{1, 0}, {0, 1}};
    return rays;
  }
  if (Q.a != 0) {
    Int d4 = form_disc4(Q), s;
    if (d4 < 0 || !is_square(d4, &s)) return {};
    rays.push_back(normalize_ray({-Q.b + s, Q.a}));
    rays.push_back(normalize_ray({-Q.b - s, Q.a}));
  } else if (Q.b != 0) {
    rays.push_back({1, 0});
    rays.push_back(normalize_ray({-Q.c, 2 * Q.b}));
  } else {
    // q = c y^2, c != 0
    rays.push_back({1, 0});
  }
  std::sort(rays.begin(), rays.end(), [](const auto& p, const auto& q) {
    return p.first != q.first ? p.first < q.first : p.second < q.second;
  });
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

// Positive divisors of |n| (n != 0), ascending.
inline std::vector<Int> divisors_of(Int n) {
  n = abs_int(n);
  std::vector<Int> small, big;
  for (Int i = 1; i * i <= n; ++i) {
    if (n % i != 0) continue;
    small.push_back(i);
    if (i * i != n) big.push_back(n / i);
  }
  small.insert(small.end(), big.rbegin(), big.rend());
  return small;
}

// Integer roots of A y^2 + B y + C = 0.  identically_zero reports the
// degenerate all-solutions case.
inline std::vector<Int> int_quadratic_roots(const Int& A, const Int& B, const Int& C,
                                            bool& identically_zero) {
  identically_zero = false;
  std::vector<Int> roots;
  if (A == 0) {
    if (B == 0) {
      identically_zero = (C == 0);
      return roots;
    }
    if (C % B == 0) roots.push_back(-C / B);
    return roots;
  }
  Int disc = B * B - 4 * A * C, s;
  if (disc < 0 || !is_square(disc, &s)) return roots;
  for (int sign : {1, -1}) {
    Int num = -B + sign * s;
    if (num % (2 * A) == 0) roots.push_back(num / (2 * A));
    if (s == 0) break;
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

inline void sort_points(std::vector<std::pair<Int, Int>>& v) {
  std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) {
    return p.first != q.first ? p.first < q.first : p.second < q.second;
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// All solutions of q(x,y) = n with |x|,|y| <= box.
inline std::vector<std::pair<Int, Int>> represent_box(const BinaryForm& Q, const Int& n,
                                                      const Int& box) {
  std::vector<std::pair<Int, Int>> out;
  for (Int x = -box; x <= box; ++x) {
    bool all_y;
    auto roots = int_quadratic_roots(Q.c, 2 * Q.b * x, Q.a * x * x - n, all_y);
    if (all_y) {
      for (Int y = -box; y <= box; ++y) out.push_back({x, y});
      continue;
    }
    for (const auto& y : roots)
      if (abs_int(y) <= box) out.push_back({x, y});
  }
  sort_points(out);
  return out;
}

enum class RepKind { Empty, Finite, Classes, Lines, Plane };

struct FormLine {
  std::pair<Int, Int> base;
  std::pair<Int, Int> dir;
};

// Full description of {(x,y) : q(x,y) = n}.
//   Empty   - no solutions
//   Finite  - all solutions listed
//   Classes - indefinite nonsquare case: canonical orbit representatives under
//             the automorph x' = (t - b u) x - c u y, y' = a u x + (t + b u) y
//             and negation
//   Lines   - solutions form finitely many lines base + k dir
//   Plane   - zero form with n = 0
struct RepresentResult {
  RepKind kind = RepKind::Empty;
  std::vector<std::pair<Int, Int>> sols;
  Int t = 1, u = 0;
  std::vector<FormLine> lines;
};

inline RepresentResult represent(const BinaryForm& Q, const Int& n) {
  RepresentResult res;
  auto push_sol = [&](const Int& x, const Int& y) { res.sols.push_back({x, y}); };
  if (Q.a == 0 && Q.b == 0 && Q.c == 0) {
    res.kind = (n == 0) ? RepKind::Plane : RepKind::Empty;
    return res;
  }
  if (Q.a == 0 && Q.b == 0) {
    // q = c y^2
    if (n % Q.c != 0) return res;
    Int yy = n / Q.c, y0;
    if (yy < 0 || !is_square(yy, &y0)) return res;
    res.kind = RepKind::Lines;
    res.lines.push_back({{0, y0}, {1, 0}});
    if (y0 != 0) res.lines.push_back({{0, -y0}, {1, 0}});
    return res;
  }
  if (Q.a == 0) {
    // q = y (2 b x + c y)
    if (n == 0) {
      res.kind = RepKind::Lines;
      res.lines.push_back({{0, 0}, {1, 0}});
      res.lines.push_back({{0, 0}, normalize_ray({-Q.c, 2 * Q.b})});
      return res;
    }
    for (const auto& d : divisors_of(n))
      for (int sign : {1, -1}) {
        Int y = sign * d;
        Int rem = n / y - Q.c * y;
        if (rem % (2 * Q.b) == 0) push_sol(rem / (2 * Q.b), y);
      }
    sort_points(res.sols);
    res.kind = res.sols.empty() ? RepKind::Empty : RepKind::Finite;
    return res;
  }
  Int d4 = form_disc4(Q);
  Int an = Q.a * n;
  if (d4 < 0) {
    // a q = (a x + b y)^2 - d4 y^2, definite
    if (an < 0) return res;
    Int ybound = isqrt(an / (-d4));
    for (Int y = -ybound; y <= ybound; ++y) {
      Int ww = an + d4 * y * y, w;
      if (ww < 0 || !is_square(ww, &w)) continue;
      for (int sign : {1, -1}) {
        Int num = sign * w - Q.b * y;
        if (num % Q.a == 0) push_sol(num / Q.a, y);
        if (w == 0) break;
      }
    }
    sort_points(res.sols);
    res.kind = res.sols.empty() ? RepKind::Empty : RepKind::Finite;
    return res;
  }
  Int s;
  if (is_square(d4, &s)) {
    if (s == 0) {
      // a q = (a x + b y)^2
      Int w;
      if (an < 0 || !is_square(an, &w)) return res;
      Int g = gcd_int(Q.a, Q.b);
      if (w % g != 0) return res;
      // one base point of a x + b y = w via the extended Euclid pair
      Int x0 = 0, y0 = 0;
      {
        Int old_r = Q.a, r = Q.b, old_s = 1, ss = 0, old_t = 0, tt = 1;
        while (r != 0) {
          Int qq = old_r / r;
          Int tmp = old_r - qq * r; old_r = r; r = tmp;
          tmp = old_s - qq * ss; old_s = ss; ss = tmp;
          tmp = old_t - qq * tt; old_t = tt; tt = tmp;
        }
        Int scalefac = w / old_r;  // old_r = +-g
        x0 = old_s * scalefac;
        y0 = old_t * scalefac;
      }
      res.kind = RepKind::Lines;
      auto dir = normalize_ray({-Q.b / g, Q.a / g});
      res.lines.push_back({{x0, y0}, dir});
      if (w != 0) res.lines.push_back({{-x0, -y0}, dir});
      return res;
    }
    if (n == 0) {
      res.kind = RepKind::Lines;
      for (const auto& r : isotropic_primitive(Q))
        res.lines.push_back({{0, 0}, r});
      return res;
    }
    // a q = (a x + (b-s) y)(a x + (b+s) y) = a n
    for (const auto& d : divisors_of(an))
      for (int sign : {1, -1}) {
        Int e1 = sign * d, e2 = an / e1;
        Int dy = e2 - e1;
        if (dy % (2 * s) != 0) continue;
        Int y = dy / (2 * s);
        Int num = e1 - (Q.b - s) * y;
        if (num % Q.a == 0) push_sol(num / Q.a, y);
      }
    sort_points(res.sols);
    res.kind = res.sols.empty() ? RepKind::Empty : RepKind::Finite;
    return res;
  }
  // indefinite, irrational null directions: substitute w = a x + b y,
  // w^2 - d4 y^2 = a n
  if (n == 0) {
    res.kind = RepKind::Finite;
    push_sol(0, 0);
    return res;
  }
  PellClasses cl = pell_like_solve(d4, an);
  res.t = cl.t;
  res.u = cl.u;
  for (const auto& rep : cl.reps) {
    // x-integrality is orbit-invariant (the automorph above is integral with
    // integral inverse), so testing the representative decides the orbit.
    Int num = rep.x - Q.b * rep.y;
    if (num % Q.a != 0) continue;
    push_sol(num / Q.a, rep.y);
  }
  res.kind = res.sols.empty() ? RepKind::Empty : RepKind::Classes;
  return res;
}

// Integral automorph of an indefinite nonsquare form, determinant 1.
inline Mat form_automorph(const BinaryForm& Q) {
  Int d4 = form_disc4(Q);
  PellSolution f = pell_fundamental(d4);
  return Mat{{f.x - Q.b * f.y, -Q.c * f.y}, {Q.a * f.y, f.x + Q.b * f.y}};
}

inline std::pair<Int, Int> apply2(const Mat& M, const std::pair<Int, Int>& p) {
  return {M[0][0] * p.first + M[0][1] * p.second,
          M[1][0] * p.first + M[1][1] * p.second};
}

// Inverse of a determinant-1 2x2 integer matrix.
inline Mat inv2(const Mat& M) {
  return Mat{{M[1][1], -M[0][1]}, {-M[1][0], M[0][0]}};
}

}  // namespace k3walls
