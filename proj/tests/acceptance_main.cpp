// Acceptance gate: one line per criterion, exit 0 iff everything passes.
#include <chrono>
#include <cstdio>
#include <random>
#include <set>

#include "k3walls/cones.hpp"
#include "k3walls/flops.hpp"
#include "k3walls/hilb.hpp"
#include "k3walls/rank2.hpp"

using namespace k3walls;

namespace {

struct Check {
  bool ok = true;
  void expect(bool cond) { ok = ok && cond; }
};

bool crit1_eight_wall_table(Check& c) {
  WallTable T = walls_table(1, 7);
  c.expect(T.rows.size() == 8);
  if (T.rows.size() != 8) return c.ok;
  const Rat gammas[8] = {Rat(0),          make_rat(1, 4),  make_rat(2, 7), make_rat(1, 3),
                         make_rat(6, 17), make_rat(4, 11), make_rat(3, 8), make_rat(2, 5)};
  const Vec wits[8] = {{0, 0, -1}, {1, -1, 2}, {1, -1, 1},   {1, -1, 0},
                       {2, -3, 5}, {1, -2, 5}, {-1, 3, -10}, {1, -2, 4}};
  const long squares[8] = {0, -2, 0, 2, -2, -2, -2, 0};
  const long pairs[8] = {1, 4, 5, 6, 7, 1, 4, 2};
  const char* labels[8] = {"divisorial contraction",
                           "flop",
                           "flop",
                           "flop",
                           "fake wall",
                           "flop",
                           "flop",
                           "divisorial contraction"};
  for (int i = 0; i < 8; ++i) {
    c.expect(T.rows[i].gamma == gammas[i]);
    c.expect(T.rows[i].witness == wits[i]);
    c.expect(T.rows[i].witness_square == squares[i]);
    c.expect(T.rows[i].witness_pairing == pairs[i]);
    c.expect(std::string(wall_label(T.rows[i].kind, T.rows[i].tss)) == labels[i]);
  }
  c.expect(T.movable.gamma == make_rat(2, 5));
  return c.ok;
}

bool crit2_nef_boundary(Check& c) {
  NefHilb2 N = nef_hilb_n2(31);
  c.expect(!N.equals_movable);
  c.expect(N.gamma == make_rat(3658, 657));
  c.expect(N.witness == Vec{329, -59, 328});
  c.expect(N.pell_x == 657);
  c.expect(N.pell_y == 59);
  return c.ok;
}

bool crit3_movable_grid(Check& c) {
  for (long n = 3; n <= 50; ++n) {
    MovableHilb M = movable_hilb(n - 2, n);
    c.expect(M.case_id == 2);
    c.expect(M.gamma == make_rat(n - 2, n - 1));
  }
  for (long d = 1; d <= 20; ++d)
    for (long n = 2; n <= 10; ++n) {
      if (!is_square(Int(d) * (n - 1))) continue;
      MovableHilb M = movable_hilb(d, n);
      c.expect(M.case_id == 1);
      HilbSetup S = make_hilb(d, n);
      c.expect(norm2(S.lattice, M.witness) == 0);
      c.expect(pairing(S.lattice, S.v, M.witness) == 0);
    }
  MovableHilb M17 = movable_hilb(1, 7);
  c.expect(M17.case_id == 3);
  c.expect(M17.gamma == make_rat(2, 5));
  return c.ok;
}

bool crit4_rank2(Check& c) {
  Rank2FlopScan scan = rank2_flop_scan(50);
  c.expect(!scan.spherical_found);
  c.expect(scan.non_divisorial_splittings == 0);
  c.expect(rank2_flop_residue_certificate(4));
  auto wits = rank2_divisorial_witnesses(50);
  auto has = [&](long X, long a, long b) {
    return std::find(wits.begin(), wits.end(), std::array<long, 3>{X, a, b}) != wits.end();
  };
  c.expect(has(1, 0, 0));
  c.expect(has(15, 4, 0));
  c.expect(has(7, 2, 2));
  Lattice L = rank2_example_lattice();
  Vec v = rank2_example_v();
  for (const auto& w : wits) {
    Vec s{w[0], w[1], w[2], w[0]};
    c.expect(norm2(L, s) == -2);
    c.expect(pairing(L, s, v) == 0);
  }
  return c.ok;
}

long brute_two_part(const Mat& gram, const Pair2& v, long box) {
  BinaryForm Q = form_of_gram(gram);
  long count = 0;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y) {
      Pair2 a{x, y};
      Pair2 b = p2sub(v, a);
      if (p2zero(a) || p2zero(b)) continue;
      if (pf2(Q, a) < 0 || pf2(Q, b) < 0) continue;
      if (pf(Q, v, a) < 1 || pf(Q, v, b) < 1) continue;
      if (b < a) continue;
      ++count;
    }
  return count;
}

bool crit5_flop_strata(Check& c) {
  for (long m : {3L, 5L, 7L}) {
    Mat gram{{-4, 20 * m}, {20 * m, 4}};
    FlopStrata F = flop_strata(gram, Pair2{m, 2}, true);
    long expected = (m + 1) / 2;
    c.expect(static_cast<long>(F.nontrivial.size()) == expected);
    c.expect(F.components == expected);                      // pairwise incomparable
    c.expect(static_cast<long>(F.maximal.size()) == expected);
    for (const auto& P : F.nontrivial) c.expect(P.parts.size() == 2);
  }

  Mat gram{{2, 10}, {10, 2}};
  Pair2 v{1, 2};
  FlopStrata F = flop_strata(gram, v, true);
  c.expect(F.components == 1);
  c.expect(F.nontrivial.size() == 3);
  c.expect(F.maximal == std::vector<size_t>{0, 1});
  BinaryForm Q = form_of_gram(gram);
  c.expect(F.nontrivial[2].parts.size() == 3);
  c.expect(refines(Q, v, F.nontrivial[2], F.nontrivial[0]));
  c.expect(refines(Q, v, F.nontrivial[2], F.nontrivial[1]));
  c.expect(brute_two_part(gram, v, 30) == static_cast<long>(F.two_part.size()));
  return c.ok;
}

bool crit6_fibration_grid(Check& c) {
  for (long d = 1; d <= 12; ++d)
    for (long n = 2; n <= 12; ++n) {
      HilbSetup S = make_hilb(d, n);
      FibrationClasses F = fibration_classes(S.lattice, S.v);
      c.expect(!F.classes.empty() == is_square(Int(d) * (n - 1)));
      for (const auto& w : F.classes) {
        c.expect(norm2(S.lattice, w) == 0);
        c.expect(pairing(S.lattice, w, S.v) == 0);
      }
    }
  return c.ok;
}

long lrand(std::mt19937& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

void prop_pell(Check& c) {
  for (long D = 2; D <= 500; ++D) {
    if (is_square(Int(D))) continue;
    PellSolution s = pell_fundamental(D);
    c.expect(s.x >= 1 && s.y >= 1);
    c.expect(s.x * s.x - D * s.y * s.y == 1);
    Int ycap = s.y - 1 < 10000 ? s.y - 1 : Int(10000);
    for (Int y = 1; y <= ycap; ++y) c.expect(!is_square(1 + D * y * y));
  }
}

void prop_represent_box(Check& c) {
  std::mt19937 rng(311);
  const long bound = 200;
  int done = 0;
  while (done < 100) {
    long a = 2 * lrand(rng, -5, 5);
    long b = lrand(rng, -8, 8);
    long cc = 2 * lrand(rng, -5, 5);
    if (b * b - a * cc <= 0) continue;
    long n = 2 * lrand(rng, -10, 10);
    ++done;
    BinaryForm Q{a, b, cc};
    std::vector<std::pair<Int, Int>> direct;
    for (long x = -bound; x <= bound; ++x)
      for (long y = -bound; y <= bound; ++y)
        if (a * x * x + 2 * b * x * y + cc * y * y == n) direct.emplace_back(x, y);
    sort_points(direct);
    c.expect(represent_box(Q, n, bound) == direct);
  }
}

void prop_reflect_saturate(Check& c) {
  std::mt19937 rng(1723);
  for (int it = 0; it < 500; ++it) {
    long d = lrand(rng, 1, 5);
    Lattice L = mukai_from_ns(Mat{{2 * d}});
    long x = lrand(rng, -10, 10);
    long N = d * x * x + 1;
    std::vector<long> divs;
    for (long r = 1; r <= N; ++r)
      if (N % r == 0) divs.push_back(r);
    long r = divs[lrand(rng, 0, static_cast<long>(divs.size()) - 1)];
    if (lrand(rng, 0, 1)) r = -r;
    Vec s{r, x, N / r};
    c.expect(norm2(L, s) == -2);
    Vec u{lrand(rng, -10, 10), lrand(rng, -10, 10), lrand(rng, -10, 10)};
    Vec w{lrand(rng, -10, 10), lrand(rng, -10, 10), lrand(rng, -10, 10)};
    Vec ru = reflect(L, s, u);
    c.expect(reflect(L, s, ru) == u);
    c.expect(norm2(L, ru) == norm2(L, u));
    c.expect(pairing(L, ru, reflect(L, s, w)) == pairing(L, u, w));
    if (u == Vec{0, 0, 0} || w == Vec{0, 0, 0}) continue;
    Sublattice W = saturate(L, Mat{u, w});
    Sublattice W2 = saturate(L, W.basis);
    c.expect(W2.basis == W.basis && W2.gram == W.gram);
  }
}

void prop_classify_invariance(Check& c) {
  std::mt19937 rng(947);
  const long forms[][3] = {{12, 1, 0},  {12, 0, -2},  {12, 2, 0}, {12, 4, -2},
                           {12, 7, -2}, {12, 11, -2}, {2, 5, 2}};
  for (const auto& f : forms) {
    BinaryForm Q{f[0], f[1], f[2]};
    Pair2 v{1, 0};
    CoreClassification base = classify_core(Q, v);
    for (int it = 0; it < 50; ++it) {
      long U[2][2] = {{1, 0}, {0, 1}};
      int steps = static_cast<int>(lrand(rng, 1, 6));
      for (int k = 0; k < steps; ++k) {
        long t = lrand(rng, -3, 3);
        switch (lrand(rng, 0, 3)) {
          case 0: U[0][1] += t * U[0][0]; U[1][1] += t * U[1][0]; break;
          case 1: U[0][0] += t * U[0][1]; U[1][0] += t * U[1][1]; break;
          case 2: std::swap(U[0][0], U[0][1]); std::swap(U[1][0], U[1][1]); break;
          default: U[0][0] = -U[0][0]; U[1][0] = -U[1][0];
        }
      }
      long det = U[0][0] * U[1][1] - U[0][1] * U[1][0];
      long G[2][2] = {{f[0], f[1]}, {f[1], f[2]}};
      long GU[2][2], Gp[2][2];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) GU[i][j] = G[i][0] * U[0][j] + G[i][1] * U[1][j];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) Gp[i][j] = U[0][i] * GU[0][j] + U[1][i] * GU[1][j];
      BinaryForm Qp{Gp[0][0], Gp[0][1], Gp[1][1]};
      Pair2 vp{det * U[1][1], -det * U[1][0]};
      CoreClassification got = classify_core(Qp, vp);
      c.expect(got.kind == base.kind && got.tss == base.tss);
    }
  }
}

void prop_weyl(Check& c) {
  std::mt19937 rng(8081);
  for (int it = 0; it < 100; ++it) {
    long d = lrand(rng, 1, 4);
    long n = lrand(rng, 2, 6);
    HilbSetup S = make_hilb(d, n);
    Vec E{1, 0, n - 1};
    Rat gamma = make_rat(lrand(rng, -40, 40), lrand(rng, 1, 9));
    RatVec D = divisor_of_slope(S, gamma);
    auto [img, word] = weyl_map_to_movable(S.lattice, S.v, D, {E});
    c.expect(rat_norm2(S.lattice, img) == rat_norm2(S.lattice, D));
    c.expect(rat_pairing(S.lattice, img, rat_of(E)) >= 0);
    auto [img2, word2] = weyl_map_to_movable(S.lattice, S.v, img, {E});
    c.expect(word2.empty() && img2 == img);
    if (word.empty()) c.expect(img == D);
  }
}

void prop_wall_scan(Check& c) {
  std::mt19937 rng(60001);
  const long box = 40;
  for (long d = 1; d <= 4; ++d)
    for (long n = 2; n <= 7; ++n) {
      HilbSetup S = make_hilb(d, n);
      long vv = 2 * (n - 1);
      for (int rep = 0; rep < 2; ++rep) {
        long q2, p2v;
        do {  // slopes capped at half the positive-cone boundary
          q2 = lrand(rng, 2, 9);
          p2v = lrand(rng, 1, q2 - 1);
        } while (4 * p2v * p2v * (n - 1) >= q2 * q2 * d);
        Rat hi = make_rat(p2v, q2);
        SearchRegion region{{divisor_of_slope(S, Rat(0)), divisor_of_slope(S, hi)}};
        RatVec ample = divisor_of_slope(S, hi / 2);
        WallList got = nef_walls(S.lattice, S.v, region, ample);
        c.expect(got.complete);
        std::set<std::array<long, 3>> expect;
        for (long r = -box; r <= box; ++r)
          for (long x = -box; x <= box; ++x)
            for (long s = -box; s <= box; ++s) {
              long q = 2 * d * x * x - 2 * r * s;
              long m = (n - 1) * r - s;
              if (q < -2 || m < 0 || 2 * m > vv) continue;
              if (vv * q - m * m >= 0) continue;
              long nr = vv * r - m, nx = vv * x, ns = vv * s - m * (1 - n);
              long g = std::abs(std::gcd(std::gcd(nr, nx), ns));
              if (g == 0) continue;
              nr /= g, nx /= g, ns /= g;
              auto side = [&](long pn, long pd) {
                long val = -2 * d * nx * pd - pn * ((n - 1) * nr + ns);
                return val == 0 ? 0 : (val > 0 ? 1 : -1);
              };
              int s0 = side(0, 1), s1 = side(p2v, q2);
              if ((s0 > 0 && s1 > 0) || (s0 < 0 && s1 < 0)) continue;
              std::array<long, 3> key{nr, nx, ns}, negk{-nr, -nx, -ns};
              expect.insert(std::min(key, negk));
            }
        std::set<std::array<long, 3>> found;
        for (const auto& w : got.walls) {
          std::array<long, 3> key{static_cast<long>(w.normal[0]),
                                  static_cast<long>(w.normal[1]),
                                  static_cast<long>(w.normal[2])};
          std::array<long, 3> negk{-key[0], -key[1], -key[2]};
          found.insert(std::min(key, negk));
        }
        c.expect(found == expect);
      }
    }
}

bool crit7_property_suites(Check& c) {
  prop_pell(c);
  prop_represent_box(c);
  prop_reflect_saturate(c);
  prop_classify_invariance(c);
  prop_weyl(c);
  prop_wall_scan(c);
  return c.ok;
}

struct Criterion {
  int num;
  const char* name;
  bool (*run)(Check&);
  long budget_ms;
};

}  // namespace

int main() {
  const Criterion plan[] = {
      {1, "eight-wall table, seven points on a degree-two surface", crit1_eight_wall_table, 1000},
      {2, "two-point nef boundary at degree sixty-two", crit2_nef_boundary, 1000},
      {3, "movable boundary grid", crit3_movable_grid, 5000},
      {4, "rank-two example: divisorial walls, no flops", crit4_rank2, 5000},
      {5, "flop stratification examples", crit5_flop_strata, 2000},
      {6, "fibration existence grid", crit6_fibration_grid, 2000},
      {7, "randomized property suites", crit7_property_suites, 60000},
  };
  bool all_ok = true;
  for (const auto& cr : plan) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = cr.run(c);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion %d threw: %s\n", cr.num, e.what());
      ok = false;
    }
    auto t1 = std::chrono::steady_clock::now();
    long ms = static_cast<long>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    if (ms > cr.budget_ms) ok = false;
    std::printf("%s  criterion %d: %s (%ld ms, budget %ld ms)\n", ok ? "PASS" : "FAIL", cr.num,
                cr.name, ms, cr.budget_ms);
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
