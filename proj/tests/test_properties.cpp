#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "k3walls/cones.hpp"
#include "k3walls/hilb.hpp"

using namespace k3walls;

namespace {

long lrand(std::mt19937& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("fundamental solutions are valid and minimal") {
  for (long D = 2; D <= 500; ++D) {
    if (is_square(Int(D))) continue;
    CAPTURE(D);
    PellSolution s = pell_fundamental(D);
    REQUIRE(s.x >= 1);
    REQUIRE(s.y >= 1);
    REQUIRE(s.x * s.x - D * s.y * s.y == 1);
    // direct minimality scan; fundamental y can be astronomically large
    // (D = 421 needs 33 digits), so only sweep the reachable ones
    Int ycap = s.y - 1 < 10000 ? s.y - 1 : Int(10000);
    for (Int y = 1; y <= ycap; ++y)
      REQUIRE_FALSE(is_square(1 + D * y * y));
  }
}

TEST_CASE("boxed representations agree with a direct sweep") {
  std::mt19937 rng(311);
  const long bound = 200;
  int done = 0;
  while (done < 100) {
    long a = 2 * lrand(rng, -5, 5);
    long b = lrand(rng, -8, 8);
    long c = 2 * lrand(rng, -5, 5);
    if (b * b - a * c <= 0) continue;  // hyperbolic plane only
    long n = 2 * lrand(rng, -10, 10);
    ++done;
    BinaryForm Q{a, b, c};
    std::vector<std::pair<Int, Int>> direct;
    for (long x = -bound; x <= bound; ++x)
      for (long y = -bound; y <= bound; ++y)
        if (a * x * x + 2 * b * x * y + c * y * y == n) direct.emplace_back(x, y);
    sort_points(direct);
    REQUIRE(represent_box(Q, n, bound) == direct);
  }
}

TEST_CASE("reflections are isometries and saturation is idempotent") {
  std::mt19937 rng(1723);
  for (int it = 0; it < 500; ++it) {
    CAPTURE(it);
    long d = lrand(rng, 1, 5);
    Lattice L = mukai_from_ns(Mat{{2 * d}});

    // spherical class (r, x, (d x^2 + 1) / r) for any divisor r
    long x = lrand(rng, -10, 10);
    long N = d * x * x + 1;
    std::vector<long> divs;
    for (long r = 1; r <= N; ++r)
      if (N % r == 0) divs.push_back(r);
    long r = divs[lrand(rng, 0, static_cast<long>(divs.size()) - 1)];
    if (lrand(rng, 0, 1)) r = -r;
    Vec s{r, x, N / r};
    REQUIRE(norm2(L, s) == -2);

    Vec u{lrand(rng, -10, 10), lrand(rng, -10, 10), lrand(rng, -10, 10)};
    Vec w{lrand(rng, -10, 10), lrand(rng, -10, 10), lrand(rng, -10, 10)};
    Vec ru = reflect(L, s, u);
    REQUIRE(reflect(L, s, ru) == u);
    REQUIRE(norm2(L, ru) == norm2(L, u));
    REQUIRE(pairing(L, ru, reflect(L, s, w)) == pairing(L, u, w));
    REQUIRE(reflect(L, s, s) == neg(s));

    if (u == Vec{0, 0, 0} || w == Vec{0, 0, 0}) continue;
    Sublattice W = saturate(L, Mat{u, w});
    Sublattice W2 = saturate(L, W.basis);
    REQUIRE(W2.basis == W.basis);
    REQUIRE(W2.gram == W.gram);
  }
}

TEST_CASE("classification is invariant under basis changes") {
  std::mt19937 rng(947);
  // one lattice of every kind, v = (1, 0)
  const long forms[][3] = {{12, 1, 0},  {12, 0, -2}, {12, 2, 0},
                           {12, 4, -2}, {12, 7, -2}, {12, 11, -2}, {2, 5, 2}};
  for (const auto& f : forms) {
    BinaryForm Q{f[0], f[1], f[2]};
    Pair2 v{1, 0};
    CoreClassification base = classify_core(Q, v);
    for (int it = 0; it < 50; ++it) {
      CAPTURE(f[0], f[1], f[2], it);
      // random product of elementary transforms
      long U[2][2] = {{1, 0}, {0, 1}};
      int steps = static_cast<int>(lrand(rng, 1, 6));
      for (int k = 0; k < steps; ++k) {
        long t = lrand(rng, -3, 3);
        switch (lrand(rng, 0, 3)) {
          case 0:  // column op: c1 += t c0
            U[0][1] += t * U[0][0];
            U[1][1] += t * U[1][0];
            break;
          case 1:  // column op: c0 += t c1
            U[0][0] += t * U[0][1];
            U[1][0] += t * U[1][1];
            break;
          case 2:  // swap columns
            std::swap(U[0][0], U[0][1]);
            std::swap(U[1][0], U[1][1]);
            break;
          default:  // negate a column
            U[0][0] = -U[0][0];
            U[1][0] = -U[1][0];
        }
      }
      long det = U[0][0] * U[1][1] - U[0][1] * U[1][0];
      REQUIRE((det == 1 || det == -1));

      // G' = U^T G U, v' = U^{-1} v
      long G[2][2] = {{f[0], f[1]}, {f[1], f[2]}};
      long GU[2][2], Gp[2][2];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) GU[i][j] = G[i][0] * U[0][j] + G[i][1] * U[1][j];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) Gp[i][j] = U[0][i] * GU[0][j] + U[1][i] * GU[1][j];
      BinaryForm Qp{Gp[0][0], Gp[0][1], Gp[1][1]};
      Pair2 vp{det * U[1][1] * 1, det * -U[1][0] * 1};

      REQUIRE(pf2(Qp, vp) == pf2(Q, v));
      CoreClassification got = classify_core(Qp, vp);
      REQUIRE(got.kind == base.kind);
      REQUIRE(got.tss == base.tss);
    }
  }
}

TEST_CASE("chamber folding is idempotent and norm preserving") {
  std::mt19937 rng(8081);
  for (int it = 0; it < 100; ++it) {
    CAPTURE(it);
    long d = lrand(rng, 1, 4);
    long n = lrand(rng, 2, 6);
    HilbSetup S = make_hilb(d, n);
    Vec E{1, 0, n - 1};  // negative square, orthogonal to v
    REQUIRE(norm2(S.lattice, E) == -2 * (n - 1));
    REQUIRE(pairing(S.lattice, S.v, E) == 0);

    Rat gamma = make_rat(lrand(rng, -40, 40), lrand(rng, 1, 9));
    RatVec D = divisor_of_slope(S, gamma);
    auto [img, word] = weyl_map_to_movable(S.lattice, S.v, D, {E});
    REQUIRE(rat_norm2(S.lattice, img) == rat_norm2(S.lattice, D));
    REQUIRE(rat_pairing(S.lattice, img, rat_of(E)) >= 0);
    auto [img2, word2] = weyl_map_to_movable(S.lattice, S.v, img, {E});
    REQUIRE(word2.empty());
    REQUIRE(img2 == img);
    if (word.empty()) REQUIRE(img == D);
  }
}

TEST_CASE("wall search agrees with a direct box scan") {
  std::mt19937 rng(60001);
  const long box = 40;
  for (long d = 1; d <= 4; ++d)
    for (long n = 2; n <= 7; ++n) {
      HilbSetup S = make_hilb(d, n);
      long vv = 2 * (n - 1);
      for (int rep = 0; rep < 2; ++rep) {
        // slopes capped at half the positive-cone boundary sqrt(d/(n-1))
        long q2, p2v;
        do {
          q2 = lrand(rng, 2, 9);
          p2v = lrand(rng, 1, q2 - 1);
        } while (4 * p2v * p2v * (n - 1) >= q2 * q2 * d);
        // region [D(0), D(p2/q2)], ample in between
        Rat hi = make_rat(p2v, q2);
        SearchRegion region{{divisor_of_slope(S, Rat(0)), divisor_of_slope(S, hi)}};
        RatVec ample = divisor_of_slope(S, hi / 2);
        CAPTURE(d, n, p2v, q2);

        WallList got = nef_walls(S.lattice, S.v, region, ample);
        REQUIRE(got.complete);

        // direct scan: same filter, sign-free primitive normals
        std::set<std::array<long, 3>> expect;
        for (long r = -box; r <= box; ++r)
          for (long x = -box; x <= box; ++x)
            for (long s = -box; s <= box; ++s) {
              long q = 2 * d * x * x - 2 * r * s;
              long m = (n - 1) * r - s;
              if (q < -2 || m < 0 || 2 * m > vv) continue;
              if (vv * q - m * m >= 0) continue;
              long nr = vv * r - m * 1, nx = vv * x, ns = vv * s - m * (1 - n);
              long g = std::abs(std::gcd(std::gcd(nr, nx), ns));
              if (g == 0) continue;
              nr /= g, nx /= g, ns /= g;
              // pairing sign of the normal against the region endpoints
              auto side = [&](long pn, long pd) {
                long val = -2 * d * nx * pd - pn * ((n - 1) * nr + ns);
                return val == 0 ? 0 : (val > 0 ? 1 : -1);
              };
              int s0 = side(0, 1), s1 = side(p2v, q2);
              if ((s0 > 0 && s1 > 0) || (s0 < 0 && s1 < 0)) continue;
              std::array<long, 3> key{nr, nx, ns}, neg{-nr, -nx, -ns};
              expect.insert(std::min(key, neg));
            }

        std::set<std::array<long, 3>> found;
        for (const auto& w : got.walls) {
          std::array<long, 3> key{static_cast<long>(w.normal[0]),
                                  static_cast<long>(w.normal[1]),
                                  static_cast<long>(w.normal[2])};
          std::array<long, 3> neg{-key[0], -key[1], -key[2]};
          found.insert(std::min(key, neg));
        }
        REQUIRE(found == expect);
      }
    }
}
