#include <catch2/catch_amalgamated.hpp>

#include "k3walls/lattice.hpp"

using namespace k3walls;

TEST_CASE("mukai_from_ns builds the extended lattice") {
  Lattice L = mukai_from_ns(Mat{{2}});
  REQUIRE(L.rank() == 3);
  REQUIRE(L.gram[0][2] == -1);
  REQUIRE(L.gram[2][0] == -1);
  REQUIRE(L.gram[1][1] == 2);
  REQUIRE(L.gram[0][0] == 0);
  REQUIRE(L.gram[2][2] == 0);

  auto sig = signature(L);
  REQUIRE(sig[0] == 2);
  REQUIRE(sig[1] == 1);
  REQUIRE(sig[2] == 0);

  Lattice L2 = mukai_from_ns(Mat{{28, 0}, {0, -4}});
  REQUIRE(L2.rank() == 4);
  auto sig2 = signature(L2);
  REQUIRE(sig2[0] == 2);
  REQUIRE(sig2[1] == 2);
}

TEST_CASE("pairing matches the rank/degree convention") {
  Lattice L = mukai_from_ns(Mat{{2}});
  Vec v{1, 0, -6};
  // ((r,c,s),(r',c',s')) = c N c' - r s' - s r'
  REQUIRE(norm2(L, v) == 12);
  REQUIRE(pairing(L, v, Vec{0, 0, -1}) == 1);
  REQUIRE(pairing(L, v, Vec{1, -1, 2}) == 4);
  REQUIRE(pairing(L, v, Vec{2, -3, 5}) == 7);
  REQUIRE(norm2(L, Vec{2, -3, 5}) == -2);
  REQUIRE(norm2(L, Vec{1, -1, 1}) == 0);
  REQUIRE(norm2(L, Vec{1, -1, 0}) == 2);

  Lattice L2 = mukai_from_ns(Mat{{28, 0}, {0, -4}});
  Vec w{1, 0, 0, -1};
  REQUIRE(norm2(L2, w) == 2);
  REQUIRE(pairing(L2, w, Vec{0, 1, 0, 0}) == 0);
  REQUIRE(norm2(L2, Vec{0, 1, 0, 0}) == 28);
  REQUIRE(norm2(L2, Vec{0, 0, 1, 0}) == -4);
}

TEST_CASE("pairing validates dimensions") {
  Lattice L = mukai_from_ns(Mat{{2}});
  REQUIRE_THROWS_AS(pairing(L, Vec{1, 0}, Vec{0, 0, 1}), InputError);
  REQUIRE_THROWS_AS(make_lattice(Mat{{0, 1}, {1}}), InputError);
}

TEST_CASE("vperp of the ideal-sheaf class") {
  Lattice L = mukai_from_ns(Mat{{2}});
  Vec v{1, 0, -1};
  Sublattice S = vperp(L, v);
  REQUIRE(S.basis.size() == 2);
  // the restricted form is even of determinant -4 and signature (1,1)
  Int det = S.gram[0][0] * S.gram[1][1] - S.gram[0][1] * S.gram[1][0];
  REQUIRE(det == -4);
  for (const auto& row : S.basis) REQUIRE(pairing(L, row, v) == 0);
  Lattice R = sub_as_lattice(S);
  auto sig = signature(R);
  REQUIRE(sig[0] == 1);
  REQUIRE(sig[1] == 1);

  // ambient <-> sublattice round trip
  Vec c;
  REQUIRE(to_sub(S, Vec{1, 0, 1}, c));
  REQUIRE(from_sub(S, c) == Vec{1, 0, 1});
  REQUIRE_FALSE(to_sub(S, v, c));
}

TEST_CASE("saturate recovers the primitive closure") {
  Lattice L = mukai_from_ns(Mat{{2}});
  Vec v{1, 0, -6};
  Vec a{0, 0, -1};
  Sublattice S = saturate(L, Mat{scale(3, v), scale(3, a)});
  REQUIRE(S.basis.size() == 2);
  Vec c;
  REQUIRE(to_sub(S, v, c));  // v itself is in the saturation
  REQUIRE(to_sub(S, a, c));
  Int det = S.gram[0][0] * S.gram[1][1] - S.gram[0][1] * S.gram[1][0];
  REQUIRE(det == -1);  // gram [[12,1],[1,0]] in some basis
}

TEST_CASE("reflection in a -2 class is an isometry of order two") {
  Lattice L = mukai_from_ns(Mat{{2}});
  Vec s{1, 0, 1};
  REQUIRE(norm2(L, s) == -2);
  Vec u{0, 0, -1};
  Vec r = reflect(L, s, u);
  REQUIRE(r == Vec{1, 0, 0});
  REQUIRE(norm2(L, r) == norm2(L, u));
  REQUIRE(reflect(L, s, r) == u);
  REQUIRE(pairing(L, r, s) == -pairing(L, u, s));
  REQUIRE(reflect(L, s, s) == neg(s));
  REQUIRE_THROWS_AS(reflect(L, Vec{0, 1, 0}, u), InputError);
}

TEST_CASE("projection to vperp kills the v component") {
  Lattice L = mukai_from_ns(Mat{{2}});
  Vec v{1, 0, -6};
  Vec a{1, -1, 2};
  RatVec p = perp_project(L, v, a);
  RatVec vr(3);
  for (int i = 0; i < 3; ++i) vr[i] = Rat(v[i]);
  REQUIRE(rat_pairing(L, p, vr) == 0);
  // q(proj a) = a^2 - (v,a)^2 / v^2
  REQUIRE(rat_norm2(L, p) == Rat(-2) - make_rat(16, 12));
}
