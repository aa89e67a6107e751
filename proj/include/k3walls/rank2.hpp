#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lattice.hpp"

namespace k3walls {

// Worked example on a surface with intersection form diag(28, -4): the moduli
// space for v = (1, 0,0, -1) has contraction walls but no flopping ones.

inline Lattice rank2_example_lattice() { return mukai_from_ns(Mat{{28, 0}, {0, -4}}); }

inline Vec rank2_example_v() { return {1, 0, 0, -1}; }

// Spherical classes orthogonal to v: (X, a, b, X) with X^2 - 14 a^2 + 2 b^2 = 1.
// Also reachable through represent(), but the direct scan keeps the example
// checkable in isolation.
inline std::vector<std::array<long, 3>> rank2_divisorial_witnesses(long bound) {
  std::vector<std::array<long, 3>> out;
  for (long X = 1; X <= bound; ++X)
    for (long a = -bound; a <= bound; ++a)
      for (long b = -bound; b <= bound; ++b)
        if (X * X - 14 * a * a + 2 * b * b == 1) out.push_back({X, a, b});
  std::sort(out.begin(), out.end());
  return out;
}

struct Rank2FlopScan {
  bool spherical_found = false;        // some q(a) = -2 with (v,a) = 1
  long splittings = 0;                 // v = a + b, q(a), q(b) >= 0, <v,a> hyperbolic
  long non_divisorial_splittings = 0;  // splittings whose parts are not both null
  long candidates_checked = 0;
};

// Box scan over classes a = (r, alpha, beta, r-1) (the (v,a) = 1 slice).
// A flopping wall needs a spherical class there or a sum decomposition on a
// wall without isotropic classes of small pairing; hyperbolicity of <v, a>
// with v^2 = 2 and (v,a) = 1 forces q(a) <= 0, so every splitting found has
// null parts and its wall is a divisorial contraction, never a flop.
inline Rank2FlopScan rank2_flop_scan(long bound) {
  Rank2FlopScan out;
  for (long r = -bound + 1; r <= bound; ++r)
    for (long alpha = -bound; alpha <= bound; ++alpha)
      for (long beta = -bound; beta <= bound; ++beta) {
        ++out.candidates_checked;
        long qa2 = 14 * alpha * alpha - 2 * beta * beta - r * (r - 1);  // q(a)/2
        long qb2 = 14 * alpha * alpha - 2 * beta * beta + (1 - r) * r;  // q(v-a)/2
        if (qa2 == -1) out.spherical_found = true;
        // q(a) >= 0, q(b) >= 0, and v^2 q(a) - (v,a)^2 = 4 qa2 - 1 < 0
        if (qa2 >= 0 && qb2 >= 0 && 4 * qa2 < 1) {
          ++out.splittings;
          if (qa2 != 0 || qb2 != 0) ++out.non_divisorial_splittings;
        }
      }
  return out;
}

// Residue certificate: 14 a^2 - 2 b^2 - r(r-1) is even for every residue
// triple, so it never equals -1; checked exhaustively modulo the modulus.
inline bool rank2_flop_residue_certificate(long modulus = 4) {
  for (long r = 0; r < modulus; ++r)
    for (long a = 0; a < modulus; ++a)
      for (long b = 0; b < modulus; ++b) {
        long lhs = (14 * a * a - 2 * b * b - r * (r - 1)) % modulus;
        if ((lhs + modulus) % modulus == (modulus - 1) % modulus) return false;
      }
  return true;
}

}  // namespace k3walls
