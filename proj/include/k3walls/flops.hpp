#pragma once

#include <functional>
#include <string>

#include "wall.hpp"

namespace k3walls {

// Multiset of classes with q >= 0 and positive pairing with v summing to v,
// parts ordered by (pairing with v, lex).
struct PositivePartition {
  std::vector<Pair2> parts;
  bool operator==(const PositivePartition& o) const { return parts == o.parts; }
  bool operator<(const PositivePartition& o) const {
    if (parts.size() != o.parts.size()) return parts.size() < o.parts.size();
    return parts < o.parts;
  }
};

// All u with q(u) >= 0 and 1 <= (v,u) <= v^2 - 1, sorted by (pairing, lex).
inline std::vector<Pair2> positive_pool(const BinaryForm& Q, const Pair2& v) {
  Int vv = pf2(Q, v);
  std::vector<Pair2> pool;
  for (Int mm = 1; mm <= vv - 1; ++mm)
    for (const auto& u : classes_with_pairing(Q, v, mm)) pool.push_back(u);
  std::sort(pool.begin(), pool.end(), [&](const Pair2& a, const Pair2& b) {
    Int ma = pf(Q, v, a), mb = pf(Q, v, b);
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return pool;
}

// Every way to write v as a sum of pool classes (repetition allowed),
// trivial partition [v] first.  max_parts = 0 means unbounded.
inline std::vector<PositivePartition> positive_partitions(const BinaryForm& Q, const Pair2& v,
                                                          size_t max_parts = 0) {
  Int vv = pf2(Q, v);
  if (vv <= 0) throw InputError("v^2 must be positive");
  std::vector<Pair2> pool = positive_pool(Q, v);
  std::vector<Int> poolm(pool.size());
  for (size_t i = 0; i < pool.size(); ++i) poolm[i] = pf(Q, v, pool[i]);
  std::vector<PositivePartition> out;
  out.push_back({{v}});
  std::vector<Pair2> cur;
  std::function<void(size_t, Pair2)> rec = [&](size_t i, Pair2 rem) {
    if (p2zero(rem)) {
      out.push_back({cur});
      return;
    }
    Int mr = pf(Q, v, rem);
    if (mr <= 0) return;
    if (pf2(Q, rem) < 0) return;
    if (i >= pool.size() || mr < poolm[i]) return;
    if (max_parts && cur.size() == max_parts) return;
    // take pool[i] (repetition allowed), or move past it
    cur.push_back(pool[i]);
    rec(i, p2sub(rem, pool[i]));
    cur.pop_back();
    rec(i + 1, rem);
  };
  rec(0, v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct TwoPartStratum {
  Pair2 a, b;
  Int codim;  // (a,b) - 1
};

inline std::vector<TwoPartStratum> two_part_strata(const BinaryForm& Q, const Pair2& v) {
  std::vector<TwoPartStratum> out;
  for (const auto& P : positive_partitions(Q, v, 2))
    if (P.parts.size() == 2)
      out.push_back({P.parts[0], P.parts[1], pf(Q, P.parts[0], P.parts[1]) - 1});
  return out;
}

// P refines R: the parts of P regroup into the parts of R.  Assign each part
// of P to a part of R; pairing with v gives a sharp budget per group.
inline bool refines(const BinaryForm& Q, const Pair2& v, const PositivePartition& P,
                    const PositivePartition& R) {
  if (P.parts.size() < R.parts.size()) return false;
  size_t k = R.parts.size();
  std::vector<Pair2> residual(R.parts);
  std::vector<Int> budget(k);
  for (size_t t = 0; t < k; ++t) budget[t] = pf(Q, v, R.parts[t]);
  std::function<bool(size_t)> assign = [&](size_t e) -> bool {
    if (e == P.parts.size()) {
      for (size_t t = 0; t < k; ++t)
        if (!p2zero(residual[t])) return false;
      return true;
    }
    Int me = pf(Q, v, P.parts[e]);
    for (size_t t = 0; t < k; ++t) {
      if (budget[t] < me) continue;
      // identical groups are interchangeable: only try the first empty one
      if (p2zero(p2sub(residual[t], R.parts[t]))) {
        bool dup = false;
        for (size_t t2 = 0; t2 < t; ++t2)
          if (p2zero(p2sub(residual[t2], R.parts[t2])) && R.parts[t2] == R.parts[t]) dup = true;
        if (dup) continue;
      }
      residual[t] = p2sub(residual[t], P.parts[e]);
      budget[t] -= me;
      if (assign(e + 1)) return true;
      residual[t] = p2add(residual[t], P.parts[e]);
      budget[t] += me;
    }
    return false;
  };
  return assign(0);
}

struct FlopStrata {
  std::vector<PositivePartition> partitions;  // all of them, trivial [v] included
  std::vector<PositivePartition> nontrivial;  // >= 2 parts
  std::vector<TwoPartStratum> two_part;
  std::vector<long> component_of;   // per nontrivial index
  long components = 0;              // comparability classes of nontrivial strata
  std::vector<size_t> maximal;      // nontrivial refined by no coarser nontrivial one
  bool spherical_free = true;
  bool isotropic_free = true;
};

// Stratification of the exceptional locus by sum decompositions of v in a
// rank-2 hyperbolic lattice.  strict demands the structural hypothesis (no
// spherical and no isotropic classes); otherwise the flags just report it.
inline FlopStrata flop_strata(const Mat& gram, const Pair2& v, bool strict = false) {
  if (gram.size() != 2 || gram[0].size() != 2 || gram[1].size() != 2)
    throw InputError("gram matrix must be 2x2");
  if (gram[0][1] != gram[1][0]) throw InputError("gram matrix must be symmetric");
  if (gram[0][0] % 2 != 0 || gram[1][1] % 2 != 0)
    throw InputError("lattice must be even: diagonal entries divisible by 2");
  BinaryForm Q = form_of_gram(gram);
  if (form_disc4(Q) <= 0) throw InputError("lattice must be hyperbolic: det(gram) < 0");
  if (gcd_int(v.first, v.second) > 1) throw InputError("v must be primitive");
  if (pf2(Q, v) <= 0) throw InputError("v^2 must be positive");

  FlopStrata out;
  out.spherical_free = !spherical_data(Q).any;
  out.isotropic_free = isotropic_primitive(Q).empty();
  if (strict && !out.spherical_free)
    throw InputError("hypothesis violated: the lattice has spherical classes");
  if (strict && !out.isotropic_free)
    throw InputError("hypothesis violated: the lattice has isotropic classes");

  out.partitions = positive_partitions(Q, v);
  for (const auto& P : out.partitions)
    if (P.parts.size() >= 2) out.nontrivial.push_back(P);
  out.two_part = two_part_strata(Q, v);

  size_t N = out.nontrivial.size();
  std::vector<size_t> parent(N);
  for (size_t i = 0; i < N; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<bool>> finer(N, std::vector<bool>(N, false));
  for (size_t i = 0; i < N; ++i)
    for (size_t j = 0; j < N; ++j)
      if (i != j) finer[i][j] = refines(Q, v, out.nontrivial[i], out.nontrivial[j]);
  for (size_t i = 0; i < N; ++i)
    for (size_t j = i + 1; j < N; ++j)
      if (finer[i][j] || finer[j][i]) parent[find(i)] = find(j);
  std::map<size_t, long> label;
  out.component_of.resize(N);
  for (size_t i = 0; i < N; ++i) {
    size_t root = find(i);
    if (!label.count(root)) label[root] = static_cast<long>(label.size());
    out.component_of[i] = label[root];
  }
  out.components = static_cast<long>(label.size());
  for (size_t i = 0; i < N; ++i) {
    bool coarser_exists = false;
    for (size_t j = 0; j < N && !coarser_exists; ++j)
      if (j != i && finer[i][j]) coarser_exists = true;
    if (!coarser_exists) out.maximal.push_back(i);
  }
  return out;
}

}  // namespace k3walls
