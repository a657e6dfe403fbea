#pragma once
/// @file modmat.hpp
/// @brief 2x2 matrices over Z/nZ and finite matrix-group machinery: closure,
///        reduction kernels, joins, CRT splitting, quotients and group
///        fingerprints (order, abelian invariants, conjugacy-class counts).

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <set>
#include <unordered_set>

#include "tanglekit/numeric.hpp"

namespace tanglekit {

// ============================================================================
// ResidueMatrix
// ============================================================================

/// A 2x2 matrix over Z/nZ carrying its level n.  Entries are stored reduced.
struct ResidueMatrix {
  i64 level = 1;
  i64 a = 0, b = 0, c = 0, d = 0;

  ResidueMatrix() = default;
  ResidueMatrix(i64 n, i64 a_, i64 b_, i64 c_, i64 d_) : level(n) {
    require(n >= 1, "ResidueMatrix: level must be >= 1");
    require(n < (i64(1) << 16), "ResidueMatrix: level too large (must be < 65536)");
    auto red = [n](i64 v) { return ((v % n) + n) % n; };
    a = red(a_);
    b = red(b_);
    c = red(c_);
    d = red(d_);
  }

  static ResidueMatrix identity(i64 n) { return ResidueMatrix(n, 1, 0, 0, 1); }

  i64 det() const { return ((a * d - b * c) % level + level) % level; }
  i64 trace() const { return (a + d) % level; }

  bool is_identity() const { return *this == identity(level); }

  /// Determinant is a unit mod level.
  bool is_invertible() const { return std::gcd(det(), level) == 1; }

  /// Packed lexicographic key (a,b,c,d); valid because level < 2^16.
  u64 key() const {
    return (static_cast<u64>(a) << 48) | (static_cast<u64>(b) << 32) |
           (static_cast<u64>(c) << 16) | static_cast<u64>(d);
  }

  static ResidueMatrix from_key(i64 level, u64 k) {
    return ResidueMatrix(level, static_cast<i64>((k >> 48) & 0xffff),
                         static_cast<i64>((k >> 32) & 0xffff),
                         static_cast<i64>((k >> 16) & 0xffff),
                         static_cast<i64>(k & 0xffff));
  }

  friend bool operator==(const ResidueMatrix& x, const ResidueMatrix& y) {
    return x.level == y.level && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend bool operator!=(const ResidueMatrix& x, const ResidueMatrix& y) { return !(x == y); }

  /// Lexicographic order on (a,b,c,d); only meaningful at equal level.
  friend bool operator<(const ResidueMatrix& x, const ResidueMatrix& y) {
    return x.key() < y.key();
  }

  std::string to_string() const {
    return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" + std::to_string(c) + "," +
           std::to_string(d) + "]] mod " + std::to_string(level);
  }
};

inline ResidueMatrix operator*(const ResidueMatrix& x, const ResidueMatrix& y) {
  ensure(x.level == y.level, "matrix product requires equal levels");
  i64 n = x.level;
  return ResidueMatrix(n, x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                       x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
}

/// Inverse via the adjugate; requires unit determinant.
inline ResidueMatrix inverse(const ResidueMatrix& m) {
  require(m.is_invertible(), "inverse: matrix " + m.to_string() + " is not invertible");
  i64 di = inv_mod(m.det(), m.level);
  return ResidueMatrix(m.level, di * m.d, -di * m.b, -di * m.c, di * m.a);
}

inline ResidueMatrix mat_pow(ResidueMatrix base, i64 e) {
  require(e >= 0, "mat_pow: nonnegative exponent required");
  ResidueMatrix r = ResidueMatrix::identity(base.level);
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

/// Reduce mod m, where m | level.
inline ResidueMatrix reduce_matrix(const ResidueMatrix& g, i64 m) {
  require(m >= 1 && g.level % m == 0, "reduce_matrix: target level must divide source level");
  return ResidueMatrix(m, g.a, g.b, g.c, g.d);
}

/// |GL(2, Z/nZ)| = n^4 prod_{p|n} (1 - 1/p)(1 - 1/p^2).
inline Int order_gl2(i64 n) {
  require(n >= 1, "order_gl2: level must be >= 1");
  Int r = Int(n) * n * n * n;
  i64 m = n;
  for (i64 p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r /= Int(p) * p * p;
      r *= Int(p - 1) * (p - 1) * (p + 1);
    }
  }
  if (m > 1) {
    r /= Int(m) * m * m;
    r *= Int(m - 1) * (m - 1) * (m + 1);
  }
  return r;
}

// ============================================================================
// FiniteMatrixGroup
// ============================================================================

inline constexpr u64 kDefaultClosureBudget = 5'000'000;

/// A subgroup of GL(2,Z/nZ): a small generating set plus the materialized
/// element set (sorted packed keys, i.e. lexicographic on entries).
class FiniteMatrixGroup {
 public:
  FiniteMatrixGroup() : level_(1) { elems_ = {ResidueMatrix::identity(1).key()}; }

  /// Subgroup generated by `gens`, by breadth-first closure.
  static FiniteMatrixGroup closure(i64 level, const std::vector<ResidueMatrix>& gens,
                                   u64 budget = kDefaultClosureBudget) {
    std::vector<ResidueMatrix> use;
    for (const auto& g : gens) {
      require(g.level == level, "closure: generator level mismatch: " + g.to_string());
      require(g.is_invertible(), "closure: non-invertible generator " + g.to_string());
      if (!g.is_identity()) use.push_back(g);
    }
    FiniteMatrixGroup out;
    out.level_ = level;
    out.gens_ = use;
    out.elems_ = closed_set(level, use, budget);
    return out;
  }

  /// Wrap an element set that is already a subgroup; recomputes a small
  /// generating set greedily and asserts the set really is closed.
  static FiniteMatrixGroup from_element_set(i64 level, std::vector<u64> keys,
                                            u64 budget = kDefaultClosureBudget) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    require(!keys.empty(), "from_element_set: empty set");
    std::vector<ResidueMatrix> gens;
    std::vector<u64> have = {ResidueMatrix::identity(level).key()};
    for (u64 k : keys) {
      if (std::binary_search(have.begin(), have.end(), k)) continue;
      gens.push_back(ResidueMatrix::from_key(level, k));
      have = closed_set(level, gens, budget);
      std::sort(have.begin(), have.end());
    }
    ensure(have.size() == keys.size() && std::equal(have.begin(), have.end(), keys.begin()),
           "from_element_set: supplied element set is not closed under the group operations");
    FiniteMatrixGroup out;
    out.level_ = level;
    out.gens_ = gens;
    out.elems_ = keys;
    return out;
  }

  static FiniteMatrixGroup trivial(i64 level) { return closure(level, {}); }

  i64 level() const { return level_; }
  u64 order() const { return elems_.size(); }
  const std::vector<ResidueMatrix>& generators() const { return gens_; }
  /// Sorted packed element keys (lexicographic element order).
  const std::vector<u64>& element_keys() const { return elems_; }

  std::vector<ResidueMatrix> elements() const {
    std::vector<ResidueMatrix> out;
    out.reserve(elems_.size());
    for (u64 k : elems_) out.push_back(ResidueMatrix::from_key(level_, k));
    return out;
  }

  bool contains(const ResidueMatrix& g) const {
    return g.level == level_ && std::binary_search(elems_.begin(), elems_.end(), g.key());
  }

  bool is_subgroup_of(const FiniteMatrixGroup& other) const {
    if (level_ != other.level_ || order() > other.order()) return false;
    return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
  }

  bool same_elements(const FiniteMatrixGroup& other) const {
    return level_ == other.level_ && elems_ == other.elems_;
  }

  /// Index of an element key in the sorted element list; throws if absent.
  u32 index_of(u64 key) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), key);
    ensure(it != elems_.end() && *it == key, "index_of: element not in group");
    return static_cast<u32>(it - elems_.begin());
  }

 private:
  /// Breadth-first right-multiplication closure from the identity.
  static std::vector<u64> closed_set(i64 level, const std::vector<ResidueMatrix>& gens,
                                     u64 budget) {
    std::unordered_set<u64> seen;
    std::vector<ResidueMatrix> frontier = {ResidueMatrix::identity(level)};
    seen.insert(frontier[0].key());
    while (!frontier.empty()) {
      std::vector<ResidueMatrix> next;
      for (const auto& e : frontier) {
        for (const auto& g : gens) {
          ResidueMatrix p = e * g;
          if (seen.insert(p.key()).second) {
            if (seen.size() > budget)
              throw ResourceError("closure: element budget of " + std::to_string(budget) +
                                  " exceeded at level " + std::to_string(level));
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<u64> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  i64 level_;
  std::vector<ResidueMatrix> gens_;
  std::vector<u64> elems_;
};

// ============================================================================
// Derived subgroups and projections
// ============================================================================

/// N_e = {g in G : g = I mod e}, for e | level.  Always normal in G.
inline FiniteMatrixGroup kernel_of_reduction(const FiniteMatrixGroup& G, i64 e) {
  require(e >= 1 && G.level() % e == 0,
          "kernel_of_reduction: e = " + std::to_string(e) + " does not divide level " +
              std::to_string(G.level()));
  ResidueMatrix idm = ResidueMatrix::identity(e);
  std::vector<u64> keys;
  for (u64 k : G.element_keys()) {
    ResidueMatrix g = ResidueMatrix::from_key(G.level(), k);
    if (reduce_matrix(g, e) == idm) keys.push_back(k);
  }
  return FiniteMatrixGroup::from_element_set(G.level(), std::move(keys));
}

/// Subgroup of elements satisfying `pred`; the predicate must cut out a subgroup.
inline FiniteMatrixGroup subgroup_where(const FiniteMatrixGroup& G,
                                        const std::function<bool(const ResidueMatrix&)>& pred) {
  std::vector<u64> keys;
  for (u64 k : G.element_keys()) {
    if (pred(ResidueMatrix::from_key(G.level(), k))) keys.push_back(k);
  }
  return FiniteMatrixGroup::from_element_set(G.level(), std::move(keys));
}

/// Join <H1 u H2> inside GL(2, Z/nZ).
inline FiniteMatrixGroup join(const FiniteMatrixGroup& H1, const FiniteMatrixGroup& H2,
                              u64 budget = kDefaultClosureBudget) {
  require(H1.level() == H2.level(), "join: mixed levels");
  std::vector<ResidueMatrix> gens = H1.generators();
  for (const auto& g : H2.generators()) gens.push_back(g);
  FiniteMatrixGroup J = FiniteMatrixGroup::closure(H1.level(), gens, budget);
  ensure(H1.is_subgroup_of(J) && H2.is_subgroup_of(J), "join: arguments not contained in join");
  return J;
}

/// Image pi_m(G) at level m | level(G).
inline FiniteMatrixGroup reduce_level(const FiniteMatrixGroup& G, i64 m) {
  require(m >= 1 && G.level() % m == 0, "reduce_level: target must divide source level");
  std::vector<u64> keys;
  keys.reserve(G.order());
  for (u64 k : G.element_keys()) keys.push_back(reduce_matrix(ResidueMatrix::from_key(G.level(), k), m).key());
  return FiniteMatrixGroup::from_element_set(m, std::move(keys));
}

/// g^{-1} H g at the level of H.
inline FiniteMatrixGroup conjugate_group(const FiniteMatrixGroup& H, const ResidueMatrix& g) {
  require(g.level == H.level(), "conjugate_group: level mismatch");
  ResidueMatrix gi = inverse(g);
  std::vector<u64> keys;
  keys.reserve(H.order());
  for (u64 k : H.element_keys()) keys.push_back((gi * ResidueMatrix::from_key(H.level(), k) * g).key());
  return FiniteMatrixGroup::from_element_set(H.level(), std::move(keys));
}

/// Conjugation test on generators: g^{-1} N g = N for all generators g of G.
inline bool is_normal_in(const FiniteMatrixGroup& N, const FiniteMatrixGroup& G) {
  if (!N.is_subgroup_of(G)) return false;
  for (const auto& g : G.generators()) {
    ResidueMatrix gi = inverse(g);
    for (const auto& x : N.generators()) {
      if (!N.contains(gi * x * g)) return false;
    }
  }
  return true;
}

/// Whether some g in `ambient` conjugates H1 onto H2.
inline bool are_conjugate_subgroups(const FiniteMatrixGroup& ambient, const FiniteMatrixGroup& H1,
                                    const FiniteMatrixGroup& H2) {
  require(ambient.level() == H1.level() && ambient.level() == H2.level(),
          "are_conjugate_subgroups: level mismatch");
  if (H1.order() != H2.order()) return false;
  if (H1.same_elements(H2)) return true;
  for (u64 gk : ambient.element_keys()) {
    ResidueMatrix g = ResidueMatrix::from_key(ambient.level(), gk);
    if (conjugate_group(H1, g).same_elements(H2)) return true;
  }
  return false;
}

/// Sorted determinant image {det g : g in G}; `full` when it is all of (Z/n)^x.
struct DetImage {
  std::vector<i64> residues;
  bool full_determinant = false;
};

inline DetImage det_image(const FiniteMatrixGroup& G) {
  std::set<i64> dets;
  for (u64 k : G.element_keys()) dets.insert(ResidueMatrix::from_key(G.level(), k).det());
  DetImage out;
  out.residues.assign(dets.begin(), dets.end());
  out.full_determinant = static_cast<i64>(out.residues.size()) == euler_phi(G.level());
  return out;
}

/// CRT projections to the prime-power parts of the level, plus the flag
/// telling whether G is the full fiber product of those projections.
struct CrtSplit {
  std::vector<FiniteMatrixGroup> projections;  // one per prime-power factor, ascending
  std::vector<i64> moduli;
  bool full_fiber_product = false;
};

inline CrtSplit crt_split(const FiniteMatrixGroup& G) {
  CrtSplit out;
  i64 n = G.level();
  if (n == 1) {
    out.projections = {G};
    out.moduli = {1};
    out.full_fiber_product = true;
    return out;
  }
  for (const auto& [p, e] : factorize(Int(n))) {
    i64 q = 1;
    for (int i = 0; i < e; ++i) q *= p.convert_to<i64>();
    out.moduli.push_back(q);
  }
  Int prod = 1;
  for (i64 q : out.moduli) {
    out.projections.push_back(reduce_level(G, q));
    prod *= out.projections.back().order();
  }
  out.full_fiber_product = (prod == Int(G.order()));
  return out;
}

// ============================================================================
// Abstract finite groups by index (used for quotients and fingerprints)
// ============================================================================

/// A finite group whose elements are the indices 0..order-1, with
/// multiplication given by a callback.  Quotient groups chain through this.
struct IndexGroup {
  u64 order = 1;
  u32 identity = 0;
  std::vector<u32> gens;                // generating indices (identity excluded)
  std::function<u32(u32, u32)> mul;     // owns captured state

  u32 power(u32 x, u64 e) const {
    u32 r = identity;
    while (e > 0) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  u64 element_order(u32 x) const {
    u64 o = 1;
    u32 y = x;
    while (y != identity) {
      y = mul(y, x);
      ++o;
      ensure(o <= order, "element_order: walk exceeded group order");
    }
    return o;
  }

  u32 inverse(u32 x) const { return power(x, element_order(x) - 1); }
};

inline IndexGroup index_group_of(const FiniteMatrixGroup& G) {
  auto keys = std::make_shared<std::vector<u64>>(G.element_keys());
  i64 level = G.level();
  IndexGroup ig;
  ig.order = keys->size();
  ig.identity = G.index_of(ResidueMatrix::identity(level).key());
  for (const auto& g : G.generators()) {
    u32 i = G.index_of(g.key());
    if (i != ig.identity) ig.gens.push_back(i);
  }
  ig.mul = [keys, level](u32 i, u32 j) -> u32 {
    ResidueMatrix p =
        ResidueMatrix::from_key(level, (*keys)[i]) * ResidueMatrix::from_key(level, (*keys)[j]);
    auto it = std::lower_bound(keys->begin(), keys->end(), p.key());
    return static_cast<u32>(it - keys->begin());
  };
  return ig;
}

/// Subgroup closure inside an IndexGroup: all products of the given indices.
inline std::vector<u32> subgroup_closure_idx(const IndexGroup& G, std::vector<u32> gens) {
  std::unordered_set<u32> seen = {G.identity};
  std::vector<u32> frontier = {G.identity};
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  while (!frontier.empty()) {
    std::vector<u32> next;
    for (u32 e : frontier) {
      for (u32 g : gens) {
        u32 p = G.mul(e, g);
        if (seen.insert(p).second) next.push_back(p);
      }
    }
    frontier = std::move(next);
  }
  std::vector<u32> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

/// Normal closure of the given indices inside the whole IndexGroup.
inline std::vector<u32> normal_closure_idx(const IndexGroup& G, std::vector<u32> seeds) {
  std::vector<u32> gen_inv;
  gen_inv.reserve(G.gens.size());
  for (u32 s : G.gens) gen_inv.push_back(G.inverse(s));
  std::vector<u32> K = subgroup_closure_idx(G, seeds);
  bool grew = true;
  while (grew) {
    grew = false;
    for (u32 k : K) {
      for (std::size_t si = 0; si < G.gens.size(); ++si) {
        u32 c = G.mul(G.mul(gen_inv[si], k), G.gens[si]);
        if (!std::binary_search(K.begin(), K.end(), c)) {
          seeds.push_back(c);
          K = subgroup_closure_idx(G, seeds);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
  }
  return K;
}

/// Quotient of G by a normal subgroup given as a sorted index set.
inline IndexGroup quotient_index_group(const IndexGroup& G, const std::vector<u32>& normal_set) {
  ensure(!normal_set.empty() && G.order % normal_set.size() == 0,
         "quotient_index_group: subgroup size must divide group order");
  auto labels = std::make_shared<std::vector<u32>>(G.order, UINT32_MAX);
  auto reps = std::make_shared<std::vector<u32>>();
  for (u32 i = 0; i < G.order; ++i) {
    if ((*labels)[i] != UINT32_MAX) continue;
    u32 id = static_cast<u32>(reps->size());
    reps->push_back(i);
    for (u32 k : normal_set) {
      u32 e = G.mul(i, k);
      ensure((*labels)[e] == UINT32_MAX || (*labels)[e] == id,
             "quotient_index_group: coset labeling collision (subgroup not closed?)");
      (*labels)[e] = id;
    }
  }
  ensure(reps->size() * normal_set.size() == G.order,
         "quotient_index_group: cosets do not partition the group");
  IndexGroup Q;
  Q.order = reps->size();
  Q.identity = (*labels)[G.identity];
  auto parent_mul = G.mul;
  Q.mul = [labels, reps, parent_mul](u32 i, u32 j) -> u32 {
    return (*labels)[parent_mul((*reps)[i], (*reps)[j])];
  };
  for (u32 g : G.gens) {
    u32 img = (*labels)[g];
    if (img != Q.identity && std::find(Q.gens.begin(), Q.gens.end(), img) == Q.gens.end())
      Q.gens.push_back(img);
  }
  return Q;
}

// ============================================================================
// GroupFingerprint
// ============================================================================

/// Computable isomorphism surrogate.  Equality is necessary, not sufficient,
/// for isomorphism; for abelian groups the invariant factors are complete.
struct GroupFingerprint {
  u64 order = 1;
  bool is_abelian = true;
  std::vector<i64> abelian_invariants;        // d_1 | d_2 | ... when abelian
  i64 exponent = 1;
  u64 conjugacy_class_count = 1;
  std::vector<i64> abelianization_invariants;  // invariant factors of G/[G,G]

  friend bool operator==(const GroupFingerprint& x, const GroupFingerprint& y) {
    return x.order == y.order && x.is_abelian == y.is_abelian &&
           x.abelian_invariants == y.abelian_invariants && x.exponent == y.exponent &&
           x.conjugacy_class_count == y.conjugacy_class_count &&
           x.abelianization_invariants == y.abelianization_invariants;
  }
  friend bool operator!=(const GroupFingerprint& x, const GroupFingerprint& y) {
    return !(x == y);
  }

  std::string to_string() const {
    auto list = [](const std::vector<i64>& v) {
      std::string s = "[";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
      return s + "]";
    };
    return "{order=" + std::to_string(order) + (is_abelian ? ", abelian " : ", nonabelian ") +
           list(abelian_invariants) + ", exp=" + std::to_string(exponent) +
           ", classes=" + std::to_string(conjugacy_class_count) +
           ", ab=" + list(abelianization_invariants) + "}";
  }
};

namespace detail {

/// Invariant factors of an abelian group from its element-order statistics.
/// For each prime p the counts f_j = #{x : v_p(ord x) <= j} determine the
/// conjugate of the partition of p-exponents; transposing recovers the
/// partition, and aligning partitions largest-first across primes yields the
/// invariant-factor chain.
inline std::vector<i64> abelian_invariants_from_orders(const std::vector<u64>& orders) {
  u64 n = orders.size();
  if (n == 1) return {};
  std::vector<std::vector<int>> partitions;  // one descending partition per prime
  for (const auto& [P, e] : factorize(Int(n))) {
    i64 p = P.convert_to<i64>();
    (void)e;
    int maxv = 0;
    std::vector<u64> byval(64, 0);  // byval[j] = #{x : v_p(ord x) = j}
    for (u64 o : orders) {
      int v = 0;
      while (o % static_cast<u64>(p) == 0) {
        o /= static_cast<u64>(p);
        ++v;
      }
      byval[static_cast<std::size_t>(v)]++;
      maxv = std::max(maxv, v);
    }
    // mu_j = log_p(f_j / f_{j-1}) is the conjugate partition.
    std::vector<int> mu;
    u64 f_prev = byval[0];
    u64 f = f_prev;
    for (int j = 1; j <= maxv; ++j) {
      f += byval[static_cast<std::size_t>(j)];
      u64 ratio = f / f_prev;
      ensure(f % f_prev == 0, "abelian invariants: non-integral order-count ratio");
      int s = 0;
      while (ratio > 1) {
        ensure(ratio % static_cast<u64>(p) == 0, "abelian invariants: ratio not a prime power");
        ratio /= static_cast<u64>(p);
        ++s;
      }
      mu.push_back(s);
      f_prev = f;
    }
    // Transpose mu (non-increasing) to get the exponent partition, descending.
    std::vector<int> lambda;
    int rows = mu.empty() ? 0 : mu[0];
    for (int r = 1; r <= rows; ++r) {
      int cnt = 0;
      for (int m : mu)
        if (m >= r) ++cnt;
      lambda.push_back(cnt);
    }
    partitions.push_back(lambda);
  }
  std::size_t k = 0;
  for (const auto& l : partitions) k = std::max(k, l.size());
  std::vector<i64> desc(k, 1);
  std::size_t pi = 0;
  for (const auto& [P, e] : factorize(Int(n))) {
    i64 p = P.convert_to<i64>();
    (void)e;
    const auto& l = partitions[pi++];
    for (std::size_t i = 0; i < l.size(); ++i) {
      i64 q = 1;
      for (int j = 0; j < l[i]; ++j) q *= p;
      desc[i] *= q;
    }
  }
  Int prod = 1;
  for (std::size_t i = 0; i + 1 < desc.size(); ++i)
    ensure(desc[i] % desc[i + 1] == 0, "abelian invariants: divisibility chain broken");
  for (i64 d : desc) prod *= d;
  ensure(prod == Int(n), "abelian invariants: product mismatch");
  std::reverse(desc.begin(), desc.end());  // ascending d_1 | d_2 | ...
  return desc;
}

}  // namespace detail

/// Commutator subgroup [G,G] as a sorted index set (normal closure of the
/// commutators of the generators).
inline std::vector<u32> commutator_subgroup_idx(const IndexGroup& G) {
  std::vector<u32> seeds;
  for (u32 s : G.gens) {
    u32 si = G.inverse(s);
    for (u32 t : G.gens) {
      u32 ti = G.inverse(t);
      seeds.push_back(G.mul(G.mul(G.mul(si, ti), s), t));
    }
  }
  return normal_closure_idx(G, seeds);
}

inline GroupFingerprint fingerprint_of(const IndexGroup& G) {
  GroupFingerprint fp;
  fp.order = G.order;

  std::vector<u64> orders(G.order);
  i64 exponent = 1;
  for (u32 i = 0; i < G.order; ++i) {
    orders[i] = G.element_order(i);
    exponent = std::lcm<i64>(exponent, static_cast<i64>(orders[i]));
  }
  fp.exponent = exponent;

  fp.is_abelian = true;
  for (u32 s : G.gens) {
    for (u32 t : G.gens) {
      if (G.mul(s, t) != G.mul(t, s)) {
        fp.is_abelian = false;
        break;
      }
    }
    if (!fp.is_abelian) break;
  }

  // Conjugacy classes: orbits of conjugation by the generators.
  std::vector<u32> gen_inv;
  gen_inv.reserve(G.gens.size());
  for (u32 s : G.gens) gen_inv.push_back(G.inverse(s));
  std::vector<char> visited(G.order, 0);
  u64 classes = 0;
  for (u32 i = 0; i < G.order; ++i) {
    if (visited[i]) continue;
    ++classes;
    std::vector<u32> stack = {i};
    visited[i] = 1;
    while (!stack.empty()) {
      u32 x = stack.back();
      stack.pop_back();
      for (std::size_t si = 0; si < G.gens.size(); ++si) {
        u32 c = G.mul(G.mul(gen_inv[si], x), G.gens[si]);
        if (!visited[c]) {
          visited[c] = 1;
          stack.push_back(c);
        }
      }
    }
  }
  fp.conjugacy_class_count = classes;
  ensure(fp.is_abelian == (classes == G.order), "fingerprint: abelian/class-count mismatch");

  if (fp.is_abelian) {
    fp.abelian_invariants = detail::abelian_invariants_from_orders(orders);
    fp.abelianization_invariants = fp.abelian_invariants;
    return fp;
  }

  std::vector<u32> comm = commutator_subgroup_idx(G);
  IndexGroup ab = quotient_index_group(G, comm);
  std::vector<u64> ab_orders(ab.order);
  for (u32 i = 0; i < ab.order; ++i) ab_orders[i] = ab.element_order(i);
  fp.abelianization_invariants = detail::abelian_invariants_from_orders(ab_orders);
  return fp;
}

inline GroupFingerprint fingerprint(const FiniteMatrixGroup& G) {
  return fingerprint_of(index_group_of(G));
}

/// Commutator subgroup [G,G] as a materialized matrix group.
inline FiniteMatrixGroup commutator_subgroup(const FiniteMatrixGroup& G) {
  IndexGroup ig = index_group_of(G);
  std::vector<u64> keys;
  for (u32 i : commutator_subgroup_idx(ig)) keys.push_back(G.element_keys()[i]);
  return FiniteMatrixGroup::from_element_set(G.level(), std::move(keys));
}

/// Fingerprint of G/N; checks containment and normality.
inline GroupFingerprint quotient_fingerprint(const FiniteMatrixGroup& G,
                                             const FiniteMatrixGroup& N) {
  require(N.is_subgroup_of(G), "quotient_fingerprint: N is not contained in G");
  require(is_normal_in(N, G), "quotient_fingerprint: N is not normal in G");
  IndexGroup ig = index_group_of(G);
  std::vector<u32> nset;
  nset.reserve(N.order());
  for (u64 k : N.element_keys()) nset.push_back(G.index_of(k));
  std::sort(nset.begin(), nset.end());
  return fingerprint_of(quotient_index_group(ig, nset));
}

/// Materialized quotient group G/N together with its fingerprint.
struct MaterializedQuotient {
  IndexGroup group;
  GroupFingerprint fp;
};

inline MaterializedQuotient materialize_quotient(const FiniteMatrixGroup& G,
                                                 const FiniteMatrixGroup& N) {
  require(N.is_subgroup_of(G), "materialize_quotient: N is not contained in G");
  require(is_normal_in(N, G), "materialize_quotient: N is not normal in G");
  IndexGroup ig = index_group_of(G);
  std::vector<u32> nset;
  nset.reserve(N.order());
  for (u64 k : N.element_keys()) nset.push_back(G.index_of(k));
  std::sort(nset.begin(), nset.end());
  MaterializedQuotient out;
  out.group = quotient_index_group(ig, nset);
  out.fp = fingerprint_of(out.group);
  return out;
}

/// All normal subgroups of a small group, as sorted index sets.  Every normal
/// subgroup is the join of the normal closures of its elements, so the
/// join-closure of the single-element normal closures is the complete list.
inline std::vector<std::vector<u32>> all_normal_subgroups(const IndexGroup& G) {
  require(G.order <= 4096, "all_normal_subgroups: group too large for enumeration");
  std::set<std::vector<u32>> found;
  found.insert({G.identity});
  for (u32 i = 0; i < G.order; ++i) {
    if (i == G.identity) continue;
    found.insert(normal_closure_idx(G, {i}));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<u32>> cur(found.begin(), found.end());
    for (std::size_t i = 0; i < cur.size() && !grew; ++i) {
      for (std::size_t j = i + 1; j < cur.size() && !grew; ++j) {
        std::vector<u32> gens = cur[i];
        gens.insert(gens.end(), cur[j].begin(), cur[j].end());
        std::vector<u32> joined = subgroup_closure_idx(G, gens);
        if (!found.count(joined)) {
          found.insert(joined);
          grew = true;
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

/// Fingerprints of all proper quotients G/N with N nontrivial and normal.
inline std::vector<GroupFingerprint> proper_quotient_fingerprints(const IndexGroup& G) {
  std::vector<GroupFingerprint> out;
  for (const auto& N : all_normal_subgroups(G)) {
    if (N.size() <= 1) continue;
    GroupFingerprint fp = fingerprint_of(quotient_index_group(G, N));
    if (std::find(out.begin(), out.end(), fp) == out.end()) out.push_back(fp);
  }
  return out;
}

// ============================================================================
// Standard generating sets
// ============================================================================

/// A small generating set of (Z/nZ)^x, chosen greedily over ascending units.
inline std::vector<i64> unit_group_generators(i64 n) {
  require(n >= 1, "unit_group_generators: level must be >= 1");
  if (n <= 2) return {};
  std::set<i64> have = {1 % n};
  std::vector<i64> gens;
  auto close_with = [&](i64 u) {
    std::vector<i64> frontier(have.begin(), have.end());
    while (!frontier.empty()) {
      std::vector<i64> next;
      for (i64 x : frontier) {
        i64 y = (x * u) % n;
        if (have.insert(y).second) next.push_back(y);
      }
      frontier = std::move(next);
    }
  };
  for (i64 u = 2; u < n; ++u) {
    if (std::gcd(u, n) != 1 || have.count(u)) continue;
    gens.push_back(u);
    for (i64 g : gens) close_with(g);
  }
  return gens;
}

/// A generating set of GL(2, Z/nZ): the two elementary transvections plus
/// diag(u,1) for units u generating (Z/nZ)^x.
inline std::vector<ResidueMatrix> gl2_generators(i64 n) {
  require(n >= 1, "gl2_generators: level must be >= 1");
  if (n == 1) return {ResidueMatrix::identity(1)};
  std::vector<ResidueMatrix> gens = {ResidueMatrix(n, 1, 1, 0, 1), ResidueMatrix(n, 1, 0, 1, 1)};
  for (i64 u : unit_group_generators(n)) gens.push_back(ResidueMatrix(n, u, 0, 0, 1));
  return gens;
}

inline FiniteMatrixGroup full_gl2(i64 n, u64 budget = kDefaultClosureBudget) {
  Int expected = order_gl2(n);
  if (expected > Int(budget))
    throw ResourceError("full_gl2: |GL(2,Z/" + std::to_string(n) + ")| = " + expected.str() +
                        " exceeds budget " + std::to_string(budget));
  FiniteMatrixGroup G = FiniteMatrixGroup::closure(n, gl2_generators(n), budget);
  ensure(Int(G.order()) == expected, "full_gl2: closure order disagrees with the order formula");
  return G;
}

}  // namespace tanglekit
