#pragma once
/// @file entangle.hpp
/// @brief The entanglement calculus on subgroups of GL(2,Z/nZ): detection and
///        typing of (a,b)-entanglements, the lattice of nontrivial pairs with
///        its maximal element, and the abelian/Weil classification.

#include <optional>

#include "tanglekit/modmat.hpp"

namespace tanglekit {

// ============================================================================
// Entanglement reports (detection and type)
// ============================================================================

/// Result of testing a divisor pair (a,b).  With c = lcm(a,b), d = gcd(a,b),
/// G_c the image of G at level c and N_e = ker(pi_e) cap G_c, the pair is
/// nontrivially entangled exactly when <N_a,N_b> is a proper subgroup of N_d;
/// the type is the quotient N_d / <N_a,N_b>.
struct EntanglementReport {
  i64 a = 0, b = 0;
  i64 d = 1, c = 1;
  u64 order_gc = 1;
  u64 order_na = 1, order_nb = 1, order_nd = 1, order_join = 1;
  bool nontrivial = false;
  bool det_surjective = true;  // hypothesis check; callers warn when false
  std::optional<GroupFingerprint> type;
};

/// Report plus the materialized groups, for callers that keep computing.
struct EntanglementContext {
  EntanglementReport report;
  FiniteMatrixGroup Gc;    // pi_c(G)
  FiniteMatrixGroup Na, Nb, Nd;
  FiniteMatrixGroup J;     // <N_a, N_b>
};

inline EntanglementContext entanglement_context(const FiniteMatrixGroup& G, i64 a, i64 b,
                                                u64 budget = kDefaultClosureBudget) {
  i64 n = G.level();
  require(a >= 1 && b >= 1 && n % a == 0 && n % b == 0,
          "entanglement: a and b must divide the level " + std::to_string(n));
  require(a != b, "entanglement: a and b must be distinct");
  if (a > b) std::swap(a, b);

  EntanglementContext ctx;
  ctx.report.a = a;
  ctx.report.b = b;
  ctx.report.d = std::gcd(a, b);
  ctx.report.c = std::lcm(a, b);
  ctx.report.det_surjective = det_image(G).full_determinant;

  ctx.Gc = reduce_level(G, ctx.report.c);
  ctx.Na = kernel_of_reduction(ctx.Gc, a);
  ctx.Nb = kernel_of_reduction(ctx.Gc, b);
  ctx.Nd = kernel_of_reduction(ctx.Gc, ctx.report.d);
  ctx.J = join(ctx.Na, ctx.Nb, budget);
  ensure(ctx.J.is_subgroup_of(ctx.Nd), "entanglement: <N_a,N_b> not contained in N_d");

  ctx.report.order_gc = ctx.Gc.order();
  ctx.report.order_na = ctx.Na.order();
  ctx.report.order_nb = ctx.Nb.order();
  ctx.report.order_nd = ctx.Nd.order();
  ctx.report.order_join = ctx.J.order();
  ctx.report.nontrivial = ctx.J.order() < ctx.Nd.order();
  if (ctx.report.nontrivial) ctx.report.type = quotient_fingerprint(ctx.Nd, ctx.J);
  return ctx;
}

inline EntanglementReport entanglement_report(const FiniteMatrixGroup& G, i64 a, i64 b,
                                              u64 budget = kDefaultClosureBudget) {
  return entanglement_context(G, a, b, budget).report;
}

// ============================================================================
// Abelian and Weil classification
// ============================================================================

/// D_m = {g in G : det g = 1 mod m}, the subgroup fixing the m-th cyclotomic
/// layer of the determinant; m must divide the level.
inline FiniteMatrixGroup det_kernel_mod(const FiniteMatrixGroup& G, i64 m) {
  require(m >= 1 && G.level() % m == 0, "det_kernel_mod: m must divide the level");
  return subgroup_where(G, [m](const ResidueMatrix& g) { return g.det() % m == 1 % m; });
}

/// Abelian entanglement type: the quotient D_d / <N_a, N_b, [G_c,G_c]>,
/// realizing the Galois group of the abelian part of the shared field over
/// the d-th cyclotomic layer.  Absent when the pair is not entangled at all
/// or the quotient is trivial.
inline std::optional<GroupFingerprint> abelian_type(const FiniteMatrixGroup& G, i64 a, i64 b,
                                                    u64 budget = kDefaultClosureBudget) {
  EntanglementContext ctx = entanglement_context(G, a, b, budget);
  if (!ctx.report.nontrivial) return std::nullopt;
  FiniteMatrixGroup comm = commutator_subgroup(ctx.Gc);
  FiniteMatrixGroup Dd = det_kernel_mod(ctx.Gc, ctx.report.d);
  FiniteMatrixGroup denom = join(ctx.J, comm, budget);
  ensure(denom.is_subgroup_of(Dd), "abelian_type: <N_a,N_b,[G,G]> escapes D_d");
  GroupFingerprint fp = quotient_fingerprint(Dd, denom);
  if (fp.order == 1) return std::nullopt;
  return fp;
}

/// Weil classification: both orientations of D_d / <N_x, [G_c,G_c], D_y> with
/// {x,y} = {a,b}; the headline is the larger of the two (first orientation on
/// ties).  Absent when the pair is not entangled or both orientations are
/// trivial.
struct WeilReport {
  GroupFingerprint headline;
  std::optional<GroupFingerprint> orientation_a;  // D_d / <N_a, [G,G], D_b>
  std::optional<GroupFingerprint> orientation_b;  // D_d / <N_b, [G,G], D_a>
};

inline std::optional<WeilReport> weil_type(const FiniteMatrixGroup& G, i64 a, i64 b,
                                           u64 budget = kDefaultClosureBudget) {
  EntanglementContext ctx = entanglement_context(G, a, b, budget);
  if (!ctx.report.nontrivial) return std::nullopt;
  a = ctx.report.a;
  b = ctx.report.b;
  FiniteMatrixGroup comm = commutator_subgroup(ctx.Gc);
  FiniteMatrixGroup Dd = det_kernel_mod(ctx.Gc, ctx.report.d);
  FiniteMatrixGroup Da = det_kernel_mod(ctx.Gc, a);
  FiniteMatrixGroup Db = det_kernel_mod(ctx.Gc, b);

  auto orientation = [&](const FiniteMatrixGroup& Nx,
                         const FiniteMatrixGroup& Dy) -> std::optional<GroupFingerprint> {
    FiniteMatrixGroup denom = join(join(Nx, comm, budget), Dy, budget);
    ensure(denom.is_subgroup_of(Dd), "weil_type: <N,comm,D> escapes D_d");
    GroupFingerprint fp = quotient_fingerprint(Dd, denom);
    if (fp.order == 1) return std::nullopt;
    return fp;
  };

  WeilReport out;
  out.orientation_a = orientation(ctx.Na, Db);
  out.orientation_b = orientation(ctx.Nb, Da);
  if (!out.orientation_a && !out.orientation_b) return std::nullopt;
  if (out.orientation_a &&
      (!out.orientation_b || out.orientation_a->order >= out.orientation_b->order)) {
    out.headline = *out.orientation_a;
  } else {
    out.headline = *out.orientation_b;
  }
  return out;
}

// ============================================================================
// The lattice of nontrivial pairs and its maximal element
// ============================================================================

struct LatticeEntry {
  i64 a = 0, b = 0;
  GroupFingerprint type;
};

/// All nontrivially entangled divisor pairs of the level, the unique maximal
/// entry under the divisibility/quotient relation when one exists, and the
/// primitivity flag (maximal present and lcm(a,b) equal to the level).
struct EntanglementLattice {
  i64 level = 1;
  std::vector<LatticeEntry> entries;  // ordered by (a,b)
  std::optional<LatticeEntry> maximal;
  bool primitive = false;
};

namespace detail {

/// The ordering on entangled pairs: ((a1,b1),H1) <= ((a2,b2),H2) when either
///   (1) H1 and H2 have equal fingerprints and (a2,b2) divides (a1,b1)
///       componentwise in one of the two orientations, or
///   (2) H1 matches a proper quotient of H2 and (a1,b1) divides (a2,b2)
///       componentwise in one of the two orientations.
/// The quotient test is run by brute force over the normal subgroups of the
/// materialized type group H2.
inline bool lattice_le(const LatticeEntry& x, const LatticeEntry& y,
                       const std::vector<GroupFingerprint>& y_proper_quotients) {
  auto divides_pair = [](i64 p1, i64 q1, i64 p2, i64 q2) {
    // (p2,q2) | (p1,q1) in either orientation.
    return (p1 % p2 == 0 && q1 % q2 == 0) || (p1 % q2 == 0 && q1 % p2 == 0);
  };
  if (x.type == y.type && divides_pair(x.a, x.b, y.a, y.b)) return true;
  if (divides_pair(y.a, y.b, x.a, x.b)) {
    for (const auto& q : y_proper_quotients) {
      if (q == x.type) return true;
    }
  }
  return false;
}

}  // namespace detail

inline EntanglementLattice entanglement_lattice(const FiniteMatrixGroup& G,
                                                u64 budget = kDefaultClosureBudget) {
  EntanglementLattice out;
  out.level = G.level();
  std::vector<i64> divs = divisors_of(G.level());

  std::vector<LatticeEntry> entries;
  std::vector<MaterializedQuotient> types;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    for (std::size_t j = i + 1; j < divs.size(); ++j) {
      i64 a = divs[i], b = divs[j];
      if (b % a == 0) continue;  // N_d = N_a forces triviality when a | b
      EntanglementContext ctx = entanglement_context(G, a, b, budget);
      if (!ctx.report.nontrivial) continue;
      entries.push_back({a, b, *ctx.report.type});
      types.push_back(materialize_quotient(ctx.Nd, ctx.J));
    }
  }
  out.entries = entries;
  if (entries.empty()) return out;

  // Proper-quotient fingerprints of each materialized type group.
  std::vector<std::vector<GroupFingerprint>> pq;
  pq.reserve(types.size());
  for (const auto& t : types) pq.push_back(proper_quotient_fingerprints(t.group));

  // An entry is a top when it dominates every entry; the lattice has a
  // maximal element exactly when the top is unique.
  std::vector<std::size_t> tops;
  for (std::size_t m = 0; m < entries.size(); ++m) {
    bool dominates_all = true;
    for (std::size_t x = 0; x < entries.size(); ++x) {
      if (!detail::lattice_le(entries[x], entries[m], pq[m])) {
        dominates_all = false;
        break;
      }
    }
    if (dominates_all) tops.push_back(m);
  }
  if (tops.size() == 1) {
    const LatticeEntry& m = entries[tops[0]];
    out.maximal = m;
    out.primitive = (std::lcm(m.a, m.b) == G.level());
  }
  return out;
}

}  // namespace tanglekit
