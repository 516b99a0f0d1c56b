#pragma once

#include <vector>

#include "vmlab/f2core.hpp"
#include "vmlab/graph.hpp"

namespace vmlab {

/// A graph together with an ordered partition of its vertices into a
/// watched set U and a complementation sequence W. Local complementation
/// is applied at the W vertices in order; the object of interest is how
/// the induced graph on U changes.
struct LCInstance {
  Graph g;
  std::vector<int> u_set;    // ordered, size s
  std::vector<int> w_order;  // ordered, size r

  /// Throws std::invalid_argument unless u_set and w_order partition the
  /// vertex set and are disjoint.
  void validate() const;
};

/// Everything the closed-form route produces, kept so each intermediate
/// can be asserted against the sequential route.
struct DeltaCertificate {
  F2Matrix x;                   // s x r biadjacency of G[U, W]
  F2Matrix l;                   // r x r, unit upper triangular
  F2Matrix m;                   // r x r, symmetric invertible
  std::vector<F2Vector> z_cols; // columns of X L^-1
  Graph delta;                  // on u_set; adjacency = off_diag(X M X^T)
};

/// Ground-truth route: run the r complementations on the full graph and
/// return (G*w_1*...*w_r)[U] xor G[U]. Deliberately naive; it is the oracle
/// every faster route is measured against.
Graph sequential_delta(const LCInstance& inst);

/// The accumulation matrix L: unit upper triangular, L(j,i)=1 for j<i iff
/// w_i w_j is an edge after the first j-1 complementations. Computed from an
/// evolving copy of G[W] alone (restriction commutes with complementation at
/// W vertices), never from the full graph.
F2Matrix build_l(const LCInstance& inst);

/// M = L^-1 (L^-1)^T: symmetric, invertible, a function of G[W] and the
/// order only.
F2Matrix build_m(const LCInstance& inst);

/// L for a complementation sequence running through w_graph's vertices in
/// their stored order; build_l(inst) is this applied to induced(g, w_order).
F2Matrix accumulation_matrix(const Graph& w_graph);

/// L^-1 (L^-1)^T for the same setup.
F2Matrix mixing_matrix(const Graph& w_graph);

/// Closed-form route with full certificate. adjacency(delta) equals
/// off_diag(X M X^T), and z_cols obey z_i = X_i + sum of earlier z_j over
/// the L-indicated edges.
DeltaCertificate delta_via_m(const LCInstance& inst);

/// Biadjacency of G[U, W] in the instance's orders (s x r).
F2Matrix cross_biadjacency(const LCInstance& inst);

/// One-stop verification of the closed-form route against the sequential
/// oracle plus the structural facts the certificate promises.
struct DeltaCheck {
  bool delta_match = false;      // delta_via_m == sequential_delta
  bool l_unit_upper = false;
  bool m_symmetric = false;
  bool m_invertible = false;
  bool z_recurrence = false;     // z_i = X_i + sum of L-indicated earlier z_j
  bool all() const {
    return delta_match && l_unit_upper && m_symmetric && m_invertible &&
           z_recurrence;
  }
};

DeltaCheck verify_instance(const LCInstance& inst);

}  // namespace vmlab
