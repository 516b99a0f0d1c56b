#include "vmlab/lcdelta.hpp"

#include <algorithm>
#include <stdexcept>

namespace vmlab {

void LCInstance::validate() const {
  std::vector<int> all = u_set;
  all.insert(all.end(), w_order.begin(), w_order.end());
  if (all.size() != g.vertex_count())
    throw std::invalid_argument("LCInstance: u_set and w_order must partition the vertices");
  std::vector<int> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("LCInstance: u_set and w_order overlap");
  std::vector<int> glabels = g.labels();
  std::sort(glabels.begin(), glabels.end());
  if (sorted != glabels)
    throw std::invalid_argument("LCInstance: labels do not match the graph");
}

Graph sequential_delta(const LCInstance& inst) {
  inst.validate();
  Graph cur = inst.g;
  for (int w : inst.w_order) cur = local_complement(cur, w);
  return symmetric_difference(induced(cur, inst.u_set),
                              induced(inst.g, inst.u_set));
}

F2Matrix accumulation_matrix(const Graph& w_graph) {
  const std::size_t r = w_graph.vertex_count();
  F2Matrix h = w_graph.adjacency();  // evolving copy, restricted view only
  F2Matrix l(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    l.set(j, j, true);
    // Row j is read just before the j-th complementation is applied.
    for (std::size_t i = j + 1; i < r; ++i)
      if (h.get(j, i)) l.set(j, i, true);
    local_complement_inplace(h, j);
  }
  return l;
}

F2Matrix mixing_matrix(const Graph& w_graph) {
  const F2Matrix l = accumulation_matrix(w_graph);
  const F2Matrix linv = invert(l).value();  // unit triangular, never singular
  return multiply(linv, transpose(linv));
}

F2Matrix build_l(const LCInstance& inst) {
  inst.validate();
  return accumulation_matrix(induced(inst.g, inst.w_order));
}

F2Matrix build_m(const LCInstance& inst) {
  const F2Matrix l = build_l(inst);
  const F2Matrix linv = invert(l).value();
  return multiply(linv, transpose(linv));
}

F2Matrix cross_biadjacency(const LCInstance& inst) {
  const std::size_t s = inst.u_set.size();
  const std::size_t r = inst.w_order.size();
  F2Matrix x(s, r);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t ui = inst.g.index_of(inst.u_set[i]);
    for (std::size_t j = 0; j < r; ++j)
      if (inst.g.adjacency().get(ui, inst.g.index_of(inst.w_order[j])))
        x.set(i, j, true);
  }
  return x;
}

DeltaCheck verify_instance(const LCInstance& inst) {
  const DeltaCertificate cert = delta_via_m(inst);
  DeltaCheck check;
  check.delta_match = (cert.delta == sequential_delta(inst));
  check.l_unit_upper = cert.l.is_unit_upper_triangular();
  check.m_symmetric = cert.m.is_symmetric();
  check.m_invertible = invert(cert.m).has_value();
  check.z_recurrence = true;
  const std::size_t r = inst.w_order.size();
  for (std::size_t i = 0; i < r && check.z_recurrence; ++i) {
    F2Vector expect = cert.x.column(i);
    for (std::size_t j = 0; j < i; ++j)
      if (cert.l.get(j, i)) expect.xor_with(cert.z_cols[j]);
    if (!(expect == cert.z_cols[i])) check.z_recurrence = false;
  }
  return check;
}

DeltaCertificate delta_via_m(const LCInstance& inst) {
  inst.validate();
  const std::size_t s = inst.u_set.size();
  const std::size_t r = inst.w_order.size();

  DeltaCertificate cert;
  cert.x = cross_biadjacency(inst);
  cert.l = build_l(inst);
  const F2Matrix linv = invert(cert.l).value();
  cert.m = multiply(linv, transpose(linv));

  const F2Matrix z = multiply(cert.x, linv);
  cert.z_cols.reserve(r);
  for (std::size_t i = 0; i < r; ++i) cert.z_cols.push_back(z.column(i));

  const F2Matrix w = off_diag(multiply(multiply(cert.x, cert.m), transpose(cert.x)));
  Graph delta((std::vector<int>(inst.u_set)), F2Matrix(s, s));
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b)
      if (w.get(a, b)) delta.set_edge_at(a, b, true);
  cert.delta = std::move(delta);
  return cert;
}

}  // namespace vmlab
