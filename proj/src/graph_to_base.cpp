#include "posslog/graph_to_base.h"

#include <algorithm>

#include "posslog/error.h"

namespace posslog {

WeightedClause triple_to_clause(const Triple& t) {
  if (t.degree.is_one()) throw DomainError("triple with degree 1 has no clause");
  Clause c{t.instance.complement()};
  for (Literal l : t.context) c.add(l.complement());
  return {c, t.degree.complement()};
}

PossBase encode_min(const PossNetwork& g) {
  PossBase out(g.vocabulary());
  for (const Triple& t : triples(g)) out.add(triple_to_clause(t));
  return out;
}

PossBase combine_product(const PossBase& a, const PossBase& b) {
  PossBase out = base_union(a, b);
  for (const auto& p : a) {
    for (const auto& q : b) {
      out.add(p.clause | q.clause, Weight::either(p.weight, q.weight));
    }
  }
  return out;
}

PossBase encode_product(const PossNetwork& g) {
  auto order = g.topological_order();
  if (!order) throw DomainError("network is cyclic");
  // Rank of each node in the topological order.
  std::vector<int> rank(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) rank[(*order)[i]] = i;

  auto all = triples(g);
  std::stable_sort(all.begin(), all.end(), [&](const Triple& x, const Triple& y) {
    return rank[x.instance.var] < rank[y.instance.var];
  });
  PossBase out(g.vocabulary());
  for (const Triple& t : all) {
    PossBase single(g.vocabulary());
    single.add(triple_to_clause(t));
    out = combine_product(out, single);
  }
  return out;
}

}  // namespace posslog
