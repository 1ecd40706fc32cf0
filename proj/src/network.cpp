#include "posslog/network.h"

#include <algorithm>
#include <bit>

#include "posslog/error.h"

namespace posslog {

std::string to_string(Combination c) {
  return c == Combination::Min ? "min" : "product";
}

// ConditionalTable

ConditionalTable::ConditionalTable(std::vector<int> parents)
    : parents_(std::move(parents)) {
  std::sort(parents_.begin(), parents_.end());
  if (std::adjacent_find(parents_.begin(), parents_.end()) != parents_.end()) {
    throw UsageError("duplicate parent");
  }
  if (parents_.size() > 20) throw GuardError("too many parents for one node");
  entries_.assign(std::size_t{2} << parents_.size(), Weight::one());
}

void ConditionalTable::set(bool positive, std::uint32_t context, Weight w) {
  entries_.at((context << 1) | (positive ? 1u : 0u)) = std::move(w);
}

std::uint32_t ConditionalTable::context_of(std::uint64_t bits) const {
  std::uint32_t ctx = 0;
  for (std::size_t j = 0; j < parents_.size(); ++j) {
    if ((bits >> parents_[j]) & 1u) ctx |= std::uint32_t{1} << j;
  }
  return ctx;
}

std::vector<Literal> ConditionalTable::context_literals(std::uint32_t context) const {
  std::vector<Literal> out;
  for (std::size_t j = 0; j < parents_.size(); ++j) {
    out.push_back({parents_[j], ((context >> j) & 1u) != 0});
  }
  return out;
}

std::optional<std::uint32_t> ConditionalTable::context_from(
    const std::vector<Literal>& literals) const {
  if (literals.size() != parents_.size()) return std::nullopt;
  std::uint32_t ctx = 0;
  std::uint32_t seen = 0;
  for (Literal l : literals) {
    auto it = std::find(parents_.begin(), parents_.end(), l.var);
    if (it == parents_.end()) return std::nullopt;
    auto j = static_cast<std::uint32_t>(it - parents_.begin());
    if (seen & (1u << j)) return std::nullopt;
    seen |= 1u << j;
    if (l.positive) ctx |= 1u << j;
  }
  return ctx;
}

// PossNetwork

PossNetwork::PossNetwork(Vocabulary vocab)
    : vocab_(std::move(vocab)), tables_(vocab_.size()) {}

int PossNetwork::add_node(std::string_view name) {
  int index = vocab_.add(name);
  if (static_cast<std::size_t>(index) >= tables_.size()) tables_.resize(index + 1);
  return index;
}

void PossNetwork::set_parents(int node, std::vector<int> parents) {
  for (int p : parents) {
    if (p < 0 || p >= node_count()) throw UsageError("unknown parent index");
    if (p == node) throw UsageError("node cannot be its own parent");
  }
  tables_.at(node) = ConditionalTable(std::move(parents));
}

std::uint64_t PossNetwork::descendants(int node) const {
  std::uint64_t reached = 0;
  std::vector<int> stack{node};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int child = 0; child < node_count(); ++child) {
      const auto& ps = parents(child);
      if (std::find(ps.begin(), ps.end(), cur) == ps.end()) continue;
      std::uint64_t bit = std::uint64_t{1} << child;
      if (reached & bit) continue;
      reached |= bit;
      stack.push_back(child);
    }
  }
  return reached;
}

std::optional<std::vector<int>> PossNetwork::topological_order() const {
  int n = node_count();
  std::vector<int> pending(n);
  for (int i = 0; i < n; ++i) pending[i] = static_cast<int>(parents(i).size());
  std::vector<int> order;
  std::vector<bool> done(n, false);
  while (static_cast<int>(order.size()) < n) {
    int next = -1;
    for (int i = 0; i < n && next < 0; ++i) {
      if (!done[i] && pending[i] == 0) next = i;
    }
    if (next < 0) return std::nullopt;
    done[next] = true;
    order.push_back(next);
    for (int child = 0; child < n; ++child) {
      const auto& ps = parents(child);
      if (std::find(ps.begin(), ps.end(), next) != ps.end()) --pending[child];
    }
  }
  return order;
}

// Validation

bool ValidationReport::valid() const { return error_count() == 0; }

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      issues.begin(), issues.end(), [](const auto& i) { return i.is_error(); }));
}

std::size_t ValidationReport::warning_count() const {
  return issues.size() - error_count();
}

namespace {

std::string describe_entry(const PossNetwork& g, int node, bool instance,
                           std::uint32_t context) {
  const auto& vocab = g.vocabulary();
  std::string s = "Pi(" + Literal{node, instance}.to_string(vocab);
  auto lits = g.table(node).context_literals(context);
  if (!lits.empty()) {
    s += " |";
    for (Literal l : lits) s += " " + l.to_string(vocab);
  }
  return s + ")";
}

}  // namespace

ValidationReport validate_network(const PossNetwork& g,
                                  const EnumerationGuard& guard) {
  ValidationReport report;
  const auto& vocab = g.vocabulary();
  bool acyclic = g.topological_order().has_value();
  if (!acyclic) {
    report.issues.push_back({NetworkIssue::Kind::Cycle, -1, 0, true,
                             "parent relation contains a cycle"});
  }
  for (int node = 0; node < g.node_count(); ++node) {
    const auto& t = g.table(node);
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      const Weight& neg = t.at(false, ctx);
      const Weight& pos = t.at(true, ctx);
      if (neg.is_one() || pos.is_one()) continue;
      if (neg.is_zero() && pos.is_zero()) {
        report.issues.push_back(
            {NetworkIssue::Kind::ZeroRow, node, ctx, true,
             "both instances of " + vocab.name(node) +
                 " are impossible in context of " +
                 describe_entry(g, node, true, ctx)});
      } else {
        report.issues.push_back(
            {NetworkIssue::Kind::Normalization, node, ctx, true,
             "row of " + describe_entry(g, node, true, ctx) +
                 " has maximum below 1"});
      }
    }
  }
  if (!acyclic) return report;

  auto pi = joint_min(g, guard);
  for (int node = 0; node < g.node_count(); ++node) {
    const auto& t = g.table(node);
    // Max of the joint over worlds matching each context.
    std::vector<Weight> context_max(t.context_count(), Weight::zero());
    for (std::uint64_t w = 0; w < pi.size(); ++w) {
      auto ctx = t.context_of(w);
      if (pi.degree(w) > context_max[ctx]) context_max[ctx] = pi.degree(w);
    }
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      for (bool inst : {false, true}) {
        const Weight& v = t.at(inst, ctx);
        if (!v.is_one() && v > context_max[ctx]) {
          report.issues.push_back(
              {NetworkIssue::Kind::Coherence, node, ctx, inst,
               describe_entry(g, node, inst, ctx) + " = " + v.to_string() +
                   " exceeds the possibility " + context_max[ctx].to_string() +
                   " of its context"});
        }
      }
    }
  }
  return report;
}

std::vector<Triple> triples(const PossNetwork& g) {
  std::vector<Triple> out;
  for (int node = 0; node < g.node_count(); ++node) {
    const auto& t = g.table(node);
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      for (bool inst : {false, true}) {
        if (t.at(inst, ctx).is_one()) continue;
        out.push_back({Literal{node, inst}, t.context_literals(ctx), t.at(inst, ctx)});
      }
    }
  }
  return out;
}

PossibilityDistribution joint(const PossNetwork& g, Combination mode,
                              const EnumerationGuard& guard) {
  PossibilityDistribution d(g.vocabulary(), Weight::one(), guard);
  for (std::uint64_t w = 0; w < d.size(); ++w) {
    if (mode == Combination::Min) {
      const Weight* lowest = nullptr;
      for (int node = 0; node < g.node_count(); ++node) {
        const auto& t = g.table(node);
        const Weight& v = t.at(((w >> node) & 1u) != 0, t.context_of(w));
        if (!lowest || v < *lowest) lowest = &v;
      }
      if (lowest) d.set(w, *lowest);
    } else {
      mpq_class acc = 1;
      for (int node = 0; node < g.node_count(); ++node) {
        const auto& t = g.table(node);
        acc *= t.at(((w >> node) & 1u) != 0, t.context_of(w)).value();
      }
      d.set(w, Weight(acc));
    }
  }
  return d;
}

PossibilityDistribution joint_min(const PossNetwork& g,
                                  const EnumerationGuard& guard) {
  return joint(g, Combination::Min, guard);
}

PossibilityDistribution joint_product(const PossNetwork& g,
                                      const EnumerationGuard& guard) {
  return joint(g, Combination::Product, guard);
}

PossibilityDistribution condition(const PossibilityDistribution& d,
                                  const Formula& evidence, Combination mode) {
  Weight norm = possibility(d, evidence);
  if (norm.is_zero()) throw DomainError("evidence impossible: Pi = 0");
  PossibilityDistribution out(d.vocabulary(), Weight::zero());
  for (std::uint64_t w = 0; w < d.size(); ++w) {
    if (!evidence.eval(w)) continue;
    const Weight& v = d.degree(w);
    if (mode == Combination::Min) {
      out.set(w, v == norm ? Weight::one() : v);
    } else {
      out.set(w, v / norm);
    }
  }
  return out;
}

PossibilityDistribution condition_min(const PossibilityDistribution& d,
                                      const Formula& evidence) {
  return condition(d, evidence, Combination::Min);
}

PossibilityDistribution condition_product(const PossibilityDistribution& d,
                                          const Formula& evidence) {
  return condition(d, evidence, Combination::Product);
}

Weight conditional_possibility(const PossibilityDistribution& d,
                               const Formula& target, const Formula& evidence,
                               Combination mode) {
  return possibility(condition(d, evidence, mode), target);
}

PossNetwork decompose(const PossibilityDistribution& d,
                      const std::vector<int>& ordering, Combination mode) {
  int n = static_cast<int>(d.variable_count());
  std::vector<bool> seen(n, false);
  for (int v : ordering) {
    if (v < 0 || v >= n || seen[v]) throw UsageError("ordering is not a permutation");
    seen[v] = true;
  }
  if (static_cast<int>(ordering.size()) != n) {
    throw UsageError("ordering does not cover every variable");
  }
  if (!d.is_normal()) throw DomainError("cannot decompose a subnormal distribution");

  PossNetwork g(d.vocabulary());
  for (int i = 0; i < n; ++i) {
    int node = ordering[i];
    g.set_parents(node, std::vector<int>(ordering.begin(), ordering.begin() + i));
    auto& t = g.table(node);
    std::vector<Weight> context_max(t.context_count(), Weight::zero());
    std::vector<Weight> joint_max(2 * t.context_count(), Weight::zero());
    for (std::uint64_t w = 0; w < d.size(); ++w) {
      auto ctx = t.context_of(w);
      auto slot = (ctx << 1) | static_cast<std::uint32_t>((w >> node) & 1u);
      const Weight& v = d.degree(w);
      if (v > context_max[ctx]) context_max[ctx] = v;
      if (v > joint_max[slot]) joint_max[slot] = v;
    }
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      for (bool inst : {false, true}) {
        const Weight& both = joint_max[(ctx << 1) | (inst ? 1u : 0u)];
        const Weight& given = context_max[ctx];
        if (mode == Combination::Min) {
          t.set(inst, ctx, both == given ? Weight::one() : both);
        } else {
          t.set(inst, ctx, given.is_zero() ? Weight::zero() : both / given);
        }
      }
    }
  }
  return g;
}

std::optional<std::uint64_t> KappaRanking::rank(const Formula& f) const {
  std::optional<std::uint64_t> best;
  for (std::uint64_t w = 0; w < ranks.size(); ++w) {
    if (ranks[w] && f.eval(w) && (!best || *ranks[w] < *best)) best = ranks[w];
  }
  return best;
}

PossibilityDistribution kappa_to_possibility(const KappaRanking& k,
                                             const EnumerationGuard& guard) {
  PossibilityDistribution d(k.vocab, Weight::zero(), guard);
  if (k.ranks.size() != d.size()) throw UsageError("kappa ranking is not total");
  for (std::uint64_t w = 0; w < d.size(); ++w) {
    if (k.ranks[w]) d.set(w, Weight::power_of_half(*k.ranks[w]));
  }
  return d;
}

KappaRanking condition_kappa(const KappaRanking& k, const Formula& evidence) {
  auto base = k.rank(evidence);
  if (!base) throw DomainError("evidence impossible: infinite rank");
  KappaRanking out{k.vocab, std::vector<std::optional<std::uint64_t>>(k.ranks.size())};
  for (std::uint64_t w = 0; w < k.ranks.size(); ++w) {
    if (k.ranks[w] && evidence.eval(w)) out.ranks[w] = *k.ranks[w] - *base;
  }
  return out;
}

}  // namespace posslog
