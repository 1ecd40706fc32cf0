#include "posslog/base_to_graph.h"

#include <algorithm>
#include <stdexcept>

#include "posslog/error.h"
#include "posslog/sat.h"

namespace posslog {

PossBase preprocess(const Vocabulary& vocab,
                    std::span<const WeightedFormula> formulas) {
  PossBase out(vocab);
  for (const auto& wf : formulas) {
    for (const Clause& c : to_cnf(wf.formula)) out.add(c, wf.weight);
  }
  return out;
}

std::vector<WeightedClause> complete_extension(
    int head, std::span<const WeightedClause> k, const std::vector<int>& parents) {
  ConditionalTable shape(parents);
  std::uint64_t parent_mask = 0;
  for (int p : shape.parents()) parent_mask |= std::uint64_t{1} << p;
  std::uint64_t head_bit = std::uint64_t{1} << head;
  for (const auto& wc : k) {
    if (!(wc.clause.variables() & head_bit) || wc.clause.is_tautology() ||
        (wc.clause.variables() & ~head_bit & ~parent_mask) != 0) {
      throw UsageError("clause outside the head/parents shape of an extension");
    }
  }

  std::vector<WeightedClause> out;
  for (bool inst : {false, true}) {
    Literal h{head, inst};
    for (std::uint32_t ctx = 0; ctx < shape.context_count(); ++ctx) {
      Clause full{h};
      for (Literal l : shape.context_literals(ctx)) full.add(l);
      const Weight* best = nullptr;
      for (const auto& wc : k) {
        if (wc.clause.contains(h) && wc.clause.subset_of(full) &&
            (!best || wc.weight > *best)) {
          best = &wc.weight;
        }
      }
      if (best && !best->is_zero()) out.push_back({full, *best});
    }
  }
  return out;
}

std::string TraceStep::to_string(const Vocabulary& vocab) const {
  static const char* names[] = {"subsumed", "replaced", "extended"};
  std::string s = "step " + std::to_string(step) + " " + vocab.name(variable) +
                  ": " + names[static_cast<int>(kind)];
  auto list = [&](const std::vector<WeightedClause>& cs) {
    std::string out;
    for (const auto& wc : cs) {
      if (!out.empty()) out += ", ";
      out += "(" + wc.clause.to_string(vocab) + " : " + wc.weight.to_string() + ")";
    }
    return "{" + out + "}";
  };
  s += " " + list(removed);
  if (kind != Kind::Subsumed) s += " -> " + list(added);
  return s;
}

void replay(PossBase& base, const TraceStep& step) {
  for (const auto& wc : step.removed) base.remove(wc.clause);
  for (const auto& wc : step.added) base.add(wc);
}

namespace {

// Clauses with an instance of `var` and otherwise only variables in `later`,
// heaviest first, then canonical order.
std::vector<WeightedClause> headed_by(const PossBase& base, int var,
                                      std::uint64_t later) {
  std::uint64_t bit = std::uint64_t{1} << var;
  std::vector<WeightedClause> out;
  for (const auto& wc : base) {
    std::uint64_t vars = wc.clause.variables();
    if ((vars & bit) && (vars & ~bit & ~later) == 0) out.push_back(wc);
  }
  std::sort(out.begin(), out.end(),
            [](const WeightedClause& a, const WeightedClause& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.clause < b.clause;
            });
  return out;
}

Clause without(const Clause& c, int var) {
  std::uint64_t keep = ~(std::uint64_t{1} << var);
  return Clause::from_masks(c.positive_mask() & keep, c.negative_mask() & keep);
}

// Replaces (x | p : a) by (p : a) when the base entails (p, a).
bool try_replace(PossBase& sigma, const WeightedClause& wc, int var, int step,
                 std::vector<TraceStep>& trace, const EnumerationGuard& guard) {
  Clause rest = without(wc.clause, var);
  if (!entails(sigma, rest, wc.weight, guard)) return false;
  sigma.remove(wc.clause);
  sigma.add(rest, wc.weight);
  trace.push_back({TraceStep::Kind::Replaced, var, step, {wc}, {{rest, wc.weight}}});
  return true;
}

}  // namespace

CompilationResult build_graph(const PossBase& base, const std::vector<int>& ordering,
                              const EnumerationGuard& guard) {
  const Vocabulary& vocab = base.vocabulary();
  int n = static_cast<int>(vocab.size());
  std::vector<bool> seen(n, false);
  for (int v : ordering) {
    if (v < 0 || v >= n || seen[v]) throw UsageError("ordering is not a permutation");
    seen[v] = true;
  }
  if (static_cast<int>(ordering.size()) != n) {
    throw UsageError("ordering does not cover every variable");
  }
  {
    std::vector<Clause> all;
    for (const auto& wc : base) all.push_back(wc.clause);
    if (!is_consistent(all, guard)) {
      throw DomainError("base is inconsistent; its distribution is not normal");
    }
  }

  CompilationResult r{PossNetwork(vocab), ordering, std::vector<PossBase>(n, PossBase(vocab)), {}};
  PossBase sigma = base;
  for (int i = 0; i < n; ++i) {
    int x = ordering[i];
    std::uint64_t later = 0;
    for (int j = i + 1; j < n; ++j) later |= std::uint64_t{1} << ordering[j];

    // Step 1: drop subsumed clauses, shorten entailed ones.
    for (const auto& wc : headed_by(sigma, x, later)) {
      if (is_subsumed(sigma, wc, guard)) {
        sigma.remove(wc.clause);
        r.trace.push_back({TraceStep::Kind::Subsumed, x, 1, {wc}, {}});
      } else {
        try_replace(sigma, wc, x, 1, r.trace, guard);
      }
    }

    // Steps 2-3: parents are the other variables of the remaining clauses.
    auto k = headed_by(sigma, x, later);
    std::uint64_t parent_mask = 0;
    for (const auto& wc : k) parent_mask |= wc.clause.variables();
    parent_mask &= ~(std::uint64_t{1} << x);
    std::vector<int> parents;
    for (int v = 0; v < n; ++v) {
      if ((parent_mask >> v) & 1u) parents.push_back(v);
    }
    r.network.set_parents(x, parents);

    // Step 4: complete extension.
    auto extension = complete_extension(x, k, parents);
    if (!k.empty()) {
      for (const auto& wc : k) sigma.remove(wc.clause);
      for (const auto& wc : extension) sigma.add(wc);
      r.trace.push_back({TraceStep::Kind::Extended, x, 4, k, extension});
    }

    // Step 5: shorten extended clauses whose remainder is already entailed.
    for (const auto& wc : headed_by(sigma, x, later)) try_replace(sigma, wc, x, 5, r.trace, guard);

    // Step 6.
    for (const auto& wc : headed_by(sigma, x, later)) r.partition[x].add(wc);
  }
  return r;
}

PossNetwork conditional_tables(const CompilationResult& r) {
  PossNetwork g = r.network;
  for (int x = 0; x < g.node_count(); ++x) {
    auto& t = g.table(x);
    for (const auto& wc : r.partition[x]) {
      // Clause (!inst | !P): the head literal is the complement of the instance.
      bool inst = !wc.clause.contains(Literal{x, true});
      std::vector<Literal> context;
      for (Literal l : wc.clause.literals()) {
        if (l.var != x) context.push_back(l.complement());
      }
      auto ctx = t.context_from(context);
      if (!ctx) throw std::logic_error("sub-base clause is not a full parent context");
      t.set(inst, *ctx, wc.weight.complement());
    }
  }
  return g;
}

}  // namespace posslog
