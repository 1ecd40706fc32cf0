#pragma once

#include <span>
#include <string>
#include <vector>

#include "posslog/base.h"
#include "posslog/network.h"

namespace posslog {

/// Clausal form of a formula base at unchanged weights, tautologies dropped.
/// The result has the same possibility distribution as the input.
PossBase preprocess(const Vocabulary& vocab,
                    std::span<const WeightedFormula> formulas);

/// Complete extension of the clauses of `head`: for every instance x of the
/// head and every full instantiation P of `parents`, the clause
/// (x | literals of P) with the largest weight among the clauses (x | p) of
/// `k` whose literals all occur in P. Zero-weight results are omitted.
/// Output order: instance (negative first), then context index.
std::vector<WeightedClause> complete_extension(
    int head, std::span<const WeightedClause> k, const std::vector<int>& parents);

struct TraceStep {
  enum class Kind { Subsumed, Replaced, Extended };

  Kind kind;
  int variable;  // X_i being processed
  int step;      // algorithm step number (1, 4 or 5)
  std::vector<WeightedClause> removed;
  std::vector<WeightedClause> added;

  std::string to_string(const Vocabulary& vocab) const;
};

struct CompilationResult {
  // DAG only; tables are all ones until conditional_tables fills them.
  PossNetwork network;
  std::vector<int> ordering;
  // Sub-base of each variable, indexed by variable.
  std::vector<PossBase> partition;
  std::vector<TraceStep> trace;
};

/// Compiles a clausal base into a min-based graph. Variables are processed
/// in `ordering`; parents of a variable come only from later positions.
/// The base must be consistent (normal distribution), otherwise DomainError.
CompilationResult build_graph(const PossBase& base, const std::vector<int>& ordering,
                              const EnumerationGuard& guard = {});

/// Tables read off the partition: Pi(x | P) = 1 - a when (!x | !P : a) is in
/// the sub-base of x's variable, 1 otherwise.
PossNetwork conditional_tables(const CompilationResult& r);

// Applies one trace step to `base`.
void replay(PossBase& base, const TraceStep& step);

}  // namespace posslog
