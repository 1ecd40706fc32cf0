#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posslog/base.h"
#include "posslog/logic.h"
#include "posslog/weight.h"

namespace posslog {

/// How conditionals are chained into a joint and how a distribution is
/// conditioned: qualitative (min) or numerical (product).
enum class Combination { Min, Product };

std::string to_string(Combination c);

/// Conditional possibilities of one binary node given each instantiation of
/// its parents. Parents are kept in ascending variable order; context bit j
/// is the value of parents()[j]. Entries default to 1.
class ConditionalTable {
 public:
  ConditionalTable() : entries_(2, Weight::one()) {}
  explicit ConditionalTable(std::vector<int> parents);

  const std::vector<int>& parents() const { return parents_; }
  std::uint32_t context_count() const { return std::uint32_t{1} << parents_.size(); }

  const Weight& at(bool positive, std::uint32_t context) const {
    return entries_[(context << 1) | (positive ? 1u : 0u)];
  }
  void set(bool positive, std::uint32_t context, Weight w);

  std::uint32_t context_of(std::uint64_t bits) const;
  std::vector<Literal> context_literals(std::uint32_t context) const;
  // The context matching a full instantiation of the parents, in any order.
  std::optional<std::uint32_t> context_from(const std::vector<Literal>& literals) const;

  bool operator==(const ConditionalTable&) const = default;

 private:
  std::vector<int> parents_;
  std::vector<Weight> entries_;
};

/// A directed possibilistic graph over binary variables. Every variable of
/// the vocabulary is a node; new nodes are roots with an all-ones prior.
class PossNetwork {
 public:
  PossNetwork() = default;
  explicit PossNetwork(Vocabulary vocab);

  const Vocabulary& vocabulary() const { return vocab_; }
  int node_count() const { return static_cast<int>(vocab_.size()); }
  int add_node(std::string_view name);

  // Replaces the node's table by an all-ones table over `parents`.
  void set_parents(int node, std::vector<int> parents);
  const std::vector<int>& parents(int node) const { return tables_.at(node).parents(); }
  const ConditionalTable& table(int node) const { return tables_.at(node); }
  ConditionalTable& table(int node) { return tables_.at(node); }

  // Bit mask of the nodes reachable from `node` along parent->child edges.
  std::uint64_t descendants(int node) const;
  // Kahn's algorithm, smallest index first; nullopt when cyclic.
  std::optional<std::vector<int>> topological_order() const;

  bool operator==(const PossNetwork&) const = default;

 private:
  Vocabulary vocab_;
  std::vector<ConditionalTable> tables_;
};

/// A conditional possibility different from 1: Pi(instance | context) = degree.
struct Triple {
  Literal instance;
  std::vector<Literal> context;
  Weight degree;

  bool operator==(const Triple&) const = default;
};

struct NetworkIssue {
  enum class Kind {
    Cycle,          // error
    Normalization,  // error: row maximum differs from 1
    ZeroRow,        // warning: both entries 0, the context is ruled out
    Coherence,      // warning: Pi(x|P) != 1 but Pi(x|P) > Pi(P) under the min joint
  };

  Kind kind;
  int node = -1;
  std::uint32_t context = 0;
  bool instance = true;
  std::string message;

  bool is_error() const { return kind == Kind::Cycle || kind == Kind::Normalization; }
};

struct ValidationReport {
  std::vector<NetworkIssue> issues;

  bool valid() const;
  std::size_t error_count() const;
  std::size_t warning_count() const;
};

ValidationReport validate_network(const PossNetwork& g,
                                  const EnumerationGuard& guard = {});

// One triple per table entry below 1, in node order, then context, then
// negative instance before positive.
std::vector<Triple> triples(const PossNetwork& g);

/// Chain rule: pi(w) = min (or product) over nodes of Pi(x_i | parents in w).
PossibilityDistribution joint(const PossNetwork& g, Combination mode,
                              const EnumerationGuard& guard = {});
PossibilityDistribution joint_min(const PossNetwork& g,
                                  const EnumerationGuard& guard = {});
PossibilityDistribution joint_product(const PossNetwork& g,
                                      const EnumerationGuard& guard = {});

/// Conditioning on evidence p with Pi(p) > 0 (DomainError otherwise).
///   min:     worlds of p at degree Pi(p) rise to 1, others keep their degree
///   product: worlds of p are divided by Pi(p)
/// Worlds outside p drop to 0.
PossibilityDistribution condition(const PossibilityDistribution& d,
                                  const Formula& evidence, Combination mode);
PossibilityDistribution condition_min(const PossibilityDistribution& d,
                                      const Formula& evidence);
PossibilityDistribution condition_product(const PossibilityDistribution& d,
                                          const Formula& evidence);

// Pi(target | evidence) under the given conditioning.
Weight conditional_possibility(const PossibilityDistribution& d,
                               const Formula& target, const Formula& evidence,
                               Combination mode);

/// Chain network for `ordering`: node i has every earlier variable as a
/// parent and its table is read off `d` by conditioning. Product mode sets
/// both entries of an impossible context to 0.
PossNetwork decompose(const PossibilityDistribution& d,
                      const std::vector<int>& ordering, Combination mode);

/// Integer implausibility ranks; nullopt stands for an infinite rank.
struct KappaRanking {
  Vocabulary vocab;
  std::vector<std::optional<std::uint64_t>> ranks;  // indexed by bit mask

  std::optional<std::uint64_t> rank(const Formula& f) const;
};

// degree(w) = 2^-rank(w); infinite rank gives 0.
PossibilityDistribution kappa_to_possibility(const KappaRanking& k,
                                             const EnumerationGuard& guard = {});
// rank(w|p) = rank(w) - rank(p) for models of p, infinite otherwise.
KappaRanking condition_kappa(const KappaRanking& k, const Formula& evidence);

}  // namespace posslog
