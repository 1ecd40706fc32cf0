#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "posslog/logic.h"
#include "posslog/weight.h"

namespace posslog {

struct WeightedClause {
  Clause clause;
  Weight weight;

  bool operator==(const WeightedClause&) const = default;
};

struct WeightedFormula {
  Formula formula;
  Weight weight;
};

/// A possibilistic knowledge base: weighted clauses, at most one weight per
/// distinct clause. Entries keep their insertion order.
class PossBase {
 public:
  PossBase() = default;
  explicit PossBase(Vocabulary vocab) : vocab_(std::move(vocab)) {}
  PossBase(Vocabulary vocab, std::initializer_list<WeightedClause> entries);

  const Vocabulary& vocabulary() const { return vocab_; }
  int declare(std::string_view name) { return vocab_.add(name); }

  // Keeps the larger weight when the clause is already present. Tautologies
  // and zero weights carry no constraint and are dropped. Returns true if
  // the base changed.
  bool add(const Clause& clause, const Weight& weight);
  bool add(const WeightedClause& wc) { return add(wc.clause, wc.weight); }
  bool remove(const Clause& clause);

  std::optional<Weight> weight_of(const Clause& clause) const;
  bool contains(const Clause& clause) const { return index_.count(clause) != 0; }

  const std::vector<WeightedClause>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Same vocabulary and the same set of weighted clauses, in any order.
  bool operator==(const PossBase& other) const;

 private:
  Vocabulary vocab_;
  std::vector<WeightedClause> entries_;
  std::unordered_map<Clause, std::size_t, ClauseHash> index_;
};

/// Degrees for all 2^n interpretations of a vocabulary, indexed by the
/// interpretation bit mask. Subnormal distributions are allowed.
class PossibilityDistribution {
 public:
  explicit PossibilityDistribution(Vocabulary vocab,
                                   const Weight& fill = Weight::one(),
                                   const EnumerationGuard& guard = {});

  const Vocabulary& vocabulary() const { return vocab_; }
  unsigned variable_count() const { return static_cast<unsigned>(vocab_.size()); }
  std::size_t size() const { return degrees_.size(); }

  const Weight& degree(std::uint64_t bits) const { return degrees_[bits]; }
  const Weight& degree(const Interpretation& w) const { return degrees_[w.bits]; }
  void set(std::uint64_t bits, Weight w) { degrees_[bits] = std::move(w); }

  Weight max_degree() const;
  bool is_normal() const { return max_degree().is_one(); }

  bool operator==(const PossibilityDistribution& other) const = default;

 private:
  Vocabulary vocab_;
  std::vector<Weight> degrees_;
};

/// pi(w) = 1 if w satisfies every clause, else 1 - max weight of the clauses
/// w falsifies.
PossibilityDistribution pi_from_base(const PossBase& base,
                                     const EnumerationGuard& guard = {});

PossibilityDistribution pointwise_min(const PossibilityDistribution& a,
                                      const PossibilityDistribution& b);
PossibilityDistribution pointwise_product(const PossibilityDistribution& a,
                                          const PossibilityDistribution& b);

// Max over models of f; 0 when f has no model.
Weight possibility(const PossibilityDistribution& d, const Formula& f);
// Min of 1 - pi over countermodels of f; 1 when f is valid.
Weight necessity(const PossibilityDistribution& d, const Formula& f);

bool is_normal(const PossibilityDistribution& d);

// Clauses with weight >= threshold.
std::vector<Clause> alpha_cut(const PossBase& base, const Weight& threshold);
// Clauses with weight > threshold.
std::vector<Clause> strict_cut(const PossBase& base, const Weight& threshold);

/// base |- (query, level): the cut at `level` together with the clausal form
/// of !query is inconsistent. Coincides with N(query) >= level.
bool entails(const PossBase& base, const Formula& query, const Weight& level,
             const EnumerationGuard& guard = {});
bool entails(const PossBase& base, const Clause& query, const Weight& level,
             const EnumerationGuard& guard = {});

/// The other clauses with weight >= weight(wc) classically entail wc.
bool is_subsumed(const PossBase& base, const WeightedClause& wc,
                 const EnumerationGuard& guard = {});
/// Same with the strict cut (weight > weight(wc)).
bool is_strictly_subsumed(const PossBase& base, const WeightedClause& wc,
                          const EnumerationGuard& guard = {});

/// Drops subsumed entries one at a time, heaviest first, re-checking against
/// the current base after every removal.
PossBase remove_subsumed(const PossBase& base,
                         const EnumerationGuard& guard = {});
PossBase remove_strictly_subsumed(const PossBase& base,
                                  const EnumerationGuard& guard = {});

/// Union with max-merge; the vocabularies must agree on a common prefix.
PossBase base_union(const PossBase& a, const PossBase& b);

/// Same possibility distribution over the larger of the two vocabularies.
bool equivalent(const PossBase& a, const PossBase& b,
                const EnumerationGuard& guard = {});

// Returns whichever vocabulary extends the other; UsageError if neither.
const Vocabulary& common_vocabulary(const Vocabulary& a, const Vocabulary& b);
// Copy of `base` declared over `vocab`, which must extend its vocabulary.
PossBase rebase(const PossBase& base, const Vocabulary& vocab);

}  // namespace posslog
