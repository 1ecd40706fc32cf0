#include "posslog/base.h"

#include <algorithm>

#include "posslog/error.h"
#include "posslog/sat.h"

namespace posslog {

PossBase::PossBase(Vocabulary vocab, std::initializer_list<WeightedClause> entries)
    : vocab_(std::move(vocab)) {
  for (const auto& wc : entries) add(wc);
}

bool PossBase::add(const Clause& clause, const Weight& weight) {
  if (clause.is_tautology() || weight.is_zero()) return false;
  if (auto it = index_.find(clause); it != index_.end()) {
    Weight& current = entries_[it->second].weight;
    if (weight <= current) return false;
    current = weight;
    return true;
  }
  index_.emplace(clause, entries_.size());
  entries_.push_back({clause, weight});
  return true;
}

bool PossBase::remove(const Clause& clause) {
  auto it = index_.find(clause);
  if (it == index_.end()) return false;
  std::size_t pos = it->second;
  index_.erase(it);
  entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(pos));
  for (std::size_t i = pos; i < entries_.size(); ++i) {
    index_[entries_[i].clause] = i;
  }
  return true;
}

std::optional<Weight> PossBase::weight_of(const Clause& clause) const {
  if (auto it = index_.find(clause); it != index_.end()) {
    return entries_[it->second].weight;
  }
  return std::nullopt;
}

bool PossBase::operator==(const PossBase& other) const {
  if (!(vocab_ == other.vocab_) || size() != other.size()) return false;
  for (const auto& wc : entries_) {
    auto w = other.weight_of(wc.clause);
    if (!w || *w != wc.weight) return false;
  }
  return true;
}

PossibilityDistribution::PossibilityDistribution(Vocabulary vocab,
                                                 const Weight& fill,
                                                 const EnumerationGuard& guard)
    : vocab_(std::move(vocab)) {
  guard.check(vocab_.size());
  degrees_.assign(std::size_t{1} << vocab_.size(), fill);
}

Weight PossibilityDistribution::max_degree() const {
  Weight best = Weight::zero();
  for (const auto& w : degrees_) {
    if (w > best) best = w;
  }
  return best;
}

PossibilityDistribution pi_from_base(const PossBase& base,
                                     const EnumerationGuard& guard) {
  PossibilityDistribution d(base.vocabulary(), Weight::one(), guard);
  for (std::uint64_t bits = 0; bits < d.size(); ++bits) {
    const Weight* worst = nullptr;
    for (const auto& wc : base) {
      if (!wc.clause.satisfied_by(bits) && (!worst || wc.weight > *worst)) {
        worst = &wc.weight;
      }
    }
    if (worst) d.set(bits, worst->complement());
  }
  return d;
}

namespace {

void require_same_space(const PossibilityDistribution& a,
                        const PossibilityDistribution& b) {
  if (!(a.vocabulary() == b.vocabulary())) {
    throw UsageError("distributions over different vocabularies");
  }
}

}  // namespace

PossibilityDistribution pointwise_min(const PossibilityDistribution& a,
                                      const PossibilityDistribution& b) {
  require_same_space(a, b);
  PossibilityDistribution out = a;
  for (std::uint64_t w = 0; w < a.size(); ++w) {
    if (b.degree(w) < a.degree(w)) out.set(w, b.degree(w));
  }
  return out;
}

PossibilityDistribution pointwise_product(const PossibilityDistribution& a,
                                          const PossibilityDistribution& b) {
  require_same_space(a, b);
  PossibilityDistribution out = a;
  for (std::uint64_t w = 0; w < a.size(); ++w) {
    out.set(w, a.degree(w) * b.degree(w));
  }
  return out;
}

Weight possibility(const PossibilityDistribution& d, const Formula& f) {
  Weight best = Weight::zero();
  for (std::uint64_t w = 0; w < d.size(); ++w) {
    if (d.degree(w) > best && f.eval(w)) best = d.degree(w);
  }
  return best;
}

Weight necessity(const PossibilityDistribution& d, const Formula& f) {
  // min(1 - pi) over countermodels == 1 - max pi over countermodels.
  Weight worst = Weight::zero();
  for (std::uint64_t w = 0; w < d.size(); ++w) {
    if (d.degree(w) > worst && !f.eval(w)) worst = d.degree(w);
  }
  return worst.complement();
}

bool is_normal(const PossibilityDistribution& d) { return d.is_normal(); }

std::vector<Clause> alpha_cut(const PossBase& base, const Weight& threshold) {
  std::vector<Clause> out;
  for (const auto& wc : base) {
    if (wc.weight >= threshold) out.push_back(wc.clause);
  }
  return out;
}

std::vector<Clause> strict_cut(const PossBase& base, const Weight& threshold) {
  std::vector<Clause> out;
  for (const auto& wc : base) {
    if (wc.weight > threshold) out.push_back(wc.clause);
  }
  return out;
}

bool entails(const PossBase& base, const Formula& query, const Weight& level,
             const EnumerationGuard& guard) {
  if (level.is_zero()) throw DomainError("entailment level must be positive");
  auto set = alpha_cut(base, level);
  auto negated = to_cnf(Formula::negation(query));
  set.insert(set.end(), negated.begin(), negated.end());
  return !is_consistent(set, guard);
}

bool entails(const PossBase& base, const Clause& query, const Weight& level,
             const EnumerationGuard& guard) {
  if (level.is_zero()) throw DomainError("entailment level must be positive");
  return posslog::entails(alpha_cut(base, level), query, guard);
}

namespace {

bool subsumed_by_cut(const PossBase& base, const WeightedClause& wc,
                     bool strict, const EnumerationGuard& guard) {
  std::vector<Clause> premises;
  for (const auto& other : base) {
    if (other.clause == wc.clause) continue;
    if (strict ? other.weight > wc.weight : other.weight >= wc.weight) {
      premises.push_back(other.clause);
    }
  }
  return entails(premises, wc.clause, guard);
}

// Heaviest first, then canonical clause order.
std::vector<WeightedClause> by_decreasing_weight(const PossBase& base) {
  std::vector<WeightedClause> order(base.begin(), base.end());
  std::sort(order.begin(), order.end(),
            [](const WeightedClause& a, const WeightedClause& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.clause < b.clause;
            });
  return order;
}

PossBase prune(const PossBase& base, bool strict,
               const EnumerationGuard& guard) {
  PossBase out = base;
  for (const auto& wc : by_decreasing_weight(base)) {
    if (subsumed_by_cut(out, wc, strict, guard)) out.remove(wc.clause);
  }
  return out;
}

}  // namespace

bool is_subsumed(const PossBase& base, const WeightedClause& wc,
                 const EnumerationGuard& guard) {
  return subsumed_by_cut(base, wc, false, guard);
}

bool is_strictly_subsumed(const PossBase& base, const WeightedClause& wc,
                          const EnumerationGuard& guard) {
  return subsumed_by_cut(base, wc, true, guard);
}

PossBase remove_subsumed(const PossBase& base, const EnumerationGuard& guard) {
  return prune(base, false, guard);
}

PossBase remove_strictly_subsumed(const PossBase& base,
                                  const EnumerationGuard& guard) {
  return prune(base, true, guard);
}

const Vocabulary& common_vocabulary(const Vocabulary& a, const Vocabulary& b) {
  if (a.extends(b)) return a;
  if (b.extends(a)) return b;
  throw UsageError("bases are declared over incompatible variable orders");
}

PossBase rebase(const PossBase& base, const Vocabulary& vocab) {
  if (!vocab.extends(base.vocabulary())) {
    throw UsageError("vocabulary does not extend the base's variables");
  }
  PossBase out(vocab);
  for (const auto& wc : base) out.add(wc);
  return out;
}

PossBase base_union(const PossBase& a, const PossBase& b) {
  PossBase out = rebase(a, common_vocabulary(a.vocabulary(), b.vocabulary()));
  for (const auto& wc : b) out.add(wc);
  return out;
}

bool equivalent(const PossBase& a, const PossBase& b,
                const EnumerationGuard& guard) {
  const Vocabulary& vocab = common_vocabulary(a.vocabulary(), b.vocabulary());
  return pi_from_base(rebase(a, vocab), guard) ==
         pi_from_base(rebase(b, vocab), guard);
}

}  // namespace posslog
