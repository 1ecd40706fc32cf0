#include "posslog/sat.h"

#include <bit>
#include <vector>

namespace posslog {

namespace {

struct Assignment {
  std::uint64_t assigned = 0;
  std::uint64_t value = 0;
};

enum class Status { Satisfied, Conflict, Unit, Open };

// Classifies `c` under a partial assignment; on Unit, `unit` receives the
// only unassigned literal.
Status classify(const Clause& c, const Assignment& a, Literal& unit) {
  std::uint64_t pos = c.positive_mask();
  std::uint64_t neg = c.negative_mask();
  if ((pos & a.assigned & a.value) | (neg & a.assigned & ~a.value)) {
    return Status::Satisfied;
  }
  std::uint64_t free_pos = pos & ~a.assigned;
  std::uint64_t free_neg = neg & ~a.assigned;
  int free = std::popcount(free_pos) + std::popcount(free_neg);
  if (free == 0) return Status::Conflict;
  if (free == 1) {
    unit = free_pos ? Literal{std::countr_zero(free_pos), true}
                    : Literal{std::countr_zero(free_neg), false};
    return Status::Unit;
  }
  return Status::Open;
}

bool dpll(std::span<const Clause> clauses, Assignment a) {
  // Unit propagation to fixpoint.
  for (bool changed = true; changed;) {
    changed = false;
    for (const Clause& c : clauses) {
      Literal unit;
      switch (classify(c, a, unit)) {
        case Status::Conflict:
          return false;
        case Status::Unit: {
          std::uint64_t bit = std::uint64_t{1} << unit.var;
          a.assigned |= bit;
          if (unit.positive) a.value |= bit;
          changed = true;
          break;
        }
        default:
          break;
      }
    }
  }
  // Branch on a variable of the first open clause.
  for (const Clause& c : clauses) {
    Literal unit;
    if (classify(c, a, unit) != Status::Open) continue;
    std::uint64_t free = c.variables() & ~a.assigned;
    std::uint64_t bit = std::uint64_t{1} << std::countr_zero(free);
    bool first = (c.positive_mask() & bit) != 0;
    for (bool value : {first, !first}) {
      Assignment next = a;
      next.assigned |= bit;
      if (value) next.value |= bit;
      if (dpll(clauses, next)) return true;
    }
    return false;
  }
  return true;
}

}  // namespace

bool is_consistent(std::span<const Clause> clauses,
                   const EnumerationGuard& guard) {
  std::uint64_t vars = 0;
  for (const Clause& c : clauses) vars |= c.variables();
  guard.check(static_cast<std::size_t>(std::popcount(vars)));
  return dpll(clauses, {});
}

bool is_consistent_by_enumeration(std::span<const Clause> clauses,
                                  const EnumerationGuard& guard) {
  std::uint64_t vars = 0;
  for (const Clause& c : clauses) vars |= c.variables();
  unsigned n = vars == 0 ? 0 : 64 - std::countl_zero(vars);
  guard.check(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    bool all = true;
    for (const Clause& c : clauses) {
      if (!c.satisfied_by(bits)) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

bool entails(std::span<const Clause> premises, const Clause& goal,
             const EnumerationGuard& guard) {
  std::vector<Clause> set(premises.begin(), premises.end());
  for (Literal l : goal.literals()) set.push_back(Clause{l.complement()});
  return !is_consistent(set, guard);
}

}  // namespace posslog
