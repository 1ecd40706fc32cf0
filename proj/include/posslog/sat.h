#pragma once

#include <span>

#include "posslog/logic.h"

namespace posslog {

/// Exact satisfiability of a clause set, by a DPLL search with unit
/// propagation. The number of distinct variables is checked against `guard`.
bool is_consistent(std::span<const Clause> clauses,
                   const EnumerationGuard& guard = {});

/// Reference implementation: tries every interpretation over the variables
/// 0..n-1 (n = highest variable index in use + 1).
bool is_consistent_by_enumeration(std::span<const Clause> clauses,
                                  const EnumerationGuard& guard = {});

/// premises |= goal, i.e. premises plus the negation of goal is inconsistent.
bool entails(std::span<const Clause> premises, const Clause& goal,
             const EnumerationGuard& guard = {});

}  // namespace posslog
