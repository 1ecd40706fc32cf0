#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "posslog/base.h"
#include "posslog/network.h"

namespace posslog {

// Line-oriented text formats. `#` starts a comment everywhere; parse errors
// name the line and carry the column offset within it.
//
// Base (.pkb):
//   vars a b c            optional, must come first; pins the variable order
//   a | !b : 3/10         FORMULA : WEIGHT, weight as num/den or decimal
//
// Network (.pnet):
//   vars a b c            optional, as above
//   node b : a c          parents after the colon; omit ": ..." for roots
//   b | a c : 1/2         instance | full parent instantiation : degree
//   !a : 3/4              prior entry of a root
//   Unlisted entries are 1.
//
// Kappa (.kap):
//   vars a b              required
//   01 3                  bit pattern (variable order of the header) and rank
//   11 inf                infinite rank
//   Every world must be listed exactly once.

struct FormulaBase {
  Vocabulary vocab;
  std::vector<WeightedFormula> formulas;
};

FormulaBase parse_formula_base(std::string_view text);
// parse_formula_base followed by clausal preprocessing.
PossBase parse_base(std::string_view text);
std::string write_base(const PossBase& base);

PossNetwork parse_network(std::string_view text);
std::string write_network(const PossNetwork& g);

KappaRanking parse_kappa(std::string_view text);

// One line per interpretation in ascending pattern order:
//   pattern <TAB> literals <TAB> exact degree <TAB> decimal degree
std::string write_distribution(const PossibilityDistribution& d);

// True when the first meaningful line starts with "node".
bool looks_like_network(std::string_view text);

}  // namespace posslog
