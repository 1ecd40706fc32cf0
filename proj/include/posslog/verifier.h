#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posslog/base.h"
#include "posslog/network.h"

namespace posslog {

/// Parameters of the random instance generators. `vars` is an upper bound:
/// each instance draws its size uniformly from [min_vars, vars].
struct GeneratorConfig {
  std::uint64_t seed = 1;
  unsigned vars = 4;
  unsigned min_vars = 1;
  unsigned max_parents = 3;
  unsigned denominator = 8;
  unsigned clauses = 6;
  unsigned max_clause_length = 3;
  // Bases are built around a hidden model so that they are consistent.
  bool consistent = true;

  void validate(const EnumerationGuard& guard = {}) const;
};

struct CheckFailure {
  std::string instance;
  std::string expected;
  std::string actual;
};

struct CheckReport {
  std::string name;
  std::size_t instances = 0;
  std::vector<CheckFailure> failures;
  // Observations that are not failures, e.g. entries pushed up to 1 by the
  // min chain rule.
  std::vector<std::string> notes;
  std::uint64_t seed = 0;
  std::chrono::duration<double> elapsed{0};

  bool passed() const { return failures.empty(); }
  // Appends the other report's counts, failures and notes.
  void absorb(const CheckReport& other);
  std::string render(std::size_t max_listed = 20) const;
};

// Deterministic functions of cfg.seed.
PossNetwork random_network(const GeneratorConfig& cfg);
PossBase random_base(const GeneratorConfig& cfg);
// Random base over a fixed variable count.
PossBase random_base(const GeneratorConfig& cfg, unsigned vars);
std::vector<int> random_ordering(std::size_t n, std::uint64_t seed);

// Base encoding of the min chain has the same distribution as the network.
CheckReport check_encode_min(const PossNetwork& g);
// Same for the product chain and the C* encoding.
CheckReport check_encode_product(const PossNetwork& g);
// Product conditioning of the product joint returns every table entry.
CheckReport check_recovery_product(const PossNetwork& g);
// Min conditioning of the min joint returns every entry or 1; entries that
// rose to 1 are listed in the notes.
CheckReport check_recovery_min(const PossNetwork& g);
// Non-interactivity of every node with each non-parent non-descendant, in
// the context of the node's parents, under the min joint.
CheckReport check_independence(const PossNetwork& g);
// Compile, rebuild the tables, recompose: same distribution, exact recovery
// of every entry, non-interactivity, normalized tables.
CheckReport check_roundtrip(const PossBase& base, const std::vector<int>& ordering);
// C* against the pointwise product, plus semantic commutativity and
// associativity.
CheckReport check_cstar_algebra(const PossBase& a, const PossBase& b,
                                const PossBase& c);

enum class CheckKind {
  EncodeMin,
  EncodeProduct,
  RecoveryProduct,
  RecoveryMin,
  Independence,
  Roundtrip,
  CStarAlgebra,
};

std::optional<CheckKind> parse_check_kind(std::string_view name);
std::string check_name(CheckKind kind);
const std::vector<CheckKind>& all_check_kinds();

/// Runs `trials` random instances of a check. Trial i uses a seed derived
/// from (cfg.seed, i), so the aggregated report does not depend on the
/// number of worker threads (0 = hardware concurrency).
CheckReport run_random_check(CheckKind kind, const GeneratorConfig& cfg,
                             std::size_t trials, unsigned orderings = 3,
                             unsigned threads = 0);

}  // namespace posslog
