#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace posslog {

// Clauses and interpretations are bit masks, one bit per variable index.
inline constexpr int kMaxVariables = 64;

/// Upper bound on the number of variables for anything that enumerates all
/// 2^n interpretations. Exceeding it raises GuardError instead of running.
struct EnumerationGuard {
  static constexpr unsigned kDefault = 20;
  static constexpr unsigned kHardLimit = 30;

  unsigned max_vars = kDefault;

  void check(std::size_t variable_count) const;
};

/// Ordered registry of variable names. Index order is first registration.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::initializer_list<std::string> names);

  // Returns the index of `name`, registering it if unseen.
  int add(std::string_view name);
  std::optional<int> find(std::string_view name) const;
  const std::string& name(int index) const { return names_.at(index); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  // True if every name of `other` sits at the same index here.
  bool extends(const Vocabulary& other) const;

  bool operator==(const Vocabulary& other) const { return names_ == other.names_; }

  static bool is_identifier(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

struct Literal {
  int var = 0;
  bool positive = true;

  Literal complement() const { return {var, !positive}; }
  bool satisfied_by(std::uint64_t bits) const {
    return (((bits >> var) & 1u) != 0) == positive;
  }

  bool operator==(const Literal&) const = default;
  // Variable index first, negative before positive.
  std::strong_ordering operator<=>(const Literal& other) const {
    if (auto c = var <=> other.var; c != 0) return c;
    return positive <=> other.positive;
  }

  std::string to_string(const Vocabulary& vocab) const {
    return (positive ? "" : "!") + vocab.name(var);
  }
};

/// A disjunction of literals in canonical form. Two clauses with the same
/// literals compare equal regardless of how they were built.
class Clause {
 public:
  Clause() = default;
  Clause(std::initializer_list<Literal> literals);
  static Clause from_literals(const std::vector<Literal>& literals);
  static Clause from_masks(std::uint64_t positive, std::uint64_t negative) {
    Clause c;
    c.pos_ = positive;
    c.neg_ = negative;
    return c;
  }

  void add(Literal l);
  Clause operator|(const Clause& other) const {
    return from_masks(pos_ | other.pos_, neg_ | other.neg_);
  }

  std::uint64_t positive_mask() const { return pos_; }
  std::uint64_t negative_mask() const { return neg_; }
  std::uint64_t variables() const { return pos_ | neg_; }
  bool contains(Literal l) const;
  bool empty() const { return (pos_ | neg_) == 0; }
  int size() const;
  std::vector<Literal> literals() const;

  bool is_tautology() const { return (pos_ & neg_) != 0; }
  bool satisfied_by(std::uint64_t bits) const {
    return ((bits & pos_) | (~bits & neg_)) != 0;
  }
  // Every literal of this clause occurs in `other`.
  bool subset_of(const Clause& other) const {
    return (pos_ & ~other.pos_) == 0 && (neg_ & ~other.neg_) == 0;
  }

  bool operator==(const Clause&) const = default;
  // Lexicographic on the canonical literal sequence.
  std::strong_ordering operator<=>(const Clause& other) const;

  // "a | !b"; the empty clause prints as "false".
  std::string to_string(const Vocabulary& vocab) const;

 private:
  std::uint64_t pos_ = 0;
  std::uint64_t neg_ = 0;
};

struct ClauseHash {
  std::size_t operator()(const Clause& c) const {
    return std::hash<std::uint64_t>()(c.positive_mask() * 0x9e3779b97f4a7c15ull ^
                                      c.negative_mask());
  }
};

bool is_tautology(const Clause& c);

/// One truth assignment; bit i is the value of variable i.
struct Interpretation {
  std::uint64_t bits = 0;
  unsigned width = 0;

  bool value(int var) const { return ((bits >> var) & 1u) != 0; }
  // Variable 0 is the leftmost character.
  std::string pattern() const;
  // "a !b c".
  std::string to_string(const Vocabulary& vocab) const;

  bool operator==(const Interpretation&) const = default;
};

bool eval_clause(const Clause& c, const Interpretation& w);

// All 2^n interpretations in ascending order of their bit pattern, where the
// pattern reads variable 0 as the most significant digit.
std::vector<Interpretation> enumerate_interpretations(
    unsigned n, const EnumerationGuard& guard = {});

class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies };

  static Formula top() { return Formula(Kind::True); }
  static Formula bottom() { return Formula(Kind::False); }
  static Formula atom(int var);
  static Formula literal(Literal l);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  // Empty clause gives bottom.
  static Formula from_clause(const Clause& c);
  // Empty set gives top.
  static Formula conjunction_of(const std::vector<Literal>& literals);

  Kind kind() const { return kind_; }
  int variable() const { return var_; }
  const std::vector<Formula>& operands() const { return operands_; }

  bool eval(std::uint64_t bits) const;
  bool eval(const Interpretation& w) const { return eval(w.bits); }
  std::uint64_t variables() const;

  std::string to_string(const Vocabulary& vocab) const;

  bool operator==(const Formula&) const = default;

 private:
  explicit Formula(Kind kind) : kind_(kind) {}

  Kind kind_;
  int var_ = -1;
  std::vector<Formula> operands_;
};

/// Parses the formula grammar
///   expr  := or ('->' expr)?
///   or    := and ('|' and)*
///   and   := unary ('&' unary)*
///   unary := '!' unary | '(' expr ')' | 'true' | 'false' | identifier
/// Unseen identifiers are registered in `vars` when `register_new` is set,
/// otherwise they are a ParseError.
Formula parse_formula(std::string_view text, Vocabulary& vars,
                      bool register_new = true);

/// Clausal form by distribution over the same variables. The result is
/// logically equivalent to `f`, sorted, duplicate-free and without
/// tautologies. `false` yields the single empty clause, `true` no clauses.
std::vector<Clause> to_cnf(const Formula& f);

}  // namespace posslog
