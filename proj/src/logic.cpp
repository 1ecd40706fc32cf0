#include "posslog/logic.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>

#include "posslog/error.h"

namespace posslog {

void EnumerationGuard::check(std::size_t variable_count) const {
  unsigned limit = std::min(max_vars, kHardLimit);
  if (variable_count > limit) {
    throw GuardError(std::to_string(variable_count) +
                     " variables exceed the enumeration guard of " +
                     std::to_string(limit));
  }
}

// Vocabulary

Vocabulary::Vocabulary(std::initializer_list<std::string> names) {
  for (const auto& n : names) add(n);
}

bool Vocabulary::is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return name != "true" && name != "false" && name != "vars" && name != "node";
}

int Vocabulary::add(std::string_view name) {
  if (auto it = index_.find(std::string(name)); it != index_.end()) {
    return it->second;
  }
  if (!is_identifier(name)) {
    throw UsageError("invalid variable name '" + std::string(name) + "'");
  }
  if (names_.size() >= static_cast<std::size_t>(kMaxVariables)) {
    throw DomainError("more than " + std::to_string(kMaxVariables) +
                      " variables");
  }
  int index = static_cast<int>(names_.size());
  names_.emplace_back(name);
  index_.emplace(std::string(name), index);
  return index;
}

std::optional<int> Vocabulary::find(std::string_view name) const {
  if (auto it = index_.find(std::string(name)); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

bool Vocabulary::extends(const Vocabulary& other) const {
  if (other.size() > size()) return false;
  return std::equal(other.names_.begin(), other.names_.end(), names_.begin());
}

// Clause

Clause::Clause(std::initializer_list<Literal> literals) {
  for (Literal l : literals) add(l);
}

Clause Clause::from_literals(const std::vector<Literal>& literals) {
  Clause c;
  for (Literal l : literals) c.add(l);
  return c;
}

void Clause::add(Literal l) {
  std::uint64_t bit = std::uint64_t{1} << l.var;
  (l.positive ? pos_ : neg_) |= bit;
}

bool Clause::contains(Literal l) const {
  std::uint64_t bit = std::uint64_t{1} << l.var;
  return ((l.positive ? pos_ : neg_) & bit) != 0;
}

int Clause::size() const { return std::popcount(pos_) + std::popcount(neg_); }

std::vector<Literal> Clause::literals() const {
  std::vector<Literal> out;
  std::uint64_t vars = pos_ | neg_;
  while (vars != 0) {
    int v = std::countr_zero(vars);
    vars &= vars - 1;
    std::uint64_t bit = std::uint64_t{1} << v;
    if (neg_ & bit) out.push_back({v, false});
    if (pos_ & bit) out.push_back({v, true});
  }
  return out;
}

std::strong_ordering Clause::operator<=>(const Clause& other) const {
  auto a = literals();
  auto b = other.literals();
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(),
                                                b.end());
}

std::string Clause::to_string(const Vocabulary& vocab) const {
  if (empty()) return "false";
  std::string out;
  for (Literal l : literals()) {
    if (!out.empty()) out += " | ";
    out += l.to_string(vocab);
  }
  return out;
}

bool is_tautology(const Clause& c) { return c.is_tautology(); }

// Interpretation

std::string Interpretation::pattern() const {
  std::string out(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if (value(static_cast<int>(i))) out[i] = '1';
  }
  return out;
}

std::string Interpretation::to_string(const Vocabulary& vocab) const {
  std::string out;
  for (unsigned i = 0; i < width; ++i) {
    if (i) out += ' ';
    out += Literal{static_cast<int>(i), value(static_cast<int>(i))}.to_string(vocab);
  }
  return out;
}

bool eval_clause(const Clause& c, const Interpretation& w) {
  return c.satisfied_by(w.bits);
}

std::vector<Interpretation> enumerate_interpretations(
    unsigned n, const EnumerationGuard& guard) {
  guard.check(n);
  std::vector<Interpretation> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    // Pattern digit i (from the left) is bit n-1-i of k.
    std::uint64_t bits = 0;
    for (unsigned i = 0; i < n; ++i) {
      if ((k >> (n - 1 - i)) & 1u) bits |= std::uint64_t{1} << i;
    }
    out.push_back({bits, n});
  }
  return out;
}

// Formula

Formula Formula::atom(int var) {
  Formula f(Kind::Atom);
  f.var_ = var;
  return f;
}

Formula Formula::literal(Literal l) {
  return l.positive ? atom(l.var) : negation(atom(l.var));
}

Formula Formula::negation(Formula f) {
  Formula out(Kind::Not);
  out.operands_.push_back(std::move(f));
  return out;
}

Formula Formula::conjunction(Formula a, Formula b) {
  Formula out(Kind::And);
  out.operands_.push_back(std::move(a));
  out.operands_.push_back(std::move(b));
  return out;
}

Formula Formula::disjunction(Formula a, Formula b) {
  Formula out(Kind::Or);
  out.operands_.push_back(std::move(a));
  out.operands_.push_back(std::move(b));
  return out;
}

Formula Formula::implication(Formula a, Formula b) {
  Formula out(Kind::Implies);
  out.operands_.push_back(std::move(a));
  out.operands_.push_back(std::move(b));
  return out;
}

Formula Formula::from_clause(const Clause& c) {
  auto lits = c.literals();
  if (lits.empty()) return bottom();
  Formula f = literal(lits[0]);
  for (std::size_t i = 1; i < lits.size(); ++i) {
    f = disjunction(std::move(f), literal(lits[i]));
  }
  return f;
}

Formula Formula::conjunction_of(const std::vector<Literal>& literals) {
  if (literals.empty()) return top();
  Formula f = literal(literals[0]);
  for (std::size_t i = 1; i < literals.size(); ++i) {
    f = conjunction(std::move(f), literal(literals[i]));
  }
  return f;
}

bool Formula::eval(std::uint64_t bits) const {
  switch (kind_) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return ((bits >> var_) & 1u) != 0;
    case Kind::Not: return !operands_[0].eval(bits);
    case Kind::And: return operands_[0].eval(bits) && operands_[1].eval(bits);
    case Kind::Or: return operands_[0].eval(bits) || operands_[1].eval(bits);
    case Kind::Implies: return !operands_[0].eval(bits) || operands_[1].eval(bits);
  }
  return false;
}

std::uint64_t Formula::variables() const {
  std::uint64_t mask = kind_ == Kind::Atom ? std::uint64_t{1} << var_ : 0;
  for (const auto& op : operands_) mask |= op.variables();
  return mask;
}

namespace {

int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    default: return 4;
  }
}

std::string render(const Formula& f, const Vocabulary& vocab, int context) {
  using K = Formula::Kind;
  std::string s;
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: return vocab.name(f.variable());
    case K::Not: return "!" + render(f.operands()[0], vocab, 4);
    case K::And:
      s = render(f.operands()[0], vocab, 3) + " & " +
          render(f.operands()[1], vocab, 3);
      break;
    case K::Or:
      s = render(f.operands()[0], vocab, 2) + " | " +
          render(f.operands()[1], vocab, 2);
      break;
    case K::Implies:
      // Right associative.
      s = render(f.operands()[0], vocab, 2) + " -> " +
          render(f.operands()[1], vocab, 1);
      break;
  }
  return precedence(f.kind()) < context ? "(" + s + ")" : s;
}

class FormulaParser {
 public:
  FormulaParser(std::string_view text, Vocabulary& vars, bool register_new)
      : text_(text), vars_(vars), register_new_(register_new) {}

  Formula parse() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty formula", pos_);
    Formula f = implication();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implication(std::move(lhs), implication());
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept("|")) f = Formula::disjunction(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept("&")) f = Formula::conjunction(std::move(f), unary());
    return f;
  }

  Formula unary() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("unexpected end of formula", pos_);
    char c = text_[pos_];
    if (c == '!' || c == '~') {
      ++pos_;
      return Formula::negation(unary());
    }
    if (c == '(') {
      ++pos_;
      Formula f = implication();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      throw ParseError("unexpected character", pos_);
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    std::string_view name = text_.substr(start, pos_ - start);
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    if (auto index = vars_.find(name)) return Formula::atom(*index);
    if (!register_new_) {
      throw ParseError("undeclared variable '" + std::string(name) + "'", start);
    }
    return Formula::atom(vars_.add(name));
  }

  std::string_view text_;
  Vocabulary& vars_;
  bool register_new_;
  std::size_t pos_ = 0;
};

// Negation normal form is folded into the CNF recursion via `negated`.
std::vector<Clause> cnf(const Formula& f, bool negated) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return negated ? std::vector<Clause>{Clause{}} : std::vector<Clause>{};
    case K::False:
      return negated ? std::vector<Clause>{} : std::vector<Clause>{Clause{}};
    case K::Atom:
      return {Clause{Literal{f.variable(), !negated}}};
    case K::Not:
      return cnf(f.operands()[0], !negated);
    default:
      break;
  }
  const Formula& a = f.operands()[0];
  const Formula& b = f.operands()[1];
  bool a_neg = negated;
  bool conjunctive = f.kind() == K::And;
  if (f.kind() == K::Implies) a_neg = !negated;  // a -> b == !a | b
  if (negated) conjunctive = !conjunctive;
  auto left = cnf(a, a_neg);
  auto right = cnf(b, negated);
  std::vector<Clause> out;
  if (conjunctive) {
    out = std::move(left);
    out.insert(out.end(), right.begin(), right.end());
  } else {
    for (const Clause& l : left) {
      for (const Clause& r : right) {
        Clause c = l | r;
        if (!c.is_tautology()) out.push_back(c);
      }
    }
  }
  return out;
}

}  // namespace

std::string Formula::to_string(const Vocabulary& vocab) const {
  return render(*this, vocab, 0);
}

Formula parse_formula(std::string_view text, Vocabulary& vars,
                      bool register_new) {
  return FormulaParser(text, vars, register_new).parse();
}

std::vector<Clause> to_cnf(const Formula& f) {
  auto clauses = cnf(f, false);
  std::set<Clause> unique(clauses.begin(), clauses.end());
  return {unique.begin(), unique.end()};
}

}  // namespace posslog
