#include "posslog/io.h"

#include <cctype>
#include <set>
#include <sstream>

#include "posslog/base_to_graph.h"
#include "posslog/error.h"

namespace posslog {

namespace {

struct Line {
  std::size_t number;     // 1-based
  std::string_view text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({number, line});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

bool blank(std::string_view s) {
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Whitespace-separated words with their column offsets.
std::vector<std::pair<std::string_view, std::size_t>> words(std::string_view s,
                                                             std::size_t offset = 0) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != ',') ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start), offset + start);
  }
  return out;
}

[[noreturn]] void fail(const Line& line, const std::string& what, std::size_t column) {
  throw ParseError("line " + std::to_string(line.number) + ": " + what, column);
}

// Re-throws a ParseError from a sub-parser with the line number attached.
template <typename F>
auto on_line(const Line& line, std::size_t offset, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::string what = e.what();
    what = what.substr(0, what.rfind(" at position "));
    fail(line, what, offset + e.position());
  } catch (const UsageError& e) {
    fail(line, e.what(), offset);
  }
}

bool starts_with_word(std::string_view s, std::string_view word) {
  auto ws = words(s);
  return !ws.empty() && ws[0].first == word;
}

void read_vars_header(const Line& line, Vocabulary& vocab) {
  auto ws = words(line.text);
  for (std::size_t i = 1; i < ws.size(); ++i) {
    if (vocab.find(ws[i].first)) fail(line, "duplicate variable", ws[i].second);
    on_line(line, ws[i].second, [&] { return vocab.add(ws[i].first); });
  }
}

Literal parse_literal(const Line& line, std::string_view word, std::size_t column,
                      Vocabulary& vocab, bool register_new) {
  bool positive = true;
  std::size_t skip = 0;
  if (!word.empty() && (word[0] == '!' || word[0] == '~')) {
    positive = false;
    skip = 1;
  }
  std::string_view name = word.substr(skip);
  if (!Vocabulary::is_identifier(name)) fail(line, "bad literal", column);
  auto index = vocab.find(name);
  if (!index) {
    if (!register_new) fail(line, "unknown variable '" + std::string(name) + "'", column + skip);
    index = vocab.add(name);
  }
  return {*index, positive};
}

std::string weight_text(const Weight& w) { return w.to_string(); }

}  // namespace

bool looks_like_network(std::string_view text) {
  for (const Line& line : split_lines(text)) {
    if (blank(line.text) || starts_with_word(line.text, "vars")) continue;
    return starts_with_word(line.text, "node");
  }
  return false;
}

FormulaBase parse_formula_base(std::string_view text) {
  FormulaBase out;
  bool seen_fact = false;
  for (const Line& line : split_lines(text)) {
    if (blank(line.text)) continue;
    if (starts_with_word(line.text, "vars")) {
      if (seen_fact || out.vocab.size() != 0) {
        fail(line, "vars header must come first", 0);
      }
      read_vars_header(line, out.vocab);
      continue;
    }
    seen_fact = true;
    auto colon = line.text.rfind(':');
    if (colon == std::string_view::npos) fail(line, "expected ':'", line.text.size());
    std::string_view lhs = line.text.substr(0, colon);
    std::string_view rhs = line.text.substr(colon + 1);
    std::size_t lead = 0;
    while (lead < rhs.size() && std::isspace(static_cast<unsigned char>(rhs[lead]))) ++lead;
    std::size_t end = rhs.size();
    while (end > lead && std::isspace(static_cast<unsigned char>(rhs[end - 1]))) --end;
    Formula f = on_line(line, 0, [&] { return parse_formula(lhs, out.vocab); });
    Weight w = on_line(line, 0, [&] {
      return parse_weight(rhs.substr(lead, end - lead), colon + 1 + lead);
    });
    out.formulas.push_back({std::move(f), std::move(w)});
  }
  return out;
}

PossBase parse_base(std::string_view text) {
  FormulaBase fb = parse_formula_base(text);
  return preprocess(fb.vocab, fb.formulas);
}

std::string write_base(const PossBase& base) {
  std::ostringstream os;
  os << "vars";
  for (const auto& name : base.vocabulary().names()) os << ' ' << name;
  os << '\n';
  for (const auto& wc : base) {
    os << wc.clause.to_string(base.vocabulary()) << " : " << weight_text(wc.weight) << '\n';
  }
  return os.str();
}

PossNetwork parse_network(std::string_view text) {
  Vocabulary vocab;
  // First pass: names and parents, so that forward references resolve.
  std::vector<Line> lines = split_lines(text);
  std::vector<std::pair<int, std::vector<int>>> declared;
  std::set<int> has_node;
  bool seen_other = false;
  for (const Line& line : lines) {
    if (blank(line.text)) continue;
    if (starts_with_word(line.text, "vars")) {
      if (seen_other || vocab.size() != 0) fail(line, "vars header must come first", 0);
      read_vars_header(line, vocab);
      continue;
    }
    seen_other = true;
    if (!starts_with_word(line.text, "node")) continue;
    auto colon = line.text.find(':');
    auto head = words(line.text.substr(0, colon));
    if (head.size() != 2) fail(line, "expected 'node NAME'", head.size() > 2 ? head[2].second : line.text.size());
    int node = on_line(line, head[1].second, [&] { return vocab.add(head[1].first); });
    if (!has_node.insert(node).second) fail(line, "node declared twice", head[1].second);
    std::vector<int> parents;
    if (colon != std::string_view::npos) {
      for (auto [word, col] : words(line.text.substr(colon + 1), colon + 1)) {
        int p = on_line(line, col, [&] { return vocab.add(word); });
        if (p == node) fail(line, "node cannot be its own parent", col);
        for (int q : parents) {
          if (q == p) fail(line, "duplicate parent", col);
        }
        parents.push_back(p);
      }
    }
    declared.emplace_back(node, std::move(parents));
  }
  for (int v = 0; v < static_cast<int>(vocab.size()); ++v) {
    if (!has_node.count(v)) {
      throw ParseError("variable '" + vocab.name(v) + "' has no node declaration", 0);
    }
  }

  PossNetwork g(vocab);
  for (auto& [node, parents] : declared) g.set_parents(node, parents);

  // Second pass: table entries.
  int current = -1;
  std::set<std::pair<int, std::uint32_t>> filled;  // (node, slot)
  for (const Line& line : lines) {
    if (blank(line.text) || starts_with_word(line.text, "vars")) continue;
    if (starts_with_word(line.text, "node")) {
      current = *vocab.find(words(line.text.substr(0, line.text.find(':')))[1].first);
      continue;
    }
    if (current < 0) fail(line, "table entry before any node", 0);
    auto colon = line.text.rfind(':');
    if (colon == std::string_view::npos) fail(line, "expected ':'", line.text.size());
    std::string_view lhs = line.text.substr(0, colon);
    auto bar = lhs.find('|');
    auto inst_words = words(lhs.substr(0, bar));
    if (inst_words.size() != 1) fail(line, "expected one instance literal", 0);
    Literal inst = parse_literal(line, inst_words[0].first, inst_words[0].second, vocab, false);
    if (inst.var != current) {
      fail(line, "entry is not an instance of node '" + vocab.name(current) + "'",
           inst_words[0].second);
    }
    std::vector<Literal> context;
    if (bar != std::string_view::npos) {
      for (auto [word, col] : words(lhs.substr(bar + 1), bar + 1)) {
        context.push_back(parse_literal(line, word, col, vocab, false));
      }
    }
    auto& table = g.table(current);
    auto ctx = table.context_from(context);
    if (!ctx) fail(line, "context must instantiate every parent exactly once", bar == std::string_view::npos ? 0 : bar);
    std::string_view rhs = line.text.substr(colon + 1);
    std::size_t lead = 0;
    while (lead < rhs.size() && std::isspace(static_cast<unsigned char>(rhs[lead]))) ++lead;
    std::size_t end = rhs.size();
    while (end > lead && std::isspace(static_cast<unsigned char>(rhs[end - 1]))) --end;
    Weight w = on_line(line, 0, [&] {
      return parse_weight(rhs.substr(lead, end - lead), colon + 1 + lead);
    });
    std::uint32_t slot = (*ctx << 1) | (inst.positive ? 1u : 0u);
    if (!filled.insert({current, slot}).second) fail(line, "duplicate table entry", 0);
    table.set(inst.positive, *ctx, std::move(w));
  }
  return g;
}

std::string write_network(const PossNetwork& g) {
  const auto& vocab = g.vocabulary();
  std::ostringstream os;
  os << "vars";
  for (const auto& name : vocab.names()) os << ' ' << name;
  os << '\n';
  for (int node = 0; node < g.node_count(); ++node) {
    const auto& t = g.table(node);
    os << "node " << vocab.name(node);
    if (!t.parents().empty()) {
      os << " :";
      for (int p : t.parents()) os << ' ' << vocab.name(p);
    }
    os << '\n';
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      for (bool inst : {true, false}) {
        if (t.at(inst, ctx).is_one()) continue;
        os << Literal{node, inst}.to_string(vocab);
        auto lits = t.context_literals(ctx);
        if (!lits.empty()) {
          os << " |";
          for (Literal l : lits) os << ' ' << l.to_string(vocab);
        }
        os << " : " << weight_text(t.at(inst, ctx)) << '\n';
      }
    }
  }
  return os.str();
}

KappaRanking parse_kappa(std::string_view text) {
  KappaRanking k;
  bool have_header = false;
  std::vector<bool> seen;
  for (const Line& line : split_lines(text)) {
    if (blank(line.text)) continue;
    if (starts_with_word(line.text, "vars")) {
      if (have_header) fail(line, "duplicate vars header", 0);
      read_vars_header(line, k.vocab);
      EnumerationGuard{}.check(k.vocab.size());
      k.ranks.assign(std::size_t{1} << k.vocab.size(), std::nullopt);
      seen.assign(k.ranks.size(), false);
      have_header = true;
      continue;
    }
    if (!have_header) fail(line, "missing vars header", 0);
    auto ws = words(line.text);
    if (ws.size() != 2) fail(line, "expected 'PATTERN RANK'", 0);
    auto [pattern, pcol] = ws[0];
    if (pattern.size() != k.vocab.size()) fail(line, "pattern width differs from vars", pcol);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (pattern[i] == '1') bits |= std::uint64_t{1} << i;
      else if (pattern[i] != '0') fail(line, "pattern must be 0/1", pcol + i);
    }
    if (seen[bits]) fail(line, "world listed twice", pcol);
    seen[bits] = true;
    auto [rank, rcol] = ws[1];
    if (rank == "inf") continue;
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < rank.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(rank[i])) || value > (UINT64_MAX - 9) / 10) {
        fail(line, "rank must be a non-negative integer or inf", rcol + i);
      }
      value = value * 10 + static_cast<std::uint64_t>(rank[i] - '0');
    }
    k.ranks[bits] = value;
  }
  if (!have_header) throw ParseError("missing vars header", 0);
  for (std::size_t w = 0; w < seen.size(); ++w) {
    if (!seen[w]) {
      throw ParseError("world " + Interpretation{w, static_cast<unsigned>(k.vocab.size())}.pattern() +
                           " is not listed", 0);
    }
  }
  return k;
}

std::string write_distribution(const PossibilityDistribution& d) {
  std::ostringstream os;
  for (const auto& w : enumerate_interpretations(d.variable_count(),
                                                 EnumerationGuard{EnumerationGuard::kHardLimit})) {
    const Weight& v = d.degree(w);
    os << w.pattern() << '\t' << w.to_string(d.vocabulary()) << '\t' << v.to_string()
       << '\t' << v.to_decimal() << '\n';
  }
  return os.str();
}

}  // namespace posslog
