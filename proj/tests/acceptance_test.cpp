// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "posslog/base_to_graph.h"
#include "posslog/graph_to_base.h"
#include "posslog/io.h"
#include "posslog/verifier.h"
#include "test_util.h"

using namespace posslog;
using posslog::test::clause;
using posslog::test::formula;
using posslog::test::W;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> details;  // printed under the verdict line

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      details.push_back("failed: " + what);
    }
  }
  void note(const std::string& text) { details.push_back(text); }
};

PossBase load_base(const std::string& name) {
  return parse_base(posslog::test::read_data(name));
}
PossNetwork load_network(const std::string& name) {
  return parse_network(posslog::test::read_data(name));
}

std::map<std::string, std::string> as_map(const PossBase& b) {
  std::map<std::string, std::string> m;
  for (const auto& wc : b) m[wc.clause.to_string(b.vocabulary())] = wc.weight.to_string();
  return m;
}

std::string describe(const std::map<std::string, std::string>& m) {
  std::string s;
  for (const auto& [c, w] : m) s += "(" + c + " : " + w + ") ";
  return s;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  auto s1 = load_base("example1_s1.pkb");
  auto d = pi_from_base(s1);
  // a = bit 0, b = bit 1
  o.expect(d.degree(0b00) == Weight::one(), "pi(!a !b) = 1");
  o.expect(d.degree(0b11) == W(4, 5), "pi(a b) = 4/5");
  o.expect(d.degree(0b01) == W(4, 5), "pi(a !b) = 4/5");
  o.expect(d.degree(0b10) == W(7, 10), "pi(!a b) = 7/10");

  auto ab = decompose(d, {0, 1}, Combination::Min);
  o.expect(ab.table(0).at(true, 0) == W(4, 5) && ab.table(0).at(false, 0).is_one(),
           "pi(a) = .8, pi(!a) = 1");
  o.expect(ab.table(1).at(true, 1).is_one() && ab.table(1).at(false, 1).is_one() &&
               ab.table(1).at(true, 0) == W(7, 10) && ab.table(1).at(false, 0).is_one(),
           "pi(B|A) matrix");
  auto ba = decompose(d, {1, 0}, Combination::Min);
  o.expect(ba.table(1).at(true, 0) == W(4, 5) && ba.table(1).at(false, 0).is_one(),
           "pi(b) = .8, pi(!b) = 1");
  o.expect(ba.table(0).at(true, 1).is_one() && ba.table(0).at(true, 0) == W(4, 5) &&
               ba.table(0).at(false, 1) == W(7, 10) && ba.table(0).at(false, 0).is_one(),
           "pi(A|B) matrix");
  o.expect(equivalent(s1, load_base("example1_s2.pkb")), "Sigma1 equivalent to Sigma2");
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto g = load_network("example2.pnet");
  auto b = encode_min(g);
  std::map<std::string, std::string> expected = {
      {"a", "1/4"},      {"!a | !b | !c", "1/2"}, {"a | b | !c", "3/4"},
      {"c | !d", "3/4"}, {"!b | d | e", "1/4"},   {"b | !d | !e", "1/2"},
  };
  o.expect(as_map(b) == expected, "six clauses, got " + describe(as_map(b)));
  o.expect(pi_from_base(b) == joint_min(g), "pi of the base equals the min joint");
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto g = load_network("example2.pnet");
  auto b = encode_product(g);
  std::map<std::string, std::string> expected = {
      {"a", "1/4"},
      {"!a | !b | !c", "1/2"},
      {"a | b | !c", "13/16"},
      {"c | !d", "3/4"},
      {"a | c | !d", "13/16"},
      {"!b | d | e", "1/4"},
      {"a | !b | d | e", "7/16"},
      {"!a | !b | !c | d | e", "5/8"},
      {"b | !d | !e", "1/2"},
      {"a | b | !d | !e", "5/8"},
      {"a | b | !c | !d | !e", "29/32"},
      {"b | c | !d | !e", "7/8"},
      {"a | b | c | !d | !e", "29/32"},
  };
  o.expect(as_map(b) == expected, "thirteen clauses, got " + describe(as_map(b)));
  o.expect(pi_from_base(b) == joint_product(g), "pi of the base equals the product joint");
  o.note("the reference listing writes (!b | !d | e : 1/4) and (a | !b | !d | e : 7/16); "
         "the triple (!e, b !d, 3/4) encodes to (!b | d | e), which is asserted");
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto g = load_network("example3.pnet");
  auto d = joint_min(g);
  o.expect(d.degree(0b11) == W(1, 3) && d.degree(0b01).is_one() &&
               d.degree(0b10) == W(1, 4) && d.degree(0b00) == W(1, 4),
           "min joint (1/3, 1, 1/4, 1/4)");
  const auto& v = g.vocabulary();
  o.expect(conditional_possibility(d, formula(v, "b"), formula(v, "!a"), Combination::Min)
               .is_one(),
           "min recovery of Pi(b | !a) is 1");
  auto rp = check_recovery_product(g);
  o.expect(rp.passed(), "product recovery returns every entry\n" + rp.render());
  auto rm = check_recovery_min(g);
  o.expect(rm.passed() && rm.notes.size() == 1, "min recovery degrades exactly one entry");
  return o;
}

Outcome criterion5() {
  Outcome o;
  // Example 4: (t | v : .4) is subsumed and removed
  {
    auto b = load_base("example4.pkb");
    const auto& v = b.vocabulary();
    o.expect(is_subsumed(b, {clause(v, "t | v"), W(2, 5)}), "ex4: (t | v : .4) subsumed");
    o.expect(remove_subsumed(b) == PossBase(v, {{clause(v, "t"), W(3, 5)}}),
             "ex4: reduced base is {(t : .6)}");
    auto r = build_graph(b, {0, 1});
    o.expect(r.network.parents(0).empty() && r.network.parents(1).empty(),
             "ex4: no edge between T and V");
  }
  // Example 5: (!a | b : .5) replaced by (b : .5)
  {
    auto b = load_base("example5.pkb");
    const auto& v = b.vocabulary();
    auto r = build_graph(b, {0, 1});
    bool replaced = false;
    for (const auto& s : r.trace) {
      replaced = replaced || (s.kind == TraceStep::Kind::Replaced && s.removed.size() == 1 &&
                              s.removed[0].clause == clause(v, "!a | b") &&
                              s.added.size() == 1 && s.added[0].clause == clause(v, "b") &&
                              s.added[0].weight == W(1, 2));
    }
    o.expect(replaced, "ex5: replacement (!a | b : .5) -> (b : .5)");
    PossBase expected(v, {{clause(v, "a"), W(1, 2)}, {clause(v, "b"), W(1, 2)}});
    o.expect(equivalent(b, expected), "ex5: equivalent to {(a : .5), (b : .5)}");
  }
  // Example 6
  {
    auto b = load_base("example6.pkb");
    o.expect(entails(b, formula(b.vocabulary(), "a | b"), W(1, 2)), "ex6: entails (a | b, .5)");
  }
  // Example 7
  {
    auto b = load_base("example7.pkb");
    const auto& v = b.vocabulary();
    auto d = pi_from_base(b);
    o.expect(conditional_possibility(d, formula(v, "!x"), formula(v, "!a & !b"),
                                     Combination::Min)
                 .is_one(),
             "ex7: Pi(!x | !a !b) = 1");
    PossBase sx(v, {{clause(v, "x | b"), W(1, 2)}, {clause(v, "x | a"), W(1, 2)}});
    o.expect(conditional_possibility(pi_from_base(sx), formula(v, "!x"),
                                     formula(v, "!a & !b"), Combination::Min) == W(1, 2),
             "ex7: the x-clauses alone give .5");
  }
  // Example 8
  {
    Vocabulary v{"x", "a", "b"};
    std::vector<WeightedClause> k = {{clause(v, "x | b"), W(1, 2)},
                                     {clause(v, "x | a"), W(1, 2)}};
    PossBase got(v);
    for (const auto& wc : complete_extension(0, k, {1, 2})) got.add(wc);
    PossBase expected(v, {{clause(v, "x | b | !a"), W(1, 2)},
                          {clause(v, "x | b | a"), W(1, 2)},
                          {clause(v, "x | a | !b"), W(1, 2)}});
    o.expect(got == expected, "ex8: E(K) has the three reference clauses");
  }
  // Example 9
  {
    auto b = load_base("example9.pkb");
    auto r = build_graph(b, {0, 1, 2, 3, 4, 5});
    const auto& vocab = b.vocabulary();
    std::map<std::string, std::vector<int>> listed = {
        {"a", {1, 2, 3}}, {"b", {2, 4}}, {"c", {}}, {"d", {5}}, {"e", {}}, {"f", {}}};
    for (const auto& [name, parents] : listed) {
      int node = *vocab.find(name);
      const auto& got = r.network.parents(node);
      std::string text;
      for (int p : got) text += vocab.name(p) + " ";
      o.expect(got == parents, "ex9: Par(" + name + ") as listed, got { " + text + "}");
    }
    auto d = pi_from_base(b);
    if (!possibility(d, formula(vocab, "!c & !e")).is_one() &&
        possibility(d, formula(vocab, "!c")).is_one() &&
        possibility(d, formula(vocab, "!e")).is_one()) {
      o.note("ex9: pi(!c & !e) = " + possibility(d, formula(vocab, "!c & !e")).to_string() +
             " while pi(!c) = pi(!e) = 1, so C and E cannot both be parentless roots "
             "of a normalized network for this base");
    }
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  GeneratorConfig net;
  net.seed = 20240601;
  net.vars = 6;
  net.max_parents = 3;
  for (CheckKind kind : {CheckKind::EncodeMin, CheckKind::EncodeProduct,
                         CheckKind::RecoveryProduct, CheckKind::RecoveryMin,
                         CheckKind::Independence}) {
    auto r = run_random_check(kind, net, 500);
    o.expect(r.passed() && r.instances == 500, r.render(3));
    o.note(r.render(0).substr(0, r.render(0).find('\n')));
  }
  GeneratorConfig base;
  base.seed = 20240602;
  base.vars = 6;
  base.clauses = 10;
  auto r = run_random_check(CheckKind::Roundtrip, base, 500, 3);
  o.expect(r.passed() && r.instances == 1500, r.render(3));
  o.note(r.render(0).substr(0, r.render(0).find('\n')));
  return o;
}

// All 256 Boolean functions of 3 variables, as disjunctions of minterms.
std::vector<Formula> all_formulas3() {
  std::vector<Formula> fs;
  for (unsigned table = 0; table < 256; ++table) {
    Formula f = Formula::bottom();
    for (std::uint64_t w = 0; w < 8; ++w) {
      if (!((table >> w) & 1u)) continue;
      std::vector<Literal> lits;
      for (int v = 0; v < 3; ++v) lits.push_back({v, ((w >> v) & 1u) != 0});
      f = Formula::disjunction(f, Formula::conjunction_of(lits));
    }
    fs.push_back(f);
  }
  return fs;
}

Outcome criterion7() {
  Outcome o;
  GeneratorConfig cfg;
  cfg.seed = 777;
  cfg.vars = 4;
  cfg.clauses = 5;
  cfg.consistent = false;
  auto r = run_random_check(CheckKind::CStarAlgebra, cfg, 200);
  o.expect(r.passed() && r.instances == 200, r.render(3));
  o.note(r.render(0).substr(0, r.render(0).find('\n')));

  auto fs = all_formulas3();
  GeneratorConfig bcfg;
  bcfg.vars = 3;
  bcfg.clauses = 6;
  std::size_t law_checks = 0, exactness_checks = 0;
  for (std::uint64_t seed = 1; seed <= 100 && o.passed; ++seed) {
    bcfg.seed = 9000 + seed;
    auto b = random_base(bcfg, 3);
    auto d = pi_from_base(b);
    std::vector<Weight> pi(256), nec(256);
    for (unsigned t = 0; t < 256; ++t) {
      pi[t] = possibility(d, fs[t]);
      nec[t] = necessity(d, fs[t]);
      o.expect(nec[t] == possibility(d, Formula::negation(fs[t])).complement(),
               "duality on base " + write_base(b));
    }
    for (unsigned s = 0; s < 256; ++s) {
      for (unsigned t = 0; t < 256; ++t) {
        ++law_checks;
        if (pi[s | t] != std::max(pi[s], pi[t]) || nec[s & t] != std::min(nec[s], nec[t])) {
          o.expect(false, "max/min law on base " + write_base(b));
        }
      }
    }
    // direct evaluation of the combined formulas on a sample of pairs
    for (unsigned s = 0; s < 256; s += 17) {
      for (unsigned t = 0; t < 256; t += 13) {
        o.expect(possibility(d, Formula::disjunction(fs[s], fs[t])) == std::max(pi[s], pi[t]),
                 "Pi(f | g) = max");
        o.expect(necessity(d, Formula::conjunction(fs[s], fs[t])) == std::min(nec[s], nec[t]),
                 "N(f & g) = min");
      }
    }
    // every formula added to the base at weight 1/2, then strictly subsumed
    // clauses removed: each remaining clause has exactly its own necessity
    for (unsigned t = 0; t < 256; ++t) {
      PossBase extended = b;
      for (const auto& c : to_cnf(fs[t])) extended.add(c, W(1, 2));
      auto reduced = remove_strictly_subsumed(extended);
      auto dr = pi_from_base(reduced);
      for (const auto& wc : reduced) {
        ++exactness_checks;
        if (necessity(dr, Formula::from_clause(wc.clause)) != wc.weight) {
          o.expect(false, "necessity exactness on " + write_base(reduced));
        }
      }
    }
  }
  o.note(std::to_string(law_checks) + " law instances, " + std::to_string(exactness_checks) +
         " necessity exactness instances");
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto b = load_base("example9.pkb");
  auto r = build_graph(b, {0, 1, 2, 3, 4, 5});
  auto g = conditional_tables(r);
  auto d = pi_from_base(b);
  auto m = joint_min(g);
  o.expect(m == d, "pi_Sigma = pi_m");
  o.expect(validate_network(g).valid(), "compiled tables normalized");
  auto rt = check_roundtrip(b, r.ordering);
  o.expect(rt.passed(), rt.render());
  // exact recovery of every entry over contexts of positive possibility
  std::size_t checked = 0;
  for (int node = 0; node < g.node_count(); ++node) {
    const auto& t = g.table(node);
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      Formula context = Formula::conjunction_of(t.context_literals(ctx));
      if (possibility(m, context).is_zero()) continue;
      for (bool inst : {false, true}) {
        ++checked;
        o.expect(posslog::test::oracle_min_conditional(m, Formula::literal({node, inst}),
                                                       context) == t.at(inst, ctx),
                 "recovery of an entry of node " + g.vocabulary().name(node));
      }
    }
  }
  o.note(std::to_string(checked) + " table entries recovered exactly");

  // Cross-reference with the reference tables; reported, not asserted.
  const auto& v = g.vocabulary();
  struct Listed {
    int node;
    bool inst;
    std::vector<Literal> context;
    Weight value;
  };
  std::vector<Listed> listed = {
      {1, true, {{2, false}, {4, true}}, Weight::one()},
      {1, true, {{2, false}, {4, false}}, Weight::one()},
      {1, true, {{2, true}, {4, true}}, W(4, 5)},
      {1, true, {{2, true}, {4, false}}, W(4, 5)},
      {1, false, {{2, false}, {4, true}}, W(1, 5)},
      {1, false, {{2, false}, {4, false}}, W(1, 5)},
      {1, false, {{2, true}, {4, true}}, Weight::one()},
      {1, false, {{2, true}, {4, false}}, Weight::one()},
      {3, true, {{5, true}}, Weight::one()},
      {3, true, {{5, false}}, W(1, 2)},
      {3, false, {{5, true}}, Weight::one()},
      {3, false, {{5, false}}, Weight::one()},
  };
  for (const auto& p : listed) {
    std::string name = "Pi(" + Literal{p.node, p.inst}.to_string(v) + " |";
    for (Literal l : p.context) name += " " + l.to_string(v);
    name += ")";
    Weight got = conditional_possibility(m, Formula::literal({p.node, p.inst}),
                                         Formula::conjunction_of(p.context), Combination::Min);
    auto ctx = g.table(p.node).context_from(p.context);
    std::string table = ctx ? g.table(p.node).at(p.inst, *ctx).to_string() : "n/a";
    o.note(std::string(got == p.value ? "agrees " : "differs") + " " + name + ": reference " +
           p.value.to_string() + ", oracle " + got.to_string() + ", table " + table);
  }
  o.note(std::string("reference prior of C is all ones; compiled Par(c) = {") +
         (g.parents(2).empty() ? "" : v.name(g.parents(2)[0])) + "}");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "Example 1 distribution, decompositions, equivalence", 1, criterion1},
      {2, "Example 2 min encoding", 1, criterion2},
      {3, "Example 2 product encoding", 1, criterion3},
      {4, "Example 3 joint and recovery", 1, criterion4},
      {5, "base-to-graph examples 4-9", 1, criterion5},
      {6, "random property suite", 60, criterion6},
      {7, "algebra suite", 30, criterion7},
      {8, "Example 9 compilation cross-check", 1, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) o.expect(false, "runtime above " + std::to_string(c.limit_s) + " s");
    std::ostringstream line;
    line.precision(3);
    line << std::fixed << "criterion " << c.id << ": " << (o.passed ? "PASS" : "FAIL") << "  "
         << c.title << " (" << secs << " s)";
    std::cout << line.str() << '\n';
    for (const auto& d : o.details) std::cout << "    " << d << '\n';
    failed += o.passed ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
