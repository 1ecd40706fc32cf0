#include "posslog/verifier.h"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "posslog/base_to_graph.h"
#include "posslog/error.h"
#include "posslog/graph_to_base.h"
#include "posslog/io.h"

namespace posslog {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// mt19937_64 output is fixed by the standard; the std distributions are not,
// so bounded draws are done by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : engine_() % n; }
  bool coin() { return (engine_() & 1u) != 0; }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

std::string variable_name(unsigned i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "v" + std::to_string(i);
}

Vocabulary make_vocabulary(unsigned n) {
  Vocabulary v;
  for (unsigned i = 0; i < n; ++i) v.add(variable_name(i));
  return v;
}

unsigned draw_size(Rng& rng, const GeneratorConfig& cfg) {
  return cfg.min_vars + static_cast<unsigned>(rng.below(cfg.vars - cfg.min_vars + 1));
}

std::string describe(const PossNetwork& g) { return "network\n" + write_network(g); }
std::string describe(const PossBase& b) { return "base\n" + write_base(b); }

std::string entry_name(const PossNetwork& g, int node, bool inst, std::uint32_t ctx) {
  const auto& vocab = g.vocabulary();
  std::string s = "Pi(" + Literal{node, inst}.to_string(vocab);
  auto lits = g.table(node).context_literals(ctx);
  if (!lits.empty()) {
    s += " |";
    for (Literal l : lits) s += " " + l.to_string(vocab);
  }
  return s + ")";
}

void compare(const PossibilityDistribution& expected,
             const PossibilityDistribution& actual, const std::string& instance,
             CheckReport& report) {
  if (!(expected.vocabulary() == actual.vocabulary())) {
    report.failures.push_back({instance, "vocabulary", "different vocabulary"});
    return;
  }
  for (const auto& w : enumerate_interpretations(expected.variable_count())) {
    if (expected.degree(w) != actual.degree(w)) {
      report.failures.push_back({instance + "world " + w.pattern(),
                                 expected.degree(w).to_string(),
                                 actual.degree(w).to_string()});
    }
  }
}

template <typename F>
CheckReport timed(std::string name, F&& body) {
  auto start = std::chrono::steady_clock::now();
  CheckReport r;
  r.name = std::move(name);
  r.instances = 1;
  body(r);
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

// Calls f(node, ctx, context formula) for every context of positive
// possibility under `d`.
template <typename F>
void for_each_live_context(const PossNetwork& g, const PossibilityDistribution& d, F&& f) {
  for (int node = 0; node < g.node_count(); ++node) {
    const auto& t = g.table(node);
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      Formula context = Formula::conjunction_of(t.context_literals(ctx));
      if (possibility(d, context).is_zero()) continue;
      f(node, ctx, context);
    }
  }
}

void check_recovery(const PossNetwork& g, const PossibilityDistribution& d,
                    Combination mode, bool allow_one, const std::string& instance,
                    CheckReport& r) {
  for_each_live_context(g, d, [&](int node, std::uint32_t ctx, const Formula& context) {
    auto conditioned = condition(d, context, mode);
    for (bool inst : {false, true}) {
      const Weight& original = g.table(node).at(inst, ctx);
      Weight recovered = possibility(conditioned, Formula::literal({node, inst}));
      if (recovered == original) continue;
      if (allow_one && recovered.is_one()) {
        r.notes.push_back(entry_name(g, node, inst, ctx) + ": " + original.to_string() +
                          " -> 1");
        continue;
      }
      r.failures.push_back({instance + entry_name(g, node, inst, ctx),
                            original.to_string(), recovered.to_string()});
    }
  });
}

void check_non_interactivity(const PossNetwork& g, const PossibilityDistribution& d,
                             const std::string& instance, CheckReport& r) {
  for (int x = 0; x < g.node_count(); ++x) {
    std::uint64_t excluded = g.descendants(x) | (std::uint64_t{1} << x);
    for (int p : g.parents(x)) excluded |= std::uint64_t{1} << p;
    const auto& t = g.table(x);
    for (int y = 0; y < g.node_count(); ++y) {
      if ((excluded >> y) & 1u) continue;
      for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
        Formula context = Formula::conjunction_of(t.context_literals(ctx));
        if (possibility(d, context).is_zero()) continue;
        auto c = condition_min(d, context);
        for (bool xi : {false, true}) {
          for (bool yi : {false, true}) {
            Formula fx = Formula::literal({x, xi});
            Formula fy = Formula::literal({y, yi});
            Weight both = possibility(c, Formula::conjunction(fx, fy));
            Weight px = possibility(c, fx);
            Weight py = possibility(c, fy);
            Weight expected = px < py ? px : py;
            if (both != expected) {
              r.failures.push_back(
                  {instance + "Pi(" + Literal{x, xi}.to_string(g.vocabulary()) + " & " +
                       Literal{y, yi}.to_string(g.vocabulary()) + " | context of " +
                       entry_name(g, x, xi, ctx) + ")",
                   expected.to_string(), both.to_string()});
            }
          }
        }
      }
    }
  }
}

}  // namespace

void GeneratorConfig::validate(const EnumerationGuard& guard) const {
  if (vars == 0 || min_vars == 0 || min_vars > vars) {
    throw UsageError("variable bounds must satisfy 1 <= min_vars <= vars");
  }
  if (denominator == 0) throw UsageError("weight denominator bound must be positive");
  if (max_clause_length == 0) throw UsageError("clause length bound must be positive");
  guard.check(vars);
}

void CheckReport::absorb(const CheckReport& other) {
  instances += other.instances;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  elapsed += other.elapsed;
}

std::string CheckReport::render(std::size_t max_listed) const {
  std::ostringstream os;
  os << "check " << name << ": " << (passed() ? "PASS" : "FAIL") << " (" << instances
     << " instances, " << failures.size() << " failures, " << notes.size()
     << " notes, seed " << seed << ", " << elapsed.count() << " s)\n";
  for (std::size_t i = 0; i < notes.size() && i < max_listed; ++i) {
    os << "  note: " << notes[i] << '\n';
  }
  for (std::size_t i = 0; i < failures.size() && i < max_listed; ++i) {
    const auto& f = failures[i];
    os << "  failure: expected " << f.expected << ", got " << f.actual << '\n';
    std::istringstream lines(f.instance);
    for (std::string line; std::getline(lines, line);) os << "    " << line << '\n';
  }
  if (failures.size() > max_listed) {
    os << "  ... " << failures.size() - max_listed << " more failures\n";
  }
  return os.str();
}

PossNetwork random_network(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  unsigned n = draw_size(rng, cfg);
  PossNetwork g(make_vocabulary(n));
  std::vector<int> order(n);
  for (unsigned i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  for (unsigned i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

  for (unsigned i = 0; i < n; ++i) {
    std::vector<int> pool(order.begin(), order.begin() + i);
    unsigned k = static_cast<unsigned>(rng.below(std::min<unsigned>(cfg.max_parents, i) + 1));
    for (unsigned j = 0; j < k; ++j) {
      std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
    }
    pool.resize(k);
    int node = order[i];
    g.set_parents(node, pool);
    auto& t = g.table(node);
    for (std::uint32_t ctx = 0; ctx < t.context_count(); ++ctx) {
      bool full = rng.coin();
      long den = 1 + static_cast<long>(rng.below(cfg.denominator));
      long num = static_cast<long>(rng.below(static_cast<std::uint64_t>(den) + 1));
      t.set(full, ctx, Weight::one());
      t.set(!full, ctx, Weight(num, den));
    }
  }
  return g;
}

PossBase random_base(const GeneratorConfig& cfg, unsigned n) {
  cfg.validate();
  Rng rng(cfg.seed);
  PossBase base(make_vocabulary(n));
  if (n == 0) return base;
  std::uint64_t witness = rng.bits();
  unsigned m = static_cast<unsigned>(rng.below(cfg.clauses + 1));
  for (unsigned i = 0; i < m; ++i) {
    unsigned len = 1 + static_cast<unsigned>(rng.below(std::min(cfg.max_clause_length, n)));
    std::vector<int> vars(n);
    for (unsigned v = 0; v < n; ++v) vars[v] = static_cast<int>(v);
    for (unsigned j = 0; j < len; ++j) std::swap(vars[j], vars[j + rng.below(n - j)]);
    std::vector<Literal> lits;
    for (unsigned j = 0; j < len; ++j) lits.push_back({vars[j], rng.coin()});
    if (cfg.consistent) {
      bool satisfied = false;
      for (Literal l : lits) satisfied = satisfied || l.satisfied_by(witness);
      if (!satisfied) {
        auto& flip = lits[rng.below(len)];
        flip.positive = !flip.positive;
      }
    }
    long den = 1 + static_cast<long>(rng.below(cfg.denominator));
    long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den)));
    base.add(Clause::from_literals(lits), Weight(num, den));
  }
  return base;
}

PossBase random_base(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(splitmix64(cfg.seed));
  return random_base(cfg, draw_size(rng, cfg));
}

std::vector<int> random_ordering(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  return order;
}

CheckReport check_encode_min(const PossNetwork& g) {
  return timed("encode-min", [&](CheckReport& r) {
    compare(joint_min(g), pi_from_base(encode_min(g)), describe(g), r);
  });
}

CheckReport check_encode_product(const PossNetwork& g) {
  return timed("encode-product", [&](CheckReport& r) {
    compare(joint_product(g), pi_from_base(encode_product(g)), describe(g), r);
  });
}

CheckReport check_recovery_product(const PossNetwork& g) {
  return timed("recovery-product", [&](CheckReport& r) {
    check_recovery(g, joint_product(g), Combination::Product, false, describe(g), r);
  });
}

CheckReport check_recovery_min(const PossNetwork& g) {
  return timed("recovery-min", [&](CheckReport& r) {
    check_recovery(g, joint_min(g), Combination::Min, true, describe(g), r);
  });
}

CheckReport check_independence(const PossNetwork& g) {
  return timed("independence", [&](CheckReport& r) {
    check_non_interactivity(g, joint_min(g), describe(g), r);
  });
}

CheckReport check_roundtrip(const PossBase& base, const std::vector<int>& ordering) {
  return timed("roundtrip", [&](CheckReport& r) {
    std::string instance = describe(base) + "ordering";
    for (int v : ordering) instance += " " + base.vocabulary().name(v);
    instance += "\n";
    auto compiled = build_graph(base, ordering);
    PossNetwork g = conditional_tables(compiled);

    auto report = validate_network(g);
    for (const auto& issue : report.issues) {
      if (issue.is_error()) r.failures.push_back({instance, "valid network", issue.message});
    }
    PossBase merged(base.vocabulary());
    for (const auto& part : compiled.partition) merged = base_union(merged, part);
    auto pi_base = pi_from_base(base);
    compare(pi_base, pi_from_base(merged), instance + "partition union ", r);

    auto pi_graph = joint_min(g);
    compare(pi_base, pi_graph, instance, r);
    check_recovery(g, pi_graph, Combination::Min, false, instance, r);
    check_non_interactivity(g, pi_graph, instance, r);
  });
}

CheckReport check_cstar_algebra(const PossBase& a, const PossBase& b, const PossBase& c) {
  return timed("cstar-algebra", [&](CheckReport& r) {
    std::string instance = describe(a) + describe(b) + describe(c);
    auto pa = pi_from_base(a);
    auto pb = pi_from_base(b);
    auto pc = pi_from_base(c);
    auto ab = combine_product(a, b);
    auto p_ab = pi_from_base(ab);
    compare(pointwise_product(pa, pb), p_ab, instance + "C*(A,B) vs product ", r);
    compare(p_ab, pi_from_base(combine_product(b, a)), instance + "commutativity ", r);
    compare(pi_from_base(combine_product(ab, c)),
            pi_from_base(combine_product(a, combine_product(b, c))),
            instance + "associativity ", r);
    compare(pointwise_product(p_ab, pc), pi_from_base(combine_product(ab, c)),
            instance + "C*(C*(A,B),C) vs product ", r);
  });
}

const std::vector<CheckKind>& all_check_kinds() {
  static const std::vector<CheckKind> kinds = {
      CheckKind::EncodeMin,   CheckKind::EncodeProduct, CheckKind::RecoveryProduct,
      CheckKind::RecoveryMin, CheckKind::Independence,  CheckKind::Roundtrip,
      CheckKind::CStarAlgebra};
  return kinds;
}

std::string check_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::EncodeMin: return "encode-min";
    case CheckKind::EncodeProduct: return "encode-product";
    case CheckKind::RecoveryProduct: return "recovery-product";
    case CheckKind::RecoveryMin: return "recovery-min";
    case CheckKind::Independence: return "independence";
    case CheckKind::Roundtrip: return "roundtrip";
    case CheckKind::CStarAlgebra: return "cstar-algebra";
  }
  return "";
}

std::optional<CheckKind> parse_check_kind(std::string_view name) {
  for (CheckKind k : all_check_kinds()) {
    if (check_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

CheckReport run_trial(CheckKind kind, const GeneratorConfig& cfg, unsigned orderings) {
  switch (kind) {
    case CheckKind::EncodeMin: return check_encode_min(random_network(cfg));
    case CheckKind::EncodeProduct: return check_encode_product(random_network(cfg));
    case CheckKind::RecoveryProduct: return check_recovery_product(random_network(cfg));
    case CheckKind::RecoveryMin: return check_recovery_min(random_network(cfg));
    case CheckKind::Independence: return check_independence(random_network(cfg));
    case CheckKind::Roundtrip: {
      PossBase base = random_base(cfg);
      CheckReport r;
      r.name = check_name(kind);
      for (unsigned o = 0; o < orderings; ++o) {
        auto order = random_ordering(base.vocabulary().size(), splitmix64(cfg.seed + 1 + o));
        r.absorb(check_roundtrip(base, order));
      }
      return r;
    }
    case CheckKind::CStarAlgebra: {
      Rng rng(splitmix64(cfg.seed));
      unsigned n = draw_size(rng, cfg);
      GeneratorConfig c1 = cfg, c2 = cfg, c3 = cfg;
      c2.seed = splitmix64(cfg.seed + 1);
      c3.seed = splitmix64(cfg.seed + 2);
      return check_cstar_algebra(random_base(c1, n), random_base(c2, n), random_base(c3, n));
    }
  }
  throw std::logic_error("unknown check");
}

}  // namespace

CheckReport run_random_check(CheckKind kind, const GeneratorConfig& cfg,
                             std::size_t trials, unsigned orderings, unsigned threads) {
  cfg.validate();
  auto start = std::chrono::steady_clock::now();
  std::vector<CheckReport> results(trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials; i = next++) {
      GeneratorConfig trial = cfg;
      trial.seed = splitmix64(cfg.seed ^ splitmix64(i));
      results[i] = run_trial(kind, trial, orderings);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(trials, 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CheckReport report;
  report.name = check_name(kind);
  report.seed = cfg.seed;
  for (const auto& r : results) {
    report.instances += r.instances;
    report.failures.insert(report.failures.end(), r.failures.begin(), r.failures.end());
    report.notes.insert(report.notes.end(), r.notes.begin(), r.notes.end());
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

}  // namespace posslog
