#include "posslog/cli.h"

#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "posslog/base_to_graph.h"
#include "posslog/error.h"
#include "posslog/graph_to_base.h"
#include "posslog/io.h"
#include "posslog/verifier.h"

namespace posslog {

namespace {

struct Options {
  unsigned max_vars = EnumerationGuard::kDefault;
  std::string output;
  bool trace = false;

  std::string file;
  std::string mode = "min";
  std::string query;
  std::string alpha;
  std::string order;
  std::string evidence;

  std::string check;
  std::size_t trials = 100;
  GeneratorConfig gen;
  unsigned orderings = 3;
  unsigned threads = 0;
  std::string base_file;
  std::size_t max_listed = 20;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Combination parse_mode(const std::string& m) {
  if (m == "min") return Combination::Min;
  if (m == "prod" || m == "product") return Combination::Product;
  throw UsageError("unknown mode '" + m + "' (expected min or prod)");
}

// Fails on network errors, prints warnings.
void check_network(const PossNetwork& g, const EnumerationGuard& guard, std::ostream& err) {
  auto report = validate_network(g, guard);
  for (const auto& issue : report.issues) {
    err << (issue.is_error() ? "error: " : "warning: ") << issue.message << '\n';
  }
  if (!report.valid()) throw DomainError("invalid network");
}

PossibilityDistribution load_distribution(const std::string& text, Combination mode,
                                          const EnumerationGuard& guard,
                                          std::ostream& err) {
  if (looks_like_network(text)) {
    auto g = parse_network(text);
    check_network(g, guard, err);
    return joint(g, mode, guard);
  }
  auto d = pi_from_base(parse_base(text), guard);
  if (!d.is_normal()) err << "warning: distribution is not normal (inconsistent base)\n";
  return d;
}

Formula parse_known(std::string_view text, const Vocabulary& vocab) {
  Vocabulary v = vocab;
  return parse_formula(text, v, false);
}

// Evidence: `true`, or literals separated by whitespace or '&'.
Formula parse_evidence(std::string_view text, const Vocabulary& vocab) {
  std::string s(text);
  for (char& c : s) {
    if (c == '&') c = ' ';
  }
  std::istringstream is(s);
  std::optional<Formula> result;
  for (std::string tok; is >> tok;) {
    if (tok == "true" && !result) {
      result = Formula::top();
      continue;
    }
    Formula lit = parse_known(tok, vocab);
    result = result ? Formula::conjunction(*result, lit) : lit;
  }
  return result ? *result : Formula::top();
}

std::vector<int> parse_order(const std::string& spec, const Vocabulary& vocab) {
  std::vector<int> order;
  std::string s = spec;
  for (char& c : s) {
    if (c == ',') c = ' ';
  }
  std::istringstream is(s);
  for (std::string name; is >> name;) {
    auto idx = vocab.find(name);
    if (!idx) {
      // Case-insensitive fallback when unambiguous.
      auto lower = [](std::string x) {
        for (char& c : x) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return x;
      };
      for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (lower(vocab.name(static_cast<int>(i))) == lower(name)) {
          if (idx) throw UsageError("ambiguous variable '" + name + "' in --order");
          idx = static_cast<int>(i);
        }
      }
    }
    if (!idx) throw UsageError("unknown variable '" + name + "' in --order");
    order.push_back(*idx);
  }
  std::vector<bool> seen(vocab.size(), false);
  for (int v : order) {
    if (seen[v]) throw UsageError("variable '" + vocab.name(v) + "' repeated in --order");
    seen[v] = true;
  }
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    if (!seen[i]) {
      throw UsageError("variable '" + vocab.name(static_cast<int>(i)) + "' missing from --order");
    }
  }
  return order;
}

std::vector<int> identity_order(std::size_t n) {
  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  return order;
}

int cmd_dist(const Options& o, const EnumerationGuard& guard, std::ostream& out,
             std::ostream& err) {
  auto d = load_distribution(read_file(o.file), parse_mode(o.mode), guard, err);
  out << write_distribution(d);
  return 0;
}

int cmd_entail(const Options& o, const EnumerationGuard& guard, std::ostream& out) {
  auto base = parse_base(read_file(o.file));
  Formula q = parse_known(o.query, base.vocabulary());
  Weight alpha = parse_weight(o.alpha, 0);
  if (alpha.is_zero()) throw UsageError("alpha must be positive");
  out << (entails(base, q, alpha, guard) ? "yes" : "no") << '\n';
  return 0;
}

int cmd_net2base(const Options& o, const EnumerationGuard& guard, std::ostream& out,
                 std::ostream& err) {
  auto g = parse_network(read_file(o.file));
  check_network(g, guard, err);
  out << write_base(parse_mode(o.mode) == Combination::Min ? encode_min(g)
                                                           : encode_product(g));
  return 0;
}

int cmd_base2net(const Options& o, const EnumerationGuard& guard, std::ostream& out) {
  auto base = parse_base(read_file(o.file));
  auto order = o.order.empty() ? identity_order(base.vocabulary().size())
                               : parse_order(o.order, base.vocabulary());
  auto compiled = build_graph(base, order, guard);
  if (o.trace) {
    for (const auto& step : compiled.trace) {
      std::istringstream lines(step.to_string(base.vocabulary()));
      for (std::string line; std::getline(lines, line);) out << "# " << line << '\n';
    }
  }
  out << write_network(conditional_tables(compiled));
  return 0;
}

int cmd_query(const Options& o, const EnumerationGuard& guard, std::ostream& out,
              std::ostream& err) {
  std::string text = read_file(o.file);
  Combination mode = parse_mode(o.mode);
  Vocabulary vocab = looks_like_network(text) ? parse_network(text).vocabulary()
                                              : parse_base(text).vocabulary();
  auto bar = o.query.find('|');
  std::string target_text = o.query.substr(0, bar);
  std::string evidence_text = bar == std::string::npos ? "true" : o.query.substr(bar + 1);
  Formula target = parse_known(target_text, vocab);
  Formula evidence = parse_evidence(evidence_text, vocab);
  auto d = load_distribution(text, mode, guard, err);
  Weight w = conditional_possibility(d, target, evidence, mode);
  out << "Pi(" << target.to_string(vocab) << " | " << evidence.to_string(vocab)
      << ") = " << w.to_string() << " (" << w.to_decimal(6) << ")\n";
  return 0;
}

int cmd_verify(const Options& o, const EnumerationGuard& guard, std::ostream& out) {
  auto kind = parse_check_kind(o.check);
  if (!kind) {
    std::string names;
    for (CheckKind k : all_check_kinds()) names += " " + check_name(k);
    throw UsageError("unknown check '" + o.check + "' (available:" + names + ")");
  }
  o.gen.validate(guard);
  CheckReport report;
  if (!o.base_file.empty()) {
    if (*kind != CheckKind::Roundtrip) {
      throw UsageError("--base is only supported by the roundtrip check");
    }
    auto base = parse_base(read_file(o.base_file));
    report.name = check_name(*kind);
    report.seed = o.gen.seed;
    if (!o.order.empty()) {
      report.absorb(check_roundtrip(base, parse_order(o.order, base.vocabulary())));
    } else {
      report.absorb(check_roundtrip(base, identity_order(base.vocabulary().size())));
      for (unsigned i = 0; i < o.orderings; ++i) {
        report.absorb(check_roundtrip(
            base, random_ordering(base.vocabulary().size(), o.gen.seed + i)));
      }
    }
  } else {
    report = run_random_check(*kind, o.gen, o.trials, o.orderings, o.threads);
  }
  out << report.render(o.max_listed);
  return report.passed() ? 0 : 1;
}

int cmd_kappa(const Options& o, const EnumerationGuard& guard, std::ostream& out) {
  auto k = parse_kappa(read_file(o.file));
  if (!o.evidence.empty()) {
    Formula e = parse_known(o.evidence, k.vocab);
    if (!k.rank(e)) throw DomainError("evidence impossible");
    k = condition_kappa(k, e);
  }
  out << write_distribution(kappa_to_possibility(k, guard));
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Possibilistic knowledge bases and possibilistic networks", "posslog"};
  app.require_subcommand(1);
  app.add_option("--max-vars", o.max_vars, "Enumeration guard (at most 30)")
      ->check(CLI::Range(1u, EnumerationGuard::kHardLimit));
  app.add_option("--output,-o", o.output, "Write results to PATH");
  app.add_flag("--trace", o.trace, "Log base2net steps as comments");

  auto mode_opt = [&](CLI::App* c) {
    c->add_option("--mode,-m", o.mode, "min or prod")->capture_default_str();
  };

  auto* dist = app.add_subcommand("dist", "Possibility distribution of a base or network");
  dist->add_option("file", o.file)->required();
  mode_opt(dist);

  auto* entail = app.add_subcommand("entail", "Does the base entail (QUERY, ALPHA)?");
  entail->add_option("file", o.file)->required();
  entail->add_option("query", o.query, "Formula")->required();
  entail->add_option("alpha", o.alpha, "Weight in (0,1]")->required();

  auto* net2base = app.add_subcommand("net2base", "Encode a network as a base");
  net2base->add_option("file", o.file)->required();
  mode_opt(net2base);

  auto* base2net = app.add_subcommand("base2net", "Compile a base into a min-based network");
  base2net->add_option("file", o.file)->required();
  base2net->add_option("--order", o.order, "Variable ordering, comma separated");

  auto* query = app.add_subcommand("query", "Conditional possibility 'TARGET | EVIDENCE'");
  query->add_option("file", o.file)->required();
  query->add_option("query", o.query)->required();
  mode_opt(query);

  auto* verify = app.add_subcommand("verify", "Randomized oracle checks");
  verify->add_option("--check", o.check)->required();
  verify->add_option("--trials", o.trials)->capture_default_str();
  verify->add_option("--seed", o.gen.seed)->capture_default_str();
  verify->add_option("--vars", o.gen.vars, "Maximum variables per instance")->capture_default_str();
  verify->add_option("--min-vars", o.gen.min_vars)->capture_default_str();
  verify->add_option("--max-parents", o.gen.max_parents)->capture_default_str();
  verify->add_option("--clauses", o.gen.clauses, "Maximum clauses per base")->capture_default_str();
  verify->add_option("--max-clause-length", o.gen.max_clause_length)->capture_default_str();
  verify->add_option("--denominator", o.gen.denominator, "Largest weight denominator")
      ->capture_default_str();
  verify->add_option("--orderings", o.orderings)->capture_default_str();
  verify->add_option("--threads", o.threads, "0 = hardware concurrency")->capture_default_str();
  verify->add_option("--base", o.base_file, "Run roundtrip on this base file");
  verify->add_option("--order", o.order, "Ordering for --base");
  verify->add_option("--max-listed", o.max_listed)->capture_default_str();

  auto* kappa = app.add_subcommand("kappa2pi", "Possibility distribution of a kappa ranking");
  kappa->add_option("file", o.file)->required();
  kappa->add_option("--given", o.evidence, "Condition on a formula first");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  EnumerationGuard guard{o.max_vars};
  std::ostringstream result;
  try {
    int code = 0;
    if (*dist) code = cmd_dist(o, guard, result, err);
    else if (*entail) code = cmd_entail(o, guard, result);
    else if (*net2base) code = cmd_net2base(o, guard, result, err);
    else if (*base2net) code = cmd_base2net(o, guard, result);
    else if (*query) code = cmd_query(o, guard, result, err);
    else if (*verify) code = cmd_verify(o, guard, result);
    else if (*kappa) code = cmd_kappa(o, guard, result);

    if (o.output.empty()) {
      out << result.str();
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file || !(file << result.str())) throw UsageError("cannot write " + o.output);
    }
    return code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace posslog
