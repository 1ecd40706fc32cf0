#include <gtest/gtest.h>

#include "posslog/error.h"
#include "posslog/io.h"
#include "posslog/verifier.h"
#include "test_util.h"

using namespace posslog;
using posslog::test::W;

namespace {

std::size_t parse_error_position(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no ParseError";
  return 0;
}

}  // namespace

TEST(BaseFormat, ImplicitAndExplicitVocabularies) {
  auto b = parse_base("# comment\n\n!b | a : 3/10  # trailing\n!a : 0.2\n");
  EXPECT_EQ(b.vocabulary().names(), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(b.size(), 2u);
  auto c = parse_base("vars a b c\nb : 1/2\n");
  EXPECT_EQ(c.vocabulary().size(), 3u);
}

TEST(BaseFormat, FormulasAreClausified) {
  auto fb = parse_formula_base("a & (b -> c) : 1/2\n");
  EXPECT_EQ(fb.formulas.size(), 1u);
  EXPECT_EQ(parse_base("a & (b -> c) : 1/2\n").size(), 2u);
}

TEST(BaseFormat, Errors) {
  EXPECT_EQ(parse_error_position([] { parse_base("a : 3/0\n"); }), 6u);
  EXPECT_THROW(parse_base("a 1/2\n"), ParseError);
  EXPECT_THROW(parse_base("a | : 1/2\n"), ParseError);
  EXPECT_THROW(parse_base("a : 1/2\nvars a\n"), ParseError);
  try {
    parse_base("a : 1/2\nb : 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(BaseFormat, WriteReadClosure) {
  GeneratorConfig cfg;
  cfg.vars = 6;
  cfg.clauses = 10;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    cfg.seed = seed;
    auto b = random_base(cfg);
    auto text = write_base(b);
    auto back = parse_base(text);
    EXPECT_EQ(back, b);
    EXPECT_EQ(write_base(back), text);
  }
}

TEST(NetworkFormat, ParsesExample2) {
  auto g = parse_network(posslog::test::read_data("example2.pnet"));
  EXPECT_EQ(g.node_count(), 5);
  EXPECT_EQ(g.parents(1), (std::vector<int>{0, 2}));
  auto ctx = *g.table(1).context_from({{0, true}, {2, true}});
  EXPECT_EQ(g.table(1).at(true, ctx), W(1, 2));
  EXPECT_EQ(g.table(0).at(false, 0), W(3, 4));
}

TEST(NetworkFormat, Errors) {
  EXPECT_THROW(parse_network("node a\nnode a\n"), ParseError);
  EXPECT_THROW(parse_network("node a\n!a : 1/2\n!a : 1/3\n"), ParseError);
  EXPECT_THROW(parse_network("node a : b\n"), ParseError);  // b has no node line
  EXPECT_THROW(parse_network("node a\nnode b : a\nb | : 1/2\n"), ParseError);
  EXPECT_THROW(parse_network("node a\nnode b : a\nb : 1/2\n"), ParseError);
  EXPECT_THROW(parse_network("node a\na | a : 1/2\n"), ParseError);
}

TEST(NetworkFormat, WriteReadClosure) {
  GeneratorConfig cfg;
  cfg.vars = 6;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    cfg.seed = seed;
    auto g = random_network(cfg);
    auto text = write_network(g);
    auto back = parse_network(text);
    EXPECT_EQ(back, g) << text;
    EXPECT_EQ(write_network(back), text);
  }
}

TEST(KappaFormat, ParsesAndRejects) {
  auto k = parse_kappa(posslog::test::read_data("ranks.kap"));
  EXPECT_EQ(k.ranks.size(), 4u);
  EXPECT_FALSE(k.ranks[3].has_value());
  EXPECT_THROW(parse_kappa("vars a\n0 1\n"), ParseError);        // missing world
  EXPECT_THROW(parse_kappa("vars a\n0 1\n1 0\n1 2\n"), ParseError);
  EXPECT_THROW(parse_kappa("vars a\n0 x\n1 0\n"), ParseError);
  EXPECT_THROW(parse_kappa("0 0\n1 0\n"), ParseError);          // no header
  EXPECT_THROW(parse_kappa("vars a\n01 0\n1 0\n"), ParseError);
}

TEST(DistributionFormat, OneLinePerWorld) {
  auto d = pi_from_base(parse_base(posslog::test::read_data("example1_s1.pkb")));
  EXPECT_EQ(write_distribution(d),
            "00\t!a !b\t1\t1.000000\n"
            "01\t!a b\t7/10\t0.700000\n"
            "10\ta !b\t4/5\t0.800000\n"
            "11\ta b\t4/5\t0.800000\n");
}

TEST(Sniffing, NetworkVersusBase) {
  EXPECT_TRUE(looks_like_network("# x\nvars a\nnode a\n"));
  EXPECT_TRUE(looks_like_network("node a\n"));
  EXPECT_FALSE(looks_like_network("a : 1/2\n"));
  EXPECT_FALSE(looks_like_network("vars a\na : 1/2\n"));
}
