#include <gtest/gtest.h>

#include <random>

#include "posslog/error.h"
#include "posslog/sat.h"

using namespace posslog;

TEST(Sat, SmallCases) {
  std::vector<Clause> none;
  EXPECT_TRUE(is_consistent(none));
  std::vector<Clause> empty_clause{Clause{}};
  EXPECT_FALSE(is_consistent(empty_clause));
  std::vector<Clause> contradiction{Clause{{0, true}}, Clause{{0, false}}};
  EXPECT_FALSE(is_consistent(contradiction));
  // a | b, !a | b, a | !b, !a | !b
  std::vector<Clause> all4{Clause{{0, true}, {1, true}}, Clause{{0, false}, {1, true}},
                           Clause{{0, true}, {1, false}}, Clause{{0, false}, {1, false}}};
  EXPECT_FALSE(is_consistent(all4));
  all4.pop_back();
  EXPECT_TRUE(is_consistent(all4));
}

TEST(Sat, EntailmentByRefutation) {
  // a, !a | b  |=  b
  std::vector<Clause> premises{Clause{{0, true}}, Clause{{0, false}, {1, true}}};
  EXPECT_TRUE(entails(premises, Clause{{1, true}}));
  EXPECT_FALSE(entails(premises, Clause{{2, true}}));
  EXPECT_TRUE(entails(premises, Clause{{2, true}, {2, false}}));
}

TEST(Sat, GuardCountsDistinctVariables) {
  std::vector<Clause> wide{Clause{{0, true}, {40, true}}};
  EXPECT_TRUE(is_consistent(wide, EnumerationGuard{2}));
  EXPECT_THROW(is_consistent(wide, EnumerationGuard{1}), GuardError);
}

TEST(Sat, DpllAgreesWithEnumeration) {
  std::mt19937_64 rng(2024);
  int sat = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    int m = static_cast<int>(rng() % (4 * n + 2));
    std::vector<Clause> clauses;
    for (int i = 0; i < m; ++i) {
      Clause c;
      int len = static_cast<int>(rng() % 4);
      for (int j = 0; j < len; ++j) {
        c.add({static_cast<int>(rng() % n), (rng() & 1) != 0});
      }
      clauses.push_back(c);
    }
    bool expected = is_consistent_by_enumeration(clauses);
    ASSERT_EQ(is_consistent(clauses), expected) << "trial " << trial;
    sat += expected;
  }
  // Both outcomes occur.
  EXPECT_GT(sat, 100);
  EXPECT_LT(sat, 1400);
}
