#include <gtest/gtest.h>

#include "walras/errors.h"
#include "walras/instance_format.h"
#include "walras/reductions.h"

namespace walras {
namespace {

TEST(ParseMarket, UnitDemand) {
  const Market m = ParseMarket("market 1 2\nagent 1 unit-demand 3 5\n");
  EXPECT_EQ(m.item_count, 2);
  EXPECT_EQ(m.valuations, (std::vector<Valuation>{UnitDemand{{3, 5}}}));
}

TEST(ParseMarket, SingleMinded) {
  const Market m = ParseMarket("market 1 2\nagent 1 single-minded 3 : 1 2\n");
  EXPECT_EQ(m.valuations[0], Valuation(SingleMinded{ItemSet{0, 1}, 3}));
}

TEST(ParseMarket, EveryClassWithCommentsAndBlankLines) {
  const std::string text =
      "# a hand-written market\n"
      "\n"
      "market 7 3   # seven agents\n"
      "agent 1 unit-demand 1 2 3\n"
      "agent 2 additive 0 0 4\n"
      "agent 3 budget-additive 5 3 3 3\n"
      "agent 4 single-minded 9 : 3 1\n"
      "agent 5 pair 1 3 2 2 5\n"
      "agent 6 k-demand 2 2\n"
      "  bundle 2 4\n"
      "  bundle 1 2 6\n"
      "agent 7 xos 2\n"
      "  1 0 1\n"
      "  0 2 0\n";
  const Market m = ParseMarket(text);
  ASSERT_EQ(m.agent_count(), 7);
  EXPECT_EQ(m.valuations[2], Valuation(BudgetAdditive{{3, 3, 3}, 5}));
  EXPECT_EQ(m.valuations[3], Valuation(SingleMinded{ItemSet{0, 2}, 9}));
  EXPECT_EQ(m.valuations[4], Valuation(MultiMindedPair{0, 2, 2, 2, 5}));
  EXPECT_EQ(m.valuations[5],
            Valuation(KDemandTable{2, {{ItemSet{1}, 4}, {ItemSet{0, 1}, 6}}}));
  EXPECT_EQ(m.valuations[6], Valuation(Xos{{{1, 0, 1}, {0, 2, 0}}}));
  // Canonical form drops comments, sorts bundles and fixes spacing.
  const std::string canonical = SerializeMarket(m);
  EXPECT_EQ(canonical,
            "format 1\n"
            "market 7 3\n"
            "agent 1 unit-demand 1 2 3\n"
            "agent 2 additive 0 0 4\n"
            "agent 3 budget-additive 5 3 3 3\n"
            "agent 4 single-minded 9 : 1 3\n"
            "agent 5 pair 1 3 2 2 5\n"
            "agent 6 k-demand 2 2\n"
            "bundle 2 4\n"
            "bundle 1 2 6\n"
            "agent 7 xos 2\n"
            "1 0 1\n"
            "0 2 0\n");
  EXPECT_EQ(SerializeMarket(ParseMarket(canonical)), canonical);
}

void ExpectParseError(const std::string& text, int line) {
  try {
    ParseMarket(text);
    FAIL() << "accepted: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
  }
}

TEST(ParseMarket, ErrorsNameTheLine) {
  ExpectParseError("market 1 2\nagent 1 budget-additive x 1 2\n", 2);
  ExpectParseError("market 1 2\nagent 1 budget-additive 4 1\n", 2);
  ExpectParseError("market 1 2\nagent 2 unit-demand 1 2\n", 2);
  ExpectParseError("market 1 2\nagent 1 unit-demand 1 2 3\n", 2);
  ExpectParseError("market 1 2\nagent 1 gross-substitutes 1 2\n", 2);
  ExpectParseError("market 1 2\nagent 1 single-minded 3 1 2\n", 2);
  ExpectParseError("market 1 2\nagent 1 single-minded 3 : 1 3\n", 2);
  ExpectParseError("market 1 2\n\nagent 1 k-demand 1 1\nbundle 1 2 5\n", 4);
  ExpectParseError("market 2 2\nagent 1 unit-demand 1 2\n", 3);
  ExpectParseError("market 1 2\nagent 1 unit-demand 1 2\nagent 2 unit-demand 1 2\n", 3);
  ExpectParseError("format 2\nmarket 1 1\nagent 1 unit-demand 1\n", 1);
  ExpectParseError("markt 1 1\n", 1);
  ExpectParseError("market 1 1\nagent 1 unit-demand -4\n", 2);
  ExpectParseError("market 1 1\nagent 1 unit-demand 1000000000001\n", 2);
}

TEST(ParseMarket, ErrorColumn) {
  try {
    ParseMarket("market 1 2\nagent 1 budget-additive 4 1 y\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 29);
  }
}

TEST(ParseMarket, ValidationFailuresAreReported) {
  EXPECT_THROW(ParseMarket("market 1 2\nagent 1 pair 1 2 3 3 1\n"), InvalidInput);
  EXPECT_THROW(ParseMarket("market 1 2\nagent 1 k-demand 2 2\nbundle 1 5\nbundle 1 2 3\n"),
               InvalidInput);
  EXPECT_THROW(ParseMarket("market 0 2\n"), InvalidInput);
}

TEST(ParseInstanceFile, Header) {
  const InstanceFile f = ParseInstanceFile(
      "format 1\nprng mt19937_64 42\nmarket 1 1\nagent 1 unit-demand 1\n");
  ASSERT_TRUE(f.header.prng.has_value());
  EXPECT_EQ(f.header.prng->name, "mt19937_64");
  EXPECT_EQ(f.header.prng->seed, 42u);
  EXPECT_EQ(SerializeInstanceFile(f),
            "format 1\nprng mt19937_64 42\nmarket 1 1\nagent 1 unit-demand 1\n");
}

TEST(RoundTrip, GeneratedCorpus) {
  for (int f = 0; f <= static_cast<int>(MarketFamily::kMixed); ++f) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const int m_items = 2 + static_cast<int>(seed % 7);
      const Market m = RandomMarket({static_cast<MarketFamily>(f), 3, m_items, 1000,
                                     std::min(3, m_items), seed});
      const PrngTag tag{"mt19937_64", seed};
      const std::string text = SerializeMarket(m, tag);
      const InstanceFile parsed = ParseInstanceFile(text);
      ASSERT_EQ(parsed.market, m);
      ASSERT_EQ(parsed.header.prng, tag);
      ASSERT_EQ(SerializeInstanceFile(parsed), text);
    }
  }
}

TEST(ThreeDmFormat, RoundTrip) {
  const ThreeDmInstance inst{2, {{0, 0, 0}, {1, 0, 1}}};
  const std::string text = SerializeThreeDm(inst);
  EXPECT_EQ(text, "format 1\n3dm3 2 2\ntriple 1 1 1\ntriple 2 1 2\n");
  EXPECT_EQ(ParseThreeDmFile(text).instance, inst);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ThreeDmInstance r = RandomThreeDm(4, 10, seed % 2, seed);
    ASSERT_EQ(ParseThreeDmFile(SerializeThreeDm(r)).instance, r);
  }
  EXPECT_THROW(ParseThreeDmFile("3dm3 2 1\ntriple 1 3 1\n"), ParseError);
  EXPECT_THROW(ParseThreeDmFile("3dm3 2 2\ntriple 1 1 1\ntriple 2 1 1\n"), InvalidInput);
}

TEST(ThreePartitionFormat, RoundTrip) {
  const ThreePartitionInstance inst{{1, 2, 3, 1, 2, 3}, 2, false};
  const std::string text = SerializeThreePartition(inst, PrngTag{"mt19937_64", 9});
  EXPECT_EQ(text, "format 1\nprng mt19937_64 9\n3partition 2\nvalues 1 2 3 1 2 3\n");
  const ThreePartitionFile f = ParseThreePartitionFile(text);
  EXPECT_EQ(f.instance, inst);
  EXPECT_EQ(f.header.prng->seed, 9u);
  EXPECT_TRUE(ParseThreePartitionFile("3partition 1 strict\nvalues 2 2 3\n").instance.strict);
  EXPECT_THROW(ParseThreePartitionFile("3partition 1 strict\nvalues 1 2 3\n"), InvalidInput);
  EXPECT_THROW(ParseThreePartitionFile("3partition 1 loose\nvalues 1 2 3\n"), ParseError);
  EXPECT_THROW(ParseThreePartitionFile("3partition 2\nvalues 1 2 3\n"), ParseError);
}

TEST(Specs, Allocation) {
  const Market m = ParseMarket("market 2 3\nagent 1 additive 1 1 1\nagent 2 additive 1 1 1\n");
  const Allocation a = ParseAllocationSpec("1:2,3;2:1", m);
  EXPECT_EQ(a.bundles, (std::vector<ItemSet>{ItemSet{1, 2}, ItemSet{0}}));
  EXPECT_EQ(FormatAllocationSpec(a), "1:2,3;2:1");
  EXPECT_EQ(ParseAllocationSpec("", m), Allocation::Empty(2));
  EXPECT_EQ(ParseAllocationSpec("2:", m), Allocation::Empty(2));
  EXPECT_EQ(FormatAllocationSpec(Allocation::Empty(2)), "-");
  EXPECT_EQ(ParseAllocationSpec("-", m), Allocation::Empty(2));
  EXPECT_THROW(ParseAllocationSpec("3:1", m), InvalidInput);
  EXPECT_THROW(ParseAllocationSpec("1:4", m), InvalidInput);
  EXPECT_THROW(ParseAllocationSpec("1:1;2:1", m), InvalidInput);
  EXPECT_THROW(ParseAllocationSpec("1:1;1:2", m), InvalidInput);
  EXPECT_THROW(ParseAllocationSpec("1-2", m), InvalidInput);
  EXPECT_THROW(ParseAllocationSpec("1:a", m), InvalidInput);
}

TEST(Specs, Prices) {
  const Pricing p = ParsePriceSpec("0,3/2,1", 3);
  EXPECT_EQ(p.prices, (std::vector<Rational>{0, Rational(3, 2), 1}));
  EXPECT_EQ(FormatPriceSpec(p), "0,3/2,1");
  EXPECT_EQ(FormatPriceSpec(ParsePriceSpec("4/2,6/4,0/5", 3)), "2,3/2,0");
  EXPECT_EQ(FormatPriceSpec(ParsePriceSpec("-1/3", 1)), "-1/3");
  EXPECT_THROW(ParsePriceSpec("0,1", 3), InvalidInput);
  EXPECT_THROW(ParsePriceSpec("0,1/0,1", 3), InvalidInput);
  EXPECT_THROW(ParsePriceSpec("0,x,1", 3), InvalidInput);
  EXPECT_THROW(ParsePriceSpec("0,,1", 3), InvalidInput);
  EXPECT_THROW(ParsePriceSpec("0.5,1,1", 3), InvalidInput);
}

}  // namespace
}  // namespace walras
