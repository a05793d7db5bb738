#include <gtest/gtest.h>

#include "qchain/errors.hpp"
#include "qchain/ising.hpp"
#include "qchain/json_io.hpp"
#include "qchain/random.hpp"

using namespace qchain;

TEST(JsonIo, MeasureRoundTrip) {
  const auto b = measure_from_json(measure_to_json(MeasureSpec::bernoulli(0.3)));
  EXPECT_EQ(b.as_bernoulli().at(1), 0.3);
  EXPECT_EQ(b.as_bernoulli().exact_at(1), Rational(3, 10));
  const auto list = measure_from_json(Json::parse(R"({"kind":"bernoulli","lambda":[0.2,0.4]})"));
  EXPECT_EQ(list.as_bernoulli().at(9), 0.4);
  const auto i = measure_from_json(measure_to_json(MeasureSpec::ising(-0.7)));
  EXPECT_EQ(i.as_ising().J, -0.7);
}

TEST(JsonIo, MalformedMeasure) {
  EXPECT_THROW(measure_from_json(Json::parse(R"({"kind":"potts"})")), InvalidSpec);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"kind":"bernoulli"})")), InvalidSpec);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"kind":"bernoulli","lambda":"x"})")), InvalidSpec);
  EXPECT_THROW(measure_from_json(Json::parse(R"({"kind":"bernoulli","lambda":1.5})")), InvalidSpec);
  EXPECT_THROW(measure_from_json(Json::parse("[1,2]")), InvalidSpec);
}

TEST(JsonIo, ElementRoundTripIsBitExact) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto F = random_element(rng, 5, 4);
    const auto text = element_to_json(F).dump();
    EXPECT_TRUE(element_from_json(Json::parse(text)) == F);
    EXPECT_EQ(element_to_json(element_from_json(Json::parse(text))).dump(), text);
  }
}

TEST(JsonIo, MalformedElement) {
  EXPECT_THROW(element_from_json(Json::parse(R"({"terms":[{"flips":[1],"depth":1,"values":[[1,0]]}]})")),
               InvalidSpec);
  EXPECT_THROW(element_from_json(Json::parse(R"({"terms":[{"flips":[0],"depth":0,"values":[[1,0]]}]})")),
               Error);
  EXPECT_THROW(element_from_json(Json::parse(R"({"terms":5})")), InvalidSpec);
}

TEST(JsonIo, DfsTableRoundTrip) {
  const auto S = ising_dfs_table(0.37, 3, 5);
  const auto text = dfs_table_to_json(S).dump();
  EXPECT_EQ(dfs_table_from_json(Json::parse(text)), S);
  EXPECT_THROW(dfs_table_from_json(Json::parse(R"({"n":2})")), InvalidSpec);
  EXPECT_THROW(dfs_table_from_json(Json::parse(R"({"n":2,"depth":1,"entries":[]})")), Error);
}

TEST(Report, JsonAndCsv) {
  Report r;
  r.command = "demo";
  r.add(Check::at_most("dev", 1e-13, 1e-12));
  r.add(Check::at_least("floor", 0.5, 0.75, "x=101"));
  EXPECT_FALSE(r.passed());
  const auto j = r.to_json();
  EXPECT_EQ(j["failure"]["invariant"], "floor");
  EXPECT_EQ(j["failure"]["witness"], "x=101");
  EXPECT_EQ(r.to_csv(), "check,value,threshold,passed\ndev,1e-13,1e-12,true\nfloor,0.5,0.75,false\n");
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.0), "-2");
}
