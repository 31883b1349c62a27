// Copyright 2026 The Cosig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"
#include "cosig/generators.hpp"
#include "cosig/io.hpp"
#include "test_util.hpp"

namespace cosig {
namespace {

using testing::InstA;

constexpr const char* kLabelled = R"({
  "m": 2, "n": 2, "p": [0.25, 0.75],
  "values": [[1, 0], [0, 0.5]],
  "signals": ["none", "hi"],
  "edges": [[0, "none"], [1, "none"], [1, 1]],
  "k": 1, "no_info": "none"
})";

void ExpectSameInstance(const Instance& a, const Instance& b) {
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.signals, b.signals);
  EXPECT_TRUE((a.edges == b.edges).all());
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(a.no_info, b.no_info);
}

TEST(ParseInstance, LabelsAndIndices) {
  const Instance inst = parse_instance(kLabelled);
  EXPECT_EQ(inst.num_items(), 2);
  EXPECT_EQ(inst.num_players(), 2);
  EXPECT_EQ(inst.signals, (std::vector<std::string>{"none", "hi"}));
  EXPECT_TRUE(inst.allows(0, 0));
  EXPECT_FALSE(inst.allows(0, 1));
  EXPECT_TRUE(inst.allows(1, 1));
  ASSERT_TRUE(inst.no_info.has_value());
  EXPECT_EQ(*inst.no_info, 0);
  EXPECT_EQ(inst.k, 1);
}

TEST(ParseInstance, OmittedEdgesAreComplete) {
  const Instance inst = parse_instance(
      R"({"m": 1, "n": 1, "p": [1], "values": [[0.3]],
          "signals": ["a", "b"], "k": 2})");
  EXPECT_TRUE(inst.is_complete());
  EXPECT_FALSE(inst.no_info.has_value());
}

TEST(ParseInstance, Errors) {
  EXPECT_THROW(parse_instance("{"), ValidationError);
  EXPECT_THROW(parse_instance(R"({"n": 1})"), ValidationError);
  // p does not sum to one.
  EXPECT_THROW(parse_instance(R"({"m": 1, "n": 1, "p": [0.5],
      "values": [[1]], "signals": ["a"], "k": 1})"),
               ValidationError);
  // Unknown label, index out of range, duplicate label.
  EXPECT_THROW(parse_instance(R"({"m": 1, "n": 1, "p": [1], "values": [[1]],
      "signals": ["a"], "edges": [[0, "b"]], "k": 1})"),
               ValidationError);
  EXPECT_THROW(parse_instance(R"({"m": 1, "n": 1, "p": [1], "values": [[1]],
      "signals": ["a"], "edges": [[0, 3]], "k": 1})"),
               ValidationError);
  EXPECT_THROW(parse_instance(R"({"m": 1, "n": 1, "p": [1], "values": [[1]],
      "signals": ["a", "a"], "k": 1})"),
               ValidationError);
  // Wrong row length.
  EXPECT_THROW(parse_instance(R"({"m": 2, "n": 1, "p": [0.5, 0.5],
      "values": [[1]], "signals": ["a"], "k": 1})"),
               ValidationError);
  // k below |S| without a no-information signal.
  EXPECT_THROW(parse_instance(R"({"m": 1, "n": 1, "p": [1], "values": [[1]],
      "signals": ["a", "b"], "k": 1})"),
               ValidationError);
}

TEST(FormatInstance, RoundTripIsExact) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = testing::SmallRandom(seed, seed % 2 == 0);
    const std::string text = format_instance(inst);
    const Instance back = parse_instance(text);
    ExpectSameInstance(inst, back);
    EXPECT_EQ(format_instance(back), text);
  }
  ExpectSameInstance(parse_instance(format_instance(parse_instance(kLabelled))),
                     parse_instance(kLabelled));
}

TEST(FormatInstance, PriorRoundTrip) {
  const Instance inst = InstA();
  const Prior prior = random_prior(inst, 3, {}, 5);
  const std::string text = format_instance(inst, prior);
  const auto back = parse_prior(text, inst);
  ASSERT_TRUE(back.has_value());
  ASSERT_EQ(back->size(), 3);
  for (int l = 0; l < 3; ++l) EXPECT_EQ(back->support[l], prior.support[l]);
  EXPECT_EQ(back->probs, prior.probs);
  EXPECT_FALSE(parse_prior(format_instance(inst), inst).has_value());
}

TEST(ParseScheme, MapsAndLotteries) {
  const Instance inst = InstA();
  const Scheme scheme = parse_scheme(R"({"components": [
      {"weight": 0.5, "map": ["s0", 1, "s2"]},
      {"weight": 0.5, "lottery": {"s0": 0.25, "s1": 0.75}}]})",
                                     inst);
  ASSERT_EQ(scheme.components.size(), 2u);
  EXPECT_EQ(std::get<SignalMap>(scheme.components[0].rule),
            (SignalMap{0, 1, 2}));
  const auto& lottery = std::get<SignalLottery>(scheme.components[1].rule);
  EXPECT_DOUBLE_EQ(lottery.probs(0), 0.25);
  EXPECT_DOUBLE_EQ(lottery.probs(1), 0.75);
  EXPECT_DOUBLE_EQ(lottery.probs(2), 0.0);

  // Same block nested under "scheme".
  const Scheme nested = parse_scheme(format_scheme(inst, scheme), inst);
  EXPECT_NEAR(welfare(inst, nested), welfare(inst, scheme), 1e-15);
  EXPECT_EQ(format_scheme(inst, nested), format_scheme(inst, scheme));
}

TEST(ParseScheme, Errors) {
  const Instance inst = InstA(2);
  // Weights must sum to one.
  EXPECT_THROW(parse_scheme(R"({"components": [
      {"weight": 0.5, "map": [0, 0, 0]}]})", inst),
               ValidationError);
  // Map length.
  EXPECT_THROW(parse_scheme(R"({"components": [
      {"weight": 1, "map": [0, 0]}]})", inst),
               ValidationError);
  // Three distinct signals with k = 2.
  EXPECT_THROW(parse_scheme(R"({"components": [
      {"weight": 1, "map": [0, 1, 2]}]})", inst),
               ValidationError);
  EXPECT_THROW(parse_scheme(R"({"components": [{"weight": 1}]})", inst),
               ValidationError);
  EXPECT_THROW(parse_scheme(R"({"components": [
      {"weight": 1, "lottery": [0.5, 0.5]}]})", inst),
               ValidationError);
}

TEST(FormatNumber, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(ConfigHeader, OneLinePerEntry) {
  EXPECT_EQ(format_config_header({{"seed", "7"}, {"eps", "0.1"}}),
            "# seed=7\n# eps=0.1\n");
  EXPECT_EQ(format_config_header({}), "");
}

TEST(ReportCsv, InstAFullInformation) {
  const Instance inst = InstA();
  const std::string csv =
      format_report_csv(inst, auction_report(inst, Scheme::deterministic({0, 1, 2})));
  EXPECT_EQ(csv,
            "signal,prob,winner,first,second\n"
            "s0,0.333333333333,0,1,0\n"
            "s1,0.333333333333,0,0.6,0.6\n"
            "s2,0.333333333333,1,1,0\n");
}

TEST(TextFiles, WriteThenRead) {
  const auto path =
      std::filesystem::temp_directory_path() / "cosig_io_test_file.json";
  const std::string text = format_instance(InstA());
  write_text_file(path.string(), text);
  EXPECT_EQ(read_text_file(path.string()), text);
  std::filesystem::remove(path);
  EXPECT_THROW(read_text_file(path.string()), ValidationError);
}

}  // namespace
}  // namespace cosig
