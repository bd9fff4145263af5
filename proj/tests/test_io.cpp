#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "hmatch/generators.hpp"
#include "hmatch/io.hpp"
#include "oracles.hpp"

using namespace hmatch;
using io::json;

TEST(Io, InstanceRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen::random_hypergraph(10, 12, 2, 4, seed);
    const json j = io::instance_to_json(inst);
    const auto back = io::instance_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.graph, inst.graph);
    EXPECT_EQ(back.weights, inst.weights);
    for (const auto& w : j["weights"]) EXPECT_TRUE(w.is_string());
  }
}

TEST(Io, InstanceDefaultsAndErrors) {
  auto inst = io::instance_from_json(json::parse(R"({"vertices":3,"edges":[[0,1],[1,2]]})"));
  EXPECT_EQ(inst.weights, (EdgeValues{1, 1}));
  inst = io::instance_from_json(json::parse(R"({"vertices":3,"edges":[[0,1]],"weights":[2]})"));
  EXPECT_EQ(inst.weights, (EdgeValues{2}));
  EXPECT_ERRC(io::instance_from_json(json::parse(R"({"vertices":3,"edges":[[0,1]],"weights":[0.5]})")),
              Errc::MalformedInput);
  EXPECT_ERRC(io::instance_from_json(json::parse(R"({"edges":[[0,1]]})")), Errc::MalformedInput);
  EXPECT_ERRC(io::instance_from_json(json::parse(R"({"vertices":3,"edges":[[0,-1]]})")),
              Errc::MalformedInput);
  EXPECT_ERRC(io::instance_from_json(json::parse(R"({"vertices":3,"edges":[[0,1]],"weights":["-1"]})")),
              Errc::NegativeWeight);
  EXPECT_ERRC(io::instance_from_json(json::parse(R"({"vertices":2,"edges":[[0,5]]})")),
              Errc::VertexOutOfRange);
}

TEST(Io, OutcomeRoundTrip) {
  const auto fano = WeightedInstance::unit(gen::fano());
  for (const auto& schedule : {Schedule::hstar(), Schedule::constant(1)}) {
    const auto prof = make_profile(fano.graph, schedule);
    const auto out = find_matching(fano, prof);
    for (bool with_trace : {false, true}) {
      const json j = io::outcome_to_json(out, prof, with_trace);
      const auto back = io::outcome_from_json(json::parse(j.dump()));
      EXPECT_EQ(back.profile.g, prof.g);
      EXPECT_EQ(back.profile.schedule_name, prof.schedule_name);
      if (with_trace) {
        EXPECT_EQ(back.outcome, out);
      } else {
        EXPECT_EQ(io::outcome_to_json(back.outcome, back.profile), j);
      }
    }
  }
}

TEST(Io, RandomOutcomesRoundTripWithTrace) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = gen::random_hypergraph(9, 12, 2, 4, 40 + seed);
    const auto prof = make_profile(inst.graph, Schedule::constant(Rational(9, 10)));
    const auto out = find_matching(inst, prof);
    const auto back = io::outcome_from_json(json::parse(io::outcome_to_json(out, prof, true).dump()));
    EXPECT_EQ(back.outcome, out);
  }
}

TEST(Io, MalformedOutcomes) {
  EXPECT_ERRC(io::outcome_from_json(json::parse(R"({"status":"maybe","schedule":"x","discounts":[],"wstar":"0"})")),
              Errc::MalformedInput);
  EXPECT_ERRC(io::outcome_from_json(json::parse(R"({"status":"success","schedule":"x","discounts":[],"wstar":"0"})")),
              Errc::MalformedInput);
  EXPECT_ERRC(io::outcome_from_json(json::parse(R"([1,2])")), Errc::MalformedInput);
}

TEST(Io, ScheduleParsing) {
  EXPECT_EQ(io::parse_schedule("hstar")(3), Rational(3, 7));
  EXPECT_EQ(io::parse_schedule("hr:4")(4), h_star(4));
  EXPECT_EQ(io::parse_schedule("hinf:3")(2), h_inf_truncated(2, 3));
  EXPECT_EQ(io::parse_schedule("hinf", 3)(3), h_r(11, 3));
  EXPECT_EQ(io::parse_schedule("htilde")(5), h_tilde_inf(5));
  EXPECT_EQ(io::parse_schedule("baseline")(5), Rational(1, 5));
  EXPECT_EQ(io::parse_schedule("constant:3/4")(9), Rational(3, 4));
  for (const char* bad : {"", "hr", "hr:", "hr:x", "hr:-3", "hstar:2", "constant:0.5", "bogus", "table:"}) {
    EXPECT_ERRC(io::parse_schedule(bad), Errc::MalformedInput);
  }
  EXPECT_ERRC(io::parse_schedule("hr:1"), Errc::InvalidK);
}

TEST(Io, TableSchedules) {
  const auto path = std::filesystem::temp_directory_path() / "hmatch_table_test.json";
  {
    std::ofstream f(path);
    f << R"({"2": "1/2", "3": "1/3"})";
  }
  const auto s = io::parse_schedule("table:" + path.string());
  EXPECT_EQ(s(2), Rational(1, 2));
  EXPECT_EQ(s(3), Rational(1, 3));
  EXPECT_ERRC(s(4), Errc::ScheduleUndefinedForSize);
  {
    std::ofstream f(path);
    f << R"({"two": "1/2"})";
  }
  EXPECT_ERRC(io::parse_schedule("table:" + path.string()), Errc::MalformedInput);
  std::filesystem::remove(path);
}

TEST(Io, RationalValues) {
  EXPECT_EQ(io::rational_from_json(json("7/3")), Rational(7, 3));
  EXPECT_EQ(io::rational_from_json(json(4)), 4);
  EXPECT_ERRC(io::rational_from_json(json(0.25)), Errc::MalformedInput);
  EXPECT_ERRC(io::rational_from_json(json(nullptr)), Errc::MalformedInput);
  EXPECT_EQ(io::rational_to_json(Rational(-2, 4)), json("-1/2"));
}
