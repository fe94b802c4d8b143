#include <gtest/gtest.h>

#include <sstream>

#include "mirp/instance.hpp"
#include "support.hpp"

using namespace mirp;

namespace {

Instance roundtrip(const Instance& inst) {
  std::stringstream ss;
  write_instance(ss, inst);
  return parse_instance(ss);
}

std::string path_of_error(const Instance& inst) {
  try {
    validate(inst);
  } catch (const InstanceValidationError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST(Instance, Toy1MatchesReferenceFixture) {
  const Instance inst = fixtures::toy1();
  ASSERT_EQ(inst.num_ports(), 2);
  ASSERT_EQ(inst.num_vessels(), 1);
  EXPECT_EQ(inst.horizon, 12);
  EXPECT_EQ(inst.kind(0), PortKind::Production);
  EXPECT_EQ(inst.kind(1), PortKind::Consumption);
  for (const auto& p : inst.ports) {
    EXPECT_DOUBLE_EQ(p.rate[0], 2.0);
    EXPECT_DOUBLE_EQ(p.inv_min[0], 0.0);
    EXPECT_DOUBLE_EQ(p.inv_max[0], 10.0);
    EXPECT_DOUBLE_EQ(p.inv_init, 5.0);
  }
  EXPECT_DOUBLE_EQ(inst.capacity(0), 4.0);
  EXPECT_EQ(inst.travel(0, 0, 1), 2);
  EXPECT_DOUBLE_EQ(inst.distance_km[0][1], 10.0);
  EXPECT_NO_THROW(validate(inst));
}

TEST(Instance, WriteParseRoundTrip) {
  for (const auto& inst : fixtures::toy_suite()) EXPECT_EQ(roundtrip(inst), inst) << inst.name;
}

TEST(Instance, GeneratorIsDeterministic) {
  EXPECT_EQ(generate_toy(9, 2, 14), generate_toy(9, 2, 14));
  EXPECT_NE(generate_toy(9, 2, 14), generate_toy(10, 2, 14));
}

TEST(Instance, GeneratedSuiteStaysWithinDeskScale) {
  for (const auto& inst : fixtures::generated_suite()) {
    EXPECT_NO_THROW(validate(inst));
    EXPECT_LE(inst.horizon, 14);
    EXPECT_LE(inst.num_vessels(), 2);
    int consumers = 0;
    for (const auto& p : inst.ports) consumers += p.kind == PortKind::Consumption;
    EXPECT_LE(consumers, 2);
  }
}

TEST(Instance, ValidationNamesTheField) {
  Instance inst = fixtures::toy1();
  inst.ports[1].inv_init = 11.0;
  EXPECT_EQ(path_of_error(inst), "ports[1].inv_init");

  inst = fixtures::toy1();
  inst.vessels[0].class_id = 3;
  EXPECT_EQ(path_of_error(inst), "vessels[0].class");

  inst = fixtures::toy1();
  inst.distance_km[0][1] = 7.0;
  EXPECT_FALSE(path_of_error(inst).empty());

  inst = fixtures::toy1();
  inst.ports[0].kind = PortKind::Consumption;
  EXPECT_EQ(path_of_error(inst), "ports");
}

TEST(Instance, ParseErrorsAreReported) {
  std::istringstream bad_json("{ not json");
  EXPECT_THROW(parse_instance(bad_json), InstanceParseError);

  std::istringstream wrong_version(R"({"format_version": 99})");
  EXPECT_THROW(parse_instance(wrong_version), InstanceParseError);

  std::stringstream ss;
  write_instance(ss, fixtures::toy1());
  std::string text = ss.str();
  text.replace(text.find("\"horizon\""), 9, "\"horizonX\"");
  std::istringstream missing(text);
  EXPECT_THROW(parse_instance(missing), InstanceParseError);
}

TEST(Instance, ParsedInvalidDataIsRejected) {
  Instance inst = fixtures::toy1();
  inst.ports[0].berth_limit = 0;
  std::stringstream ss;
  write_instance(ss, inst);
  EXPECT_THROW(parse_instance(ss), InstanceValidationError);
}

TEST(Instance, HorizonOverrideTruncatesSeries) {
  const Instance inst = fixtures::toy1().with_horizon(5);
  EXPECT_EQ(inst.horizon, 5);
  for (const auto& p : inst.ports) EXPECT_EQ(p.rate.size(), 5u);
  EXPECT_NO_THROW(validate(inst));
  EXPECT_THROW(fixtures::toy1().with_horizon(13), InstanceValidationError);
}
