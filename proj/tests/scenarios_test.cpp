#include "kmut/scenarios.hpp"

#include <gtest/gtest.h>

using namespace kmut;
using namespace kmut::scen;

namespace {

const ScenarioReport& find(const std::vector<ScenarioReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.id == id)
      return r;
  throw std::out_of_range(id);
}

const std::vector<ScenarioReport>& all() {
  static const auto reports = run_all({}, 4);
  return reports;
}

} // namespace

TEST(Scenarios, RegistryIsSortedAndUnique) {
  auto reg = registry();
  ASSERT_FALSE(reg.empty());
  for (std::size_t i = 1; i < reg.size(); ++i)
    EXPECT_LT(reg[i - 1].id, reg[i].id);
}

TEST(Scenarios, RoutesGiveMinus137) {
  EXPECT_EQ(find(all(), "route.left").actual, Value(Integer(-137)));
  EXPECT_EQ(find(all(), "route.right").actual, Value(Integer(-137)));
  EXPECT_EQ(find(all(), "route.agree").status, Status::pass);
}

TEST(Scenarios, AgreementSurvivesFaultInjection) {
  auto left = scenario_route_left(Integer(-1));
  auto right = scenario_route_right(Integer(-1));
  EXPECT_EQ(left.status, Status::fail);
  EXPECT_EQ(right.status, Status::fail);
  EXPECT_EQ(left.actual, right.actual);
  EXPECT_EQ(scenario_routes_agree().status, Status::pass);
}

TEST(Scenarios, CountsAndEuler) {
  for (const char* id : {"counts.bezout", "counts.discriminant", "counts.nodes", "counts.quadric_nodes",
                         "euler.bridge", "euler.ci_p4xp1", "euler.ci_p5", "euler.quintic"})
    EXPECT_EQ(find(all(), id).status, Status::pass) << id;
  EXPECT_EQ(find(all(), "counts.discriminant").actual, Value(MultiDegree{6, 4}));
  EXPECT_EQ(find(all(), "euler.bridge").actual, Value(Integer(-120)));
}

TEST(Scenarios, PropertiesAndCollections) {
  for (const auto& r : all())
    if (r.id.starts_with("property.") || r.id == "sod.checks")
      EXPECT_EQ(r.status, Status::pass) << r.id;
}

TEST(Scenarios, HomTableHasOneDisputedEntry) {
  const auto& r = find(all(), "hom.table");
  EXPECT_EQ(r.expected, Value(Integer(30)));
  EXPECT_EQ(r.actual, Value(Integer(29)));
  ASSERT_EQ(r.detail.size(), 1u);
  EXPECT_NE(r.detail[0].find("computed 10, listed 40"), std::string::npos);
}

TEST(Scenarios, ThreadCountDoesNotChangeReports) {
  auto serial = run_all({}, 1);
  ASSERT_EQ(serial.size(), all().size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].id, all()[i].id);
    EXPECT_EQ(serial[i].status, all()[i].status);
    EXPECT_EQ(serial[i].actual, all()[i].actual);
  }
}

TEST(Scenarios, FilterByPrefix) {
  auto r = run_all("euler.");
  EXPECT_EQ(r.size(), 4u);
  EXPECT_TRUE(run_all("no.such.prefix").empty());
}

TEST(Scenarios, RouteTracesRecordChi) {
  auto t = route_left_trace();
  ASSERT_EQ(t.steps.size(), 10u);
  EXPECT_EQ(t.steps[5].direction, mut::Direction::serre);
  EXPECT_EQ(t.steps[6].chi, -4);
}
