#include <gtest/gtest.h>

#include "support/properties.hpp"

using namespace manipify;
using namespace manipify::testing;

namespace {

const std::vector<Property>& properties() {
  static const auto all = all_properties();
  return all;
}

class PropertyTest : public ::testing::TestWithParam<std::size_t> {};

TEST_P(PropertyTest, Holds) {
  const auto& p = properties().at(GetParam());
  const auto outcome = run_property(p, kPropertyCases);
  EXPECT_EQ(outcome.failures, 0u) << outcome.name << " failed " << outcome.failures << " of " << outcome.cases
                                 << ": " << outcome.first_failure;
}

std::string property_name(const ::testing::TestParamInfo<std::size_t>& info) {
  const auto& p = properties().at(info.param);
  std::string name = p.module + "_" + p.name;
  for (char& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return name;
}

INSTANTIATE_TEST_SUITE_P(All, PropertyTest, ::testing::Range<std::size_t>(0, properties().size()), property_name);

}  // namespace
