#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "rctsim/error.hpp"
#include "rctsim/types.hpp"

using namespace rctsim;

namespace {

ErrorKind kind_of(const Sample& s) {
  try {
    validate_sample(s);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::IoFailure;
}

}  // namespace

TEST(Sample, ValidThreeUnits) {
  const auto s = fixtures::make_sample({0.1, 0.5, 0.9}, {1, 0, 1}, {0, 1, 1},
                                       std::vector<double>{0.5, 0.5, 0.5}, 0.1);
  EXPECT_NO_THROW(validate_sample(s));
}

TEST(Sample, PositivityViolationReportsIndex) {
  const auto s = fixtures::make_sample({0.1, 0.2}, {1, 0}, {0, 1},
                                       std::vector<double>{0.05, 0.5}, 0.1);
  try {
    validate_sample(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PositivityViolation);
    ASSERT_TRUE(e.index().has_value());
    EXPECT_EQ(*e.index(), 0u);
  }
}

TEST(Sample, PropensityLengthMismatch) {
  const auto s = fixtures::make_sample({0.1, 0.2, 0.3}, {1, 0, 1}, {0, 1, 0},
                                       std::vector<double>{0.5, 0.5}, 0.1);
  EXPECT_EQ(kind_of(s), ErrorKind::LengthMismatch);
}

TEST(Sample, EmptyAndDomainChecks) {
  EXPECT_EQ(kind_of(Sample{}), ErrorKind::LengthMismatch);
  EXPECT_EQ(kind_of(fixtures::make_sample({1.2}, {1}, {0})), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of(fixtures::make_sample({0.2}, {2}, {0})), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of(fixtures::make_sample({0.2}, {1}, {-1})), ErrorKind::DomainViolation);
  EXPECT_EQ(kind_of(fixtures::make_sample({0.2}, {1}, {0}, std::vector<double>{0.5}, 0.5)),
            ErrorKind::DomainViolation);
  // without propensities delta is not consulted
  EXPECT_NO_THROW(validate_sample(fixtures::make_sample({0.2}, {1}, {0}, std::nullopt, 0.0)));
}

TEST(EstimateResult, AteIsDifferenceOfArms) {
  const EstimateResult r(0.7, 0.25, PropensityUse::NoPropensity);
  EXPECT_EQ(r.ate_hat(), 0.7 - 0.25);
  EXPECT_FALSE(r.ci().has_value());
  const auto flagged = r.with_flag("x").with_ci({-0.1, 0.2, 0.05});
  EXPECT_EQ(flagged.flags().size(), 1u);
  EXPECT_DOUBLE_EQ(flagged.ci()->width(), 0.3);
  EXPECT_THROW(r.with_ci({0.3, 0.2, 0.05}), Error);
}

TEST(PropensityUse, NamesRoundTrip) {
  for (const auto use : {PropensityUse::TruePropensity, PropensityUse::EstimatedPropensity,
                         PropensityUse::NoPropensity}) {
    EXPECT_EQ(parse_propensity_use(to_string(use)), use);
  }
  EXPECT_FALSE(parse_propensity_use("solid").has_value());
}
