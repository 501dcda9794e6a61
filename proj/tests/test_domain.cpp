#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace wsnsim;
using wsnsim::testing::Gen;
using wsnsim::testing::kPropertyCases;

namespace {

CouplingMatrix sample_matrix() {
    CouplingMatrix m;
    m.set(SensorType::temperature(), SensorType::co2(), 0.8);
    m.set(SensorType::humidity(), SensorType::temperature(), 0.4);
    return m;
}

}  // namespace

TEST(SemanticCoupling, IdentityIsOne) {
    EXPECT_DOUBLE_EQ(semantic_coupling(SensorType::temperature(), SensorType::temperature(), sample_matrix()), 1.0);
}

TEST(SemanticCoupling, ConfiguredLookupIsSymmetric) {
    const auto m = sample_matrix();
    EXPECT_DOUBLE_EQ(semantic_coupling(SensorType::temperature(), SensorType::co2(), m), 0.8);
    EXPECT_DOUBLE_EQ(semantic_coupling(SensorType::co2(), SensorType::temperature(), m), 0.8);
}

TEST(SemanticCoupling, MissingPairNamesBothTypes) {
    try {
        semantic_coupling(SensorType::humidity(), SensorType::smoke(), sample_matrix());
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("Humidity"), std::string::npos);
        EXPECT_NE(msg.find("Smoke"), std::string::npos);
    }
}

TEST(SemanticCoupling, RejectsOutOfRangeAndNonUnitDiagonal) {
    CouplingMatrix m;
    EXPECT_THROW(m.set(SensorType::co2(), SensorType::smoke(), 1.5), ConfigError);
    EXPECT_THROW(m.set(SensorType::co2(), SensorType::co2(), 0.5), ConfigError);
}

TEST(RelevanceWeight, Examples) {
    const RelevanceParams p{500.0};
    EXPECT_DOUBLE_EQ(relevance_weight(0.0, 0.8, p), 0.8);
    EXPECT_DOUBLE_EQ(relevance_weight(1234.0, 0.0, p), 0.0);
    EXPECT_NEAR(relevance_weight(500.0, 1.0, p), 0.367879, 1e-6);
}

TEST(RelevanceWeight, NegativeDistanceIsArgumentError) {
    EXPECT_THROW(relevance_weight(-1.0, 0.5, RelevanceParams{}), std::invalid_argument);
}

TEST(RelevanceWeight, BoundedAndMonotone) {
    Gen g(11);
    const RelevanceParams p{500.0};
    for (int i = 0; i < kPropertyCases; ++i) {
        const double d1 = g.uniform(0.0, 5000.0), d2 = g.uniform(0.0, 5000.0);
        const double k1 = g.uniform(0.0, 1.0), k2 = g.uniform(0.0, 1.0);
        const double r = relevance_weight(d1, k1, p);
        ASSERT_GE(r, 0.0);
        ASSERT_LE(r, 1.0);
        ASSERT_GE(relevance_weight(std::min(d1, d2), k1, p), relevance_weight(std::max(d1, d2), k1, p));
        ASSERT_LE(relevance_weight(d1, std::min(k1, k2), p), relevance_weight(d1, std::max(k1, k2), p));
    }
}

TEST(CentroidDistance, Examples) {
    const Position a[] = {{0, 0}};
    const Position b[] = {{3, 4}};
    EXPECT_DOUBLE_EQ(centroid_distance(a, b), 5.0);
    EXPECT_DOUBLE_EQ(centroid_distance(b, b), 0.0);

    // Centroid of {(0,0),(2,0)} is (1,0), ten meters below (1,10).
    const Position c[] = {{0, 0}, {2, 0}};
    const Position d[] = {{1, 10}};
    EXPECT_DOUBLE_EQ(centroid_distance(c, d), 10.0);
}

TEST(CentroidDistance, EmptySetIsArgumentError) {
    const Position a[] = {{0, 0}};
    EXPECT_THROW(centroid_distance({}, a), std::invalid_argument);
}

TEST(CentroidDistance, SymmetricAndZeroOnSelf) {
    Gen g(12);
    for (int i = 0; i < kPropertyCases; ++i) {
        std::vector<Position> a(g.index(1, 6)), b(g.index(1, 6));
        for (auto& p : a) p = {g.uniform(-100, 100), g.uniform(-100, 100)};
        for (auto& p : b) p = {g.uniform(-100, 100), g.uniform(-100, 100)};
        ASSERT_DOUBLE_EQ(centroid_distance(a, b), centroid_distance(b, a));
        ASSERT_DOUBLE_EQ(centroid_distance(a, a), 0.0);
    }
}
