#include <gtest/gtest.h>

#include "support.hpp"

using namespace wsnsim;
using wsnsim::testing::data_dir;
using wsnsim::testing::Gen;
using wsnsim::testing::kPropertyCases;
using wsnsim::testing::read_file;

namespace {

Measurement co2(NodeId id, double v, Position pos) { return {id, SensorType::co2(), v, 40.0, pos}; }

SummaryReport tagged(const std::string& eg, double mean) {
    SummaryReport s;
    s.eg_id = eg;
    s.sensor_type = SensorType::co2();
    s.window_start = 0;
    s.window_end = 30;
    s.mean = mean;
    s.count = 1;
    return s;
}

}  // namespace

TEST(MakeSummary, SingleMeasurement) {
    const Measurement m[] = {co2(1, 415.0, {0, 0})};
    const auto s = make_summary("B", SensorType::co2(), m, 0, 30, 0.0, 0.2);
    ASSERT_TRUE(s);
    EXPECT_DOUBLE_EQ(s->mean, 415.0);
    EXPECT_DOUBLE_EQ(s->variance, 0.0);
    EXPECT_EQ(s->count, 1);
    EXPECT_DOUBLE_EQ(s->coverage_radius, 0.0);
    EXPECT_DOUBLE_EQ(s->event_prob, 0.2);
}

TEST(MakeSummary, PopulationVarianceAndGeometry) {
    const Measurement m[] = {co2(1, 10.0, {0, 0}), co2(2, 20.0, {4, 0})};
    const auto s = make_summary("B", SensorType::co2(), m, 0, 30, 0.0, 0.0);
    EXPECT_DOUBLE_EQ(s->mean, 15.0);
    EXPECT_DOUBLE_EQ(s->variance, 25.0);
    EXPECT_DOUBLE_EQ(s->centroid.x, 2.0);
    EXPECT_DOUBLE_EQ(s->centroid.y, 0.0);
    EXPECT_DOUBLE_EQ(s->coverage_radius, 2.0);
}

TEST(MakeSummary, EmptyWindowYieldsNothing) {
    EXPECT_FALSE(make_summary("B", SensorType::co2(), {}, 0, 30, 0, 0));
}

TEST(SummaryText, MatchesGoldenFile) {
    const Measurement m[] = {co2(1, 400.0, {0, 0}), co2(2, 420.0, {4, 0}), co2(1, 410.0, {0, 0})};
    const auto s = make_summary("B", SensorType::co2(), m, 30, 60, 1.25, 0.125);
    const auto golden = read_file(data_dir() / "summary_report.txt");
    ASSERT_FALSE(golden.empty());
    EXPECT_EQ(to_text(*s), golden);
    const auto back = from_text(golden);
    EXPECT_EQ(to_text(back), golden);
    EXPECT_EQ(back.count, 3);
}

TEST(SummaryText, RejectsMissingOrReorderedFields) {
    EXPECT_THROW(from_text("eg_id=B\n"), std::invalid_argument);
    EXPECT_THROW(from_text("sensor_type=CO2\neg_id=B\n"), std::invalid_argument);
}

TEST(Publish, LosslessAndTotalLoss) {
    Rng rng{1};
    for (int i = 0; i < 1000; ++i) {
        ASSERT_EQ(publish({5.0, 0.0}, i, rng), std::optional<double>(i + 5.0));
        ASSERT_FALSE(publish({5.0, 1.0}, i, rng));
    }
}

TEST(Publish, HalfLossStatistics) {
    Rng rng{2024};
    int ok = 0;
    for (int i = 0; i < 10000; ++i) ok += publish({1.0, 0.5}, 0.0, rng) ? 1 : 0;
    EXPECT_NEAR(ok / 10000.0, 0.5, 0.02);
}

TEST(Inbox, OrderingAndRetention) {
    Inbox box;
    EXPECT_TRUE(box.drain(100).empty());
    box.push(10, tagged("eg_b", 1));
    box.push(10, tagged("eg_a", 2));
    box.push(9, tagged("eg_c", 3));
    box.push(11, tagged("eg_a", 4));
    const auto out = box.drain(10);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].eg_id, "eg_c");
    EXPECT_EQ(out[1].eg_id, "eg_a");
    EXPECT_EQ(out[2].eg_id, "eg_b");
    EXPECT_EQ(box.size(), 1u);
    EXPECT_TRUE(box.drain(10).empty());
    EXPECT_EQ(box.drain(11).front().mean, 4);
}

TEST(Overlay, ConservationAndNoEarlyDelivery) {
    Gen g(31);
    for (int c = 0; c < kPropertyCases / 10; ++c) {
        Overlay ov({"A", "B", "C"}, static_cast<std::uint64_t>(c));
        const double latency = static_cast<double>(g.index(0, 5));
        ov.connect_full_mesh({latency, g.uniform(0, 1)});
        for (int t = 0; t < 100; ++t) {
            for (const char* id : {"A", "B", "C"}) {
                if (g.coin(0.3)) {
                    auto s = tagged(id, t);
                    s.window_end = t;
                    ov.broadcast(s, t);
                }
                for (const auto& msg : ov.drain(id, t)) ASSERT_GE(t, msg.window_end + latency);
            }
            ASSERT_EQ(ov.sent(), ov.delivered() + ov.dropped() + ov.queued());
        }
    }
}

TEST(Overlay, AdjacencyRestrictsPeers) {
    Overlay ov({"A", "B", "C"}, 1);
    ov.connect("A", "B", {0, 0});
    EXPECT_EQ(ov.peers_of("A"), std::vector<std::string>{"B"});
    EXPECT_TRUE(ov.peers_of("B").empty());
    ov.broadcast(tagged("A", 1), 0);
    EXPECT_EQ(ov.drain("B", 0).size(), 1u);
    EXPECT_TRUE(ov.drain("C", 0).empty());
    EXPECT_THROW(ov.connect("A", "Z", {0, 0}), ConfigError);
}

TEST(Overlay, DeterministicSchedule) {
    auto schedule = [] {
        Overlay ov({"A", "B"}, 77);
        ov.connect_full_mesh({2, 0.4});
        std::vector<std::pair<int, double>> got;
        for (int t = 0; t < 500; ++t) {
            ov.broadcast(tagged("A", t), t);
            for (const auto& m : ov.drain("B", t)) got.emplace_back(t, m.mean);
        }
        return got;
    };
    EXPECT_EQ(schedule(), schedule());
}
