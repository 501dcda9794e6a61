#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "support.hpp"

using namespace wsnsim;
using wsnsim::testing::Gen;
using wsnsim::testing::kPropertyCases;

namespace {

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST(Coverage, WholeWorld) {
    const Position p[] = {{50, 50}};
    EXPECT_DOUBLE_EQ(coverage(p, 200.0, Rect{0, 0, 100, 100}, 10), 1.0);
}

TEST(Coverage, NoNodes) {
    EXPECT_DOUBLE_EQ(coverage(std::span<const Position>{}, 30.0, Rect{0, 0, 100, 100}, 10), 0.0);
}

TEST(Coverage, SingleDiscByEnumeration) {
    int hits = 0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double dx = 5 + 10 * i - 50.0, dy = 5 + 10 * j - 50.0;
            if (dx * dx + dy * dy <= 900.0) ++hits;
        }
    }
    // Eight cell centers per quadrant lie within 30 m of (50, 50).
    EXPECT_EQ(hits, 32);
    const Position p[] = {{50, 50}};
    EXPECT_DOUBLE_EQ(coverage(p, 30.0, Rect{0, 0, 100, 100}, 10), hits / 100.0);
}

TEST(Coverage, MatchesOracleAndIsMonotone) {
    Gen g(5);
    for (int c = 0; c < kPropertyCases; ++c) {
        const double w = g.uniform(20, 150), h = g.uniform(20, 150);
        const Rect world{0, 0, w, h};
        const double res = g.uniform(3, 15);
        std::vector<SensorDisc> discs;
        double prev = 0.0;
        for (std::size_t k = 0; k < 6; ++k) {
            discs.push_back({{g.uniform(0, w), g.uniform(0, h)}, g.uniform(1, 60)});
            const double cv = coverage(discs, world, res);
            ASSERT_GE(cv, prev);
            ASSERT_LE(cv, 1.0);
            ASSERT_NEAR(cv, oracle::coverage(discs, world, res), 1e-6);
            prev = cv;
        }
    }
}

TEST(Quality, Examples) {
    const QualityModel qm;
    EXPECT_DOUBLE_EQ(quality_from_coverage(1.0, qm.ref_interval, 1.0, qm), 1.0);
    EXPECT_DOUBLE_EQ(quality_from_coverage(1.0, qm.ref_interval, 0.0, qm), 0.0);
    EXPECT_NEAR(quality_from_coverage(0.28, 2 * qm.ref_interval, 0.9, qm), 0.126, 1e-12);
    const SensorDisc d[] = {{{50, 50}, 30}};
    EXPECT_NEAR(quality(1, 20, 0.9, d, Rect{0, 0, 100, 100}, qm), 0.32 * 0.5 * 0.9, 1e-12);
}

TEST(Quality, MonotoneInPdrAndInterval) {
    Gen g(6);
    for (int c = 0; c < kPropertyCases; ++c) {
        QualityModel qm{g.uniform(1, 60), 10, g.uniform(0, 2), g.uniform(0, 2), g.uniform(0, 2)};
        const double cv = g.uniform(0, 1);
        const double dt1 = g.uniform(1, 300), dt2 = g.uniform(dt1, 600);
        const double p1 = g.uniform(0, 1), p2 = g.uniform(p1, 1);
        const double q = quality_from_coverage(cv, dt1, p1, qm);
        ASSERT_GE(q, 0.0);
        ASSERT_LE(q, 1.0);
        ASSERT_LE(quality_from_coverage(cv, dt2, p1, qm), q + 1e-15);
        ASSERT_GE(quality_from_coverage(cv, dt1, p2, qm), q - 1e-15);
        ASSERT_GE(quality_from_coverage(g.uniform(cv, 1), dt1, p1, qm), q - 1e-15);
    }
}

TEST(Detection, Examples) {
    const GroundTruthLog truth{{"fire", 1000, 1600}};
    const Alert at_start[] = {{"B", 1000}};
    EXPECT_DOUBLE_EQ(detection_latency(truth, at_start).events[0].latency, 0.0);

    const auto none = detection_latency(truth, {});
    EXPECT_EQ(none.misses(), 1u);
    EXPECT_EQ(none.false_alerts, 0u);

    const Alert mixed[] = {{"A", 950}, {"B", 1090}};
    const auto r = detection_latency(truth, mixed);
    ASSERT_EQ(r.events.size(), 1u);
    EXPECT_TRUE(r.events[0].detected);
    EXPECT_DOUBLE_EQ(r.events[0].latency, 90.0);
    EXPECT_EQ(r.events[0].detecting_eg, "B");
    EXPECT_EQ(r.false_alerts, 1u);
}

TEST(Detection, GraceWindow) {
    const GroundTruthLog truth{{"e", 0, 100}};
    const Alert late[] = {{"A", 160}, {"A", 161}};
    const auto r = detection_latency(truth, late);
    EXPECT_TRUE(r.events[0].detected);
    EXPECT_DOUBLE_EQ(r.events[0].latency, 160.0);
    EXPECT_EQ(r.false_alerts, 1u);
}

TEST(Csv, HeadersAndFormatting) {
    RunMetrics m;
    EXPECT_EQ(timeseries_csv(m), "tick,network_id,power_w,energy_j,q,p,n_active,report_interval,alert\n");
    EXPECT_EQ(events_csv(m), "event_id,start,end,detected,latency_s,detecting_eg\n");
    EXPECT_EQ(summary_csv(m), "network_id,total_energy_j,mean_q,detections,misses,false_alerts\n");
    EXPECT_EQ(fmt6(-0.0), "0.000000");
    EXPECT_EQ(fmt6(1.0 / 3.0), "0.333333");

    m.timeseries.push_back({3, "A", 0.5, 1.25, 0.75, 0.1, 4, 30, true});
    EXPECT_EQ(timeseries_csv(m).substr(timeseries_csv(m).find('\n') + 1),
              "3,A,0.500000,1.250000,0.750000,0.100000,4,30.000000,1\n");
}

TEST(Csv, EmitWritesThreeFiles) {
    const auto dir = wsnsim::testing::temp_dir("emit") / "nested";
    RunMetrics m;
    for (int k = 0; k < 10; ++k) {
        for (const char* id : {"A", "B"}) m.timeseries.push_back({k, id, 0, 0, 0, 0, 1, 10, false});
    }
    m.ground_truth = {{"fire", 10, 20}};
    m.detection = detection_latency(m.ground_truth, {});
    const auto files = emit_csv(m, dir);
    ASSERT_EQ(files.size(), 3u);
    EXPECT_EQ(count_lines(wsnsim::testing::read_file(dir / "timeseries.csv")), 21u);
    EXPECT_EQ(wsnsim::testing::read_file(dir / "events.csv"),
              "event_id,start,end,detected,latency_s,detecting_eg\nfire,10.000000,20.000000,0,,\n");
}

TEST(Csv, UnwritableDestinationIsIoError) {
    const auto dir = wsnsim::testing::temp_dir("blocked");
    wsnsim::write_text_file(dir / "file", "x");
    EXPECT_THROW(emit_csv(RunMetrics{}, dir / "file" / "sub"), IoError);
}
