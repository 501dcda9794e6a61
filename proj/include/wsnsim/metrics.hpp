#pragma once

// Quality of measurements, coverage, detection scoring and CSV emission.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/environment.hpp"

namespace wsnsim {

struct QualityModel {
    double ref_interval = 10.0;     // seconds; freshness reference
    double grid_resolution = 10.0;  // meters
    double w_c = 1.0;
    double w_f = 1.0;
    double w_d = 1.0;
};

struct SensorDisc {
    Position position;
    double radius = 0.0;
};

// Fraction of grid cell centers over `world` within range of at least one disc.
inline double coverage(std::span<const SensorDisc> discs, const Rect& world, double resolution) {
    if (!(world.area() > 0.0)) throw std::invalid_argument("coverage: world area must be positive");
    if (!(resolution > 0.0)) throw std::invalid_argument("coverage: resolution must be positive");
    if (discs.empty()) return 0.0;

    const auto nx = std::max<long>(1, static_cast<long>(std::ceil(world.width() / resolution - 1e-9)));
    const auto ny = std::max<long>(1, static_cast<long>(std::ceil(world.height() / resolution - 1e-9)));
    long covered = 0;
    for (long iy = 0; iy < ny; ++iy) {
        const double cy = std::min(world.min_y + (static_cast<double>(iy) + 0.5) * resolution, world.max_y);
        for (long ix = 0; ix < nx; ++ix) {
            const double cx = std::min(world.min_x + (static_cast<double>(ix) + 0.5) * resolution, world.max_x);
            for (const auto& d : discs) {
                const double dx = cx - d.position.x;
                const double dy = cy - d.position.y;
                if (dx * dx + dy * dy <= d.radius * d.radius) {
                    ++covered;
                    break;
                }
            }
        }
    }
    return static_cast<double>(covered) / static_cast<double>(nx * ny);
}

inline double coverage(std::span<const Position> positions, double sensing_radius,
                       const Rect& world, double resolution) {
    std::vector<SensorDisc> discs;
    discs.reserve(positions.size());
    for (const auto& p : positions) discs.push_back({p, sensing_radius});
    return coverage(discs, world, resolution);
}

namespace detail {
inline double weighted(double base, double exponent) {
    if (exponent == 0.0) return 1.0;
    return std::pow(base, exponent);
}
}  // namespace detail

// Q = C^w_c * min(1, ref/dt)^w_f * pdr^w_d
inline double quality_from_coverage(double coverage_fraction, double report_interval, double pdr,
                                    const QualityModel& qm) {
    if (!(report_interval > 0.0)) throw std::invalid_argument("quality: report interval must be positive");
    const double freshness = std::min(1.0, qm.ref_interval / report_interval);
    return detail::weighted(coverage_fraction, qm.w_c) * detail::weighted(freshness, qm.w_f) *
           detail::weighted(pdr, qm.w_d);
}

// Quality of running the first `n_active` of `ordered_discs`.
inline double quality(std::size_t n_active, double report_interval, double pdr,
                      std::span<const SensorDisc> ordered_discs, const Rect& world,
                      const QualityModel& qm) {
    const auto n = std::min(n_active, ordered_discs.size());
    const double c = coverage(ordered_discs.first(n), world, qm.grid_resolution);
    return quality_from_coverage(c, report_interval, pdr, qm);
}

struct Alert {
    std::string eg_id;
    double t = 0.0;
};

struct EventDetection {
    std::string event_id;
    double start = 0.0;
    double end = 0.0;
    bool detected = false;
    double latency = 0.0;  // seconds; meaningful only when detected
    std::string detecting_eg;
};

struct DetectionReport {
    std::vector<EventDetection> events;
    std::size_t false_alerts = 0;

    std::size_t detections() const {
        return static_cast<std::size_t>(std::count_if(
            events.begin(), events.end(), [](const EventDetection& e) { return e.detected; }));
    }
    std::size_t misses() const { return events.size() - detections(); }
};

inline constexpr double kDefaultGraceS = 60.0;

// Credits the first alert in [start, end + grace] to each event; alerts outside
// every such window are false alerts.
inline DetectionReport detection_latency(const GroundTruthLog& truth, std::span<const Alert> alerts,
                                         double grace = kDefaultGraceS) {
    DetectionReport r;
    for (const auto& ev : truth) {
        EventDetection d;
        d.event_id = ev.event_id;
        d.start = ev.start;
        d.end = ev.end;
        const Alert* first = nullptr;
        for (const auto& a : alerts) {
            if (a.t >= ev.start && a.t <= ev.end + grace && (!first || a.t < first->t)) first = &a;
        }
        if (first) {
            d.detected = true;
            d.latency = first->t - ev.start;
            d.detecting_eg = first->eg_id;
        }
        r.events.push_back(std::move(d));
    }
    for (const auto& a : alerts) {
        const bool inside = std::any_of(truth.begin(), truth.end(), [&](const GroundTruthInterval& ev) {
            return a.t >= ev.start && a.t <= ev.end + grace;
        });
        if (!inside) ++r.false_alerts;
    }
    return r;
}

inline std::optional<double> mean_latency(const DetectionReport& r) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& e : r.events) {
        if (!e.detected) continue;
        sum += e.latency;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

struct TimeseriesRow {
    std::int64_t tick = 0;
    std::string network_id;
    double power_w = 0.0;
    double energy_j = 0.0;  // cumulative
    double q = 0.0;
    double p = 0.0;
    std::size_t n_active = 0;
    double report_interval = 0.0;
    bool alert = false;
};

struct FilterCounts {
    std::size_t accepted = 0;
    std::size_t rejected_syntactic = 0;
    std::size_t rejected_semantic = 0;
    std::size_t injected = 0;                     // fault-injected values that reached the sink
    std::size_t injected_rejected_syntactic = 0;  // of those, rejected on syntactic grounds
    std::size_t clean = 0;                        // values without an injected fault
    std::size_t clean_rejected = 0;
};

struct NetworkSummary {
    std::string network_id;
    double total_energy_j = 0.0;
    double mean_q = 0.0;
    DetectionReport detection;  // scored with this network's alerts only
    FilterCounts filter;
    std::size_t config_changes = 0;
    std::size_t degraded_plans = 0;
    std::size_t reports_sent = 0;
    std::size_t reports_lost = 0;
    std::size_t deaths = 0;
};

struct RunMetrics {
    std::vector<TimeseriesRow> timeseries;
    GroundTruthLog ground_truth;
    std::vector<Alert> alerts;
    DetectionReport detection;  // scored with every gateway's alerts
    std::vector<NetworkSummary> networks;
    std::size_t summaries_sent = 0;
    std::size_t summaries_delivered = 0;
    std::size_t summaries_dropped = 0;
};

// Fixed six-decimal rendering; negative zero prints as zero.
inline std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s = buf;
    if (s == "-0.000000") s = "0.000000";
    return s;
}

inline std::string timeseries_csv(const RunMetrics& m) {
    std::ostringstream os;
    os << "tick,network_id,power_w,energy_j,q,p,n_active,report_interval,alert\n";
    for (const auto& r : m.timeseries) {
        os << r.tick << ',' << r.network_id << ',' << fmt6(r.power_w) << ',' << fmt6(r.energy_j) << ','
           << fmt6(r.q) << ',' << fmt6(r.p) << ',' << r.n_active << ',' << fmt6(r.report_interval) << ','
           << (r.alert ? 1 : 0) << '\n';
    }
    return os.str();
}

inline std::string events_csv(const RunMetrics& m) {
    std::ostringstream os;
    os << "event_id,start,end,detected,latency_s,detecting_eg\n";
    for (const auto& e : m.detection.events) {
        os << e.event_id << ',' << fmt6(e.start) << ',' << fmt6(e.end) << ',' << (e.detected ? 1 : 0)
           << ',' << (e.detected ? fmt6(e.latency) : std::string{}) << ',' << e.detecting_eg << '\n';
    }
    return os.str();
}

inline std::string summary_csv(const RunMetrics& m) {
    std::ostringstream os;
    os << "network_id,total_energy_j,mean_q,detections,misses,false_alerts\n";
    for (const auto& n : m.networks) {
        os << n.network_id << ',' << fmt6(n.total_energy_j) << ',' << fmt6(n.mean_q) << ','
           << n.detection.detections() << ',' << n.detection.misses() << ','
           << n.detection.false_alerts << '\n';
    }
    return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path.string());
}

inline void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory: " + dir.string());
    }
}

// Writes timeseries.csv, events.csv and summary.csv into `dir`.
inline std::vector<std::filesystem::path> emit_csv(const RunMetrics& m, const std::filesystem::path& dir) {
    ensure_directory(dir);
    std::vector<std::filesystem::path> written{dir / "timeseries.csv", dir / "events.csv",
                                               dir / "summary.csv"};
    write_text_file(written[0], timeseries_csv(m));
    write_text_file(written[1], events_csv(m));
    write_text_file(written[2], summary_csv(m));
    return written;
}

}  // namespace wsnsim
