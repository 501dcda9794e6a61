#pragma once

// Monitor-stage validation of incoming measurements.
//
// Checks run in a fixed order and the first failure is recorded:
//   1. non-finite value                      (syntactic)
//   2. outside [value_min, value_max]        (syntactic)
//   3. per-node rate of change > max_rate    (semantic)
//   4. |z| > z_max against the node's window (semantic)
//
// A sustained level shift (e.g. an event raising every reading) would fail
// check 4 forever because the window only grows from accepted values. A
// value that fails check 4 with the same sign as the node's previous
// z-rejected value is therefore taken as confirmation: it is accepted and the
// node's window restarts from it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "wsnsim/domain.hpp"

namespace wsnsim {

inline constexpr double kStdFloor = 1e-9;
inline constexpr std::size_t kMinZWindow = 5;

enum class RejectReason { NonFinite, OutOfRange, RateOfChange, Anomalous };
enum class RejectClass { Syntactic, Semantic };

constexpr RejectClass classify(RejectReason r) noexcept {
    return (r == RejectReason::NonFinite || r == RejectReason::OutOfRange) ? RejectClass::Syntactic
                                                                           : RejectClass::Semantic;
}

constexpr const char* to_string(RejectReason r) noexcept {
    switch (r) {
        case RejectReason::NonFinite: return "non-finite";
        case RejectReason::OutOfRange: return "out-of-range";
        case RejectReason::RateOfChange: return "rate-of-change";
        case RejectReason::Anomalous: return "anomalous";
    }
    return "?";
}

struct TypeBounds {
    double value_min = 0.0;
    double value_max = 0.0;
    double max_rate = 0.0;  // units per second
};

struct FilterRules {
    std::map<SensorType, TypeBounds> bounds;
    double z_max = 4.0;
    std::size_t window = 20;
};

inline double window_mean(std::span<const double> w) {
    return std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
}

// Sample standard deviation (n - 1 denominator).
inline double window_std(std::span<const double> w) {
    if (w.size() < 2) return 0.0;
    const double mu = window_mean(w);
    double ss = 0.0;
    for (double v : w) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(w.size() - 1));
}

// z = (value - mean) / max(std, 1e-9); nullopt when the window holds fewer than five values.
inline std::optional<double> anomaly_z(double value, std::span<const double> window) {
    if (window.size() < kMinZWindow) return std::nullopt;
    return (value - window_mean(window)) / std::max(window_std(window), kStdFloor);
}

struct Rejection {
    Measurement measurement;
    RejectReason reason;
};

struct FilterResult {
    std::vector<Measurement> accepted;
    std::vector<std::optional<double>> accepted_z;  // parallel to accepted
    std::vector<Rejection> rejected;
};

// Per-node trailing state the filter needs across batches.
class FilterHistory {
public:
    struct Track {
        std::deque<double> window;
        std::optional<double> last_value;
        double last_time = 0.0;
        int pending_sign = 0;  // sign of the last z-rejection not yet followed by an acceptance
    };

    Track& track(NodeId id) { return tracks_[id]; }
    const Track* find(NodeId id) const {
        auto it = tracks_.find(id);
        return it == tracks_.end() ? nullptr : &it->second;
    }
    std::vector<double> window(NodeId id) const {
        const auto* t = find(id);
        return t ? std::vector<double>(t->window.begin(), t->window.end()) : std::vector<double>{};
    }

private:
    std::map<NodeId, Track> tracks_;
};

inline FilterResult monitor_filter(std::span<const Measurement> batch, const FilterRules& rules,
                                   FilterHistory& history) {
    FilterResult out;
    for (const auto& m : batch) {
        if (!std::isfinite(m.value)) {
            out.rejected.push_back({m, RejectReason::NonFinite});
            continue;
        }
        const auto bounds_it = rules.bounds.find(m.sensor_type);
        const TypeBounds* bounds = bounds_it == rules.bounds.end() ? nullptr : &bounds_it->second;
        if (bounds && (m.value < bounds->value_min || m.value > bounds->value_max)) {
            out.rejected.push_back({m, RejectReason::OutOfRange});
            continue;
        }

        auto& tr = history.track(m.node_id);
        if (bounds && tr.last_value) {
            const double dt = m.timestamp - tr.last_time;
            if (dt > 0.0 && std::abs(m.value - *tr.last_value) / dt > bounds->max_rate) {
                out.rejected.push_back({m, RejectReason::RateOfChange});
                continue;
            }
        }

        std::optional<double> z;
        bool restart_window = false;
        if (tr.window.size() >= kMinZWindow) {
            const std::vector<double> w(tr.window.begin(), tr.window.end());
            if (window_std(w) >= kStdFloor) {
                z = anomaly_z(m.value, w);
                if (std::abs(*z) > rules.z_max) {
                    const int sign = *z > 0 ? 1 : -1;
                    if (tr.pending_sign != sign) {
                        tr.pending_sign = sign;
                        out.rejected.push_back({m, RejectReason::Anomalous});
                        continue;
                    }
                    restart_window = true;
                }
            }
        }

        if (restart_window) tr.window.clear();
        tr.pending_sign = 0;
        tr.window.push_back(m.value);
        while (tr.window.size() > std::max<std::size_t>(rules.window, 1)) tr.window.pop_front();
        tr.last_value = m.value;
        tr.last_time = m.timestamp;
        out.accepted.push_back(m);
        out.accepted_z.push_back(z);
    }
    return out;
}

}  // namespace wsnsim
