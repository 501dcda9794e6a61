#pragma once

// Gateway-to-gateway exchange: the summary record, its canonical text form
// and a lossy, delayed transport between gateway inboxes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

struct SummaryReport {
    std::string eg_id;
    SensorType sensor_type;
    double window_start = 0.0;
    double window_end = 0.0;
    double mean = 0.0;
    double variance = 0.0;  // population variance
    std::int64_t count = 0;
    double anomaly_z = 0.0;
    Position centroid;
    double coverage_radius = 0.0;
    double event_prob = 0.0;

    friend bool operator==(const SummaryReport&, const SummaryReport&) = default;
};

struct OverlayLink {
    double latency = 0.0;  // seconds
    double loss = 0.0;     // drop probability
};

// Aggregates one window of accepted measurements; nullopt when the window is empty.
inline std::optional<SummaryReport> make_summary(const std::string& eg_id, const SensorType& type,
                                                 std::span<const Measurement> accepted,
                                                 double window_start, double window_end,
                                                 double anomaly_z, double event_prob) {
    if (accepted.empty()) return std::nullopt;
    if (!(window_start < window_end)) throw std::invalid_argument("make_summary: empty time window");

    SummaryReport r;
    r.eg_id = eg_id;
    r.sensor_type = type;
    r.window_start = window_start;
    r.window_end = window_end;
    r.count = static_cast<std::int64_t>(accepted.size());

    double sum = 0.0;
    for (const auto& m : accepted) sum += m.value;
    r.mean = sum / static_cast<double>(accepted.size());
    double ss = 0.0;
    for (const auto& m : accepted) ss += (m.value - r.mean) * (m.value - r.mean);
    r.variance = ss / static_cast<double>(accepted.size());

    // Contributing nodes, each counted once at its reported position.
    std::map<NodeId, Position> nodes;
    for (const auto& m : accepted) nodes.emplace(m.node_id, m.position);
    std::vector<Position> pts;
    for (const auto& [id, p] : nodes) pts.push_back(p);
    r.centroid = centroid(pts);
    for (const auto& p : pts) r.coverage_radius = std::max(r.coverage_radius, distance(p, r.centroid));

    r.anomaly_z = anomaly_z;
    r.event_prob = std::clamp(event_prob, 0.0, 1.0);
    return r;
}

// One `key=value` line per field, in declaration order, reals at six decimals.
inline std::string to_text(const SummaryReport& r) {
    std::ostringstream os;
    os << "eg_id=" << r.eg_id << '\n'
       << "sensor_type=" << r.sensor_type.name() << '\n'
       << "window_start=" << fmt6(r.window_start) << '\n'
       << "window_end=" << fmt6(r.window_end) << '\n'
       << "mean=" << fmt6(r.mean) << '\n'
       << "variance=" << fmt6(r.variance) << '\n'
       << "count=" << r.count << '\n'
       << "anomaly_z=" << fmt6(r.anomaly_z) << '\n'
       << "centroid_x=" << fmt6(r.centroid.x) << '\n'
       << "centroid_y=" << fmt6(r.centroid.y) << '\n'
       << "coverage_radius=" << fmt6(r.coverage_radius) << '\n'
       << "event_prob=" << fmt6(r.event_prob) << '\n';
    return os.str();
}

// Parses the canonical text form; every field must be present exactly in order.
inline SummaryReport from_text(const std::string& text) {
    static const char* const kFields[] = {"eg_id",     "sensor_type", "window_start", "window_end",
                                          "mean",      "variance",    "count",        "anomaly_z",
                                          "centroid_x", "centroid_y", "coverage_radius", "event_prob"};
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> values;
    for (const char* field : kFields) {
        if (!std::getline(is, line)) throw std::invalid_argument(std::string("summary: missing ") + field);
        const auto eq = line.find('=');
        if (eq == std::string::npos || line.substr(0, eq) != field) {
            throw std::invalid_argument(std::string("summary: expected field ") + field);
        }
        values.push_back(line.substr(eq + 1));
    }
    SummaryReport r;
    r.eg_id = values[0];
    r.sensor_type = SensorType{values[1]};
    r.window_start = std::stod(values[2]);
    r.window_end = std::stod(values[3]);
    r.mean = std::stod(values[4]);
    r.variance = std::stod(values[5]);
    r.count = std::stoll(values[6]);
    r.anomaly_z = std::stod(values[7]);
    r.centroid = {std::stod(values[8]), std::stod(values[9])};
    r.coverage_radius = std::stod(values[10]);
    r.event_prob = std::stod(values[11]);
    return r;
}

// Delivery time for a message offered to `link` at time t, or nullopt if lost.
inline std::optional<double> publish(const OverlayLink& link, double t, Rng& rng) {
    if (std::bernoulli_distribution{link.loss}(rng)) return std::nullopt;
    return t + link.latency;
}

// Per-gateway queue of summaries in flight.
class Inbox {
public:
    void push(double due, SummaryReport msg) {
        queue_.push_back({due, seq_++, std::move(msg)});
    }

    // Removes and returns messages due at or before t, ordered by (due, sender id).
    std::vector<SummaryReport> drain(double t) {
        std::vector<Entry> due;
        std::vector<Entry> keep;
        for (auto& e : queue_) (e.due <= t ? due : keep).push_back(std::move(e));
        queue_ = std::move(keep);
        std::sort(due.begin(), due.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.due, a.msg.eg_id, a.seq) < std::tie(b.due, b.msg.eg_id, b.seq);
        });
        std::vector<SummaryReport> out;
        out.reserve(due.size());
        for (auto& e : due) out.push_back(std::move(e.msg));
        return out;
    }

    std::size_t size() const noexcept { return queue_.size(); }
    bool empty() const noexcept { return queue_.empty(); }

private:
    struct Entry {
        double due;
        std::uint64_t seq;
        SummaryReport msg;
    };
    std::vector<Entry> queue_;
    std::uint64_t seq_ = 0;
};

// Directed links between gateways plus their inboxes. Each directed link owns
// a random stream derived from its endpoint names.
class Overlay {
public:
    Overlay(std::vector<std::string> gateway_ids, std::uint64_t master_seed)
        : ids_(std::move(gateway_ids)), master_seed_(master_seed) {
        for (const auto& id : ids_) inboxes_[id];
    }

    const std::vector<std::string>& gateway_ids() const noexcept { return ids_; }

    void connect(const std::string& from, const std::string& to, OverlayLink link) {
        if (from == to) return;
        require(from);
        require(to);
        auto [it, inserted] = links_.try_emplace({from, to}, Link{link, make_stream(master_seed_, "overlay:" + from + "->" + to)});
        if (!inserted) it->second.params = link;
    }

    void connect_full_mesh(OverlayLink link) {
        for (const auto& a : ids_) {
            for (const auto& b : ids_) connect(a, b, link);
        }
    }

    std::vector<std::string> peers_of(const std::string& from) const {
        std::vector<std::string> out;
        for (const auto& [key, link] : links_) {
            if (key.first == from) out.push_back(key.second);
        }
        return out;
    }

    // Sends `msg` from its eg_id to every connected peer.
    void broadcast(const SummaryReport& msg, double t) {
        for (auto& [key, link] : links_) {
            if (key.first != msg.eg_id) continue;
            ++sent_;
            if (auto due = publish(link.params, t, link.rng)) {
                inboxes_.at(key.second).push(*due, msg);
            } else {
                ++dropped_;
            }
        }
    }

    std::vector<SummaryReport> drain(const std::string& id, double t) {
        auto out = inboxes_.at(id).drain(t);
        delivered_ += out.size();
        return out;
    }

    std::size_t sent() const noexcept { return sent_; }
    std::size_t delivered() const noexcept { return delivered_; }
    std::size_t dropped() const noexcept { return dropped_; }
    std::size_t queued() const {
        std::size_t n = 0;
        for (const auto& [id, inbox] : inboxes_) n += inbox.size();
        return n;
    }

private:
    struct Link {
        OverlayLink params;
        Rng rng;
    };

    void require(const std::string& id) const {
        if (!inboxes_.contains(id)) throw ConfigError("overlay: unknown gateway " + id);
    }

    std::vector<std::string> ids_;
    std::uint64_t master_seed_;
    std::map<std::pair<std::string, std::string>, Link> links_;
    std::map<std::string, Inbox> inboxes_;
    std::size_t sent_ = 0;
    std::size_t delivered_ = 0;
    std::size_t dropped_ = 0;
};

}  // namespace wsnsim
