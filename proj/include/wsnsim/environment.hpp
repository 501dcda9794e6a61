#pragma once

// Synthetic ground truth: one scalar field per sensed type, perturbed by
// scheduled events with linear radial falloff.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

inline constexpr double kSecondsPerDay = 86400.0;

struct FieldSpec {
    SensorType sensor_type;
    double baseline = 0.0;
    double diurnal_amplitude = 0.0;
    double noise_sigma = 0.0;
    double noise_corr_len = 50.0;  // meters
};

struct EventSpec {
    std::string id;
    double start = 0.0;
    double duration = 1.0;
    Position center;
    double radius = 1.0;
    std::map<SensorType, double> intensity;  // delta at the center

    double end() const noexcept { return start + duration; }
    bool active_at(double t) const noexcept { return start <= t && t < end(); }
};

struct GroundTruthInterval {
    std::string event_id;
    double start = 0.0;
    double end = 0.0;
};

using GroundTruthLog = std::vector<GroundTruthInterval>;

// Spatially correlated noise as a stateless hash of (seed, type, grid cell, whole second).
class NoiseSource {
public:
    NoiseSource() = default;
    explicit NoiseSource(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    double standard_normal(const SensorType& type, Position pos, double corr_len, double t) const {
        const auto cx = static_cast<std::int64_t>(std::floor(pos.x / corr_len));
        const auto cy = static_cast<std::int64_t>(std::floor(pos.y / corr_len));
        const auto tick = static_cast<std::int64_t>(std::floor(t));
        return hash_gaussian(hash_combine({seed_, fnv1a(type.name()),
                                           static_cast<std::uint64_t>(cx),
                                           static_cast<std::uint64_t>(cy),
                                           static_cast<std::uint64_t>(tick)}));
    }

private:
    std::uint64_t seed_ = 0;
};

inline double diurnal_term(const FieldSpec& spec, double t) {
    return spec.diurnal_amplitude * std::sin(2.0 * std::numbers::pi * t / kSecondsPerDay);
}

// Sum of active-event deltas for `type` at `pos`; never negative for
// non-negative intensities.
inline double event_contribution(const SensorType& type, std::span<const EventSpec> events,
                                 Position pos, double t) {
    double total = 0.0;
    for (const auto& ev : events) {
        if (!ev.active_at(t)) continue;
        auto it = ev.intensity.find(type);
        if (it == ev.intensity.end()) continue;
        const double falloff = std::max(0.0, 1.0 - distance(pos, ev.center) / ev.radius);
        total += it->second * falloff;
    }
    return total;
}

inline double field_value(const FieldSpec& spec, std::span<const EventSpec> events, Position pos,
                          double t, const NoiseSource& noise) {
    double v = spec.baseline + diurnal_term(spec, t) +
               event_contribution(spec.sensor_type, events, pos, t);
    if (spec.noise_sigma > 0.0) {
        v += spec.noise_sigma *
             noise.standard_normal(spec.sensor_type, pos, spec.noise_corr_len, t);
    }
    return v;
}

inline std::vector<std::string> event_active(std::span<const EventSpec> events, double t) {
    std::vector<std::string> ids;
    for (const auto& ev : events) {
        if (ev.active_at(t)) ids.push_back(ev.id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Events that are active at some point of [0, duration), clipped to the run.
inline GroundTruthLog ground_truth(std::span<const EventSpec> events, double duration) {
    GroundTruthLog log;
    for (const auto& ev : events) {
        if (ev.start >= duration) continue;
        log.push_back({ev.id, ev.start, std::min(ev.end(), duration)});
    }
    return log;
}

class Environment {
public:
    Environment() = default;
    Environment(std::vector<FieldSpec> fields, std::vector<EventSpec> events, NoiseSource noise)
        : events_(std::move(events)), noise_(noise) {
        for (auto& f : fields) fields_.emplace(f.sensor_type, std::move(f));
    }

    bool has_field(const SensorType& type) const { return fields_.contains(type); }
    const FieldSpec& field(const SensorType& type) const {
        auto it = fields_.find(type);
        if (it == fields_.end()) throw ConfigError("no field for sensor type " + type.name());
        return it->second;
    }

    double value(const SensorType& type, Position pos, double t) const {
        return field_value(field(type), events_, pos, t, noise_);
    }

    std::span<const EventSpec> events() const noexcept { return events_; }
    bool any_event_active(double t) const {
        return std::any_of(events_.begin(), events_.end(),
                           [t](const EventSpec& e) { return e.active_at(t); });
    }

private:
    std::map<SensorType, FieldSpec> fields_;
    std::vector<EventSpec> events_;
    NoiseSource noise_;
};

}  // namespace wsnsim
