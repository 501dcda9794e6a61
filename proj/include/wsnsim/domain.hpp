#pragma once

// Value types shared across the simulator and the relevance weighting that
// scales how much a peer network's data matters locally.

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace wsnsim {

// Scenario content is inconsistent or incomplete.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Kind of physical quantity a node measures. The four built-in names are
// provided as constants; scenarios may introduce others.
class SensorType {
public:
    SensorType() = default;
    explicit SensorType(std::string name) : name_(std::move(name)) {}

    static SensorType temperature() { return SensorType{"Temperature"}; }
    static SensorType humidity() { return SensorType{"Humidity"}; }
    static SensorType co2() { return SensorType{"CO2"}; }
    static SensorType smoke() { return SensorType{"Smoke"}; }

    const std::string& name() const noexcept { return name_; }

    friend auto operator<=>(const SensorType&, const SensorType&) = default;
    friend bool operator==(const SensorType&, const SensorType&) = default;

private:
    std::string name_;
};

struct Position {
    double x = 0.0;  // meters
    double y = 0.0;  // meters

    friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(Position a, Position b) noexcept {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned world rectangle in meters.
struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const noexcept { return max_x - min_x; }
    double height() const noexcept { return max_y - min_y; }
    double area() const noexcept { return width() * height(); }
    bool contains(Position p) const noexcept {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
};

using NodeId = std::uint32_t;

struct Measurement {
    NodeId node_id = 0;
    SensorType sensor_type;
    double value = 0.0;      // physical unit of sensor_type; may be non-finite on raw input
    double timestamp = 0.0;  // seconds since simulation start
    Position position;
};

// Symmetric coupling coefficients between sensed types. The diagonal is
// always 1; every off-diagonal pair that is queried must be configured.
class CouplingMatrix {
public:
    void set(const SensorType& a, const SensorType& b, double coefficient) {
        if (!(coefficient >= 0.0 && coefficient <= 1.0)) {
            throw ConfigError("coupling(" + a.name() + ", " + b.name() +
                              ") must lie in [0,1]");
        }
        if (a == b) {
            if (coefficient != 1.0) {
                throw ConfigError("coupling(" + a.name() + ", " + a.name() + ") must be 1");
            }
            return;
        }
        entries_[key(a, b)] = coefficient;
    }

    bool contains(const SensorType& a, const SensorType& b) const {
        return a == b || entries_.contains(key(a, b));
    }

    double at(const SensorType& a, const SensorType& b) const {
        if (a == b) return 1.0;
        auto it = entries_.find(key(a, b));
        if (it == entries_.end()) {
            throw ConfigError("coupling matrix has no entry for pair (" + a.name() + ", " +
                              b.name() + ")");
        }
        return it->second;
    }

    std::size_t size() const noexcept { return entries_.size(); }

private:
    using Key = std::pair<SensorType, SensorType>;
    static Key key(const SensorType& a, const SensorType& b) {
        return a < b ? Key{a, b} : Key{b, a};
    }
    std::map<Key, double> entries_;
};

struct RelevanceParams {
    double d0 = 500.0;  // meters
};

inline double semantic_coupling(const SensorType& a, const SensorType& b,
                                const CouplingMatrix& m) {
    return m.at(a, b);
}

// rho = coupling * exp(-distance / d0)
inline double relevance_weight(double distance_m, double coupling, const RelevanceParams& p) {
    if (!(distance_m >= 0.0)) throw std::invalid_argument("relevance_weight: negative distance");
    if (!(coupling >= 0.0 && coupling <= 1.0)) {
        throw std::invalid_argument("relevance_weight: coupling outside [0,1]");
    }
    if (!(p.d0 > 0.0)) throw std::invalid_argument("relevance_weight: d0 must be positive");
    return coupling * std::exp(-distance_m / p.d0);
}

inline Position centroid(std::span<const Position> points) {
    if (points.empty()) throw std::invalid_argument("centroid of empty set");
    double sx = 0.0, sy = 0.0;
    for (const auto& p : points) {
        sx += p.x;
        sy += p.y;
    }
    const auto n = static_cast<double>(points.size());
    return {sx / n, sy / n};
}

inline double centroid_distance(std::span<const Position> a, std::span<const Position> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("centroid_distance: empty set");
    return distance(centroid(a), centroid(b));
}

}  // namespace wsnsim
