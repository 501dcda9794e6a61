#pragma once

// Scenario description, JSON loading (comments allowed) and validation.
// The schema is documented in docs/scenario.md.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wsnsim/domain.hpp"
#include "wsnsim/environment.hpp"
#include "wsnsim/gateway.hpp"
#include "wsnsim/overlay.hpp"
#include "wsnsim/wsn.hpp"

namespace wsnsim {

struct NetworkScenario {
    NetworkSpec network;
    GatewaySpec gateway;
};

struct Scenario {
    std::string name = "scenario";
    Rect world{0.0, 0.0, 100.0, 100.0};
    double tick = 1.0;
    double duration = 0.0;
    std::uint64_t seed = 0;
    double warm_up = 0.0;
    bool collaboration = true;
    std::vector<FieldSpec> fields;
    std::vector<EventSpec> events;
    std::vector<NetworkScenario> networks;
    CouplingMatrix coupling;
    RelevanceParams relevance;
    OverlayLink overlay;
    std::optional<std::map<std::string, std::vector<std::string>>> adjacency;  // full mesh when absent
};

// Defaults for the built-in sensed types.
inline std::optional<TypeBounds> default_bounds(const SensorType& t) {
    if (t == SensorType::temperature()) return TypeBounds{-40.0, 120.0, 10.0};
    if (t == SensorType::humidity()) return TypeBounds{0.0, 100.0, 5.0};
    if (t == SensorType::co2()) return TypeBounds{0.0, 10000.0, 500.0};
    if (t == SensorType::smoke()) return TypeBounds{0.0, 100.0, 20.0};
    return std::nullopt;
}

inline std::optional<ThresholdRamp> default_thresholds(const SensorType& t) {
    if (t == SensorType::temperature()) return ThresholdRamp{40.0, 60.0};
    if (t == SensorType::co2()) return ThresholdRamp{800.0, 1400.0};
    if (t == SensorType::smoke()) return ThresholdRamp{5.0, 20.0};
    return std::nullopt;
}

namespace detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
}

// JSON object view that reports errors with a dotted path and rejects keys it
// was never asked about.
class Obj {
public:
    Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    const std::string& path() const noexcept { return path_; }

    bool has(const std::string& key) {
        used_.insert(key);
        return j_.contains(key);
    }

    const json& raw(const std::string& key) {
        if (!has(key)) fail(at(key), "required field missing");
        return j_.at(key);
    }

    double number(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_number()) fail(at(key), "expected a number");
        return v.get<double>();
    }
    double number(const std::string& key, double dflt) { return has(key) ? number(key) : dflt; }

    std::uint64_t uint(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            fail(at(key), "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }
    std::uint64_t uint(const std::string& key, std::uint64_t dflt) { return has(key) ? uint(key) : dflt; }

    bool boolean(const std::string& key, bool dflt) {
        if (!has(key)) return dflt;
        const auto& v = j_.at(key);
        if (!v.is_boolean()) fail(at(key), "expected true or false");
        return v.get<bool>();
    }

    std::string string(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_string()) fail(at(key), "expected a string");
        return v.get<std::string>();
    }
    std::string string(const std::string& key, const std::string& dflt) { return has(key) ? string(key) : dflt; }

    Obj object(const std::string& key) { return Obj(raw(key), at(key)); }

    const json& array(const std::string& key) {
        const auto& v = raw(key);
        if (!v.is_array()) fail(at(key), "expected an array");
        return v;
    }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!used_.contains(k)) fail(at(k), "unknown field");
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> used_;
};

inline Position read_point(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(where, "expected [x, y]");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

inline FaultKind parse_fault_kind(const std::string& s, const std::string& where) {
    if (s == "bias") return FaultKind::Bias;
    if (s == "stuck") return FaultKind::Stuck;
    if (s == "spike") return FaultKind::Spike;
    fail(where, "unknown fault kind '" + s + "' (bias, stuck, spike)");
}

inline AppType parse_app_type(const std::string& s, const std::string& where) {
    if (s == "event_driven") return AppType::EventDriven;
    if (s == "monitoring") return AppType::Monitoring;
    if (s == "hybrid") return AppType::Hybrid;
    fail(where, "unknown app_type '" + s + "' (event_driven, monitoring, hybrid)");
}

inline InferenceMode parse_mode(const std::string& s, const std::string& where) {
    if (s == "threshold") return InferenceMode::ThresholdOnly;
    if (s == "pattern") return InferenceMode::PatternOnly;
    if (s == "max") return InferenceMode::Max;
    fail(where, "unknown inference mode '" + s + "' (threshold, pattern, max)");
}

inline NodeSpec read_node(Obj o, const SensorType& type, double radius_dflt, double battery_dflt) {
    NodeSpec n;
    const auto id = o.uint("id");
    if (id > 0xffffffffULL) fail(o.at("id"), "node id out of range");
    n.node_id = static_cast<NodeId>(id);
    n.position = {o.number("x"), o.number("y")};
    n.sensor_type = type;
    n.sensing_radius = o.number("sensing_radius", radius_dflt);
    n.battery = o.number("battery", battery_dflt);
    if (o.has("fault")) {
        Obj f = o.object("fault");
        FaultSpec fs;
        fs.kind = parse_fault_kind(f.string("kind"), f.at("kind"));
        fs.magnitude = f.number("magnitude", 0.0);
        fs.onset = f.number("onset", 0.0);
        fs.rate = f.number("rate", fs.kind == FaultKind::Spike ? 1.0 : 0.0);
        f.finish();
        n.fault = fs;
    }
    o.finish();
    return n;
}

inline GatewaySpec read_gateway(Obj g, const SensorType& type) {
    GatewaySpec s;
    s.decision_period = g.number("decision_period", 30.0);
    s.mode = parse_mode(g.string("inference", "max"), g.at("inference"));
    s.knn_k = g.uint("knn_k", 5);
    s.history_capacity = g.uint("history_capacity", 2000);
    s.baseline_window = g.uint("baseline_window", 20);
    s.hysteresis = g.number("hysteresis", 0.05);
    s.static_plan = g.boolean("static_plan", false);

    auto bounds = default_bounds(type);
    if (g.has("filter")) {
        Obj f = g.object("filter");
        TypeBounds b = bounds.value_or(TypeBounds{});
        const bool explicit_bounds = f.has("value_min") || f.has("value_max") || f.has("max_rate");
        if (!bounds && explicit_bounds) {
            b = {f.number("value_min"), f.number("value_max"), f.number("max_rate")};
        } else if (explicit_bounds) {
            b = {f.number("value_min", b.value_min), f.number("value_max", b.value_max),
                 f.number("max_rate", b.max_rate)};
        }
        if (bounds || explicit_bounds) bounds = b;
        s.filter.z_max = f.number("z_max", 4.0);
        s.filter.window = f.uint("window", 20);
        f.finish();
    }
    if (!bounds) fail(g.at("filter"), "value bounds required for sensor type " + type.name());
    s.filter.bounds[type] = *bounds;

    auto ramp = default_thresholds(type);
    if (g.has("thresholds")) {
        Obj t = g.object("thresholds");
        ramp = ThresholdRamp{t.number("theta_low"), t.number("theta_high")};
        t.finish();
    }
    if (!ramp) fail(g.at("thresholds"), "thresholds required for sensor type " + type.name());
    s.thresholds[type] = *ramp;

    if (g.has("trust")) {
        Obj t = g.object("trust");
        s.trust.alpha = t.number("alpha", 0.1);
        s.trust.delta_max = t.number("delta_max", 4.0);
        s.trust.tau0 = t.number("tau0", 0.5);
        t.finish();
    }

    if (g.has("planner")) {
        Obj p = g.object("planner");
        if (p.has("interval_set")) {
            const auto& arr = p.array("interval_set");
            s.planner.interval_set.clear();
            for (const auto& v : arr) {
                if (!v.is_number()) fail(p.at("interval_set"), "expected numbers");
                s.planner.interval_set.push_back(v.get<double>());
            }
        }
        s.planner.q_min = p.number("q_min", 0.2);
        s.planner.q_max = p.number("q_max", 0.9);
        s.planner.app_type = parse_app_type(p.string("app_type", "monitoring"), p.at("app_type"));
        s.planner.p_alert = p.number("p_alert", 0.5);
        s.planner.alert_max_interval = p.number("alert_max_interval", 10.0);
        if (p.has("alert_min_nodes")) s.planner.alert_min_nodes = p.uint("alert_min_nodes");
        p.finish();
    }

    const double min_interval = s.planner.interval_set.empty() ? 1.0 : s.planner.interval_set.front();
    s.quality.ref_interval = min_interval;
    if (g.has("quality")) {
        Obj q = g.object("quality");
        s.quality.ref_interval = q.number("ref_interval", min_interval);
        s.quality.grid_resolution = q.number("grid_resolution", 10.0);
        s.quality.w_c = q.number("w_c", 1.0);
        s.quality.w_f = q.number("w_f", 1.0);
        s.quality.w_d = q.number("w_d", 1.0);
        q.finish();
    }
    g.finish();
    return s;
}

inline NetworkScenario read_network(Obj o, const Rect& world) {
    NetworkScenario ns;
    auto& net = ns.network;
    net.id = o.string("id");
    if (net.id.empty()) fail(o.at("id"), "must not be empty");
    net.sensor_type = SensorType{o.string("sensor_type")};
    net.sensor_sigma = o.number("sensor_sigma", 0.0);

    Obj e = o.object("energy");
    net.energy = {e.number("p_idle"), e.number("p_sleep"), e.number("e_sample"), e.number("e_tx")};
    e.finish();

    if (o.has("link")) {
        Obj l = o.object("link");
        net.link = {l.number("pdr", 1.0), l.number("latency", 0.0)};
        l.finish();
    }

    double radius_dflt = 0.0, battery_dflt = 0.0;
    if (o.has("node_defaults")) {
        Obj d = o.object("node_defaults");
        radius_dflt = d.number("sensing_radius", 0.0);
        battery_dflt = d.number("battery", 0.0);
        d.finish();
    }

    const bool has_nodes = o.has("nodes");
    const bool has_grid = o.has("grid");
    if (has_nodes == has_grid) fail(o.at("nodes"), "give exactly one of 'nodes' or 'grid'");
    if (has_nodes) {
        const auto& arr = o.array("nodes");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            net.nodes.push_back(read_node(Obj(arr[i], o.at("nodes") + "[" + std::to_string(i) + "]"),
                                          net.sensor_type, radius_dflt, battery_dflt));
        }
    } else {
        // rows x cols nodes at the cell centers of a uniform partition of the world, ids row-major from 1.
        Obj gr = o.object("grid");
        const auto rows = gr.uint("rows");
        const auto cols = gr.uint("cols");
        const auto first_id = gr.uint("first_id", 1);
        gr.finish();
        if (rows == 0 || cols == 0) fail(gr.path(), "rows and cols must be positive");
        for (std::uint64_t r = 0; r < rows; ++r) {
            for (std::uint64_t c = 0; c < cols; ++c) {
                NodeSpec n;
                n.node_id = static_cast<NodeId>(first_id + r * cols + c);
                n.position = {world.min_x + world.width() * (static_cast<double>(c) + 0.5) / static_cast<double>(cols),
                              world.min_y + world.height() * (static_cast<double>(r) + 0.5) / static_cast<double>(rows)};
                n.sensor_type = net.sensor_type;
                n.sensing_radius = radius_dflt;
                n.battery = battery_dflt;
                net.nodes.push_back(n);
            }
        }
    }

    ns.gateway = read_gateway(o.object("gateway"), net.sensor_type);
    o.finish();
    return ns;
}

inline bool is_multiple(double value, double step) {
    const double r = value / step;
    return std::abs(r - std::round(r)) < 1e-9;
}

}  // namespace detail

// Throws ConfigError naming the first offending field.
inline void validate(const Scenario& s) {
    using detail::fail;
    if (!(s.world.width() > 0.0 && s.world.height() > 0.0)) fail("world", "width and height must be positive");
    if (!(s.tick > 0.0)) fail("tick", "must be positive");
    if (!(s.duration >= 0.0)) fail("duration", "must be non-negative");
    if (!(s.warm_up >= 0.0)) fail("warm_up", "must be non-negative");
    if (s.duration > 0.0 && !(s.warm_up < s.duration)) fail("warm_up", "must be shorter than duration");
    if (s.duration == 0.0 && s.warm_up != 0.0) fail("warm_up", "must be 0 when duration is 0");
    if (!(s.relevance.d0 > 0.0)) fail("relevance.d0", "must be positive");

    std::set<SensorType> field_types;
    for (std::size_t i = 0; i < s.fields.size(); ++i) {
        const auto& f = s.fields[i];
        const std::string at = "fields[" + std::to_string(i) + "]";
        if (!field_types.insert(f.sensor_type).second) fail(at, "duplicate field for " + f.sensor_type.name());
        if (!(f.noise_sigma >= 0.0)) fail(at + ".noise_sigma", "must be non-negative");
        if (!(f.noise_corr_len > 0.0)) fail(at + ".noise_corr_len", "must be positive");
    }

    std::set<std::string> event_ids;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const auto& e = s.events[i];
        const std::string at = "events[" + std::to_string(i) + "]";
        if (!event_ids.insert(e.id).second) fail(at + ".id", "duplicate event id " + e.id);
        if (!(e.duration > 0.0)) fail(at + ".duration", "must be positive");
        if (!(e.radius > 0.0)) fail(at + ".radius", "must be positive");
        if (!(e.start >= 0.0)) fail(at + ".start", "must be non-negative");
        for (const auto& [type, delta] : e.intensity) {
            if (!field_types.contains(type)) fail(at + ".intensity", "unknown sensor type " + type.name());
        }
    }

    if (s.networks.empty()) fail("networks", "at least one network required");
    std::set<std::string> ids;
    std::set<SensorType> used_types;
    for (std::size_t i = 0; i < s.networks.size(); ++i) {
        const auto& net = s.networks[i].network;
        const auto& gw = s.networks[i].gateway;
        const std::string at = "networks[" + std::to_string(i) + "]";
        if (!ids.insert(net.id).second) fail(at + ".id", "duplicate network id " + net.id);
        if (!field_types.contains(net.sensor_type)) fail(at + ".sensor_type", "unknown sensor type " + net.sensor_type.name());
        used_types.insert(net.sensor_type);
        if (!(net.sensor_sigma >= 0.0)) fail(at + ".sensor_sigma", "must be non-negative");

        const auto& em = net.energy;
        if (!(em.p_idle >= 0.0 && em.p_sleep >= 0.0 && em.e_sample >= 0.0 && em.e_tx >= 0.0)) {
            fail(at + ".energy", "all terms must be non-negative");
        }
        if (!(em.p_idle >= em.p_sleep)) fail(at + ".energy", "p_idle must be at least p_sleep");
        if (!(net.link.pdr >= 0.0 && net.link.pdr <= 1.0)) fail(at + ".link.pdr", "must lie in [0,1]");
        if (!(net.link.latency >= 0.0)) fail(at + ".link.latency", "must be non-negative");

        if (net.nodes.empty()) fail(at + ".nodes", "at least one node required");
        std::set<NodeId> node_ids;
        for (std::size_t k = 0; k < net.nodes.size(); ++k) {
            const auto& n = net.nodes[k];
            const std::string nat = at + ".nodes[" + std::to_string(k) + "]";
            if (!node_ids.insert(n.node_id).second) fail(nat + ".id", "duplicate node id " + std::to_string(n.node_id));
            if (!std::isfinite(n.position.x) || !std::isfinite(n.position.y) || !s.world.contains(n.position)) {
                fail(nat, "position outside the world rectangle");
            }
            if (!(n.battery > 0.0)) fail(nat + ".battery", "must be positive");
            if (!(n.sensing_radius > 0.0)) fail(nat + ".sensing_radius", "must be positive");
            if (n.fault && !(n.fault->rate >= 0.0 && n.fault->rate <= 1.0)) fail(nat + ".fault.rate", "must lie in [0,1]");
        }

        const std::string gat = at + ".gateway";
        for (const auto& [type, b] : gw.filter.bounds) {
            if (!(b.value_min < b.value_max)) fail(gat + ".filter", "value_min must be below value_max");
            if (!(b.max_rate > 0.0)) fail(gat + ".filter.max_rate", "must be positive");
        }
        if (!(gw.filter.z_max > 0.0)) fail(gat + ".filter.z_max", "must be positive");
        if (gw.filter.window < 1) fail(gat + ".filter.window", "must be at least 1");
        for (const auto& [type, th] : gw.thresholds) {
            if (!(th.theta_low < th.theta_high)) fail(gat + ".thresholds", "theta_low must be below theta_high");
        }
        if (!(gw.trust.alpha > 0.0 && gw.trust.alpha <= 1.0)) fail(gat + ".trust.alpha", "must lie in (0,1]");
        if (!(gw.trust.delta_max > 0.0)) fail(gat + ".trust.delta_max", "must be positive");
        if (!(gw.trust.tau0 >= 0.0 && gw.trust.tau0 <= 1.0)) fail(gat + ".trust.tau0", "must lie in [0,1]");

        const auto& pc = gw.planner;
        if (pc.interval_set.empty()) fail(gat + ".planner.interval_set", "must not be empty");
        for (std::size_t k = 0; k < pc.interval_set.size(); ++k) {
            if (!(pc.interval_set[k] > 0.0)) fail(gat + ".planner.interval_set", "intervals must be positive");
            if (k > 0 && !(pc.interval_set[k] > pc.interval_set[k - 1])) fail(gat + ".planner.interval_set", "must be strictly ascending");
            if (!detail::is_multiple(pc.interval_set[k], s.tick)) fail(gat + ".planner.interval_set", "intervals must be multiples of tick");
        }
        if (!(pc.q_min >= 0.0 && pc.q_max <= 1.0 && pc.q_min < pc.q_max)) fail(gat + ".planner", "need 0 <= q_min < q_max <= 1");
        if (!(pc.p_alert >= 0.0 && pc.p_alert <= 1.0)) fail(gat + ".planner.p_alert", "must lie in [0,1]");
        if (!(pc.alert_max_interval > 0.0)) fail(gat + ".planner.alert_max_interval", "must be positive");
        if (pc.alert_min_nodes && (*pc.alert_min_nodes < 1 || *pc.alert_min_nodes > net.nodes.size())) {
            fail(gat + ".planner.alert_min_nodes", "must lie in [1, node count]");
        }
        if (!(gw.decision_period > 0.0) || !detail::is_multiple(gw.decision_period, s.tick)) {
            fail(gat + ".decision_period", "must be a positive multiple of tick");
        }
        if (!(gw.quality.ref_interval > 0.0)) fail(gat + ".quality.ref_interval", "must be positive");
        if (!(gw.quality.grid_resolution > 0.0)) fail(gat + ".quality.grid_resolution", "must be positive");
        if (!(gw.quality.w_c >= 0.0 && gw.quality.w_f >= 0.0 && gw.quality.w_d >= 0.0)) fail(gat + ".quality", "weights must be non-negative");
        if (gw.knn_k < 1) fail(gat + ".knn_k", "must be at least 1");
        if (gw.history_capacity < 1) fail(gat + ".history_capacity", "must be at least 1");
        if (gw.baseline_window < 1) fail(gat + ".baseline_window", "must be at least 1");
        if (!(gw.hysteresis >= 0.0)) fail(gat + ".hysteresis", "must be non-negative");
    }

    for (auto a = used_types.begin(); a != used_types.end(); ++a) {
        for (auto b = std::next(a); b != used_types.end(); ++b) {
            if (!s.coupling.contains(*a, *b)) {
                fail("coupling", "missing entry for pair (" + a->name() + ", " + b->name() + ")");
            }
        }
    }

    if (!(s.overlay.latency >= 0.0)) fail("overlay.latency", "must be non-negative");
    if (!(s.overlay.loss >= 0.0 && s.overlay.loss <= 1.0)) fail("overlay.loss", "must lie in [0,1]");
    if (s.adjacency) {
        for (const auto& [from, tos] : *s.adjacency) {
            if (!ids.contains(from)) fail("overlay.adjacency", "unknown network " + from);
            for (const auto& to : tos) {
                if (!ids.contains(to)) fail("overlay.adjacency." + from, "unknown network " + to);
            }
        }
    }
}

inline Scenario parse_scenario(const nlohmann::json& root) {
    using detail::Obj;
    Obj o(root, "");
    Scenario s;
    s.name = o.string("name", "scenario");

    Obj w = o.object("world");
    s.world.min_x = w.number("min_x", 0.0);
    s.world.min_y = w.number("min_y", 0.0);
    s.world.max_x = s.world.min_x + w.number("width");
    s.world.max_y = s.world.min_y + w.number("height");
    w.finish();

    s.tick = o.number("tick", 1.0);
    s.duration = o.number("duration");
    s.seed = o.uint("seed", 0);
    s.warm_up = o.number("warm_up", 0.0);
    s.collaboration = o.boolean("collaboration", true);

    if (o.has("relevance")) {
        Obj r = o.object("relevance");
        s.relevance.d0 = r.number("d0", 500.0);
        r.finish();
    }

    if (o.has("coupling")) {
        const auto& arr = o.array("coupling");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            Obj c(arr[i], "coupling[" + std::to_string(i) + "]");
            const SensorType a{c.string("a")}, b{c.string("b")};
            const double k = c.number("value");
            c.finish();
            try {
                s.coupling.set(a, b, k);
            } catch (const ConfigError& e) {
                detail::fail(c.path(), e.what());
            }
        }
    }

    const auto& fields = o.array("fields");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        Obj f(fields[i], "fields[" + std::to_string(i) + "]");
        FieldSpec fs;
        fs.sensor_type = SensorType{f.string("sensor_type")};
        fs.baseline = f.number("baseline");
        fs.diurnal_amplitude = f.number("diurnal_amplitude", 0.0);
        fs.noise_sigma = f.number("noise_sigma", 0.0);
        fs.noise_corr_len = f.number("noise_corr_len", 50.0);
        f.finish();
        s.fields.push_back(fs);
    }

    if (o.has("events")) {
        const auto& events = o.array("events");
        for (std::size_t i = 0; i < events.size(); ++i) {
            Obj e(events[i], "events[" + std::to_string(i) + "]");
            EventSpec ev;
            ev.id = e.string("id", "event" + std::to_string(i));
            ev.start = e.number("start");
            ev.duration = e.number("duration");
            ev.center = detail::read_point(e.raw("center"), e.at("center"));
            ev.radius = e.number("radius");
            if (e.has("intensity")) {
                const auto& in = e.raw("intensity");
                if (!in.is_object()) detail::fail(e.at("intensity"), "expected an object");
                for (const auto& [k, v] : in.items()) {
                    if (!v.is_number()) detail::fail(e.at("intensity") + "." + k, "expected a number");
                    ev.intensity[SensorType{k}] = v.get<double>();
                }
            }
            e.finish();
            s.events.push_back(ev);
        }
    }

    if (o.has("overlay")) {
        Obj ov = o.object("overlay");
        s.overlay.latency = ov.number("latency", 0.0);
        s.overlay.loss = ov.number("loss", 0.0);
        if (ov.has("adjacency")) {
            const auto& adj = ov.raw("adjacency");
            if (!adj.is_object()) detail::fail(ov.at("adjacency"), "expected an object");
            std::map<std::string, std::vector<std::string>> m;
            for (const auto& [from, tos] : adj.items()) {
                if (!tos.is_array()) detail::fail(ov.at("adjacency") + "." + from, "expected an array");
                auto& list = m[from];
                for (const auto& to : tos) {
                    if (!to.is_string()) detail::fail(ov.at("adjacency") + "." + from, "expected network ids");
                    list.push_back(to.get<std::string>());
                }
            }
            s.adjacency = std::move(m);
        }
        ov.finish();
    }

    const auto& nets = o.array("networks");
    for (std::size_t i = 0; i < nets.size(); ++i) {
        s.networks.push_back(detail::read_network(Obj(nets[i], "networks[" + std::to_string(i) + "]"), s.world));
    }
    o.finish();

    validate(s);
    return s;
}

inline Scenario parse_scenario_text(const std::string& text, const std::string& source = "<string>") {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(source + ": parse error: " + e.what());
    }
    return parse_scenario(root);
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read scenario file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_text(ss.str(), path.string());
}

}  // namespace wsnsim
