#pragma once

// The fixed-increment tick loop binding environment, networks, overlay and
// gateways, plus the collaboration on/off comparison.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wsnsim/environment.hpp"
#include "wsnsim/gateway.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/overlay.hpp"
#include "wsnsim/scenario.hpp"
#include "wsnsim/wsn.hpp"

namespace wsnsim {

struct GatewayFinal {
    std::string id;
    NetworkConfig config;
    std::vector<TrustRecord> trust;
};

struct RunResult {
    RunMetrics metrics;
    std::vector<GatewayFinal> gateways;
};

inline NetworkConfig max_effort_config(std::size_t live, const PlannerConfig& pc) {
    return NetworkConfig{live, pc.interval_set.front(), false};
}

inline PlanningContext planning_context(const Network& net, const GatewaySpec& gw, const Rect& world) {
    PlanningContext ctx;
    for (const auto& n : net.candidates()) ctx.candidates.push_back({n.position, n.sensing_radius});
    ctx.network_size = net.total_nodes();
    ctx.world = world;
    ctx.energy = net.spec().energy;
    ctx.link = net.spec().link;
    ctx.quality = gw.quality;
    return ctx;
}

inline double current_quality(const Network& net, const GatewaySpec& gw, const Rect& world) {
    const auto ctx = planning_context(net, gw, world);
    std::vector<SensorDisc> active;
    for (const auto& n : net.nodes()) {
        if (n.alive && n.active) active.push_back({n.spec.position, n.spec.sensing_radius});
    }
    const double c = coverage(active, world, gw.quality.grid_resolution);
    return quality_from_coverage(c, net.config().report_interval, net.spec().link.pdr, gw.quality);
}

// Copy of `s` whose gateways keep the max-effort configuration for the whole run.
inline Scenario with_static_max(Scenario s) {
    for (auto& n : s.networks) n.gateway.static_plan = true;
    return s;
}

inline RunResult run(const Scenario& scenario, std::optional<std::uint64_t> seed_override = std::nullopt) {
    const std::uint64_t seed = seed_override.value_or(scenario.seed);
    const double tick = scenario.tick;
    const auto ticks = static_cast<std::int64_t>(std::floor(scenario.duration / tick + 1e-9));

    const Environment env(scenario.fields, scenario.events, NoiseSource{derive_seed(seed, "environment")});

    std::vector<Network> networks;
    std::vector<Gateway> gateways;
    std::vector<std::string> ids;
    for (const auto& ns : scenario.networks) {
        networks.emplace_back(ns.network, make_stream(seed, "network:" + ns.network.id), tick);
        std::vector<Position> positions;
        for (const auto& n : ns.network.nodes) positions.push_back(n.position);
        gateways.emplace_back(ns.network.id, ns.gateway,
                              PeerContext{ns.network.sensor_type, positions, scenario.coupling,
                                          scenario.relevance, scenario.collaboration});
        ids.push_back(ns.network.id);
    }

    Overlay overlay(ids, seed);
    if (scenario.adjacency) {
        for (const auto& [from, tos] : *scenario.adjacency) {
            for (const auto& to : tos) overlay.connect(from, to, scenario.overlay);
        }
    } else {
        overlay.connect_full_mesh(scenario.overlay);
    }

    const std::size_t n_net = networks.size();
    RunResult result;
    auto& m = result.metrics;
    m.ground_truth = ground_truth(env.events(), scenario.duration);
    m.networks.resize(n_net);

    std::vector<double> q_now(n_net, 0.0), p_now(n_net, 0.0);
    std::vector<std::vector<SinkReport>> pending(n_net);
    std::vector<std::vector<SummaryReport>> received(n_net);
    std::vector<std::vector<Alert>> own_alerts(n_net);
    std::vector<double> q_sum(n_net, 0.0);

    for (std::size_t i = 0; i < n_net; ++i) {
        const auto& gw_spec = scenario.networks[i].gateway;
        const auto cfg = max_effort_config(networks[i].live_count(), gw_spec.planner);
        networks[i].apply(cfg);
        gateways[i].set_config(cfg);
        q_now[i] = current_quality(networks[i], gw_spec, scenario.world);
        m.networks[i].network_id = ids[i];
    }

    m.timeseries.reserve(static_cast<std::size_t>(std::max<std::int64_t>(ticks, 0)) * n_net);
    for (std::int64_t k = 0; k < ticks; ++k) {
        const double t = static_cast<double>(k) * tick;

        std::vector<double> energy(n_net, 0.0);
        for (std::size_t i = 0; i < n_net; ++i) {
            auto step = networks[i].step(env, k);
            energy[i] = step.energy_j;
            m.networks[i].reports_sent += step.attempts;
            m.networks[i].reports_lost += step.lost;
            m.networks[i].deaths += step.deaths;
            for (auto& r : step.arrived) pending[i].push_back(std::move(r));
        }

        for (std::size_t i = 0; i < n_net; ++i) {
            for (auto& msg : overlay.drain(ids[i], t)) received[i].push_back(std::move(msg));
        }

        for (std::size_t i = 0; i < n_net; ++i) {
            const auto& gw_spec = scenario.networks[i].gateway;
            const auto period = static_cast<std::int64_t>(std::llround(gw_spec.decision_period / tick));
            if (k == 0 || k % period != 0) continue;

            std::vector<Measurement> batch;
            std::set<std::pair<NodeId, double>> injected;
            batch.reserve(pending[i].size());
            for (const auto& r : pending[i]) {
                batch.push_back(r.measurement);
                if (r.fault_injected) injected.insert({r.measurement.node_id, r.measurement.timestamp});
            }
            pending[i].clear();

            const bool frozen = t < scenario.warm_up;
            std::optional<PlanningContext> ctx;
            if (!frozen) ctx = planning_context(networks[i], gw_spec, scenario.world);

            TickInput in;
            in.t = t;
            in.internal = batch;
            in.peers = received[i];
            in.planning = ctx ? &*ctx : nullptr;
            if (frozen) in.label = env.any_event_active(t);
            auto out = gateways[i].mape_tick(in);
            received[i].clear();

            auto& fc = m.networks[i].filter;
            fc.accepted += out.filter.accepted.size();
            for (const auto& a : out.filter.accepted) {
                if (!injected.contains({a.node_id, a.timestamp})) ++fc.clean;
            }
            for (const auto& rj : out.filter.rejected) {
                const bool syn = classify(rj.reason) == RejectClass::Syntactic;
                (syn ? fc.rejected_syntactic : fc.rejected_semantic) += 1;
                if (injected.contains({rj.measurement.node_id, rj.measurement.timestamp})) {
                    if (syn) ++fc.injected_rejected_syntactic;
                } else {
                    ++fc.clean;
                    ++fc.clean_rejected;
                }
            }
            fc.injected += injected.size();

            if (out.change) {
                try {
                    networks[i].apply(out.change->config);
                } catch (const InsufficientLiveNodes&) {
                    const auto retry = planning_context(networks[i], gw_spec, scenario.world);
                    const auto replanned = plan(out.p, retry, gw_spec.planner);
                    networks[i].apply(replanned.config);
                    gateways[i].set_config(replanned.config);
                }
                ++m.networks[i].config_changes;
                if (out.change->degraded) ++m.networks[i].degraded_plans;
                q_now[i] = current_quality(networks[i], gw_spec, scenario.world);
            }
            if (out.alert) {
                m.alerts.push_back(*out.alert);
                own_alerts[i].push_back(*out.alert);
            }
            if (out.summary && scenario.collaboration) overlay.broadcast(*out.summary, t);
            p_now[i] = out.p;
        }

        for (std::size_t i = 0; i < n_net; ++i) {
            const auto& pc = scenario.networks[i].gateway.planner;
            TimeseriesRow row;
            row.tick = k;
            row.network_id = ids[i];
            row.power_w = energy[i] / tick;
            row.energy_j = networks[i].consumed();
            row.q = q_now[i];
            row.p = p_now[i];
            row.n_active = networks[i].active_count();
            row.report_interval = networks[i].config().report_interval;
            row.alert = p_now[i] >= pc.p_alert;
            q_sum[i] += q_now[i];
            m.timeseries.push_back(std::move(row));
        }
    }

    m.detection = detection_latency(m.ground_truth, m.alerts);
    m.summaries_sent = overlay.sent();
    m.summaries_delivered = overlay.delivered();
    m.summaries_dropped = overlay.dropped();
    for (std::size_t i = 0; i < n_net; ++i) {
        auto& ns = m.networks[i];
        ns.total_energy_j = networks[i].consumed();
        ns.mean_q = ticks > 0 ? q_sum[i] / static_cast<double>(ticks) : 0.0;
        ns.detection = detection_latency(m.ground_truth, own_alerts[i]);

        GatewayFinal gf{ids[i], gateways[i].config(), {}};
        for (const auto& [peer, rec] : gateways[i].trust()) gf.trust.push_back(rec);
        result.gateways.push_back(std::move(gf));
    }
    return result;
}

struct CompareRow {
    std::string seed;  // decimal seed, or "mean"
    std::string network_id;
    double energy_on = 0.0;
    double energy_off = 0.0;
    double energy_saving_pct = 0.0;
    std::optional<double> latency_on;
    std::optional<double> latency_off;
    double misses_on = 0.0;
    double misses_off = 0.0;
    double false_alerts_on = 0.0;
    double false_alerts_off = 0.0;
};

inline double saving_pct(double on, double off) { return off > 0.0 ? 100.0 * (off - on) / off : 0.0; }

// Runs every seed with collaboration on and off; appends one mean row per network.
inline std::vector<CompareRow> compare(const Scenario& scenario, std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw std::invalid_argument("compare: at least one seed required");
    Scenario on = scenario, off = scenario;
    on.collaboration = true;
    off.collaboration = false;

    std::vector<CompareRow> rows;
    for (auto seed : seeds) {
        const auto r_on = run(on, seed);
        const auto r_off = run(off, seed);
        for (std::size_t i = 0; i < scenario.networks.size(); ++i) {
            const auto& a = r_on.metrics.networks[i];
            const auto& b = r_off.metrics.networks[i];
            CompareRow row;
            row.seed = std::to_string(seed);
            row.network_id = a.network_id;
            row.energy_on = a.total_energy_j;
            row.energy_off = b.total_energy_j;
            row.energy_saving_pct = saving_pct(a.total_energy_j, b.total_energy_j);
            row.latency_on = mean_latency(a.detection);
            row.latency_off = mean_latency(b.detection);
            row.misses_on = static_cast<double>(a.detection.misses());
            row.misses_off = static_cast<double>(b.detection.misses());
            row.false_alerts_on = static_cast<double>(a.detection.false_alerts);
            row.false_alerts_off = static_cast<double>(b.detection.false_alerts);
            rows.push_back(std::move(row));
        }
    }

    const auto n_net = scenario.networks.size();
    const std::size_t data_rows = rows.size();
    for (std::size_t i = 0; i < n_net; ++i) {
        CompareRow mean;
        mean.seed = "mean";
        mean.network_id = scenario.networks[i].network.id;
        double lat_on = 0.0, lat_off = 0.0;
        std::size_t n_on = 0, n_off = 0;
        const auto n_seeds = static_cast<double>(seeds.size());
        for (std::size_t r = i; r < data_rows; r += n_net) {
            const auto& row = rows[r];
            mean.energy_on += row.energy_on / n_seeds;
            mean.energy_off += row.energy_off / n_seeds;
            mean.misses_on += row.misses_on / n_seeds;
            mean.misses_off += row.misses_off / n_seeds;
            mean.false_alerts_on += row.false_alerts_on / n_seeds;
            mean.false_alerts_off += row.false_alerts_off / n_seeds;
            if (row.latency_on) { lat_on += *row.latency_on; ++n_on; }
            if (row.latency_off) { lat_off += *row.latency_off; ++n_off; }
        }
        mean.energy_saving_pct = saving_pct(mean.energy_on, mean.energy_off);
        if (n_on) mean.latency_on = lat_on / static_cast<double>(n_on);
        if (n_off) mean.latency_off = lat_off / static_cast<double>(n_off);
        rows.push_back(std::move(mean));
    }
    return rows;
}

inline std::string compare_csv(std::span<const CompareRow> rows) {
    const auto opt = [](const std::optional<double>& v) { return v ? fmt6(*v) : std::string{}; };
    std::ostringstream os;
    os << "seed,network_id,energy_on,energy_off,energy_saving_pct,latency_on,latency_off,misses_on,"
          "misses_off,false_alerts_on,false_alerts_off\n";
    for (const auto& r : rows) {
        os << r.seed << ',' << r.network_id << ',' << fmt6(r.energy_on) << ',' << fmt6(r.energy_off) << ','
           << fmt6(r.energy_saving_pct) << ',' << opt(r.latency_on) << ',' << opt(r.latency_off) << ','
           << fmt6(r.misses_on) << ',' << fmt6(r.misses_off) << ',' << fmt6(r.false_alerts_on) << ','
           << fmt6(r.false_alerts_off) << '\n';
    }
    return os.str();
}

inline std::filesystem::path emit_compare_csv(std::span<const CompareRow> rows, const std::filesystem::path& dir) {
    ensure_directory(dir);
    const auto path = dir / "compare.csv";
    write_text_file(path, compare_csv(rows));
    return path;
}

}  // namespace wsnsim
