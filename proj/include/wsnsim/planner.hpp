#pragma once

// Plan stage: choose the cheapest (active-node count, report interval) that
// meets the quality the current event probability calls for.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/wsn.hpp"

namespace wsnsim {

enum class AppType { EventDriven, Monitoring, Hybrid };

struct PlannerConfig {
    std::vector<double> interval_set{10.0, 30.0, 60.0, 120.0, 300.0};  // ascending, seconds
    double q_min = 0.2;
    double q_max = 0.9;
    AppType app_type = AppType::Monitoring;
    double p_alert = 0.5;
    double alert_max_interval = 10.0;
    std::optional<std::size_t> alert_min_nodes;  // defaults to ceil(network size / 2)
};

inline double quality_required(double p, const PlannerConfig& cfg) {
    return cfg.q_min + p * (cfg.q_max - cfg.q_min);
}

inline bool alert_constrained(double p, const PlannerConfig& cfg) {
    return cfg.app_type != AppType::Monitoring && p >= cfg.p_alert;
}

inline std::size_t alert_min_nodes(const PlannerConfig& cfg, std::size_t network_size) {
    return cfg.alert_min_nodes.value_or((network_size + 1) / 2);
}

// Everything about the network the planner needs. `candidates` are the live
// nodes in selection order, so the first n of them are the nodes a config
// with n_active = n would run.
struct PlanningContext {
    std::vector<SensorDisc> candidates;
    std::size_t network_size = 0;  // configured nodes, live or not
    Rect world;
    EnergyModel energy;
    LinkModel link;
    QualityModel quality;
};

struct PlanResult {
    NetworkConfig config;
    double quality = 0.0;
    double energy_rate = 0.0;
    double q_required = 0.0;
    bool degraded = false;
};

// Coverage of the first n candidates for n = 0..size.
inline std::vector<double> prefix_coverage(const PlanningContext& ctx) {
    std::vector<double> c(ctx.candidates.size() + 1, 0.0);
    for (std::size_t n = 1; n <= ctx.candidates.size(); ++n) {
        c[n] = coverage(std::span(ctx.candidates).first(n), ctx.world, ctx.quality.grid_resolution);
    }
    return c;
}

// Exhaustive search over n in 1..live and every allowed interval. Feasible
// configs meet Q_req (and, when alert-constrained, the alert interval and node
// floor). Minimum energy wins; ties prefer higher quality, then fewer nodes,
// then a longer interval. With nothing feasible the max-effort config is
// returned flagged degraded.
inline PlanResult plan(double p, const PlanningContext& ctx, const PlannerConfig& cfg) {
    if (ctx.candidates.empty()) throw std::invalid_argument("plan: no live nodes");
    if (cfg.interval_set.empty()) throw std::invalid_argument("plan: empty interval set");

    const std::size_t live = ctx.candidates.size();
    const double q_req = quality_required(p, cfg);
    const bool constrained = alert_constrained(p, cfg);
    const std::size_t min_nodes = constrained ? alert_min_nodes(cfg, ctx.network_size) : 1;
    const auto cov = prefix_coverage(ctx);

    std::optional<PlanResult> best;
    for (std::size_t n = 1; n <= live; ++n) {
        if (n < min_nodes) continue;
        for (double dt : cfg.interval_set) {
            if (constrained && dt > cfg.alert_max_interval) continue;
            const double q = quality_from_coverage(cov[n], dt, ctx.link.pdr, ctx.quality);
            if (q < q_req) continue;
            const NetworkConfig c{n, dt, constrained};
            const double e = energy_rate(c, live, ctx.energy);
            const bool better =
                !best || e < best->energy_rate ||
                (e == best->energy_rate &&
                 (q > best->quality ||
                  (q == best->quality &&
                   (n < best->config.n_active || (n == best->config.n_active && dt > best->config.report_interval)))));
            if (better) best = PlanResult{c, q, e, q_req, false};
        }
    }
    if (best) return *best;

    const double dt_min = cfg.interval_set.front();
    const NetworkConfig fallback{live, dt_min, p >= cfg.p_alert};
    return PlanResult{fallback, quality_from_coverage(cov[live], dt_min, ctx.link.pdr, ctx.quality),
                      energy_rate(fallback, live, ctx.energy), q_req, true};
}

}  // namespace wsnsim
