#pragma once

// Independent reference implementations used to check the library. They
// share formulas with the code under test but none of its search or
// bookkeeping code.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "wsnsim/wsnsim.hpp"

namespace wsnsim::oracle {

// Counts grid cell centers covered by any disc, cell by cell.
inline double coverage(const std::vector<SensorDisc>& discs, const Rect& world, double res) {
    if (discs.empty()) return 0.0;
    int total = 0, hit = 0;
    for (double y = world.min_y + res / 2; y < world.max_y + res / 2 - 1e-9; y += res) {
        for (double x = world.min_x + res / 2; x < world.max_x + res / 2 - 1e-9; x += res) {
            const double cx = std::min(x, world.max_x), cy = std::min(y, world.max_y);
            ++total;
            for (const auto& d : discs) {
                if (std::hypot(cx - d.position.x, cy - d.position.y) <= d.radius + 1e-12) {
                    ++hit;
                    break;
                }
            }
        }
    }
    return double(hit) / total;
}

struct Option {
    std::size_t n;
    double dt;
    double q;
    double e;
};

// Enumerates every (n, dt), keeps the feasible ones, sorts by the tie-break
// rules and returns the head; with none feasible, the max-effort config.
inline PlanResult plan(double p, const PlanningContext& ctx, const PlannerConfig& cfg) {
    const std::size_t live = ctx.candidates.size();
    const double q_req = cfg.q_min + p * (cfg.q_max - cfg.q_min);
    const bool alert = cfg.app_type != AppType::Monitoring && p >= cfg.p_alert;
    const std::size_t floor_n = cfg.alert_min_nodes ? *cfg.alert_min_nodes : (ctx.network_size + 1) / 2;
    const auto& em = ctx.energy;
    const auto& qm = ctx.quality;

    auto q_of = [&](std::size_t n, double dt) {
        std::vector<SensorDisc> first(ctx.candidates.begin(), ctx.candidates.begin() + n);
        const double c = coverage(first, ctx.world, qm.grid_resolution);
        const double f = std::min(1.0, qm.ref_interval / dt);
        auto pw = [](double b, double k) { return k == 0.0 ? 1.0 : std::pow(b, k); };
        return pw(c, qm.w_c) * pw(f, qm.w_f) * pw(ctx.link.pdr, qm.w_d);
    };
    auto e_of = [&](std::size_t n, double dt) {
        return n * (em.p_idle + (em.e_sample + em.e_tx) / dt) + (live - n) * em.p_sleep;
    };

    std::vector<Option> feasible;
    for (std::size_t n = 1; n <= live; ++n) {
        for (double dt : cfg.interval_set) {
            const double q = q_of(n, dt);
            if (q < q_req) continue;
            if (alert && (dt > cfg.alert_max_interval || n < floor_n)) continue;
            feasible.push_back({n, dt, q, e_of(n, dt)});
        }
    }
    std::sort(feasible.begin(), feasible.end(), [](const Option& a, const Option& b) {
        if (a.e != b.e) return a.e < b.e;
        if (a.q != b.q) return a.q > b.q;
        if (a.n != b.n) return a.n < b.n;
        return a.dt > b.dt;
    });
    PlanResult r;
    r.q_required = q_req;
    if (feasible.empty()) {
        const double dt = *std::min_element(cfg.interval_set.begin(), cfg.interval_set.end());
        r.config = {live, dt, p >= cfg.p_alert};
        r.quality = q_of(live, dt);
        r.energy_rate = e_of(live, dt);
        r.degraded = true;
        return r;
    }
    const auto& b = feasible.front();
    r.config = {b.n, b.dt, alert};
    r.quality = b.q;
    r.energy_rate = b.e;
    return r;
}

struct PlanInstance {
    double p = 0.0;
    PlanningContext ctx;
    PlannerConfig cfg;
};

// Random planning problem: node layout, interval set, energy and quality
// parameters all drawn from `rng`.
inline PlanInstance random_instance(std::mt19937_64& rng) {
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>{lo, hi}(rng); };
    auto i = [&](int lo, int hi) { return std::uniform_int_distribution<int>{lo, hi}(rng); };
    PlanInstance in;
    in.p = i(0, 4) == 0 ? double(i(0, 4)) / 4.0 : u(0, 1);
    const double side = u(60, 200);
    in.ctx.world = Rect{0, 0, side, side};
    in.ctx.network_size = static_cast<std::size_t>(i(1, 12));
    const auto live = static_cast<std::size_t>(i(1, static_cast<int>(in.ctx.network_size)));
    for (std::size_t k = 0; k < live; ++k) {
        in.ctx.candidates.push_back({{u(0, side), u(0, side)}, u(10, side / 2)});
    }
    in.ctx.energy = {u(0.001, 0.05), 0.0, u(0, 0.1), u(0, 0.5)};
    in.ctx.energy.p_sleep = u(0, in.ctx.energy.p_idle);
    in.ctx.link = {u(0.5, 1.0), u(0, 3)};
    in.ctx.quality = {0, double(i(5, 20)), double(i(0, 2)), double(i(0, 2)), double(i(0, 2))};

    std::vector<double> pool{5, 10, 15, 20, 30, 45, 60, 120, 300};
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(static_cast<std::size_t>(i(1, 5)));
    std::sort(pool.begin(), pool.end());
    in.cfg.interval_set = pool;
    in.ctx.quality.ref_interval = pool.front();
    in.cfg.q_min = u(0.0, 0.4);
    in.cfg.q_max = u(in.cfg.q_min + 0.05, 1.0);
    in.cfg.app_type = static_cast<AppType>(i(0, 2));
    in.cfg.p_alert = u(0.2, 0.8);
    in.cfg.alert_max_interval = pool[static_cast<std::size_t>(i(0, static_cast<int>(pool.size()) - 1))];
    if (i(0, 1) == 1) in.cfg.alert_min_nodes = static_cast<std::size_t>(i(1, static_cast<int>(in.ctx.network_size)));
    return in;
}

}  // namespace wsnsim::oracle
