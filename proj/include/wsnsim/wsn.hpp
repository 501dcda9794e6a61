#pragma once

// One sensor network: node sampling with sensor noise and faults, single-hop
// delivery to the sink, per-node energy accounting and duty cycling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/environment.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

enum class FaultKind { Bias, Stuck, Spike };

struct FaultSpec {
    FaultKind kind = FaultKind::Bias;
    double magnitude = 0.0;
    double onset = 0.0;
    double rate = 0.0;  // per-sample probability, Spike only
};

struct NodeSpec {
    NodeId node_id = 0;
    Position position;
    SensorType sensor_type;
    double sensing_radius = 1.0;  // meters
    double battery = 1.0;         // joules
    std::optional<FaultSpec> fault;
};

struct EnergyModel {
    double p_idle = 0.0;    // W, active node
    double p_sleep = 0.0;   // W, sleeping node
    double e_sample = 0.0;  // J per sample
    double e_tx = 0.0;      // J per report transmission
};

struct NetworkConfig {
    std::size_t n_active = 1;
    double report_interval = 1.0;  // seconds
    bool alert_mode = false;

    friend bool operator==(const NetworkConfig&, const NetworkConfig&) = default;
};

struct LinkModel {
    double pdr = 1.0;      // node -> sink delivery probability
    double latency = 0.0;  // seconds
};

// Requested more active nodes than are alive; the caller must re-plan with
// `live` as the ceiling.
class InsufficientLiveNodes : public std::runtime_error {
public:
    InsufficientLiveNodes(std::size_t requested, std::size_t live)
        : std::runtime_error("requested " + std::to_string(requested) + " active nodes but only " +
                             std::to_string(live) + " are alive"),
          requested_(requested),
          live_(live) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t live() const noexcept { return live_; }

private:
    std::size_t requested_;
    std::size_t live_;
};

// Live nodes (battery > 0) ordered by battery descending, then node_id ascending.
inline std::vector<std::size_t> selection_order(std::span<const NodeSpec> nodes) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].battery > 0.0) idx.push_back(i);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        if (nodes[a].battery != nodes[b].battery) return nodes[a].battery > nodes[b].battery;
        return nodes[a].node_id < nodes[b].node_id;
    });
    return idx;
}

inline std::vector<NodeId> select_active(std::span<const NodeSpec> nodes, std::size_t n) {
    const auto order = selection_order(nodes);
    if (n > order.size()) throw InsufficientLiveNodes(n, order.size());
    std::vector<NodeId> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(nodes[order[i]].node_id);
    return ids;
}

// Mutable per-node simulation state. `spec.battery` holds the remaining charge.
struct NodeState {
    NodeSpec spec;
    bool alive = true;
    bool active = false;
    double consumed = 0.0;  // joules drawn so far
    double stranded = 0.0;  // charge left behind when the node could not afford an operation
    std::optional<double> pre_onset_value;
};

struct SampleOutcome {
    Measurement measurement;
    bool fault_injected = false;
};

namespace detail {

inline constexpr double kDepletedJ = 1e-12;

inline double debit(NodeState& node, double joules) {
    node.spec.battery -= joules;
    node.consumed += joules;
    if (node.spec.battery < kDepletedJ) {
        node.stranded += std::max(0.0, node.spec.battery);
        node.spec.battery = 0.0;
        node.alive = false;
        node.active = false;
    }
    return joules;
}

inline void strand(NodeState& node) {
    node.stranded += node.spec.battery;
    node.spec.battery = 0.0;
    node.alive = false;
    node.active = false;
}

}  // namespace detail

// Takes one reading and debits e_sample. A node that cannot afford the sample
// dies and produces nothing.
inline std::optional<SampleOutcome> sample(NodeState& node, const Environment& env, double t,
                                           Rng& rng, double sensor_sigma, const EnergyModel& em) {
    if (!node.alive) return std::nullopt;
    if (node.spec.battery < em.e_sample) {
        detail::strand(node);
        return std::nullopt;
    }

    double value = env.value(node.spec.sensor_type, node.spec.position, t);
    if (sensor_sigma > 0.0) value += std::normal_distribution<double>{0.0, sensor_sigma}(rng);

    bool injected = false;
    if (node.spec.fault) {
        const auto& f = *node.spec.fault;
        if (t < f.onset) {
            node.pre_onset_value = value;
        } else {
            switch (f.kind) {
                case FaultKind::Bias:
                    value += f.magnitude;
                    injected = true;
                    break;
                case FaultKind::Stuck:
                    if (!node.pre_onset_value) node.pre_onset_value = value;
                    value = *node.pre_onset_value;
                    injected = true;
                    break;
                case FaultKind::Spike:
                    if (std::bernoulli_distribution{f.rate}(rng)) {
                        value += f.magnitude;
                        injected = true;
                    }
                    break;
            }
        }
    }

    detail::debit(node, em.e_sample);
    return SampleOutcome{
        Measurement{node.spec.node_id, node.spec.sensor_type, value, t, node.spec.position},
        injected};
}

struct Delivery {
    bool delivered = false;
    double delay = 0.0;
};

inline Delivery deliver_report(const LinkModel& link, Rng& rng) {
    if (std::bernoulli_distribution{link.pdr}(rng)) return {true, link.latency};
    return {false, 0.0};
}

// Closed-form long-run average power of a configuration.
inline double energy_rate(const NetworkConfig& cfg, std::size_t total_nodes,
                          const EnergyModel& em) {
    const auto active = static_cast<double>(cfg.n_active);
    const auto sleeping = static_cast<double>(total_nodes) - active;
    return active * (em.p_idle + (em.e_sample + em.e_tx) / cfg.report_interval) +
           sleeping * em.p_sleep;
}

struct NetworkSpec {
    std::string id;
    SensorType sensor_type;
    double sensor_sigma = 0.0;
    std::vector<NodeSpec> nodes;
    EnergyModel energy;
    LinkModel link;
};

struct SinkReport {
    Measurement measurement;
    double sent_at = 0.0;
    double arrival = 0.0;
    bool fault_injected = false;
};

struct StepResult {
    std::vector<SinkReport> arrived;  // reports reaching the sink at this tick
    double energy_j = 0.0;            // drawn by all nodes during this tick
    std::size_t attempts = 0;
    std::size_t lost = 0;
    std::size_t deaths = 0;
};

class Network {
public:
    Network(NetworkSpec spec, Rng rng, double tick)
        : spec_(std::move(spec)), rng_(rng), tick_(tick) {
        if (!(tick_ > 0.0)) throw std::invalid_argument("tick must be positive");
        nodes_.reserve(spec_.nodes.size());
        for (const auto& n : spec_.nodes) nodes_.push_back(NodeState{n, true, false, 0.0, 0.0, std::nullopt});
    }

    const NetworkSpec& spec() const noexcept { return spec_; }
    const std::string& id() const noexcept { return spec_.id; }
    std::span<const NodeState> nodes() const noexcept { return nodes_; }
    std::size_t total_nodes() const noexcept { return nodes_.size(); }
    const NetworkConfig& config() const noexcept { return config_; }
    double consumed() const noexcept { return consumed_; }

    std::size_t live_count() const noexcept {
        return static_cast<std::size_t>(
            std::count_if(nodes_.begin(), nodes_.end(), [](const NodeState& n) { return n.alive; }));
    }
    std::size_t active_count() const noexcept {
        return static_cast<std::size_t>(std::count_if(
            nodes_.begin(), nodes_.end(), [](const NodeState& n) { return n.alive && n.active; }));
    }

    // Current node specs (battery = remaining charge).
    std::vector<NodeSpec> current_specs() const {
        std::vector<NodeSpec> out;
        out.reserve(nodes_.size());
        for (const auto& n : nodes_) out.push_back(n.spec);
        return out;
    }

    // Live nodes in the order select_active would take them.
    std::vector<NodeSpec> candidates() const {
        const auto specs = current_specs();
        std::vector<NodeSpec> out;
        for (auto i : selection_order(specs)) out.push_back(specs[i]);
        return out;
    }

    // Activates the first n live nodes per select_active. Throws
    // InsufficientLiveNodes without changing state when n exceeds the live count.
    void apply(const NetworkConfig& cfg) {
        const auto specs = current_specs();
        const auto ids = select_active(specs, cfg.n_active);
        for (auto& n : nodes_) n.active = false;
        for (auto id : ids) {
            for (auto& n : nodes_) {
                if (n.spec.node_id == id) n.active = true;
            }
        }
        config_ = cfg;
        interval_ticks_ = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::llround(cfg.report_interval / tick_)));
    }

    static std::int64_t phase_of(NodeId id, std::int64_t interval_ticks) {
        return static_cast<std::int64_t>(splitmix64(id) % static_cast<std::uint64_t>(interval_ticks));
    }

    StepResult step(const Environment& env, std::int64_t tick_index) {
        StepResult out;
        const double t = static_cast<double>(tick_index) * tick_;
        const auto& em = spec_.energy;
        const auto latency_ticks =
            static_cast<std::int64_t>(std::ceil(spec_.link.latency / tick_ - 1e-9));

        for (auto& node : nodes_) {
            if (!node.alive) continue;
            double drawn = 0.0;

            if (node.active && tick_index % interval_ticks_ == phase_of(node.spec.node_id, interval_ticks_)) {
                ++out.attempts;
                auto s = sample(node, env, t, rng_, spec_.sensor_sigma, em);
                if (s) drawn += em.e_sample;
                if (s && node.alive && node.spec.battery >= em.e_tx) {
                    drawn += detail::debit(node, em.e_tx);
                    const auto d = deliver_report(spec_.link, rng_);
                    if (d.delivered) {
                        const double arrival = static_cast<double>(tick_index + latency_ticks) * tick_;
                        in_flight_.push_back({s->measurement, t, arrival, s->fault_injected});
                    } else {
                        ++out.lost;
                    }
                } else if (s && node.alive) {
                    detail::strand(node);
                }
            }

            if (node.alive) {
                const double draw = (node.active ? em.p_idle : em.p_sleep) * tick_;
                drawn += detail::debit(node, std::min(draw, node.spec.battery));
            }
            if (!node.alive) ++out.deaths;
            out.energy_j += drawn;
        }

        while (!in_flight_.empty() && in_flight_.front().arrival <= t) {
            out.arrived.push_back(std::move(in_flight_.front()));
            in_flight_.pop_front();
        }
        consumed_ += out.energy_j;
        return out;
    }

private:
    NetworkSpec spec_;
    Rng rng_;
    double tick_;
    std::vector<NodeState> nodes_;
    NetworkConfig config_{};
    std::int64_t interval_ticks_ = 1;
    std::deque<SinkReport> in_flight_;
    double consumed_ = 0.0;
};

}  // namespace wsnsim
