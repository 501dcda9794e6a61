#pragma once

// Enhanced Gateway: the per-network monitor -> analyze -> plan -> execute loop.

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/filter.hpp"
#include "wsnsim/inference.hpp"
#include "wsnsim/metrics.hpp"
#include "wsnsim/overlay.hpp"
#include "wsnsim/planner.hpp"

namespace wsnsim {

struct GatewaySpec {
    FilterRules filter;
    Thresholds thresholds;
    TrustParams trust;
    PlannerConfig planner;
    QualityModel quality;
    InferenceMode mode = InferenceMode::Max;
    double decision_period = 30.0;
    std::size_t knn_k = 5;
    std::size_t history_capacity = 2000;
    std::size_t baseline_window = 20;  // period means kept for the network-level z-score
    double hysteresis = 0.05;          // minimum |delta Q_req| that triggers re-planning
    bool static_plan = false;          // never re-plan; keep the initial config
};

// What the gateway knows about relating peers to its own network.
struct PeerContext {
    SensorType local_type;
    std::vector<Position> local_positions;
    CouplingMatrix coupling;
    RelevanceParams relevance;
    bool collaboration = true;
};

struct TickInput {
    double t = 0.0;
    std::span<const Measurement> internal;
    std::span<const SummaryReport> peers;
    const PlanningContext* planning = nullptr;  // null while planning is frozen
    std::optional<bool> label;                  // ground truth to record into history
};

struct TickOutput {
    FilterResult filter;
    std::optional<PlanResult> change;
    std::optional<SummaryReport> summary;
    std::optional<Alert> alert;
    double p = 0.0;
    double p_threshold = 0.0;
    std::optional<double> p_pattern;
    double q_required = 0.0;
    bool planned = false;
};

class Gateway {
public:
    Gateway(std::string id, GatewaySpec spec, PeerContext peers)
        : id_(std::move(id)),
          spec_(std::move(spec)),
          peers_(std::move(peers)),
          history_(spec_.history_capacity) {}

    const std::string& id() const noexcept { return id_; }
    const GatewaySpec& spec() const noexcept { return spec_; }
    const NetworkConfig& config() const noexcept { return config_; }
    void set_config(const NetworkConfig& cfg) { config_ = cfg; }
    const std::map<std::string, TrustRecord>& trust() const noexcept { return trust_; }
    const HistoryStore& history() const noexcept { return history_; }
    const FilterHistory& filter_history() const noexcept { return filter_history_; }
    double last_p() const noexcept { return prev_p_; }

    TickOutput mape_tick(const TickInput& in) {
        TickOutput out;
        const double clip = spec_.trust.delta_max;
        const auto clamp_z = [clip](double z) { return std::clamp(z, -clip, clip); };

        // Monitor
        out.filter = monitor_filter(in.internal, spec_.filter, filter_history_);
        std::vector<double> batch_z;
        for (std::size_t i = 0; i < out.filter.accepted.size(); ++i) {
            const auto& m = out.filter.accepted[i];
            latest_[m.node_id] = {m.value, m.timestamp};
            if (out.filter.accepted_z[i]) batch_z.push_back(clamp_z(*out.filter.accepted_z[i]));
        }

        std::optional<double> z_local;
        if (!out.filter.accepted.empty()) {
            double sum = 0.0;
            for (const auto& m : out.filter.accepted) sum += m.value;
            const double mean = sum / static_cast<double>(out.filter.accepted.size());
            const std::vector<double> base(baseline_.begin(), baseline_.end());
            z_local = anomaly_z(mean, base);
            baseline_.push_back(mean);
            while (baseline_.size() > spec_.baseline_window) baseline_.pop_front();
        }

        // Analyze: peers
        if (peers_.collaboration) {
            for (const auto& s : in.peers) {
                if (s.eg_id == id_) continue;
                auto [it, fresh] = trust_.try_emplace(s.eg_id, make_trust_record(s.eg_id, spec_.trust));
                if (z_local) it->second = update_trust(it->second, clamp_z(*z_local), clamp_z(s.anomaly_z), spec_.trust);
                peer_latest_[s.eg_id] = s;
            }
        }

        std::vector<double> local_e;
        const auto ramp_it = spec_.thresholds.find(peers_.local_type);
        const double horizon = config_.report_interval + spec_.decision_period;
        if (ramp_it != spec_.thresholds.end()) {
            for (const auto& [node, obs] : latest_) {
                if (in.t - obs.t <= horizon) local_e.push_back(evidence(obs.value, ramp_it->second));
            }
        }

        std::vector<ExternalEvidence> ext_e;
        std::vector<WeightedZ> ext_z;
        if (peers_.collaboration) {
            for (const auto& [peer, s] : peer_latest_) {
                if (in.t - s.window_end > 2.0 * spec_.decision_period) continue;
                const double w_rel = relevance_of(s);
                const double tau = trust_.at(peer).trust;
                ext_e.push_back({s.event_prob, tau, w_rel});
                ext_z.push_back({clamp_z(s.anomaly_z), tau * w_rel});
            }
        }

        out.p_threshold = infer_threshold(local_e, ext_e);
        if (auto fv = build_features(batch_z, ext_z, in.t)) {
            out.p_pattern = infer_pattern(*fv, history_, spec_.knn_k);
            if (in.label) history_.add(*fv, *in.label);
        }
        out.p = combine_inference(out.p_threshold, out.p_pattern, spec_.mode);

        const auto& pc = spec_.planner;
        if (prev_p_ < pc.p_alert && out.p >= pc.p_alert) out.alert = Alert{id_, in.t};
        prev_p_ = out.p;

        // Plan / execute
        out.q_required = quality_required(out.p, pc);
        if (in.planning && !spec_.static_plan && !in.planning->candidates.empty()) {
            const bool alert_status = alert_constrained(out.p, pc);
            const std::size_t live = in.planning->candidates.size();
            const bool replan = !reference_ || std::abs(out.q_required - reference_->q_required) >= spec_.hysteresis ||
                                alert_status != reference_->alert || live != reference_->live;
            if (replan) {
                const auto result = plan(out.p, *in.planning, pc);
                out.planned = true;
                reference_ = Reference{out.q_required, alert_status, live};
                if (result.config != config_) {
                    config_ = result.config;
                    out.change = result;
                }
            }
        }

        // Publish
        const double window_start = last_tick_ ? *last_tick_ : in.t - spec_.decision_period;
        if (window_start < in.t) {
            out.summary = make_summary(id_, peers_.local_type, out.filter.accepted, window_start, in.t,
                                       z_local.value_or(0.0), out.p);
        }
        last_tick_ = in.t;
        return out;
    }

    double relevance_of(const SummaryReport& s) const {
        const double kappa = semantic_coupling(peers_.local_type, s.sensor_type, peers_.coupling);
        const Position peer_centroid[] = {s.centroid};
        return relevance_weight(centroid_distance(peers_.local_positions, peer_centroid), kappa,
                                peers_.relevance);
    }

private:
    struct Observation {
        double value;
        double t;
    };
    struct Reference {
        double q_required;
        bool alert;
        std::size_t live;
    };

    std::string id_;
    GatewaySpec spec_;
    PeerContext peers_;
    FilterHistory filter_history_;
    HistoryStore history_;
    std::map<NodeId, Observation> latest_;
    std::deque<double> baseline_;
    std::map<std::string, TrustRecord> trust_;
    std::map<std::string, SummaryReport> peer_latest_;
    NetworkConfig config_{};
    std::optional<Reference> reference_;
    std::optional<double> last_tick_;
    double prev_p_ = 0.0;
};

}  // namespace wsnsim
