#pragma once

// Analyze stage: peer trust, threshold evidence with noisy-OR fusion, and
// k-nearest-neighbour pattern matching over labelled history.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wsnsim/domain.hpp"
#include "wsnsim/environment.hpp"

namespace wsnsim {

struct TrustParams {
    double alpha = 0.1;      // EMA rate
    double delta_max = 4.0;  // discrepancy, in z units, that scores zero
    double tau0 = 0.5;       // initial trust
};

struct TrustRecord {
    std::string peer_id;
    double trust = 0.5;
    std::size_t updates = 0;
    double last_score = 0.0;
};

inline TrustRecord make_trust_record(std::string peer_id, const TrustParams& params) {
    return TrustRecord{std::move(peer_id), std::clamp(params.tau0, 0.0, 1.0), 0, 0.0};
}

// score = max(0, 1 - |z_ext - z_local| / delta_max); trust moves toward the score by alpha.
inline TrustRecord update_trust(TrustRecord rec, double z_local, double z_external,
                                const TrustParams& params) {
    const double delta = std::abs(z_external - z_local);
    const double score = std::max(0.0, 1.0 - delta / params.delta_max);
    rec.trust = std::clamp((1.0 - params.alpha) * rec.trust + params.alpha * score, 0.0, 1.0);
    ++rec.updates;
    rec.last_score = score;
    return rec;
}

struct ThresholdRamp {
    double theta_low = 0.0;
    double theta_high = 1.0;
};

using Thresholds = std::map<SensorType, ThresholdRamp>;

inline double evidence(double value, const ThresholdRamp& th) {
    return std::clamp((value - th.theta_low) / (th.theta_high - th.theta_low), 0.0, 1.0);
}

struct ExternalEvidence {
    double evidence = 0.0;
    double trust = 0.0;
    double relevance = 0.0;
};

// Noisy-OR: p = 1 - prod(1 - e_i) * prod(1 - tau_j * rho_j * e_j).
inline double infer_threshold(std::span<const double> local,
                              std::span<const ExternalEvidence> external) {
    double none = 1.0;
    for (double e : local) none *= 1.0 - e;
    for (const auto& x : external) none *= 1.0 - x.trust * x.relevance * x.evidence;
    return 1.0 - none;
}

inline constexpr std::size_t kFeatureDim = 5;
using FeatureVector = std::array<double, kFeatureDim>;

struct WeightedZ {
    double z = 0.0;
    double weight = 0.0;  // tau * rho
};

// (mean local z, max local z, weighted external z, sin(day phase), cos(day phase)).
// nullopt when no local z-score is available.
inline std::optional<FeatureVector> build_features(std::span<const double> local_z,
                                                   std::span<const WeightedZ> external, double t) {
    if (local_z.empty()) return std::nullopt;
    double sum = 0.0;
    double max = local_z.front();
    for (double z : local_z) {
        sum += z;
        max = std::max(max, z);
    }
    double wsum = 0.0, wz = 0.0;
    for (const auto& x : external) {
        wsum += x.weight;
        wz += x.weight * x.z;
    }
    const double phase = 2.0 * std::numbers::pi * t / kSecondsPerDay;
    return FeatureVector{sum / static_cast<double>(local_z.size()), max, wsum > 0.0 ? wz / wsum : 0.0,
                         std::sin(phase), std::cos(phase)};
}

// Bounded ring of labelled feature vectors; oldest entries are evicted first.
class HistoryStore {
public:
    struct Entry {
        FeatureVector features;
        bool label = false;
        std::uint64_t seq = 0;  // insertion order
    };

    explicit HistoryStore(std::size_t capacity = 2000) : capacity_(std::max<std::size_t>(capacity, 1)) {}

    void add(const FeatureVector& fv, bool label) {
        if (entries_.size() == capacity_) entries_.pop_front();
        entries_.push_back({fv, label, next_seq_++});
    }

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    const std::deque<Entry>& entries() const noexcept { return entries_; }

private:
    std::size_t capacity_;
    std::deque<Entry> entries_;
    std::uint64_t next_seq_ = 0;
};

inline double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < kFeatureDim; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// Fraction of positive labels among the k nearest stored vectors; ties on
// distance go to the older entry. nullopt when fewer than k entries exist.
inline std::optional<double> infer_pattern(const FeatureVector& fv, const HistoryStore& store,
                                           std::size_t k = 5) {
    if (k == 0 || store.size() < k) return std::nullopt;
    struct Candidate {
        double d2;
        std::uint64_t seq;
        bool label;
    };
    std::vector<Candidate> all;
    all.reserve(store.size());
    for (const auto& e : store.entries()) all.push_back({squared_distance(fv, e.features), e.seq, e.label});
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                      [](const Candidate& a, const Candidate& b) {
                          return a.d2 != b.d2 ? a.d2 < b.d2 : a.seq < b.seq;
                      });
    std::size_t positive = 0;
    for (std::size_t i = 0; i < k; ++i) positive += all[i].label ? 1 : 0;
    return static_cast<double>(positive) / static_cast<double>(k);
}

enum class InferenceMode { ThresholdOnly, PatternOnly, Max };

inline double combine_inference(double p_threshold, std::optional<double> p_pattern, InferenceMode mode) {
    switch (mode) {
        case InferenceMode::ThresholdOnly: return p_threshold;
        case InferenceMode::PatternOnly: return p_pattern.value_or(p_threshold);
        case InferenceMode::Max: return p_pattern ? std::max(p_threshold, *p_pattern) : p_threshold;
    }
    return p_threshold;
}

}  // namespace wsnsim
