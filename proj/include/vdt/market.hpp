#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "vdt/core.hpp"
#include "vdt/ivf.hpp"
#include "vdt/pricing.hpp"
#include "vdt/rng.hpp"

namespace vdt {

// Smooth unimodal bump: product of a rising and a falling logistic, rescaled
// so its peak value equals `amplitude`.
struct LogisticBump {
    double center = 5.0;
    double halfwidth = 1.5;
    double steepness = 1.0;
    double amplitude = 1.0;

    double value(double p) const;
};

// Ground-truth market knobs; per-cluster values are jittered deterministically
// from `seed` and the cluster key.
struct MarketSpec {
    // demand(p) = mix * bump1 + (1 - mix) * bump2 + floor_level, capped at 1
    LogisticBump bump1{3.2, 1.0, 0.7, 0.70};
    LogisticBump bump2{6.9, 1.2, 0.7, 0.95};
    double mix = 0.5;
    double demand_floor = 0.02;

    // quality(e) = 1 - exp(-e / e0)
    double quality_e0 = 48.0;

    // cost g(e) = cost_base + cost_log * ln(1 + e)
    double cost_base = 0.15;
    double cost_log = 0.04;

    // relative jitter applied per cluster to centers, amplitudes, e0 and cost
    double jitter = 0.06;

    double response_noise = 0.05;  // sigma_s, truncated to [0,1] by clamping
    double cost_noise_rel = 0.02;  // sigma_c as a fraction of g(e)

    std::uint64_t seed = 7;
    std::string quality_mode = "synthetic";  // "synthetic" | "recall"
};

struct ClusterMarketParams {
    LogisticBump bump1;
    LogisticBump bump2;
    double mix = 0.5;
    double demand_floor = 0.0;
    double quality_e0 = 48.0;
    double cost_base = 0.1;
    double cost_log = 0.05;
};

// Ground-truth response/cost model shared by the simulator and the regret
// oracle. Immutable after construction; all stochastic draws go through the
// caller's rng stream.
class MarketModel {
public:
    MarketModel(MarketSpec spec, ConfigGrid grid, PriceDomain domain);

    // calibrated mode: quality per grid index measured as retrieval recall
    void set_recall_table(std::vector<double> recall);

    const ClusterMarketParams& params_for(const ClusterKey& cluster) const;

    double quality(const ClusterKey& cluster, double config_value) const;
    double demand(const ClusterKey& cluster, double price) const;
    double response_mean(const ClusterKey& cluster, double config_value, double price) const;  // f
    double cost_mean(const ClusterKey& cluster, double config_value) const;                    // g
    double expected_reward(const ClusterKey& cluster, double config_value, double price) const;
    double chi(const ClusterKey& cluster, double config_value, double price) const;

    // (s, cost) draw; s first, then cost
    std::pair<double, double> respond(const ClusterKey& cluster, double config_value,
                                      double price, Rng& rng) const;

    // Max absolute finite-difference partial derivative of chi, over mixed
    // orders 1..order, sampled on an (e, p) lattice.
    double smoothness_estimate(const ClusterKey& cluster, int order) const;

    const MarketSpec& spec() const { return spec_; }
    const ConfigGrid& grid() const { return grid_; }
    const PriceDomain& domain() const { return domain_; }

private:
    MarketSpec spec_;
    ConfigGrid grid_;
    PriceDomain domain_;
    std::vector<double> recall_table_;
    mutable std::unordered_map<std::uint64_t, ClusterMarketParams> params_;
};

// Brute-force maximizer of the expected reward over grid x price grid,
// with the per-configuration optimal price table kept for the regret split.
struct OracleSolution {
    int best_config = 0;
    double best_price = 0.0;
    double best_value = 0.0;
    std::vector<double> price_for_config;
    std::vector<double> value_for_config;
    double grid_slack = 0.0;  // beta * grid step * p_hi, reported with results
};

OracleSolution solve_oracle(const MarketModel& market, const ClusterKey& cluster,
                            int price_grid_size, double smoothness_hint = 1.0);

double regret_of(const OracleSolution& oracle, const MarketModel& market,
                 const ClusterKey& cluster, double config_value, double price);

}  // namespace vdt
