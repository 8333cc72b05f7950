#include "vdt/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vdt {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double LogisticBump::value(double p) const {
    const double rising = logistic((p - (center - halfwidth)) / steepness);
    const double falling = logistic(((center + halfwidth) - p) / steepness);
    const double peak = logistic(halfwidth / steepness);
    return amplitude * rising * falling / (peak * peak);
}

MarketModel::MarketModel(MarketSpec spec, ConfigGrid grid, PriceDomain domain)
    : spec_(std::move(spec)), grid_(std::move(grid)), domain_(domain) {
    if (grid_.values.empty()) throw std::invalid_argument("market: empty configuration grid");
    if (!(spec_.mix >= 0.0 && spec_.mix <= 1.0))
        throw std::invalid_argument("market: mix must be in [0,1]");
    if (spec_.quality_mode != "synthetic" && spec_.quality_mode != "recall")
        throw std::invalid_argument("market: unknown quality mode " + spec_.quality_mode);
}

void MarketModel::set_recall_table(std::vector<double> recall) {
    if (recall.size() != grid_.size())
        throw std::invalid_argument("market: recall table size must match the grid");
    recall_table_ = std::move(recall);
}

const ClusterMarketParams& MarketModel::params_for(const ClusterKey& cluster) const {
    auto it = params_.find(cluster.pack());
    if (it != params_.end()) return it->second;

    Rng rng(derive_stream(spec_.seed, mix64(cluster.pack())));
    auto jittered = [&](double v) { return v * (1.0 + spec_.jitter * rng.uniform(-1.0, 1.0)); };

    ClusterMarketParams p;
    p.bump1 = spec_.bump1;
    p.bump2 = spec_.bump2;
    p.bump1.center = jittered(spec_.bump1.center);
    p.bump2.center = jittered(spec_.bump2.center);
    p.bump1.amplitude = clamp01(jittered(spec_.bump1.amplitude));
    p.bump2.amplitude = clamp01(jittered(spec_.bump2.amplitude));
    p.mix = std::min(1.0, std::max(0.0, spec_.mix + 0.5 * spec_.jitter * rng.uniform(-1.0, 1.0)));
    p.demand_floor = spec_.demand_floor;
    p.quality_e0 = std::max(1e-6, jittered(spec_.quality_e0));
    p.cost_base = std::max(0.0, jittered(spec_.cost_base));
    p.cost_log = std::max(0.0, jittered(spec_.cost_log));
    return params_.emplace(cluster.pack(), p).first->second;
}

double MarketModel::quality(const ClusterKey& cluster, double config_value) const {
    if (spec_.quality_mode == "recall" && !recall_table_.empty()) {
        // piecewise-linear in the scan depth between measured grid points
        const auto& v = grid_.values;
        if (config_value <= v.front()) return recall_table_.front();
        for (std::size_t i = 1; i < v.size(); ++i) {
            if (config_value <= v[i]) {
                const double w = (config_value - v[i - 1]) /
                                 static_cast<double>(v[i] - v[i - 1]);
                return recall_table_[i - 1] + w * (recall_table_[i] - recall_table_[i - 1]);
            }
        }
        return recall_table_.back();
    }
    const auto& p = params_for(cluster);
    return 1.0 - std::exp(-config_value / p.quality_e0);
}

double MarketModel::demand(const ClusterKey& cluster, double price) const {
    const auto& p = params_for(cluster);
    const double raw = p.mix * p.bump1.value(price) + (1.0 - p.mix) * p.bump2.value(price) +
                       p.demand_floor;
    return std::min(1.0, raw);
}

double MarketModel::response_mean(const ClusterKey& cluster, double config_value,
                                  double price) const {
    return clamp01(quality(cluster, config_value) * demand(cluster, price));
}

double MarketModel::cost_mean(const ClusterKey& cluster, double config_value) const {
    const auto& p = params_for(cluster);
    return p.cost_base + p.cost_log * std::log1p(config_value);
}

double MarketModel::expected_reward(const ClusterKey& cluster, double config_value,
                                    double price) const {
    return response_mean(cluster, config_value, price) *
           (price - cost_mean(cluster, config_value));
}

double MarketModel::chi(const ClusterKey& cluster, double config_value, double price) const {
    return expected_reward(cluster, config_value, price) / price;
}

std::pair<double, double> MarketModel::respond(const ClusterKey& cluster, double config_value,
                                               double price, Rng& rng) const {
    const double f = response_mean(cluster, config_value, price);
    const double g = cost_mean(cluster, config_value);
    const double s = spec_.response_noise > 0.0
                         ? clamp01(f + spec_.response_noise * rng.gaussian())
                         : f;
    const double cost = spec_.cost_noise_rel > 0.0
                            ? std::max(0.0, g * (1.0 + spec_.cost_noise_rel * rng.gaussian()))
                            : g;
    return {s, cost};
}

double MarketModel::smoothness_estimate(const ClusterKey& cluster, int order) const {
    const double e_lo = static_cast<double>(grid_.values.front());
    const double e_hi = static_cast<double>(grid_.values.back());
    const double he = std::max((e_hi - e_lo) / 200.0, 1e-3);
    const double hp = (domain_.hi - domain_.lo) / 400.0;

    // central finite-difference stencil for d^m along one axis
    auto stencil = [](int m, auto&& eval) {
        double acc = 0.0;
        double sign = 1.0;
        double binom = 1.0;
        for (int i = 0; i <= m; ++i) {
            acc += sign * binom * eval(0.5 * m - i);
            sign = -sign;
            binom = binom * (m - i) / (i + 1);
        }
        return acc;
    };

    double worst = 0.0;
    const int e_samples = 7;
    const int p_samples = 25;
    for (int a = 0; a <= order; ++a) {
        for (int b = 0; b <= order - a; ++b) {
            if (a + b < 1 || a + b > order) continue;
            if (a > 0 && spec_.quality_mode == "recall") continue;  // e-axis discrete
            for (int ei = 0; ei < e_samples; ++ei) {
                const double e = e_lo + (e_hi - e_lo) * (ei + 0.5) / e_samples;
                for (int pi = 0; pi < p_samples; ++pi) {
                    const double p = domain_.lo + (domain_.hi - domain_.lo) * (pi + 0.5) / p_samples;
                    const double d = stencil(a, [&](double se) {
                        return stencil(b, [&](double sp) {
                            return chi(cluster, e + se * he, p + sp * hp);
                        });
                    });
                    worst = std::max(worst, std::abs(d / (std::pow(he, a) * std::pow(hp, b))));
                }
            }
        }
    }
    return worst;
}

OracleSolution solve_oracle(const MarketModel& market, const ClusterKey& cluster,
                            int price_grid_size, double smoothness_hint) {
    if (price_grid_size < 100)
        throw std::invalid_argument("oracle: price grid must have at least 100 points");
    const auto& grid = market.grid();
    const auto& domain = market.domain();

    OracleSolution sol;
    sol.price_for_config.resize(grid.size());
    sol.value_for_config.resize(grid.size());

    const double step = (domain.hi - domain.lo) / (price_grid_size - 1);
    for (std::size_t e = 0; e < grid.size(); ++e) {
        const double ev = grid.value(e);
        double best_p = domain.lo;
        double best_u = market.expected_reward(cluster, ev, domain.lo);
        for (int i = 1; i < price_grid_size; ++i) {
            const double p = domain.lo + step * i;
            const double u = market.expected_reward(cluster, ev, p);
            if (u > best_u) {
                best_u = u;
                best_p = p;
            }
        }
        sol.price_for_config[e] = best_p;
        sol.value_for_config[e] = best_u;
        if (e == 0 || best_u > sol.best_value) {
            sol.best_config = static_cast<int>(e);
            sol.best_price = best_p;
            sol.best_value = best_u;
        }
    }
    sol.grid_slack = smoothness_hint * step * domain.hi;
    return sol;
}

double regret_of(const OracleSolution& oracle, const MarketModel& market,
                 const ClusterKey& cluster, double config_value, double price) {
    return oracle.best_value - market.expected_reward(cluster, config_value, price);
}

}  // namespace vdt
