#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>

#include "vdt/core.hpp"
#include "vdt/pricing.hpp"
#include "vdt/rng.hpp"

namespace vdt {

enum class ConfigRule { Learned, Fixed, Random };
enum class PriceRule { Learned, Fixed, Random, Linear, Convex };

struct PolicyPair {
    ConfigRule config = ConfigRule::Learned;
    PriceRule price = PriceRule::Learned;
};

// Named policies: the full hierarchy, two Stage-I baselines running on the
// learned pricing stage, and four pricing baselines running on the learned
// configuration stage.
std::optional<PolicyPair> parse_policy(const std::string& name);
std::string policy_name(const PolicyPair& pair);
std::optional<ConfigRule> parse_config_rule(const std::string& name);
std::optional<PriceRule> parse_price_rule(const std::string& name);

// Linear response baseline: per-(cluster, e) ridge fit of utility against
// (1, p - p_lo), priced by the same clipped optimistic grid argmax as the
// local pricer but over the whole price range with zero model bias.
class LinearPricer {
public:
    LinearPricer(PriceDomain domain, TaylorConfig cfg, int grid)
        : domain_(domain), cfg_(cfg), grid_(grid), fresh_(2) {
        cfg_.order = 2;
    }

    // confidence multiplier of the cited linear contextual bandit
    double alpha() const { return 1.0 + std::sqrt(std::log(2.0 / cfg_.failure_prob) / 2.0); }

    double price(const ClusterKey& cluster, int config) const {
        const RidgeModel* m = model(cluster, config);
        if (m == nullptr) m = &fresh_;
        const double rho = alpha();
        const double mid = domain_.midpoint();
        return optimistic_clipped_argmax(
            *m, domain_.lo, domain_.hi, grid_, rho, 0.0, [&](double p, std::span<double> out) {
                out[0] = 1.0;
                out[1] = p - mid;
            });
    }

    void update(const ClusterKey& cluster, int config, double p, double utility) {
        auto [it, inserted] = models_.try_emplace(pack_ce(cluster, config), 2);
        // centered price feature keeps the identity prior from biasing the slope
        const double phi[2] = {1.0, p - domain_.midpoint()};
        it->second.observe(std::span<const double>(phi, 2), utility);
    }

    const RidgeModel* model(const ClusterKey& cluster, int config) const {
        const auto it = models_.find(pack_ce(cluster, config));
        return it == models_.end() ? nullptr : &it->second;
    }

    // fitted affine coefficients in p: utility ~ intercept + slope * p
    std::pair<double, double> fitted_line(const ClusterKey& cluster, int config) const {
        const RidgeModel* m = model(cluster, config);
        if (m == nullptr) return {0.0, 0.0};
        const double slope = m->theta()[1];
        return {m->theta()[0] - slope * domain_.midpoint(), slope};
    }

private:
    PriceDomain domain_;
    TaylorConfig cfg_;
    int grid_;
    RidgeModel fresh_;
    std::unordered_map<std::uint64_t, RidgeModel> models_;
};

// Quadratic reward baseline: per-(cluster, e) ridge fit of reward against
// (1, p, p^2); prices at the concave vertex projected into the domain, at the
// better endpoint otherwise, with an epsilon-greedy uniform draw.
class ConvexPricer {
public:
    ConvexPricer(PriceDomain domain, double epsilon = 0.05)
        : domain_(domain), epsilon_(epsilon), fresh_(3) {}

    double price(const ClusterKey& cluster, int config, Rng& rng) const {
        if (epsilon_ > 0.0 && rng.uniform() < epsilon_)
            return rng.uniform(domain_.lo, domain_.hi);
        return exploit_price(cluster, config);
    }

    double exploit_price(const ClusterKey& cluster, int config) const {
        const RidgeModel* m = model(cluster, config);
        if (m == nullptr) m = &fresh_;
        const auto& th = m->theta();
        if (th[2] < -1e-12) {
            const double vertex = domain_.midpoint() - th[1] / (2.0 * th[2]);
            return std::min(domain_.hi, std::max(domain_.lo, vertex));
        }
        const double at_lo = predict(*m, domain_.lo);
        const double at_hi = predict(*m, domain_.hi);
        return at_hi > at_lo ? domain_.hi : domain_.lo;
    }

    void update(const ClusterKey& cluster, int config, double p, double reward) {
        auto [it, inserted] = models_.try_emplace(pack_ce(cluster, config), 3);
        // centered features, same quadratic family with better conditioning
        const double x = p - domain_.midpoint();
        const double phi[3] = {1.0, x, x * x};
        it->second.observe(std::span<const double>(phi, 3), reward);
    }

    const RidgeModel* model(const ClusterKey& cluster, int config) const {
        const auto it = models_.find(pack_ce(cluster, config));
        return it == models_.end() ? nullptr : &it->second;
    }

private:
    double predict(const RidgeModel& m, double p) const {
        const double x = p - domain_.midpoint();
        const double phi[3] = {1.0, x, x * x};
        return m.predict(std::span<const double>(phi, 3));
    }

    PriceDomain domain_;
    double epsilon_;
    RidgeModel fresh_;
    std::unordered_map<std::uint64_t, RidgeModel> models_;
};

}  // namespace vdt
