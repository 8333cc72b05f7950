#include "vdt/pricing.hpp"

namespace vdt {

RidgeModel::RidgeModel(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("ridge model: dimension must be positive");
    const auto d = static_cast<std::size_t>(dim);
    lambda_.assign(d * d, 0.0);
    lambda_inv_.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        lambda_[i * d + i] = 1.0;
        lambda_inv_[i * d + i] = 1.0;
    }
    b_.assign(d, 0.0);
    theta_.assign(d, 0.0);
    scratch_.assign(d, 0.0);
}

void RidgeModel::observe(std::span<const double> phi, double target) {
    const auto d = static_cast<std::size_t>(dim_);
    if (phi.size() != d) throw std::invalid_argument("ridge model: feature dimension mismatch");

    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) lambda_[i * d + j] += phi[i] * phi[j];
    for (std::size_t i = 0; i < d; ++i) b_[i] += target * phi[i];

    // Sherman-Morrison: inv -= (inv phi)(inv phi)^T / (1 + phi^T inv phi).
    auto& u = scratch_;
    double denom = 1.0;
    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += lambda_inv_[i * d + j] * phi[j];
        u[i] = acc;
    }
    for (std::size_t i = 0; i < d; ++i) denom += phi[i] * u[i];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) lambda_inv_[i * d + j] -= u[i] * u[j] / denom;

    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += lambda_inv_[i * d + j] * b_[j];
        theta_[i] = acc;
    }
    count_ += 1;
}

double RidgeModel::predict(std::span<const double> phi) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) acc += theta_[i] * phi[i];
    return acc;
}

double RidgeModel::width2(std::span<const double> phi) const {
    const auto d = static_cast<std::size_t>(dim_);
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < d; ++j) row += lambda_inv_[i * d + j] * phi[j];
        acc += phi[i] * row;
    }
    return acc;
}

LocalPricer::LocalPricer(TaylorConfig cfg, PriceDomain domain, int grid)
    : cfg_(cfg), domain_(domain), grid_(grid), bias_(taylor_bias(cfg, domain)),
      fresh_(cfg.feature_dim()) {
    cfg_.validate();
    if (grid_ < 2) throw std::invalid_argument("local pricer: grid size must be >= 2");
}

const RidgeModel* LocalPricer::model(const ClusterKey& cluster, int config, int interval) const {
    const auto it = models_.find(pack_cej(cluster, config, interval));
    return it == models_.end() ? nullptr : &it->second;
}

double LocalPricer::price(const ClusterKey& cluster, int config, int interval) const {
    if (interval < 0 || interval >= domain_.intervals)
        throw std::invalid_argument("local pricer: interval out of range");
    const RidgeModel* m = model(cluster, config, interval);
    if (m == nullptr) m = &fresh_;
    const double anchor = domain_.edge(interval);
    const double rho = optimism_multiplier(cfg_, bias_, m->count());
    return optimistic_clipped_argmax(
        *m, anchor, domain_.edge(interval + 1), grid_, rho, bias_,
        [&](double p, std::span<double> out) { taylor_features(0.0, p, anchor, cfg_.order, out); });
}

void LocalPricer::observe(const ClusterKey& cluster, int config, int interval, double p,
                          double utility) {
    const double anchor = domain_.edge(interval);
    const double upper = domain_.edge(interval + 1);
    const double slack = 1e-9 * (domain_.hi - domain_.lo);
    if (p < anchor - slack || p > upper + slack)
        throw std::invalid_argument("local pricer: price outside the selected interval");
    auto [it, inserted] = models_.try_emplace(pack_cej(cluster, config, interval),
                                              cfg_.feature_dim());
    const auto phi = taylor_features(0.0, p, anchor, cfg_.order);
    it->second.observe(phi, utility);
}

}  // namespace vdt
