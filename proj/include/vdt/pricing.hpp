#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "vdt/config_bandit.hpp"
#include "vdt/core.hpp"

namespace vdt {

// Equal partition of [lo, hi] into `intervals` pieces with edges
// a_j = lo + j (hi - lo) / intervals.
struct PriceDomain {
    double lo = 1.0;
    double hi = 9.0;
    int intervals = 1;

    PriceDomain() = default;
    PriceDomain(double lo_, double hi_, int n) : lo(lo_), hi(hi_), intervals(n) {
        if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("price domain: need 0 < lo < hi");
        if (n < 1) throw std::invalid_argument("price domain: need at least one interval");
    }

    double edge(int j) const { return lo + static_cast<double>(j) * (hi - lo) / intervals; }
    double width() const { return (hi - lo) / intervals; }
    double midpoint() const { return 0.5 * (lo + hi); }

    // N = ceil(T^(1/(2n+1))), the horizon-matched interval count.
    static int auto_interval_count(std::int64_t horizon, int taylor_order) {
        if (horizon < 1) return 1;
        const double x = std::pow(static_cast<double>(horizon),
                                  1.0 / static_cast<double>(2 * taylor_order + 1));
        return std::max(1, static_cast<int>(std::ceil(x - 1e-9)));
    }
};

struct TaylorConfig {
    int order = 3;              // n >= 2
    double smoothness = 4.0;    // beta
    double failure_prob = 0.01; // delta
    double offset = 0.0;        // eta

    int feature_dim() const { return order * (order + 1) / 2; }  // kappa

    void validate() const {
        if (order < 2) throw std::invalid_argument("taylor: order must be >= 2");
        if (!(smoothness > 0.0)) throw std::invalid_argument("taylor: smoothness must be positive");
        if (!(failure_prob > 0.0 && failure_prob < 1.0))
            throw std::invalid_argument("taylor: failure probability must be in (0,1)");
    }
};

// Monomials eta^{i_e} * delta^{i_p} over i_e + i_p < n, total degree ascending
// and the eta power leading within a degree: (1, eta, delta, eta^2, ...).
inline void taylor_features(double eta, double price, double anchor, int order,
                            std::span<double> out) {
    const double delta = price - anchor;
    std::size_t idx = 0;
    for (int degree = 0; degree < order; ++degree) {
        for (int ie = degree; ie >= 0; --ie) {
            const int ip = degree - ie;
            out[idx++] = std::pow(eta, ie) * std::pow(delta, ip);
        }
    }
}

inline std::vector<double> taylor_features(double eta, double price, double anchor, int order) {
    std::vector<double> out(static_cast<std::size_t>(order * (order + 1) / 2));
    taylor_features(eta, price, anchor, order, out);
    return out;
}

// Local approximation error bound: beta*n/(n-1)! * (eta + (lo + hi)/N)^n.
inline double taylor_bias(const TaylorConfig& cfg, const PriceDomain& domain) {
    double factorial = 1.0;
    for (int i = 2; i < cfg.order; ++i) factorial *= i;
    const double span = cfg.offset + (domain.lo + domain.hi) / domain.intervals;
    return cfg.smoothness * cfg.order / factorial * std::pow(span, cfg.order);
}

// Confidence multiplier for the optimistic price estimate. With no samples the
// logarithm argument is floored at 4*kappa/delta and the sqrt(D) term drops.
inline double optimism_multiplier(const TaylorConfig& cfg, double bias, std::int64_t samples) {
    const double kappa = cfg.feature_dim();
    const double d = static_cast<double>(samples);
    const double log_arg = 4.0 * kappa * std::max(d, 1.0) / cfg.failure_prob;
    return cfg.smoothness * std::sqrt(kappa) + bias * std::sqrt(d) +
           std::sqrt(2.0 * kappa * std::log(log_arg)) + 2.0;
}

// Ridge regression state with identity prior: Lambda = I + sum phi phi^T,
// b = sum y phi, theta = Lambda^{-1} b. The inverse is maintained by rank-one
// updates so one observation costs O(dim^2).
class RidgeModel {
public:
    explicit RidgeModel(int dim);

    void observe(std::span<const double> phi, double target);

    double predict(std::span<const double> phi) const;
    double width2(std::span<const double> phi) const;  // phi^T Lambda^{-1} phi

    int dim() const { return dim_; }
    std::int64_t count() const { return count_; }
    const std::vector<double>& lambda() const { return lambda_; }
    const std::vector<double>& lambda_inv() const { return lambda_inv_; }
    const std::vector<double>& rhs() const { return b_; }
    const std::vector<double>& theta() const { return theta_; }

private:
    int dim_;
    std::int64_t count_ = 0;
    std::vector<double> lambda_;
    std::vector<double> lambda_inv_;
    std::vector<double> b_;
    std::vector<double> theta_;
    mutable std::vector<double> scratch_;
};

// Grid argmax of p * min(1, predict + rho*width + bias) over [lo, hi]
// inclusive; ties resolve to the lowest price.
template <typename FeatureFn>
double optimistic_clipped_argmax(const RidgeModel& model, double lo, double hi, int grid,
                                 double rho, double bias, FeatureFn&& features) {
    if (grid < 2) throw std::invalid_argument("price argmax: grid size must be >= 2");
    std::vector<double> phi(static_cast<std::size_t>(model.dim()));
    double best_p = lo;
    double best_obj = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
        const double p = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
        features(p, std::span<double>(phi));
        const double estimate =
            model.predict(phi) + rho * std::sqrt(model.width2(phi)) + bias;
        const double obj = p * std::min(1.0, estimate);
        if (obj > best_obj) {
            best_obj = obj;
            best_p = p;
        }
    }
    return best_p;
}

enum class IntervalWidthMode {
    Lemma2Rate,  // (beta + sqrt2) / sqrt(count)
    Literal,     // (beta + sqrt2) / count
};

// Coarse pricing stage: UCB over the N price intervals per (cluster, e).
class IntervalBandit {
public:
    explicit IntervalBandit(IntervalWidthMode mode = IntervalWidthMode::Literal)
        : mode_(mode) {}

    // 4 p_hi sqrt2 kappa ln(kappa T + 1) * (bias + (beta + sqrt2)/rate(count))
    double optimism(const PriceDomain& domain, const TaylorConfig& cfg, double bias,
                    std::int64_t horizon, std::int64_t count) const {
        const double kappa = cfg.feature_dim();
        const double lead = 4.0 * domain.hi * std::sqrt(2.0) * kappa *
                            std::log(kappa * static_cast<double>(horizon) + 1.0);
        const double c = static_cast<double>(count);
        const double rate = mode_ == IntervalWidthMode::Lemma2Rate ? std::sqrt(c) : c;
        return lead * (bias + (cfg.smoothness + std::sqrt(2.0)) / rate);
    }

    int select(const ClusterKey& cluster, int config, const PriceDomain& domain,
               const TaylorConfig& cfg, double bias, std::int64_t horizon) const {
        const auto it = stats_.find(pack_ce(cluster, config));
        if (it == stats_.end()) return 0;
        const auto& cells = it->second;
        int best = -1;
        double best_score = 0.0;
        for (int j = 0; j < domain.intervals; ++j) {
            const auto& cell = cells[static_cast<std::size_t>(j)];
            if (cell.count == 0) return j;
            const double score = cell.mean + optimism(domain, cfg, bias, horizon, cell.count);
            if (best < 0 || score > best_score) {
                best = j;
                best_score = score;
            }
        }
        return best;
    }

    void update(const ClusterKey& cluster, int config, int interval, double reward,
                const PriceDomain& domain) {
        if (interval < 0 || interval >= domain.intervals)
            throw std::invalid_argument("interval bandit: interval out of range");
        auto [it, inserted] = stats_.try_emplace(pack_ce(cluster, config));
        if (inserted) it->second.resize(static_cast<std::size_t>(domain.intervals));
        auto& cell = it->second[static_cast<std::size_t>(interval)];
        cell.count += 1;
        cell.sum += reward;
        cell.mean += (reward - cell.mean) / static_cast<double>(cell.count);
    }

    const ArmStats& cell(const ClusterKey& cluster, int config, int interval) const {
        static const ArmStats empty{};
        const auto it = stats_.find(pack_ce(cluster, config));
        if (it == stats_.end()) return empty;
        return it->second[static_cast<std::size_t>(interval)];
    }

    IntervalWidthMode mode() const { return mode_; }

private:
    IntervalWidthMode mode_;
    std::unordered_map<std::uint64_t, std::vector<ArmStats>> stats_;
};

// Fine pricing stage: one ridge model per (cluster, e, j) on Taylor features of
// the price offset within the interval (the configuration offset is zero by
// construction, since samples are filtered on the acting configuration).
class LocalPricer {
public:
    LocalPricer(TaylorConfig cfg, PriceDomain domain, int grid);

    double price(const ClusterKey& cluster, int config, int interval) const;
    void observe(const ClusterKey& cluster, int config, int interval, double p, double utility);

    const RidgeModel* model(const ClusterKey& cluster, int config, int interval) const;
    double bias() const { return bias_; }
    const TaylorConfig& taylor() const { return cfg_; }

private:
    TaylorConfig cfg_;
    PriceDomain domain_;
    int grid_;
    double bias_;
    RidgeModel fresh_;
    std::unordered_map<std::uint64_t, RidgeModel> models_;
};

}  // namespace vdt
