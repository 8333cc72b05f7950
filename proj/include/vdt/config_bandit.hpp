#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "vdt/core.hpp"

namespace vdt {

struct ArmStats {
    std::int64_t count = 0;
    double sum = 0.0;
    double mean = 0.0;
};

// Stage I learner: one UCB instance per cluster over the configuration grid.
// Statistics are incremental mirrors of the per-(cluster, e) reward history.
class ConfigBandit {
public:
    explicit ConfigBandit(std::size_t num_configs) : arms_(num_configs) {
        if (arms_ == 0) throw std::invalid_argument("config bandit: empty grid");
    }

    // sqrt(2 ln t / n); t is the global round index.
    static double radius(std::int64_t t, std::int64_t n) {
        return std::sqrt(2.0 * std::log(static_cast<double>(t)) / static_cast<double>(n));
    }

    // Argmax of the optimistic estimates; untried arms rank as infinite and
    // all ties resolve to the lowest configuration index.
    int select(const ClusterKey& cluster, std::int64_t t) const {
        if (t < 1) throw std::invalid_argument("config bandit: round index must be >= 1");
        const auto it = stats_.find(cluster.pack());
        if (it == stats_.end()) return 0;
        const auto& arms = it->second;
        int best = -1;
        double best_score = 0.0;
        for (std::size_t e = 0; e < arms_; ++e) {
            if (arms[e].count == 0) return static_cast<int>(e);
            const double score = arms[e].mean + radius(t, arms[e].count);
            if (best < 0 || score > best_score) {
                best = static_cast<int>(e);
                best_score = score;
            }
        }
        return best;
    }

    void update(const ClusterKey& cluster, int config, double reward) {
        if (config < 0 || static_cast<std::size_t>(config) >= arms_)
            throw std::invalid_argument("config bandit: unknown configuration id");
        auto& arms = table(cluster);
        auto& a = arms[static_cast<std::size_t>(config)];
        a.count += 1;
        a.sum += reward;
        a.mean += (reward - a.mean) / static_cast<double>(a.count);
    }

    const ArmStats& arm(const ClusterKey& cluster, int config) const {
        static const ArmStats empty{};
        const auto it = stats_.find(cluster.pack());
        if (it == stats_.end()) return empty;
        return it->second[static_cast<std::size_t>(config)];
    }

    std::int64_t cluster_rounds(const ClusterKey& cluster) const {
        const auto it = stats_.find(cluster.pack());
        if (it == stats_.end()) return 0;
        std::int64_t total = 0;
        for (const auto& a : it->second) total += a.count;
        return total;
    }

    std::size_t num_configs() const { return arms_; }

private:
    std::vector<ArmStats>& table(const ClusterKey& cluster) {
        auto [it, inserted] = stats_.try_emplace(cluster.pack());
        if (inserted) it->second.resize(arms_);
        return it->second;
    }

    std::size_t arms_;
    std::unordered_map<std::uint64_t, std::vector<ArmStats>> stats_;
};

}  // namespace vdt
