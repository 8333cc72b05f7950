#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace vdt {

// One buyer request: query vector, approximation factor c > 1, retrieval size k.
struct Query {
    std::vector<float> v;
    double c = 2.0;
    int k = 1;
};

inline void validate_query(const Query& q, std::size_t dim, std::size_t dataset_size) {
    if (q.c <= 1.0) throw std::invalid_argument("query: approximation factor must exceed 1");
    if (q.k < 1 || static_cast<std::size_t>(q.k) > dataset_size)
        throw std::invalid_argument("query: k out of range");
    if (q.v.size() != dim) throw std::invalid_argument("query: vector dimension mismatch");
}

// b_c(c) = B_c - floor(log2 c), with B_c = ceil(log2 c_max) + 1.
inline int bucket_count_for_c(double c_max) {
    if (c_max <= 1.0) throw std::invalid_argument("c_max must exceed 1");
    return static_cast<int>(std::ceil(std::log2(c_max))) + 1;
}

inline int c_bucket(double c, int b_c_total) {
    return b_c_total - static_cast<int>(std::floor(std::log2(c)));
}

// b_k(k) = floor(log2 k), exact for all k >= 1.
inline int k_bucket(int k) {
    if (k < 1) throw std::invalid_argument("k_bucket: k must be positive");
    return std::bit_width(static_cast<unsigned>(k)) - 1;
}

// Context partition key: (IVF centroid, c bucket, k bucket).
struct ClusterKey {
    int centroid = 0;
    int c_bucket = 0;
    int k_bucket = 0;

    bool operator==(const ClusterKey&) const = default;

    std::uint64_t pack() const {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(centroid)) << 32) |
               (static_cast<std::uint64_t>(static_cast<std::uint8_t>(c_bucket)) << 24) |
               (static_cast<std::uint64_t>(static_cast<std::uint8_t>(k_bucket)) << 16);
    }
};

// Composite keys for the per-(cluster), per-(cluster, e) and per-(cluster, e, j)
// statistics tables. Fields stay within their bit widths for any sane run
// (centroid < 2^32, buckets in int8, config < 256, interval < 2^8).
inline std::uint64_t pack_ce(const ClusterKey& key, int config) {
    return key.pack() | (static_cast<std::uint64_t>(static_cast<std::uint8_t>(config)) << 8);
}

inline std::uint64_t pack_cej(const ClusterKey& key, int config, int interval) {
    return pack_ce(key, config) | static_cast<std::uint64_t>(static_cast<std::uint8_t>(interval));
}

// One round of the trading loop; reward and utility are stored as computed,
// r = s*(p - cost) and y = r/p, with no clamping.
struct InteractionRecord {
    std::int64_t t = 0;
    ClusterKey cluster;
    int config = 0;    // index into the configuration grid
    int interval = 0;  // price interval index
    double price = 0.0;
    double response = 0.0;  // s in [0,1]
    double cost = 0.0;
    double reward = 0.0;   // s * (price - cost)
    double utility = 0.0;  // reward / price
};

// Append-only interaction history with per-key indices kept in lockstep.
class History {
public:
    void append(const InteractionRecord& rec) {
        if (rec.t != static_cast<std::int64_t>(records_.size()) + 1)
            throw std::invalid_argument("history: out-of-order round index");
        const auto idx = static_cast<std::uint32_t>(records_.size());
        records_.push_back(rec);
        by_cluster_[rec.cluster.pack()].push_back(idx);
        by_config_[pack_ce(rec.cluster, rec.config)].push_back(idx);
        by_interval_[pack_cej(rec.cluster, rec.config, rec.interval)].push_back(idx);
    }

    std::size_t size() const { return records_.size(); }
    const InteractionRecord& operator[](std::size_t i) const { return records_[i]; }
    std::span<const InteractionRecord> records() const { return records_; }

    std::span<const std::uint32_t> ids_for(const ClusterKey& key) const {
        return lookup(by_cluster_, key.pack());
    }
    std::span<const std::uint32_t> ids_for(const ClusterKey& key, int config) const {
        return lookup(by_config_, pack_ce(key, config));
    }
    std::span<const std::uint32_t> ids_for(const ClusterKey& key, int config, int interval) const {
        return lookup(by_interval_, pack_cej(key, config, interval));
    }

    // Rewards of records matching (cluster, e), in insertion order.
    std::vector<double> rewards_for(const ClusterKey& key, int config) const {
        std::vector<double> out;
        for (auto idx : ids_for(key, config)) out.push_back(records_[idx].reward);
        return out;
    }

    // (price, utility) pairs matching (cluster, e, j), in insertion order.
    std::vector<std::pair<double, double>> samples_for(const ClusterKey& key, int config,
                                                       int interval) const {
        std::vector<std::pair<double, double>> out;
        for (auto idx : ids_for(key, config, interval))
            out.emplace_back(records_[idx].price, records_[idx].utility);
        return out;
    }

private:
    static std::span<const std::uint32_t> lookup(
        const std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& map,
        std::uint64_t key) {
        auto it = map.find(key);
        if (it == map.end()) return {};
        return it->second;
    }

    std::vector<InteractionRecord> records_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_cluster_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_config_;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_interval_;
};

}  // namespace vdt
