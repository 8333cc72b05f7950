#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "vdt/run_config.hpp"

namespace vdt {

// One logged round. Regret fields come from the brute-force oracle; the total
// is stored as the exact sum of the configuration and pricing parts.
struct RoundRow {
    std::int64_t t = 0;
    ClusterKey cluster;
    int config_index = 0;
    int config_value = 0;
    int interval = 0;
    double price = 0.0;
    double response = 0.0;
    double cost = 0.0;
    double reward = 0.0;
    double utility = 0.0;
    double regret = 0.0;
    double cum_regret = 0.0;
    double config_regret = 0.0;
    double price_regret = 0.0;
    std::int64_t scanned = 0;
    std::int64_t duration_ns = 0;  // not part of the round-log CSV
};

struct RunResult {
    RunConfig config;
    std::vector<RoundRow> rows;
    double oracle_slack = 0.0;

    std::string log_csv() const;
    std::string timing_csv() const;
};

struct ClusterSummary {
    ClusterKey key;
    std::int64_t rounds = 0;
    double avg_reward = 0.0;
    double reward_variance = 0.0;
    double cum_regret = 0.0;      // clamped at zero per round
    double cum_regret_raw = 0.0;
    double config_regret = 0.0;
    double price_regret = 0.0;
};

struct Summary {
    std::int64_t rounds = 0;
    double avg_reward = 0.0;
    double cum_regret = 0.0;      // sum of max(0, z_t)
    double cum_regret_raw = 0.0;  // sum of raw z_t
    double config_regret = 0.0;
    double price_regret = 0.0;
    double weighted_regret = 0.0;  // traffic-weighted per-cluster regret
    double mean_cluster_variance = 0.0;
    double oracle_slack = 0.0;
    std::vector<ClusterSummary> clusters;
    std::vector<double> window_regret;   // mean raw regret per window
    std::vector<double> window_reward;
    std::vector<std::int64_t> timing_decile_p50_ns;  // empty when timing absent
};

Summary summarize(const std::vector<RoundRow>& rows, double oracle_slack = 0.0);
std::string summary_text(const Summary& summary);
std::string clusters_csv(const Summary& summary);
std::string windows_csv(const Summary& summary);

// Writes <prefix>_summary.txt, <prefix>_clusters.csv, <prefix>_windows.csv.
void write_report_files(const Summary& summary, const std::string& prefix);

// Parses a round-log CSV (schema vdt.roundlog.v1); throws on tag mismatch.
std::vector<RoundRow> parse_log_csv(std::istream& in);

// Reusable run environment: dataset split, index, market and oracle cache.
// Policies and seeds vary per run; everything here is immutable during runs.
class Scenario {
public:
    explicit Scenario(const RunConfig& cfg);

    const IvfIndex& index() const { return *index_; }
    const VectorSet& holdout() const { return holdout_; }
    const MarketModel& market() const { return *market_; }
    const ConfigGrid& grid() const { return grid_; }
    const PriceDomain& domain() const { return domain_; }
    int c_bucket_total() const { return c_bucket_total_; }

    Query sample_query(Rng& rng) const;
    ClusterKey cluster_of(const Query& q) const;

    const OracleSolution& oracle_for(const ClusterKey& cluster) const;

private:
    RunConfig cfg_;
    VectorSet holdout_;
    std::unique_ptr<IvfIndex> index_;
    ConfigGrid grid_;
    PriceDomain domain_;
    std::unique_ptr<MarketModel> market_;
    int c_bucket_total_ = 5;
    mutable std::unordered_map<std::uint64_t, OracleSolution> oracles_;
};

// Executes the round loop for the configured policy pair. The seed override
// lets sweeps fan out without copying the config.
RunResult run_policy(const Scenario& scenario, const RunConfig& cfg, PolicyPair policy,
                     std::uint64_t seed);

// Convenience wrapper: build the scenario from the config and run it.
RunResult run(const RunConfig& cfg);

// Parameter sweep over one axis, crossed with seeds.
struct SweepCell {
    std::string axis;
    std::string value;
    std::uint64_t seed = 0;
    std::string policy;
    Summary summary;
};

std::vector<SweepCell> sweep(const RunConfig& base, const std::string& axis,
                             const std::vector<std::string>& values,
                             const std::vector<std::uint64_t>& seeds);
std::string sweep_csv(const std::vector<SweepCell>& cells);

// Text report for the build-index subcommand.
std::string index_report(const RunConfig& cfg);

}  // namespace vdt
