#include "vdt/simulate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "vdt/fvecs.hpp"

namespace vdt {

namespace {

constexpr const char* kLogSchema = "vdt.roundlog.v1";
constexpr const char* kTimingSchema = "vdt.timing.v1";
constexpr const char* kSweepSchema = "vdt.sweep.v1";

// Shortest round-trip-exact formatting keeps the CSV byte-deterministic.
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

VectorSet load_dataset(const DatasetSpec& spec) {
    if (spec.source == "fvecs") return load_fvecs(spec.path, spec.head);
    return synthetic_corpus(spec.count, spec.dim, spec.components, spec.spread, spec.seed);
}

std::vector<double> measure_recall(const IvfIndex& index, const VectorSet& holdout,
                                   const ConfigGrid& grid, int nprobe, std::uint64_t seed) {
    // mean recall@k of the bounded scan against exact search, per grid value
    Rng rng(derive_stream(seed, 0xca11));
    const int probes = 64;
    const int k = 10;
    std::vector<double> recall(grid.size(), 0.0);
    for (int q = 0; q < probes; ++q) {
        const auto row = holdout.row(static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(holdout.size()) - 1)));
        const auto exact = index.search(row, k, static_cast<int>(index.max_list_length()),
                                        static_cast<int>(index.nlist()));
        for (std::size_t e = 0; e < grid.size(); ++e) {
            const auto got = index.search(row, k, grid.value(e), nprobe);
            int hits = 0;
            for (auto id : got.ids)
                if (std::find(exact.ids.begin(), exact.ids.end(), id) != exact.ids.end()) ++hits;
            recall[e] += static_cast<double>(hits) / static_cast<double>(exact.ids.size());
        }
    }
    for (auto& r : recall) r /= probes;
    return recall;
}

}  // namespace

Scenario::Scenario(const RunConfig& cfg) : cfg_(cfg) {
    cfg_.validate();

    VectorSet all = load_dataset(cfg.dataset);
    const std::size_t n = all.size();
    if (n < 2) throw std::invalid_argument("scenario: dataset too small");
    const auto holdout_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(static_cast<double>(n) * cfg.queries.holdout));
    const std::size_t train_count = n - holdout_count;
    if (train_count == 0) throw std::invalid_argument("scenario: empty training split");

    VectorSet train(all.dim);
    train.data.assign(all.data.begin(),
                      all.data.begin() + static_cast<std::ptrdiff_t>(train_count * all.dim));
    holdout_.dim = all.dim;
    holdout_.data.assign(all.data.begin() + static_cast<std::ptrdiff_t>(train_count * all.dim),
                         all.data.end());

    if (static_cast<std::size_t>(cfg.index.nlist) > train_count)
        throw std::invalid_argument("scenario: nlist exceeds the training split");
    if (static_cast<std::size_t>(cfg.queries.k_hi) > train_count)
        throw std::invalid_argument("scenario: k range exceeds the training split");

    grid_ = cfg.grid;
    grid_.validate(train_count);
    domain_ = cfg.price_domain();
    if (domain_.intervals > 200) throw std::invalid_argument("scenario: too many price intervals");

    index_ = std::make_unique<IvfIndex>(IvfIndex::build(train, cfg.index));
    c_bucket_total_ = bucket_count_for_c(cfg.queries.c_max);

    market_ = std::make_unique<MarketModel>(cfg.market, grid_, domain_);
    if (cfg.market.quality_mode == "recall")
        market_->set_recall_table(
            measure_recall(*index_, holdout_, grid_, cfg.index_nprobe, cfg.seed));

    // The query ranges bound the reachable buckets, so the smoothness budget is
    // checked once per market here, for every cluster the run could touch.
    if (cfg.smoothness_check) {
        const double tiny = 1e-9;
        const int bc_hi = c_bucket(std::min(cfg.queries.c_lo + tiny, cfg.queries.c_hi),
                                   c_bucket_total_);
        const int bc_lo = c_bucket(cfg.queries.c_hi, c_bucket_total_);
        const int bk_lo = k_bucket(cfg.queries.k_lo);
        const int bk_hi = k_bucket(cfg.queries.k_hi);
        for (int centroid = 0; centroid < cfg.index.nlist; ++centroid)
            for (int bc = bc_lo; bc <= bc_hi; ++bc)
                for (int bk = bk_lo; bk <= bk_hi; ++bk) {
                    const ClusterKey key{centroid, bc, bk};
                    const double estimate = market_->smoothness_estimate(key, cfg.taylor.order);
                    if (cfg.taylor.smoothness < 0.9 * estimate)
                        throw std::invalid_argument(
                            "scenario: configured smoothness " +
                            std::to_string(cfg.taylor.smoothness) +
                            " does not dominate the measured derivative bound " +
                            std::to_string(estimate));
                }
    }
}

Query Scenario::sample_query(Rng& rng) const {
    Query q;
    const auto pick = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(holdout_.size()) - 1));
    const auto row = holdout_.row(pick);
    q.v.assign(row.begin(), row.end());
    // open at the low end: c in (c_lo, c_hi]
    q.c = cfg_.queries.c_hi - (cfg_.queries.c_hi - cfg_.queries.c_lo) * rng.uniform();
    q.k = static_cast<int>(rng.uniform_int(cfg_.queries.k_lo, cfg_.queries.k_hi));
    return q;
}

ClusterKey Scenario::cluster_of(const Query& q) const {
    return ClusterKey{index_->assign(q.v), c_bucket(q.c, c_bucket_total_), k_bucket(q.k)};
}

const OracleSolution& Scenario::oracle_for(const ClusterKey& cluster) const {
    auto it = oracles_.find(cluster.pack());
    if (it != oracles_.end()) return it->second;
    return oracles_
        .emplace(cluster.pack(),
                 solve_oracle(*market_, cluster, cfg_.oracle_grid, cfg_.taylor.smoothness))
        .first->second;
}

RunResult run_policy(const Scenario& scenario, const RunConfig& cfg, PolicyPair policy,
                     std::uint64_t seed) {
    const auto& grid = scenario.grid();
    const auto& domain = scenario.domain();
    const auto& market = scenario.market();
    const auto& index = scenario.index();

    Rng rng_queries(derive_stream(seed, 1));
    Rng rng_market(derive_stream(seed, 2));
    Rng rng_policy(derive_stream(seed, 3));

    History history;
    ConfigBandit config_bandit(grid.size());
    IntervalBandit interval_bandit(cfg.interval_rule);
    LocalPricer local_pricer(cfg.taylor, domain, cfg.lab_grid);
    LinearPricer linear_pricer(domain, cfg.taylor, cfg.lab_grid);
    ConvexPricer convex_pricer(domain, cfg.policy_params.epsilon);

    const double bias = taylor_bias(cfg.taylor, domain);
    const int fixed_config = cfg.fixed_config_index();
    const double fixed_price = cfg.fixed_price_value();

    RunResult result;
    result.config = cfg;
    result.rows.reserve(static_cast<std::size_t>(cfg.horizon));
    double cum_regret = 0.0;

    auto play_round = [&](std::int64_t t) {
        const auto started = std::chrono::steady_clock::now();

        const Query query = scenario.sample_query(rng_queries);
        const ClusterKey cluster = scenario.cluster_of(query);

        int config_index = 0;
        switch (policy.config) {
            case ConfigRule::Learned: config_index = config_bandit.select(cluster, t); break;
            case ConfigRule::Fixed: config_index = fixed_config; break;
            case ConfigRule::Random:
                config_index = static_cast<int>(
                    rng_policy.uniform_int(0, static_cast<std::int64_t>(grid.size()) - 1));
                break;
        }
        const int config_value = grid.value(static_cast<std::size_t>(config_index));

        int interval = 0;
        double price = 0.0;
        switch (policy.price) {
            case PriceRule::Learned:
                interval = interval_bandit.select(cluster, config_index, domain, cfg.taylor, bias,
                                                  cfg.horizon);
                price = local_pricer.price(cluster, config_index, interval);
                break;
            case PriceRule::Fixed: price = fixed_price; break;
            case PriceRule::Random: price = rng_policy.uniform(domain.lo, domain.hi); break;
            case PriceRule::Linear: price = linear_pricer.price(cluster, config_index); break;
            case PriceRule::Convex:
                price = convex_pricer.price(cluster, config_index, rng_policy);
                break;
        }
        if (policy.price != PriceRule::Learned) {
            interval = std::min(domain.intervals - 1,
                                std::max(0, static_cast<int>((price - domain.lo) / domain.width())));
        }

        const RetrievalResult retrieved =
            index.search(query.v, query.k, config_value, cfg.index_nprobe);
        const auto [response, cost] = market.respond(cluster, config_value, price, rng_market);
        const double reward = response * (price - cost);
        const double utility = reward / price;

        history.append({t, cluster, config_index, interval, price, response, cost, reward, utility});
        if (policy.config == ConfigRule::Learned) config_bandit.update(cluster, config_index, reward);
        switch (policy.price) {
            case PriceRule::Learned:
                interval_bandit.update(cluster, config_index, interval, reward, domain);
                local_pricer.observe(cluster, config_index, interval, price, utility);
                break;
            case PriceRule::Linear: linear_pricer.update(cluster, config_index, price, utility); break;
            case PriceRule::Convex: convex_pricer.update(cluster, config_index, price, reward); break;
            default: break;
        }

        const auto finished = std::chrono::steady_clock::now();

        const OracleSolution& oracle = scenario.oracle_for(cluster);
        RoundRow row;
        row.t = t;
        row.cluster = cluster;
        row.config_index = config_index;
        row.config_value = config_value;
        row.interval = interval;
        row.price = price;
        row.response = response;
        row.cost = cost;
        row.reward = reward;
        row.utility = utility;
        row.config_regret =
            oracle.best_value - oracle.value_for_config[static_cast<std::size_t>(config_index)];
        row.price_regret = oracle.value_for_config[static_cast<std::size_t>(config_index)] -
                           market.expected_reward(cluster, config_value, price);
        row.regret = row.config_regret + row.price_regret;
        cum_regret += row.regret;
        row.cum_regret = cum_regret;
        row.scanned = retrieved.scanned;
        row.duration_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(finished - started).count();
        result.rows.push_back(row);
        result.oracle_slack = std::max(result.oracle_slack, oracle.grid_slack);
    };

    for (std::int64_t t = 1; t <= cfg.horizon; ++t) {
        try {
            play_round(t);
        } catch (const std::exception& e) {
            // abort names the failing round
            throw std::runtime_error("round " + std::to_string(t) + ": " + e.what());
        }
    }
    return result;
}

RunResult run(const RunConfig& cfg) {
    Scenario scenario(cfg);
    RunResult result = run_policy(scenario, cfg, cfg.policy, cfg.seed);
    if (!cfg.output.log_csv.empty()) {
        std::ofstream out(cfg.output.log_csv, std::ios::binary);
        if (!out) throw std::runtime_error("run: cannot write " + cfg.output.log_csv);
        out << result.log_csv();
    }
    if (!cfg.output.timing_csv.empty()) {
        std::ofstream out(cfg.output.timing_csv, std::ios::binary);
        if (!out) throw std::runtime_error("run: cannot write " + cfg.output.timing_csv);
        out << result.timing_csv();
    }
    if (!cfg.output.report_prefix.empty())
        write_report_files(summarize(result.rows, result.oracle_slack), cfg.output.report_prefix);
    return result;
}

std::string RunResult::log_csv() const {
    std::string out;
    out += "schema,";
    out += kLogSchema;
    out += "\nt,centroid,c_bucket,k_bucket,config_index,config_value,interval,price,response,"
           "cost,reward,utility,regret,cum_regret,config_regret,price_regret,scanned\n";
    for (const auto& r : rows) {
        out += std::to_string(r.t) + ',' + std::to_string(r.cluster.centroid) + ',' +
               std::to_string(r.cluster.c_bucket) + ',' + std::to_string(r.cluster.k_bucket) +
               ',' + std::to_string(r.config_index) + ',' + std::to_string(r.config_value) + ',' +
               std::to_string(r.interval) + ',' + fmt(r.price) + ',' + fmt(r.response) + ',' +
               fmt(r.cost) + ',' + fmt(r.reward) + ',' + fmt(r.utility) + ',' + fmt(r.regret) +
               ',' + fmt(r.cum_regret) + ',' + fmt(r.config_regret) + ',' + fmt(r.price_regret) +
               ',' + std::to_string(r.scanned) + '\n';
    }
    return out;
}

std::string RunResult::timing_csv() const {
    std::string out;
    out += "schema,";
    out += kTimingSchema;
    out += "\nt,duration_ns\n";
    for (const auto& r : rows)
        out += std::to_string(r.t) + ',' + std::to_string(r.duration_ns) + '\n';
    return out;
}

Summary summarize(const std::vector<RoundRow>& rows, double oracle_slack) {
    Summary s;
    s.rounds = static_cast<std::int64_t>(rows.size());
    s.oracle_slack = oracle_slack;
    if (rows.empty()) return s;

    std::unordered_map<std::uint64_t, ClusterSummary> clusters;
    // two-pass per-cluster variance: means first
    std::unordered_map<std::uint64_t, double> mean_of;
    for (const auto& r : rows) {
        auto& c = clusters[r.cluster.pack()];
        c.key = r.cluster;
        c.rounds += 1;
        c.avg_reward += r.reward;
        c.cum_regret += std::max(0.0, r.regret);
        c.cum_regret_raw += r.regret;
        c.config_regret += r.config_regret;
        c.price_regret += r.price_regret;

        s.avg_reward += r.reward;
        s.cum_regret += std::max(0.0, r.regret);
        s.cum_regret_raw += r.regret;
        s.config_regret += r.config_regret;
        s.price_regret += r.price_regret;
    }
    for (auto& [key, c] : clusters) {
        c.avg_reward /= static_cast<double>(c.rounds);
        mean_of[key] = c.avg_reward;
    }
    for (const auto& r : rows) {
        const double d = r.reward - mean_of[r.cluster.pack()];
        clusters[r.cluster.pack()].reward_variance += d * d;
    }

    s.avg_reward /= static_cast<double>(s.rounds);
    for (auto& [key, c] : clusters) {
        c.reward_variance /= static_cast<double>(c.rounds);
        s.mean_cluster_variance += c.reward_variance;
        // traffic weights w = T_cluster / T
        s.weighted_regret +=
            (static_cast<double>(c.rounds) / static_cast<double>(s.rounds)) * c.cum_regret;
        s.clusters.push_back(c);
    }
    s.mean_cluster_variance /= static_cast<double>(clusters.size());
    std::sort(s.clusters.begin(), s.clusters.end(), [](const auto& a, const auto& b) {
        return a.key.pack() < b.key.pack();
    });

    // windowed regret/reward series, 100 windows
    const std::size_t window = std::max<std::size_t>(1, rows.size() / 100);
    for (std::size_t start = 0; start < rows.size(); start += window) {
        const std::size_t stop = std::min(rows.size(), start + window);
        double zr = 0.0, rw = 0.0;
        for (std::size_t i = start; i < stop; ++i) {
            zr += rows[i].regret;
            rw += rows[i].reward;
        }
        s.window_regret.push_back(zr / static_cast<double>(stop - start));
        s.window_reward.push_back(rw / static_cast<double>(stop - start));
    }

    // per-decile median round duration
    if (rows.front().duration_ns > 0 || rows.back().duration_ns > 0) {
        const std::size_t decile = rows.size() / 10;
        if (decile > 0) {
            for (int d = 0; d < 10; ++d) {
                std::vector<std::int64_t> slice;
                slice.reserve(decile);
                for (std::size_t i = static_cast<std::size_t>(d) * decile;
                     i < static_cast<std::size_t>(d + 1) * decile; ++i)
                    slice.push_back(rows[i].duration_ns);
                std::nth_element(slice.begin(), slice.begin() + static_cast<std::ptrdiff_t>(slice.size() / 2),
                                 slice.end());
                s.timing_decile_p50_ns.push_back(slice[slice.size() / 2]);
            }
        }
    }
    return s;
}

std::string summary_text(const Summary& s) {
    std::ostringstream out;
    out << "rounds: " << s.rounds << "\n";
    out << "clusters: " << s.clusters.size() << "\n";
    out << "avg_reward: " << fmt(s.avg_reward) << "\n";
    out << "cum_regret: " << fmt(s.cum_regret) << "\n";
    out << "cum_regret_raw: " << fmt(s.cum_regret_raw) << "\n";
    out << "config_regret: " << fmt(s.config_regret) << "\n";
    out << "price_regret: " << fmt(s.price_regret) << "\n";
    out << "weighted_regret: " << fmt(s.weighted_regret) << "\n";
    out << "mean_intra_cluster_reward_variance: " << fmt(s.mean_cluster_variance) << "\n";
    out << "oracle_grid_slack: " << fmt(s.oracle_slack) << "\n";
    if (!s.timing_decile_p50_ns.empty()) {
        out << "round_duration_p50_by_decile_ns:";
        for (auto v : s.timing_decile_p50_ns) out << ' ' << v;
        out << "\n";
    }
    out << "per_cluster (centroid/c_bucket/k_bucket rounds avg_reward cum_regret):\n";
    for (const auto& c : s.clusters) {
        out << "  " << c.key.centroid << '/' << c.key.c_bucket << '/' << c.key.k_bucket << ' '
            << c.rounds << ' ' << fmt(c.avg_reward) << ' ' << fmt(c.cum_regret) << "\n";
    }
    return out.str();
}

std::string clusters_csv(const Summary& s) {
    std::string out = "schema,vdt.clusters.v1\n";
    out += "centroid,c_bucket,k_bucket,rounds,avg_reward,reward_variance,cum_regret,"
           "cum_regret_raw,config_regret,price_regret\n";
    for (const auto& c : s.clusters) {
        out += std::to_string(c.key.centroid) + ',' + std::to_string(c.key.c_bucket) + ',' +
               std::to_string(c.key.k_bucket) + ',' + std::to_string(c.rounds) + ',' +
               fmt(c.avg_reward) + ',' + fmt(c.reward_variance) + ',' + fmt(c.cum_regret) + ',' +
               fmt(c.cum_regret_raw) + ',' + fmt(c.config_regret) + ',' + fmt(c.price_regret) +
               '\n';
    }
    return out;
}

std::string windows_csv(const Summary& s) {
    std::string out = "schema,vdt.windows.v1\nwindow,mean_regret,mean_reward\n";
    for (std::size_t i = 0; i < s.window_regret.size(); ++i) {
        out += std::to_string(i) + ',' + fmt(s.window_regret[i]) + ',' + fmt(s.window_reward[i]) +
               '\n';
    }
    return out;
}

void write_report_files(const Summary& summary, const std::string& prefix) {
    const auto write = [](const std::string& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("report: cannot write " + path);
        out << content;
    };
    write(prefix + "_summary.txt", summary_text(summary));
    write(prefix + "_clusters.csv", clusters_csv(summary));
    write(prefix + "_windows.csv", windows_csv(summary));
}

std::vector<RoundRow> parse_log_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("schema,", 0) != 0 ||
        line.substr(7) != kLogSchema)
        throw std::runtime_error("round log: missing or unsupported schema tag");
    if (!std::getline(in, line)) throw std::runtime_error("round log: missing header");

    std::vector<RoundRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::array<std::string, 17> fields;
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= fields.size())
                    throw std::runtime_error("round log: too many columns");
                fields[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != fields.size()) throw std::runtime_error("round log: wrong column count");
        RoundRow r;
        r.t = std::stoll(fields[0]);
        r.cluster = {std::stoi(fields[1]), std::stoi(fields[2]), std::stoi(fields[3])};
        r.config_index = std::stoi(fields[4]);
        r.config_value = std::stoi(fields[5]);
        r.interval = std::stoi(fields[6]);
        r.price = std::stod(fields[7]);
        r.response = std::stod(fields[8]);
        r.cost = std::stod(fields[9]);
        r.reward = std::stod(fields[10]);
        r.utility = std::stod(fields[11]);
        r.regret = std::stod(fields[12]);
        r.cum_regret = std::stod(fields[13]);
        r.config_regret = std::stod(fields[14]);
        r.price_regret = std::stod(fields[15]);
        r.scanned = std::stoll(fields[16]);
        rows.push_back(r);
    }
    return rows;
}

std::vector<SweepCell> sweep(const RunConfig& base, const std::string& axis,
                             const std::vector<std::string>& values,
                             const std::vector<std::uint64_t>& seeds) {
    if (values.empty()) throw std::invalid_argument("sweep: no values given");
    const std::vector<std::uint64_t> seed_list = seeds.empty()
                                                     ? std::vector<std::uint64_t>{base.seed}
                                                     : seeds;
    std::vector<SweepCell> cells;

    const auto run_cell = [&](const RunConfig& cfg, const Scenario& scenario,
                              const std::string& value, std::uint64_t seed) {
        RunResult result = run_policy(scenario, cfg, cfg.policy, seed);
        SweepCell cell;
        cell.axis = axis;
        cell.value = value;
        cell.seed = seed;
        cell.policy = policy_name(cfg.policy);
        cell.summary = summarize(result.rows, result.oracle_slack);
        cells.push_back(std::move(cell));
    };

    if (axis == "seed") {
        Scenario scenario(base);
        for (const auto& v : values) run_cell(base, scenario, v, std::stoull(v));
        return cells;
    }
    if (axis == "policy") {
        Scenario scenario(base);
        for (const auto& v : values) {
            RunConfig cfg = base;
            const auto parsed = parse_policy(v);
            if (!parsed) throw std::invalid_argument("sweep: unknown policy " + v);
            cfg.policy = *parsed;
            for (auto seed : seed_list) run_cell(cfg, scenario, v, seed);
        }
        return cells;
    }
    if (axis == "k-range") {
        Scenario scenario(base);
        for (const auto& v : values) {
            RunConfig cfg = base;
            const auto colon = v.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("sweep: k-range values look like lo:hi");
            cfg.queries.k_lo = std::stoi(v.substr(0, colon));
            cfg.queries.k_hi = std::stoi(v.substr(colon + 1));
            cfg.validate();
            for (auto seed : seed_list) run_cell(cfg, scenario, v, seed);
        }
        return cells;
    }
    if (axis == "p_hi" || axis == "nlist") {
        for (const auto& v : values) {
            RunConfig cfg = base;
            if (axis == "p_hi")
                cfg.price.hi = std::stod(v);
            else
                cfg.index.nlist = std::stoi(v);
            cfg.validate();
            Scenario scenario(cfg);
            for (auto seed : seed_list) run_cell(cfg, scenario, v, seed);
        }
        return cells;
    }
    throw std::invalid_argument("sweep: axis must be one of p_hi, k-range, nlist, policy, seed");
}

std::string sweep_csv(const std::vector<SweepCell>& cells) {
    std::string out = "schema,";
    out += kSweepSchema;
    out += "\naxis,value,seed,policy,rounds,avg_reward,cum_regret,cum_regret_raw,"
           "config_regret,price_regret\n";
    for (const auto& c : cells) {
        out += c.axis + ',' + c.value + ',' + std::to_string(c.seed) + ',' + c.policy + ',' +
               std::to_string(c.summary.rounds) + ',' + fmt(c.summary.avg_reward) + ',' +
               fmt(c.summary.cum_regret) + ',' + fmt(c.summary.cum_regret_raw) + ',' +
               fmt(c.summary.config_regret) + ',' + fmt(c.summary.price_regret) + '\n';
    }
    return out;
}

std::string index_report(const RunConfig& cfg) {
    Scenario scenario(cfg);
    const auto& index = scenario.index();
    std::size_t shortest = index.dataset_size(), longest = 0;
    for (std::size_t c = 0; c < index.nlist(); ++c) {
        shortest = std::min(shortest, index.posting_list(c).size());
        longest = std::max(longest, index.posting_list(c).size());
    }
    std::ostringstream out;
    out << "index: nlist=" << index.nlist() << " dim=" << index.dim()
        << " vectors=" << index.dataset_size() << " holdout=" << scenario.holdout().size()
        << "\nposting lists: min=" << shortest << " max=" << longest
        << " mean=" << fmt(static_cast<double>(index.dataset_size()) /
                           static_cast<double>(index.nlist()))
        << "\n";
    return out.str();
}

}  // namespace vdt
