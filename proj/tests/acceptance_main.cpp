// Acceptance suite: one check block per criterion, one pass/fail line each.
// Every tolerance is pinned in code; measured values are printed alongside.
// Exit code is the number of failed criteria.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "vdt/fvecs.hpp"
#include "vdt/simulate.hpp"

using namespace vdt;

namespace {

struct SubCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id = 0;
    std::string title;
    std::vector<SubCheck> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void add(Criterion& cr, const std::string& name, bool pass, const std::string& detail) {
    cr.checks.push_back({name, pass, detail});
}

// ---- independent oracles ----------------------------------------------------

std::vector<double> dense_solve(std::vector<double> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t c = i + 1; c < n; ++c) acc -= a[i * n + c] * x[c];
        x[i] = acc / a[i * n + i];
    }
    return x;
}

std::vector<std::uint32_t> exact_knn(const VectorSet& data, std::span<const float> v, int k) {
    std::vector<std::pair<double, std::uint32_t>> all(data.size());
    for (std::size_t i = 0; i < data.size(); ++i)
        all[i] = {squared_distance(v, data.row(i)), static_cast<std::uint32_t>(i)};
    const auto keep = std::min<std::size_t>(all.size(), static_cast<std::size_t>(k));
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end());
    std::vector<std::uint32_t> ids(keep);
    for (std::size_t i = 0; i < keep; ++i) ids[i] = all[i].second;
    return ids;
}

// ---- shared run setups --------------------------------------------------------

RunConfig desk_config(std::uint64_t corpus_seed) {
    RunConfig cfg;
    cfg.horizon = 10000;
    cfg.dataset.count = 3000;
    cfg.dataset.dim = 8;
    cfg.dataset.components = 8;
    cfg.dataset.seed = corpus_seed;
    cfg.index.nlist = 8;
    cfg.index_nprobe = 4;
    cfg.queries.c_lo = 1.1;
    cfg.queries.c_hi = 1.9;
    cfg.queries.k_lo = 16;
    cfg.queries.k_hi = 31;
    cfg.oracle_grid = 10000;
    return cfg;
}

struct PolicyScore {
    double reward = 0.0;
    double regret = 0.0;
};

// measurements shared between criteria 3/4 and the invariant suite
struct Shared {
    bool have_ranking = false;
    std::vector<std::array<PolicyScore, 7>> ranking;  // per corpus
    bool have_sublinearity = false;
    double decile_ratio = 0.0;
    double cum_ratio = 0.0;
} g_shared;

constexpr const char* kPolicyNames[7] = {"vthb", "conp", "linp", "stp", "rdp", "rdcf", "stcf"};

// ---- criterion 1 ---------------------------------------------------------------

Criterion criterion1() {
    Criterion cr{1, "oracle equivalences"};

    {
        Rng rng(101);
        RidgeModel model(6);
        std::vector<double> lambda(36, 0.0), rhs(6, 0.0);
        for (int i = 0; i < 6; ++i) lambda[i * 6 + i] = 1.0;
        for (int s = 0; s < 200; ++s) {
            std::vector<double> phi(6);
            for (auto& x : phi) x = rng.uniform(-1.0, 1.0);
            const double y = rng.uniform(-1.5, 1.5);
            model.observe(phi, y);
            for (int i = 0; i < 6; ++i) {
                rhs[i] += y * phi[i];
                for (int j = 0; j < 6; ++j) lambda[i * 6 + j] += phi[i] * phi[j];
            }
        }
        const auto direct = dense_solve(lambda, rhs);
        double worst = 0.0;
        for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(direct[i] - model.theta()[i]));
        add(cr, "ridge solution vs dense normal-equation solve", worst <= 1e-8,
            "max|delta| = " + num(worst) + " (tol 1e-8)");
    }

    {
        Rng rng(102);
        RidgeModel model(6);
        for (int s = 0; s < 30; ++s) {
            std::vector<double> phi(6);
            for (auto& x : phi) x = rng.uniform(-1.0, 1.0);
            model.observe(phi, rng.uniform(-1.0, 1.0));
        }
        double worst = 0.0;
        for (int col = 0; col < 6; ++col) {
            std::vector<double> unit(6, 0.0);
            unit[col] = 1.0;
            const auto column = dense_solve(model.lambda(), unit);
            for (int row = 0; row < 6; ++row)
                worst = std::max(worst, std::abs(column[row] - model.lambda_inv()[row * 6 + col]));
        }
        add(cr, "rank-one inverse vs fresh inversion after 30 updates", worst <= 1e-8,
            "max|delta| = " + num(worst) + " (tol 1e-8)");
    }

    {
        const VectorSet data = synthetic_corpus(1500, 8, 6, 0.35, 7);
        const auto index = IvfIndex::build(data, {10, 3, 50, 1e-6});
        Rng rng(103);
        int mismatches = 0;
        for (int probe = 0; probe < 200; ++probe) {
            std::vector<float> v(8);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            int best = 0;
            double best_d = squared_distance(std::span<const float>(v), index.centroid(0));
            for (std::size_t c = 1; c < index.nlist(); ++c) {
                const double d = squared_distance(std::span<const float>(v), index.centroid(c));
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            if (index.assign(v) != best) ++mismatches;
        }
        add(cr, "ivf assignment vs exhaustive nearest centroid (200 probes)", mismatches == 0,
            std::to_string(mismatches) + " mismatches (tol 0)");
    }

    {
        const VectorSet data = synthetic_corpus(900, 8, 5, 0.4, 9);
        const auto index = IvfIndex::build(data, {6, 4, 50, 1e-6});
        Rng rng(104);
        int mismatches = 0;
        for (int probe = 0; probe < 100; ++probe) {
            std::vector<float> v(8);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            const auto got = index.search(v, 10, static_cast<int>(index.max_list_length()),
                                          static_cast<int>(index.nlist()));
            if (got.ids != exact_knn(data, v, 10)) ++mismatches;
        }
        add(cr, "full-budget search vs exact kNN (100 queries)", mismatches == 0,
            std::to_string(mismatches) + " mismatches (tol 0)");
    }

    {
        Rng rng(105);
        History h;
        std::vector<ClusterKey> keys;
        for (int c = 0; c < 5; ++c) keys.push_back({c, 5 - c % 2, 3 + c % 3});
        for (std::int64_t t = 1; t <= 1000; ++t) {
            InteractionRecord rec;
            rec.t = t;
            rec.cluster = keys[static_cast<std::size_t>(rng.uniform_int(0, 4))];
            rec.config = static_cast<int>(rng.uniform_int(0, 3));
            rec.interval = static_cast<int>(rng.uniform_int(0, 4));
            rec.price = rng.uniform(1.0, 9.0);
            rec.response = rng.uniform();
            rec.cost = rng.uniform(0.0, 0.5);
            rec.reward = rec.response * (rec.price - rec.cost);
            rec.utility = rec.reward / rec.price;
            h.append(rec);
        }
        int mismatches = 0;
        for (const auto& key : keys)
            for (int e = 0; e < 4; ++e) {
                std::vector<double> brute;
                for (const auto& rec : h.records())
                    if (rec.cluster == key && rec.config == e) brute.push_back(rec.reward);
                if (h.rewards_for(key, e) != brute) ++mismatches;
                for (int j = 0; j < 5; ++j) {
                    std::vector<std::pair<double, double>> pairs;
                    for (const auto& rec : h.records())
                        if (rec.cluster == key && rec.config == e && rec.interval == j)
                            pairs.emplace_back(rec.price, rec.utility);
                    if (h.samples_for(key, e, j) != pairs) ++mismatches;
                }
            }
        add(cr, "history index vs linear-scan filter", mismatches == 0,
            std::to_string(mismatches) + " mismatches (tol 0)");
    }

    return cr;
}

// ---- criterion 2 ---------------------------------------------------------------

Criterion criterion2() {
    Criterion cr{2, "configuration-learner logarithmic shape"};
    // delta is the separation between the reward intervals: arms draw from
    // [0.65, 0.95] and [0.15, 0.45], so l* - u_bad = 0.2
    const double gap = 0.2;
    const ClusterKey key{0, 5, 4};

    auto suboptimal_pulls = [&](std::int64_t horizon, std::uint64_t seed) {
        Rng rng(seed);
        ConfigBandit bandit(2);
        std::int64_t bad = 0;
        for (std::int64_t t = 1; t <= horizon; ++t) {
            const int e = bandit.select(key, t);
            const double base = e == 0 ? 0.8 : 0.3;
            bandit.update(key, e, base + rng.uniform(-0.15, 0.15));
            if (e == 1) ++bad;
        }
        return static_cast<double>(bad);
    };

    double pulls_1e3 = 0.0, pulls_1e4 = 0.0;
    const int seeds = 20;
    for (int s = 1; s <= seeds; ++s) {
        pulls_1e3 += suboptimal_pulls(1000, 200 + s);
        pulls_1e4 += suboptimal_pulls(10000, 300 + s);
    }
    pulls_1e3 /= seeds;
    pulls_1e4 /= seeds;

    const double bound_1e3 = 8.0 * std::log(1000.0) / (gap * gap) + 10.0;
    const double bound_1e4 = 8.0 * std::log(10000.0) / (gap * gap) + 10.0;
    add(cr, "mean suboptimal pulls at T=1e3 within 8 ln T / gap^2 + 10", pulls_1e3 <= bound_1e3,
        num(pulls_1e3) + " <= " + num(bound_1e3));
    add(cr, "mean suboptimal pulls at T=1e4 within 8 ln T / gap^2 + 10", pulls_1e4 <= bound_1e4,
        num(pulls_1e4) + " <= " + num(bound_1e4));

    const double ratio = pulls_1e4 / pulls_1e3;
    const double ratio_bound = std::log(10000.0) / std::log(1000.0) + 0.5;
    add(cr, "pull-count growth ratio tracks ln T", ratio <= ratio_bound,
        num(ratio) + " <= " + num(ratio_bound));
    return cr;
}

// ---- criterion 3 ---------------------------------------------------------------

Criterion criterion3() {
    Criterion cr{3, "pricing sublinearity shape"};

    // single cluster, single configuration, gentle unimodal demand
    RunConfig cfg;
    cfg.horizon = 20000;
    cfg.dataset.count = 500;
    cfg.dataset.dim = 4;
    cfg.dataset.components = 1;
    cfg.index.nlist = 1;
    cfg.index_nprobe = 1;
    cfg.grid.values = {32};
    cfg.queries.c_lo = 1.1;
    cfg.queries.c_hi = 1.9;
    cfg.queries.k_lo = 4;
    cfg.queries.k_hi = 7;
    cfg.taylor.order = 3;
    cfg.taylor.smoothness = 0.5;
    cfg.price.intervals = 0;  // auto-sized: ceil(20000^(1/7)) = 5
    cfg.oracle_grid = 10000;
    cfg.market.bump1 = {5.5, 2.2, 1.5, 0.9};
    cfg.market.bump2 = {5.5, 2.2, 1.5, 0.9};
    cfg.market.quality_e0 = 10.0;
    cfg.market.cost_base = 0.05;
    cfg.market.cost_log = 0.01;
    cfg.market.jitter = 0.0;

    Scenario scenario(cfg);
    const int seeds = 20;
    double first = 0.0, last = 0.0, half_sum = 0.0, full_sum = 0.0;
    for (int s = 1; s <= seeds; ++s) {
        const auto result = run_policy(scenario, cfg, *parse_policy("vthb"), 400 + s);
        const auto& rows = result.rows;
        const std::size_t decile = rows.size() / 10;
        double f = 0.0, l = 0.0, cum = 0.0, half = 0.0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i < decile) f += rows[i].price_regret;
            if (i >= 9 * decile) l += rows[i].price_regret;
            cum += rows[i].price_regret;
            if (i + 1 == rows.size() / 2) half = cum;
        }
        first += f / static_cast<double>(decile);
        last += l / static_cast<double>(decile);
        half_sum += half;
        full_sum += cum;
    }
    first /= seeds;
    last /= seeds;
    const double decile_ratio = last / first;
    const double cum_ratio = full_sum / half_sum;
    g_shared.have_sublinearity = true;
    g_shared.decile_ratio = decile_ratio;
    g_shared.cum_ratio = cum_ratio;

    add(cr, "last-decile pricing regret <= 0.5x first decile", decile_ratio <= 0.5,
        "ratio = " + num(decile_ratio) + " (last " + num(last) + ", first " + num(first) + ")");
    const double cum_bound = std::pow(2.0, 4.0 / 7.0) + 0.15;
    add(cr, "cumulative pricing regret R(2T)/R(T) within the sublinear bound",
        cum_ratio <= cum_bound, "ratio = " + num(cum_ratio) + " <= " + num(cum_bound));
    return cr;
}

// ---- criterion 4 ---------------------------------------------------------------

Criterion criterion4() {
    Criterion cr{4, "qualitative ranking vs baselines"};
    const int seeds = 20;
    const std::uint64_t corpora[4] = {11, 12, 13, 14};

    g_shared.ranking.clear();
    for (std::uint64_t corpus : corpora) {
        RunConfig cfg = desk_config(corpus);
        Scenario scenario(cfg);
        std::array<PolicyScore, 7> scores{};
        for (int p = 0; p < 7; ++p) {
            for (int s = 1; s <= seeds; ++s) {
                const auto result =
                    run_policy(scenario, cfg, *parse_policy(kPolicyNames[p]), 1000 + s);
                const auto sum = summarize(result.rows, result.oracle_slack);
                scores[static_cast<std::size_t>(p)].reward += sum.avg_reward / seeds;
                scores[static_cast<std::size_t>(p)].regret += sum.cum_regret / seeds;
            }
        }
        g_shared.ranking.push_back(scores);
    }
    g_shared.have_ranking = true;

    for (std::size_t c = 0; c < 4; ++c) {
        const auto& s = g_shared.ranking[c];
        std::string table;
        for (int p = 0; p < 7; ++p)
            table += std::string(kPolicyNames[p]) + "=" +
                     num(s[static_cast<std::size_t>(p)].reward) + " ";

        bool top = true;
        for (int p = 1; p < 7; ++p)
            if (s[0].reward <= s[static_cast<std::size_t>(p)].reward) top = false;
        add(cr, "corpus " + std::to_string(c + 1) + ": seed-mean reward strictly tops every baseline",
            top, table);

        const double margin = s[0].reward / s[1].reward;
        add(cr,
            "corpus " + std::to_string(c + 1) + ": reward margin over the quadratic baseline >= 5%",
            margin >= 1.05, "ratio = " + num(margin));

        const double regret_ratio = s[0].regret / s[1].regret;
        add(cr,
            "corpus " + std::to_string(c + 1) + ": cumulative regret <= 0.6x the quadratic baseline",
            regret_ratio <= 0.6, "ratio = " + num(regret_ratio));
    }
    return cr;
}

// ---- criterion 5 ---------------------------------------------------------------

Criterion criterion5() {
    Criterion cr{5, "price-cap sweep shape"};
    const double caps[4] = {5.0, 10.0, 15.0, 20.0};
    const int seeds = 10;
    double reward[4][3];  // cap x {vthb, rdcf, stcf}

    for (int i = 0; i < 4; ++i) {
        RunConfig cfg = desk_config(11);
        cfg.price.hi = caps[i];
        cfg.market.bump1 = {6.0, 1.2, 0.7, 0.9};  // demand peaks inside [5, 10]
        cfg.market.bump2 = {8.5, 1.0, 0.6, 0.8};
        Scenario scenario(cfg);
        const char* names[3] = {"vthb", "rdcf", "stcf"};
        for (int p = 0; p < 3; ++p) {
            double acc = 0.0;
            for (int s = 1; s <= seeds; ++s)
                acc += summarize(run_policy(scenario, cfg, *parse_policy(names[p]), 2000 + s).rows)
                           .avg_reward;
            reward[i][p] = acc / seeds;
        }
    }

    std::string series = "by cap:";
    for (int i = 0; i < 4; ++i) series += " " + num(reward[i][0]);
    const bool peak = reward[1][0] > reward[0][0] && reward[1][0] > reward[2][0] &&
                      reward[1][0] > reward[3][0] && reward[2][0] > reward[3][0];
    add(cr, "reward peaks at cap 10 and declines at 15 and 20", peak, series);

    bool ordered = true;
    std::string detail;
    for (int i = 0; i < 4; ++i) {
        if (!(reward[i][0] >= reward[i][1] && reward[i][1] >= reward[i][2])) ordered = false;
        detail += "cap " + num(caps[i]) + ": " + num(reward[i][0]) + "/" + num(reward[i][1]) +
                  "/" + num(reward[i][2]) + "  ";
    }
    add(cr, "learned >= random >= static configuration at every cap", ordered, detail);
    return cr;
}

// ---- criterion 6 ---------------------------------------------------------------

Criterion criterion6() {
    Criterion cr{6, "per-round complexity flatness"};
    double worst = 0.0;
    std::string detail;
    for (std::uint64_t seed : {31ULL, 32ULL, 33ULL}) {
        RunConfig cfg = desk_config(11);
        cfg.seed = seed;
        // |grid| = 6, auto N = 4 <= 8, kappa = 6 with the defaults
        Scenario scenario(cfg);
        const auto result = run_policy(scenario, cfg, *parse_policy("vthb"), seed);
        const auto summary = summarize(result.rows, result.oracle_slack);
        const auto& deciles = summary.timing_decile_p50_ns;
        const double ratio = static_cast<double>(deciles[9]) / static_cast<double>(deciles[1]);
        worst = std::max(worst, ratio);
        detail += num(ratio) + " ";
    }
    add(cr, "median round duration, last decile <= 2x second decile", worst <= 2.0,
        "ratios " + detail + "(tol 2.0)");
    return cr;
}

// ---- criterion 7 ---------------------------------------------------------------

Criterion criterion7() {
    Criterion cr{7, "module invariant suites"};

    {  // history reconstruction + record arithmetic, 1000 randomized appends
        Rng rng(701);
        History h;
        bool arithmetic = true;
        std::vector<ClusterKey> keys;
        for (int c = 0; c < 6; ++c) keys.push_back({c, 1 + c % 5, c % 4});
        for (std::int64_t t = 1; t <= 1000; ++t) {
            InteractionRecord rec;
            rec.t = t;
            rec.cluster = keys[static_cast<std::size_t>(rng.uniform_int(0, 5))];
            rec.config = static_cast<int>(rng.uniform_int(0, 4));
            rec.interval = static_cast<int>(rng.uniform_int(0, 3));
            rec.price = rng.uniform(0.5, 9.0);
            rec.response = rng.uniform();
            rec.cost = rng.uniform(0.0, 2.0);
            rec.reward = rec.response * (rec.price - rec.cost);
            rec.utility = rec.reward / rec.price;
            h.append(rec);
        }
        int mismatches = 0;
        for (const auto& key : keys)
            for (int e = 0; e < 5; ++e) {
                std::vector<double> brute;
                for (const auto& rec : h.records())
                    if (rec.cluster == key && rec.config == e) brute.push_back(rec.reward);
                if (h.rewards_for(key, e) != brute) ++mismatches;
            }
        for (const auto& rec : h.records()) {
            if (rec.reward != rec.response * (rec.price - rec.cost)) arithmetic = false;
            if (rec.utility != rec.reward / rec.price) arithmetic = false;
        }
        add(cr, "core: index reconstruction over 1000 random appends", mismatches == 0,
            std::to_string(mismatches) + " mismatches");
        add(cr, "core: stored reward/utility arithmetic is bit-exact", arithmetic, "1000 records");
    }

    {  // bucketing monotonicity, 1000 random pairs
        Rng rng(702);
        bool ok = true;
        const int total = bucket_count_for_c(16.0);
        for (int i = 0; i < 1000; ++i) {
            const double c1 = rng.uniform(1.0001, 16.0), c2 = rng.uniform(1.0001, 16.0);
            if (c1 <= c2 && c_bucket(c1, total) < c_bucket(c2, total)) ok = false;
            const int k1 = static_cast<int>(rng.uniform_int(1, 1 << 16));
            const int k2 = static_cast<int>(rng.uniform_int(1, 1 << 16));
            if (k1 <= k2 && k_bucket(k1) > k_bucket(k2)) ok = false;
        }
        for (int i = 0; i < 30; ++i)
            if (k_bucket(1 << i) != i) ok = false;
        add(cr, "core: bucket monotonicity and exactness on powers of two", ok, "1000 cases");
    }

    {  // vindex invariants
        const VectorSet data = synthetic_corpus(800, 8, 5, 0.4, 17);
        const auto index = IvfIndex::build(data, {5, 21, 50, 1e-6});
        Rng rng(703);

        int knn_mismatch = 0;
        for (int q = 0; q < 60; ++q) {
            std::vector<float> v(8);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            const auto got = index.search(v, 8, static_cast<int>(index.max_list_length()),
                                          static_cast<int>(index.nlist()));
            if (got.ids != exact_knn(data, v, 8)) ++knn_mismatch;
        }
        add(cr, "vindex: full-budget search equals exact kNN", knn_mismatch == 0,
            std::to_string(knn_mismatch) + " mismatches over 60 queries");

        const std::vector<int> depths{2, 4, 8, 16, 32, 64};
        std::vector<double> recall(depths.size(), 0.0);
        bool scanned_monotone = true;
        for (int q = 0; q < 60; ++q) {
            std::vector<float> v(8);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            const auto exact = exact_knn(data, v, 10);
            std::int64_t prev = -1;
            for (std::size_t g = 0; g < depths.size(); ++g) {
                const auto got = index.search(v, 10, depths[g], 2);
                if (got.scanned < prev) scanned_monotone = false;
                prev = got.scanned;
                int hits = 0;
                for (auto id : got.ids)
                    if (std::find(exact.begin(), exact.end(), id) != exact.end()) ++hits;
                recall[g] += hits / 10.0;
            }
        }
        bool recall_monotone = true;
        for (std::size_t g = 1; g < depths.size(); ++g)
            if (recall[g] < recall[g - 1] - 1e-12) recall_monotone = false;
        add(cr, "vindex: recall nondecreasing in scan depth (60-query average)", recall_monotone,
            "recall " + num(recall.front() / 60) + " -> " + num(recall.back() / 60));
        add(cr, "vindex: scanned nondecreasing in scan depth", scanned_monotone, "60 queries");

        bool deterministic = true;
        for (int q = 0; q < 30; ++q) {
            std::vector<float> v(8);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            const auto a = index.search(v, 6, 16, 2);
            const auto b = index.search(v, 6, 16, 2);
            if (a.ids != b.ids || a.distances != b.distances) deterministic = false;
        }
        add(cr, "vindex: identical queries yield identical results", deterministic, "30 pairs");
    }

    {  // ccb invariants over 1000 random statistics states
        Rng rng(704);
        bool optimism = true, deterministic = true;
        for (int trial = 0; trial < 1000; ++trial) {
            ConfigBandit a(4), b(4);
            const ClusterKey key{trial % 8, 3, 3};
            const int updates = static_cast<int>(rng.uniform_int(4, 40));
            for (int i = 0; i < updates; ++i) {
                const int e = static_cast<int>(rng.uniform_int(0, 3));
                const double r = rng.uniform(-1.0, 2.0);
                a.update(key, e, r);
                b.update(key, e, r);
            }
            const std::int64_t t = rng.uniform_int(2, 5000);
            if (a.select(key, t) != b.select(key, t)) deterministic = false;
            for (int e = 0; e < 4; ++e) {
                const auto& arm = a.arm(key, e);
                if (arm.count > 0 && !(ConfigBandit::radius(t, arm.count) > 0.0)) optimism = false;
            }
        }
        add(cr, "ccb: optimistic estimate strictly exceeds the mean for t >= 2", optimism,
            "1000 states");
        add(cr, "ccb: selection is deterministic in (stats, t)", deterministic, "1000 states");

        bool coverage = true;
        for (int trial = 0; trial < 100; ++trial) {
            ConfigBandit bandit(6);
            const ClusterKey key{trial, 2, 2};
            std::vector<bool> seen(6, false);
            for (std::int64_t t = 1; t <= 6; ++t) {
                const int e = bandit.select(key, t);
                seen[static_cast<std::size_t>(e)] = true;
                bandit.update(key, e, rng.uniform());
            }
            for (bool s : seen)
                if (!s) coverage = false;
        }
        add(cr, "ccb: every arm tried within the first |grid| cluster rounds", coverage,
            "100 clusters");
    }

    {  // pricing invariants
        Rng rng(705);
        bool dominated = true;
        RidgeModel model(6);
        for (int s = 0; s < 1000; ++s) {
            std::vector<double> phi(6);
            for (auto& x : phi) x = rng.uniform(-2.0, 2.0);
            double norm2 = 0.0;
            for (double x : phi) norm2 += x * x;
            if (model.width2(phi) > norm2 + 1e-9) dominated = false;
            model.observe(phi, rng.uniform(-1.0, 1.0));
        }
        add(cr, "pricing: design matrix dominates the identity (width <= feature norm)",
            dominated, "1000 steps");

        const TaylorConfig cfg{3, 0.5, 0.01, 0.0};
        const PriceDomain domain{1.0, 5.0, 8};
        const double bias = taylor_bias(cfg, domain);
        bool shrinking = true;
        for (int rep = 0; rep < 5; ++rep) {
            RidgeModel m(6);
            const auto phi = taylor_features(0.0, domain.edge(rep) + 0.3, domain.edge(rep), 3);
            double prev = optimism_multiplier(cfg, bias, 0) * std::sqrt(m.width2(phi));
            for (int s = 1; s <= 200; ++s) {
                m.observe(phi, 0.4);
                const double cur =
                    optimism_multiplier(cfg, bias, m.count()) * std::sqrt(m.width2(phi));
                if (cur > prev + 1e-12) shrinking = false;
                prev = cur;
            }
        }
        add(cr, "pricing: optimistic width nonincreasing under repeated samples", shrinking,
            "5 anchors x 200 repeats");

        LocalPricer pricer(cfg, domain, 64);
        const ClusterKey key{0, 3, 3};
        bool capped = true;
        for (int s = 0; s < 1000; ++s) {
            const int j = static_cast<int>(rng.uniform_int(0, 7));
            const double p = rng.uniform(domain.edge(j), domain.edge(j + 1));
            pricer.observe(key, 0, j, p, rng.uniform(-0.5, 1.5));
            if (pricer.price(key, 0, j) > domain.hi + 1e-12) capped = false;
        }
        add(cr, "pricing: optimistic objective bounded by the price ceiling", capped,
            "1000 steps");

        {  // windowed in-interval regret vs 1/sqrt(t): nonnegative slope fit
            RunConfig rcfg;
            rcfg.horizon = 4000;
            rcfg.dataset.count = 400;
            rcfg.dataset.dim = 4;
            rcfg.dataset.components = 1;
            rcfg.index.nlist = 1;
            rcfg.index_nprobe = 1;
            rcfg.grid.values = {32};
            rcfg.price.intervals = 1;  // one fixed interval
            rcfg.queries.c_lo = 1.1;
            rcfg.queries.c_hi = 1.9;
            rcfg.queries.k_lo = 4;
            rcfg.queries.k_hi = 7;
            rcfg.taylor.smoothness = 0.5;
            rcfg.oracle_grid = 10000;
            rcfg.market.bump1 = {5.5, 2.2, 1.5, 0.9};
            rcfg.market.bump2 = {5.5, 2.2, 1.5, 0.9};
            rcfg.market.quality_e0 = 10.0;
            rcfg.market.cost_base = 0.05;
            rcfg.market.cost_log = 0.01;
            rcfg.market.jitter = 0.0;
            Scenario scenario(rcfg);
            const auto result = run_policy(scenario, rcfg, *parse_policy("vthb"), 606);
            const std::size_t window = 200;
            std::vector<double> xs, ys;
            for (std::size_t start = 0; start + window <= result.rows.size(); start += window) {
                double acc = 0.0;
                for (std::size_t i = start; i < start + window; ++i)
                    acc += result.rows[i].price_regret;
                xs.push_back(1.0 / std::sqrt(static_cast<double>(start + window / 2 + 1)));
                ys.push_back(acc / window);
            }
            const auto n = static_cast<double>(xs.size());
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sx += xs[i];
                sy += ys[i];
                sxx += xs[i] * xs[i];
                sxy += xs[i] * ys[i];
            }
            const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            const double intercept = (sy - slope * sx) / n;
            add(cr, "pricing: windowed in-interval regret fits a nonincreasing 1/sqrt(t) law",
                slope >= 0.0 && intercept >= -0.05,
                "slope " + num(slope) + ", intercept " + num(intercept));
        }

        if (g_shared.have_sublinearity) {
            add(cr, "pricing: sublinear shape at T = 2e4 (criterion 3 measurement)",
                g_shared.decile_ratio <= 0.5, "decile ratio " + num(g_shared.decile_ratio));
        }
    }

    {  // env invariants
        MarketSpec noiseless;
        noiseless.response_noise = 0.0;
        noiseless.cost_noise_rel = 0.0;
        MarketModel market(noiseless, ConfigGrid{{8, 16, 32, 64, 128, 256}}, {1.0, 9.0, 4});
        const ClusterKey key{2, 4, 4};
        Rng rng(706);
        bool chi_consistent = true;
        for (int i = 0; i < 1000; ++i) {
            const double ev = market.grid().value(static_cast<std::size_t>(rng.uniform_int(0, 5)));
            const double p = rng.uniform(1.0, 9.0);
            const auto [s, cost] = market.respond(key, ev, p, rng);
            const double r = s * (p - cost);
            const double u = market.expected_reward(key, ev, p);
            if (r != u) chi_consistent = false;  // noiseless draws are exact
            const double y = r / p;
            if (std::abs(y * p - u) > 1e-12 * std::max(1.0, std::abs(u))) chi_consistent = false;
            if (std::abs(market.chi(key, ev, p) * p - u) > 1e-12 * std::max(1.0, std::abs(u)))
                chi_consistent = false;
        }
        add(cr, "env: noiseless utility identity y*p = u and chi*p = u", chi_consistent,
            "1000 draws");

        MarketModel noisy(MarketSpec{}, ConfigGrid{{8, 16, 32, 64, 128, 256}}, {1.0, 9.0, 4});
        bool bounded = true;
        for (int i = 0; i < 1000; ++i) {
            const double ev = noisy.grid().value(static_cast<std::size_t>(rng.uniform_int(0, 5)));
            const auto [s, cost] = noisy.respond(key, ev, rng.uniform(1.0, 9.0), rng);
            if (s < 0.0 || s > 1.0 || cost < 0.0) bounded = false;
        }
        add(cr, "env: responses bounded to [0,1] and costs nonnegative", bounded, "1000 draws");

        Rng a(55), b(55);
        bool reproducible = true;
        for (int i = 0; i < 200; ++i)
            if (noisy.respond(key, 16, 4.0, a) != noisy.respond(key, 16, 4.0, b))
                reproducible = false;
        add(cr, "env: identical seeds give identical draw sequences", reproducible, "200 draws");

        double worst_est = 0.0;
        for (int c = 0; c < 4; ++c)
            worst_est = std::max(worst_est, noisy.smoothness_estimate(ClusterKey{c, 5, 4}, 3));
        TaylorConfig defaults{};
        add(cr, "env: configured smoothness dominates the measured derivative bound",
            defaults.smoothness >= 0.9 * worst_est,
            num(defaults.smoothness) + " >= 0.9 x " + num(worst_est));
    }

    {  // harness invariants on a small deterministic run
        RunConfig cfg = desk_config(11);
        cfg.horizon = 600;
        cfg.dataset.count = 900;
        cfg.oracle_grid = 2000;
        const auto a = run(cfg);
        const auto b = run(cfg);
        add(cr, "harness: (config, seed) determines every round-log byte",
            a.log_csv() == b.log_csv(), std::to_string(a.rows.size()) + " rounds");

        bool decomposition = true;
        double cum = 0.0;
        for (const auto& row : a.rows) {
            if (row.regret != row.config_regret + row.price_regret) decomposition = false;
            cum += row.regret;
            if (row.cum_regret != cum) decomposition = false;
        }
        add(cr, "harness: regret decomposition and running sum are exact", decomposition,
            std::to_string(a.rows.size()) + " rounds");

        const auto summary = summarize(a.rows, a.oracle_slack);
        double cluster_total = 0.0;
        for (const auto& c : summary.clusters) cluster_total += c.cum_regret;
        add(cr, "harness: per-cluster regrets sum to the aggregate",
            std::abs(cluster_total - summary.cum_regret) <=
                1e-9 * std::max(1.0, summary.cum_regret),
            num(cluster_total) + " vs " + num(summary.cum_regret));
    }

    if (g_shared.have_ranking) {  // baseline ordering on the default suite
        bool chain = true, vthb_top = true;
        for (const auto& s : g_shared.ranking) {
            if (!(s[1].reward > s[2].reward && s[2].reward > s[3].reward &&
                  s[2].reward > s[4].reward))
                chain = false;
            for (int p = 1; p < 7; ++p)
                if (s[0].reward <= s[static_cast<std::size_t>(p)].reward) vthb_top = false;
        }
        add(cr, "baselines: quadratic > linear > {random, static} pricing on the default suite",
            chain, "4 corpora (criterion 4 measurements)");
        add(cr, "baselines: hierarchical policy tops the ranking on the default suite", vthb_top,
            "4 corpora (criterion 4 measurements)");
    }

    return cr;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    const auto selected = [&](int id) {
        return wanted.empty() || std::find(wanted.begin(), wanted.end(), id) != wanted.end();
    };

    std::vector<Criterion> results;
    if (selected(1)) results.push_back(criterion1());
    if (selected(2)) results.push_back(criterion2());
    if (selected(3)) results.push_back(criterion3());
    if (selected(4)) results.push_back(criterion4());
    if (selected(5)) results.push_back(criterion5());
    if (selected(6)) results.push_back(criterion6());
    if (selected(7)) results.push_back(criterion7());

    int failed = 0;
    for (const auto& cr : results) {
        const bool ok = cr.pass();
        if (!ok) ++failed;
        std::printf("criterion %d [%s]: %s\n", cr.id, cr.title.c_str(), ok ? "PASS" : "FAIL");
        for (const auto& check : cr.checks)
            std::printf("  [%s] %s: %s\n", check.pass ? "pass" : "FAIL", check.name.c_str(),
                        check.detail.c_str());
    }
    std::printf("acceptance: %zu criteria run, %d failed\n", results.size(), failed);
    return failed;
}
