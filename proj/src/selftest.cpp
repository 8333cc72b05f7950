#include "vdt/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "vdt/fvecs.hpp"
#include "vdt/simulate.hpp"

namespace vdt {

namespace {

// Self-contained dense solve of (A x = b) by Gaussian elimination with partial
// pivoting; deliberately independent of the ridge model's incremental path.
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
        const double diag = a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r * n + col] / diag;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
            b[r] -= factor * b[col];
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

struct Check {
    const char* name;
    std::function<bool(std::string&)> body;
};

}  // namespace

int selftest(std::ostream& out) {
    std::vector<Check> checks;

    checks.push_back({"history indices match linear-scan filters", [](std::string&) {
        Rng rng(11);
        History h;
        std::vector<ClusterKey> keys = {{0, 5, 4}, {1, 5, 4}, {2, 4, 3}, {3, 3, 2}};
        for (std::int64_t t = 1; t <= 100; ++t) {
            const auto key = keys[static_cast<std::size_t>(rng.uniform_int(0, 3))];
            const int e = static_cast<int>(rng.uniform_int(0, 2));
            const int j = static_cast<int>(rng.uniform_int(0, 3));
            const double p = rng.uniform(1.0, 9.0);
            const double s = rng.uniform();
            const double c = rng.uniform(0.0, 0.5);
            const double r = s * (p - c);
            h.append({t, key, e, j, p, s, c, r, r / p});
        }
        for (const auto& key : keys) {
            for (int e = 0; e < 3; ++e) {
                std::vector<double> brute;
                for (const auto& rec : h.records())
                    if (rec.cluster == key && rec.config == e) brute.push_back(rec.reward);
                if (h.rewards_for(key, e) != brute) return false;
            }
        }
        return true;
    }});

    checks.push_back({"ucb selection matches direct formula evaluation", [](std::string&) {
        ConfigBandit bandit(3);
        const ClusterKey key{0, 5, 4};
        const double means[3] = {0.9, 0.5, 0.1};
        const int counts[3] = {3, 2, 1};
        for (int e = 0; e < 3; ++e)
            for (int i = 0; i < counts[e]; ++i) bandit.update(key, e, means[e]);
        const std::int64_t t = 10;
        int best = 0;
        double best_score = -1.0;
        for (int e = 0; e < 3; ++e) {
            const double score = means[e] + std::sqrt(2.0 * std::log(static_cast<double>(t)) /
                                                      counts[e]);
            if (score > best_score) {
                best_score = score;
                best = e;
            }
        }
        return bandit.select(key, t) == best;
    }});

    checks.push_back({"incremental arm mean matches full recomputation", [](std::string&) {
        Rng rng(3);
        ConfigBandit bandit(1);
        const ClusterKey key{0, 1, 1};
        double sum = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double r = rng.uniform(-1.0, 3.0);
            bandit.update(key, 0, r);
            sum += r;
        }
        return std::abs(bandit.arm(key, 0).mean - sum / 1000.0) < 1e-10;
    }});

    checks.push_back({"ivf assignment equals exhaustive nearest centroid", [](std::string&) {
        VectorSet data = synthetic_corpus(1000, 8, 6, 0.3, 21);
        const auto index = IvfIndex::build(data, {8, 5, 50, 1e-6});
        Rng rng(33);
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
            if (index.assign(v) != best) return false;
        }
        return true;
    }});

    checks.push_back({"full-budget search equals exact k-nearest-neighbours", [](std::string&) {
        VectorSet data = synthetic_corpus(512, 6, 4, 0.4, 5);
        const auto index = IvfIndex::build(data, {4, 9, 50, 1e-6});
        Rng rng(17);
        for (int probe = 0; probe < 50; ++probe) {
            std::vector<float> v(6);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            const auto got = index.search(v, 10, static_cast<int>(index.max_list_length()),
                                          static_cast<int>(index.nlist()));
            if (got.ids != exact_knn(data, v, 10)) return false;
        }
        return true;
    }});

    checks.push_back({"ann contract check agrees with direct evaluation", [](std::string&) {
        VectorSet data = synthetic_corpus(128, 5, 3, 0.5, 9);
        const auto index = IvfIndex::build(data, {3, 2, 50, 1e-6});
        Rng rng(29);
        for (int probe = 0; probe < 100; ++probe) {
            std::vector<float> v(5);
            for (auto& x : v) x = static_cast<float>(rng.uniform(-1.5, 1.5));
            const auto got = index.search(v, 5, 4, 2);
            if (got.ids.empty()) continue;
            const double c = rng.uniform(1.01, 3.0);
            double nearest = squared_distance(std::span<const float>(v), data.row(0));
            for (std::size_t i = 1; i < data.size(); ++i)
                nearest = std::min(nearest, squared_distance(std::span<const float>(v), data.row(i)));
            bool direct = true;
            for (double d : got.distances)
                if (d > c * std::sqrt(nearest)) direct = false;
            if (check_ann_contract(got, v, c, data) != direct) return false;
        }
        return true;
    }});

    checks.push_back({"taylor features match combinatorial enumeration", [](std::string&) {
        Rng rng(41);
        for (int trial = 0; trial < 100; ++trial) {
            const double eta = rng.uniform(-1.0, 1.0);
            const double delta = rng.uniform(-1.0, 1.0);
            const auto got = taylor_features(eta, delta, 0.0, 3);
            std::vector<double> expected;
            for (int degree = 0; degree < 3; ++degree)
                for (int ie = degree; ie >= 0; --ie)
                    expected.push_back(std::pow(eta, ie) * std::pow(delta, degree - ie));
            if (got.size() != 6 || got != expected) return false;
        }
        return true;
    }});

    checks.push_back({"taylor bias matches hand evaluation", [](std::string&) {
        const TaylorConfig a{2, 1.0, 0.01, 0.0};
        const TaylorConfig b{3, 0.5, 0.01, 0.0};
        return std::abs(taylor_bias(a, {1.0, 1.0000001, 2}) - 2.0) < 1e-5 &&
               std::abs(taylor_bias(b, {1.0, 9.0, 5}) - 6.0) < 1e-12;
    }});

    checks.push_back({"ridge solution matches dense normal-equation solve", [](std::string&) {
        Rng rng(55);
        RidgeModel model(6);
        std::vector<double> lambda(36, 0.0), rhs(6, 0.0);
        for (int i = 0; i < 6; ++i) lambda[i * 6 + i] = 1.0;
        for (int sample = 0; sample < 50; ++sample) {
            std::vector<double> phi(6);
            for (auto& x : phi) x = rng.uniform(-1.0, 1.0);
            const double y = rng.uniform(-1.0, 1.0);
            model.observe(phi, y);
            for (int i = 0; i < 6; ++i) {
                rhs[i] += y * phi[i];
                for (int j = 0; j < 6; ++j) lambda[i * 6 + j] += phi[i] * phi[j];
            }
        }
        const auto direct = dense_solve(lambda, rhs);
        for (int i = 0; i < 6; ++i)
            if (std::abs(direct[i] - model.theta()[i]) > 1e-8) return false;
        return true;
    }});

    checks.push_back({"rank-one inverse matches fresh inversion after 30 updates", [](std::string&) {
        Rng rng(77);
        RidgeModel model(6);
        for (int sample = 0; sample < 30; ++sample) {
            std::vector<double> phi(6);
            for (auto& x : phi) x = rng.uniform(-1.0, 1.0);
            model.observe(phi, rng.uniform(-1.0, 1.0));
        }
        // invert the accumulated design matrix column by column
        for (int col = 0; col < 6; ++col) {
            std::vector<double> unit(6, 0.0);
            unit[col] = 1.0;
            const auto column = dense_solve(model.lambda(), unit);
            for (int rrow = 0; rrow < 6; ++rrow)
                if (std::abs(column[rrow] - model.lambda_inv()[rrow * 6 + col]) > 1e-8)
                    return false;
        }
        return true;
    }});

    checks.push_back({"interval argmax matches direct gamma evaluation", [](std::string&) {
        const PriceDomain domain{1.0, 9.0, 4};
        const TaylorConfig cfg{3, 0.5, 0.01, 0.0};
        IntervalBandit bandit(IntervalWidthMode::Lemma2Rate);
        const ClusterKey key{0, 3, 3};
        Rng rng(13);
        for (int i = 0; i < 40; ++i)
            bandit.update(key, 0, static_cast<int>(rng.uniform_int(0, 3)), rng.uniform(0.0, 2.0),
                          domain);
        const double bias = taylor_bias(cfg, domain);
        int best = -1;
        double best_score = 0.0;
        for (int j = 0; j < 4; ++j) {
            const auto& cell = bandit.cell(key, 0, j);
            if (cell.count == 0) return bandit.select(key, 0, domain, cfg, bias, 1000) == j;
            const double score = cell.mean + bandit.optimism(domain, cfg, bias, 1000, cell.count);
            if (best < 0 || score > best_score) {
                best = j;
                best_score = score;
            }
        }
        return bandit.select(key, 0, domain, cfg, bias, 1000) == best;
    }});

    checks.push_back({"noiseless market responds with exact mean values", [](std::string&) {
        MarketSpec spec;
        spec.response_noise = 0.0;
        spec.cost_noise_rel = 0.0;
        MarketModel market(spec, ConfigGrid{{8, 16, 32}}, {1.0, 9.0, 4});
        const ClusterKey key{2, 4, 4};
        Rng rng(1);
        const auto [s, c] = market.respond(key, 16, 4.0, rng);
        return s == market.response_mean(key, 16, 4.0) && c == market.cost_mean(key, 16);
    }});

    checks.push_back({"monte-carlo response mean stays within three sigma", [](std::string&) {
        MarketSpec spec;
        MarketModel market(spec, ConfigGrid{{8, 16, 32}}, {1.0, 9.0, 4});
        const ClusterKey key{1, 4, 4};
        Rng rng(99);
        const double f = market.response_mean(key, 16, 3.0);
        double mean = 0.0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) mean += market.respond(key, 16, 3.0, rng).first;
        mean /= draws;
        return std::abs(mean - f) <= 3.0 * spec.response_noise / std::sqrt(draws) + 1e-3;
    }});

    checks.push_back({"oracle value is refinement-consistent", [](std::string&) {
        MarketSpec spec;
        MarketModel market(spec, ConfigGrid{{8, 16, 32, 64}}, {1.0, 9.0, 4});
        const ClusterKey key{0, 4, 4};
        const auto coarse = solve_oracle(market, key, 10000, 1.0);
        const auto fine = solve_oracle(market, key, 100000, 1.0);
        return std::abs(coarse.best_value - fine.best_value) <= coarse.grid_slack + 1e-9;
    }});

    checks.push_back({"cumulative regret replays from the round log", [](std::string&) {
        RunConfig cfg;
        cfg.horizon = 300;
        cfg.dataset.count = 600;
        cfg.dataset.dim = 6;
        cfg.index.nlist = 4;
        cfg.index_nprobe = 2;
        cfg.grid.values = {4, 8, 16};
        cfg.queries.k_lo = 4;
        cfg.queries.k_hi = 7;
        cfg.taylor.smoothness = 8.0;
        cfg.oracle_grid = 2000;
        const RunResult result = run(cfg);
        double cum = 0.0;
        for (const auto& row : result.rows) {
            cum += row.regret;
            if (std::abs(row.cum_regret - cum) > 1e-9) return false;
        }
        return true;
    }});

    checks.push_back({"replay with the same seed is byte-identical", [](std::string&) {
        RunConfig cfg;
        cfg.horizon = 200;
        cfg.dataset.count = 500;
        cfg.dataset.dim = 6;
        cfg.index.nlist = 4;
        cfg.index_nprobe = 2;
        cfg.grid.values = {4, 8, 16};
        cfg.queries.k_lo = 4;
        cfg.queries.k_hi = 7;
        cfg.taylor.smoothness = 8.0;
        cfg.oracle_grid = 2000;
        const RunResult a = run(cfg);
        const RunResult b = run(cfg);
        return a.log_csv() == b.log_csv();
    }});

    checks.push_back({"fvecs round-trip is bit-identical", [](std::string&) {
        Rng rng(123);
        VectorSet data(12);
        for (int i = 0; i < 1000; ++i)
            for (int d = 0; d < 12; ++d)
                data.data.push_back(static_cast<float>(rng.uniform(-10.0, 10.0)));
        std::ostringstream buffer(std::ios::binary);
        write_fvecs(buffer, data);
        std::istringstream in(buffer.str(), std::ios::binary);
        const VectorSet back = read_fvecs(in);
        return back.dim == data.dim && back.data == data.data;
    }});

    int failed = 0;
    for (const auto& check : checks) {
        std::string detail;
        bool ok = false;
        try {
            ok = check.body(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        out << (ok ? "pass" : "FAIL") << "  " << check.name;
        if (!ok && !detail.empty()) out << "  (" << detail << ")";
        out << "\n";
        if (!ok) ++failed;
    }
    out << (failed == 0 ? "selftest: all checks passed" : "selftest: FAILURES") << "\n";
    return failed;
}

}  // namespace vdt
