#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vdt/baselines.hpp"
#include "vdt/ivf.hpp"
#include "vdt/market.hpp"
#include "vdt/pricing.hpp"

namespace vdt {

struct DatasetSpec {
    std::string source = "synthetic";  // "synthetic" | "fvecs"
    std::string path;
    std::size_t head = 0;  // 0 = all records
    std::size_t count = 50000;
    std::size_t dim = 16;
    std::size_t components = 8;
    double spread = 0.25;
    std::uint64_t seed = 7;
};

struct QuerySpec {
    double c_max = 16.0;
    double c_lo = 1.0;  // draws are open at the low end: c in (c_lo, c_hi]
    double c_hi = 2.0;
    int k_lo = 16;
    int k_hi = 31;
    double holdout = 0.1;
};

struct PriceSpec {
    double lo = 1.0;
    double hi = 9.0;
    int intervals = 0;  // 0 = auto: ceil(T^(1/(2n+1)))
};

struct PolicyParams {
    int fixed_config = -1;     // -1 = grid median index
    double fixed_price = -1.0; // -1 = domain midpoint
    double epsilon = 0.05;     // convex baseline exploration rate
};

struct OutputSpec {
    std::string log_csv;
    std::string timing_csv;
    std::string report_prefix;
};

struct RunConfig {
    std::uint64_t seed = 42;
    std::int64_t horizon = 10000;
    PolicyPair policy{};
    DatasetSpec dataset{};
    KmeansParams index{};
    int index_nprobe = 4;
    ConfigGrid grid{{8, 16, 32, 64, 128, 256}};
    PriceSpec price{};
    TaylorConfig taylor{};
    QuerySpec queries{};
    MarketSpec market{};
    PolicyParams policy_params{};
    OutputSpec output{};
    IntervalWidthMode interval_rule = IntervalWidthMode::Literal;
    int lab_grid = 64;
    int oracle_grid = 10000;
    bool smoothness_check = true;

    // Resolved price partition for this run.
    PriceDomain price_domain() const {
        const int n = price.intervals > 0
                          ? price.intervals
                          : PriceDomain::auto_interval_count(horizon, taylor.order);
        return {price.lo, price.hi, n};
    }

    int fixed_config_index() const {
        return policy_params.fixed_config >= 0 ? policy_params.fixed_config
                                               : static_cast<int>(grid.median_index());
    }
    double fixed_price_value() const {
        return policy_params.fixed_price > 0.0 ? policy_params.fixed_price
                                               : price_domain().midpoint();
    }

    void validate() const;

    static RunConfig from_json_text(const std::string& text);
    static RunConfig load(const std::string& path);
    std::string to_json_text() const;

    // dotted-path override, value given as a JSON literal or bare string
    void override_field(const std::string& dotted_key, const std::string& value);
};

}  // namespace vdt
