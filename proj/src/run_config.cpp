#include "vdt/run_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace vdt {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "vdt.config.v1";

template <typename T>
void get_if_present(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

json bump_to_json(const LogisticBump& b) {
    return json{{"center", b.center},
                {"halfwidth", b.halfwidth},
                {"steepness", b.steepness},
                {"amplitude", b.amplitude}};
}

void bump_from_json(const json& j, LogisticBump& b) {
    get_if_present(j, "center", b.center);
    get_if_present(j, "halfwidth", b.halfwidth);
    get_if_present(j, "steepness", b.steepness);
    get_if_present(j, "amplitude", b.amplitude);
}

PolicyPair policy_from_json(const json& j) {
    if (j.is_string()) {
        const auto parsed = parse_policy(j.get<std::string>());
        if (!parsed) throw std::invalid_argument("config: unknown policy " + j.get<std::string>());
        return *parsed;
    }
    if (j.is_object()) {
        PolicyPair pair;
        if (j.contains("config")) {
            const auto rule = parse_config_rule(j.at("config").get<std::string>());
            if (!rule) throw std::invalid_argument("config: unknown config rule");
            pair.config = *rule;
        }
        if (j.contains("price")) {
            const auto rule = parse_price_rule(j.at("price").get<std::string>());
            if (!rule) throw std::invalid_argument("config: unknown price rule");
            pair.price = *rule;
        }
        return pair;
    }
    throw std::invalid_argument("config: policy must be a name or {config, price} pair");
}

json policy_to_json(const PolicyPair& pair) {
    const std::string name = policy_name(pair);
    if (name.find('+') == std::string::npos) return json(name);
    json out;
    out["config"] = pair.config == ConfigRule::Learned ? "ccb"
                    : pair.config == ConfigRule::Fixed ? "stcf"
                                                       : "rdcf";
    out["price"] = pair.price == PriceRule::Learned  ? "cpb"
                   : pair.price == PriceRule::Fixed  ? "stp"
                   : pair.price == PriceRule::Random ? "rdp"
                   : pair.price == PriceRule::Linear ? "linp"
                                                     : "conp";
    return out;
}

RunConfig from_json(const json& j) {
    if (j.contains("schema") && j.at("schema").get<std::string>() != kSchema)
        throw std::invalid_argument("config: unsupported schema tag");

    RunConfig cfg;
    get_if_present(j, "seed", cfg.seed);
    get_if_present(j, "horizon", cfg.horizon);
    if (j.contains("policy")) cfg.policy = policy_from_json(j.at("policy"));

    if (j.contains("dataset")) {
        const auto& d = j.at("dataset");
        get_if_present(d, "source", cfg.dataset.source);
        get_if_present(d, "path", cfg.dataset.path);
        get_if_present(d, "head", cfg.dataset.head);
        get_if_present(d, "count", cfg.dataset.count);
        get_if_present(d, "dim", cfg.dataset.dim);
        get_if_present(d, "components", cfg.dataset.components);
        get_if_present(d, "spread", cfg.dataset.spread);
        get_if_present(d, "seed", cfg.dataset.seed);
    }
    if (j.contains("index")) {
        const auto& d = j.at("index");
        get_if_present(d, "nlist", cfg.index.nlist);
        get_if_present(d, "nprobe", cfg.index_nprobe);
        get_if_present(d, "seed", cfg.index.seed);
        get_if_present(d, "max_iters", cfg.index.max_iters);
        get_if_present(d, "tol", cfg.index.tol);
    }
    if (j.contains("grid")) cfg.grid.values = j.at("grid").get<std::vector<int>>();
    if (j.contains("price")) {
        const auto& d = j.at("price");
        get_if_present(d, "lo", cfg.price.lo);
        get_if_present(d, "hi", cfg.price.hi);
        get_if_present(d, "intervals", cfg.price.intervals);
    }
    if (j.contains("taylor")) {
        const auto& d = j.at("taylor");
        get_if_present(d, "order", cfg.taylor.order);
        get_if_present(d, "smoothness", cfg.taylor.smoothness);
        get_if_present(d, "failure_prob", cfg.taylor.failure_prob);
        get_if_present(d, "offset", cfg.taylor.offset);
    }
    if (j.contains("queries")) {
        const auto& d = j.at("queries");
        get_if_present(d, "c_max", cfg.queries.c_max);
        get_if_present(d, "c_lo", cfg.queries.c_lo);
        get_if_present(d, "c_hi", cfg.queries.c_hi);
        get_if_present(d, "k_lo", cfg.queries.k_lo);
        get_if_present(d, "k_hi", cfg.queries.k_hi);
        get_if_present(d, "holdout", cfg.queries.holdout);
    }
    if (j.contains("market")) {
        const auto& d = j.at("market");
        if (d.contains("bump1")) bump_from_json(d.at("bump1"), cfg.market.bump1);
        if (d.contains("bump2")) bump_from_json(d.at("bump2"), cfg.market.bump2);
        get_if_present(d, "mix", cfg.market.mix);
        get_if_present(d, "demand_floor", cfg.market.demand_floor);
        get_if_present(d, "quality_e0", cfg.market.quality_e0);
        get_if_present(d, "cost_base", cfg.market.cost_base);
        get_if_present(d, "cost_log", cfg.market.cost_log);
        get_if_present(d, "jitter", cfg.market.jitter);
        get_if_present(d, "response_noise", cfg.market.response_noise);
        get_if_present(d, "cost_noise_rel", cfg.market.cost_noise_rel);
        get_if_present(d, "seed", cfg.market.seed);
        get_if_present(d, "quality_mode", cfg.market.quality_mode);
    }
    if (j.contains("policy_params")) {
        const auto& d = j.at("policy_params");
        get_if_present(d, "fixed_config", cfg.policy_params.fixed_config);
        get_if_present(d, "fixed_price", cfg.policy_params.fixed_price);
        get_if_present(d, "epsilon", cfg.policy_params.epsilon);
    }
    if (j.contains("output")) {
        const auto& d = j.at("output");
        get_if_present(d, "log_csv", cfg.output.log_csv);
        get_if_present(d, "timing_csv", cfg.output.timing_csv);
        get_if_present(d, "report_prefix", cfg.output.report_prefix);
    }
    if (j.contains("interval_rule")) {
        const auto rule = j.at("interval_rule").get<std::string>();
        if (rule == "lemma2")
            cfg.interval_rule = IntervalWidthMode::Lemma2Rate;
        else if (rule == "literal")
            cfg.interval_rule = IntervalWidthMode::Literal;
        else
            throw std::invalid_argument("config: interval_rule must be lemma2 or literal");
    }
    get_if_present(j, "lab_grid", cfg.lab_grid);
    get_if_present(j, "oracle_grid", cfg.oracle_grid);
    get_if_present(j, "smoothness_check", cfg.smoothness_check);
    return cfg;
}

json to_json(const RunConfig& cfg) {
    json j;
    j["schema"] = kSchema;
    j["seed"] = cfg.seed;
    j["horizon"] = cfg.horizon;
    j["policy"] = policy_to_json(cfg.policy);
    j["dataset"] = {{"source", cfg.dataset.source}, {"path", cfg.dataset.path},
                    {"head", cfg.dataset.head},     {"count", cfg.dataset.count},
                    {"dim", cfg.dataset.dim},       {"components", cfg.dataset.components},
                    {"spread", cfg.dataset.spread}, {"seed", cfg.dataset.seed}};
    j["index"] = {{"nlist", cfg.index.nlist},
                  {"nprobe", cfg.index_nprobe},
                  {"seed", cfg.index.seed},
                  {"max_iters", cfg.index.max_iters},
                  {"tol", cfg.index.tol}};
    j["grid"] = cfg.grid.values;
    j["price"] = {{"lo", cfg.price.lo}, {"hi", cfg.price.hi}, {"intervals", cfg.price.intervals}};
    j["taylor"] = {{"order", cfg.taylor.order},
                   {"smoothness", cfg.taylor.smoothness},
                   {"failure_prob", cfg.taylor.failure_prob},
                   {"offset", cfg.taylor.offset}};
    j["queries"] = {{"c_max", cfg.queries.c_max}, {"c_lo", cfg.queries.c_lo},
                    {"c_hi", cfg.queries.c_hi},   {"k_lo", cfg.queries.k_lo},
                    {"k_hi", cfg.queries.k_hi},   {"holdout", cfg.queries.holdout}};
    j["market"] = {{"bump1", bump_to_json(cfg.market.bump1)},
                   {"bump2", bump_to_json(cfg.market.bump2)},
                   {"mix", cfg.market.mix},
                   {"demand_floor", cfg.market.demand_floor},
                   {"quality_e0", cfg.market.quality_e0},
                   {"cost_base", cfg.market.cost_base},
                   {"cost_log", cfg.market.cost_log},
                   {"jitter", cfg.market.jitter},
                   {"response_noise", cfg.market.response_noise},
                   {"cost_noise_rel", cfg.market.cost_noise_rel},
                   {"seed", cfg.market.seed},
                   {"quality_mode", cfg.market.quality_mode}};
    j["policy_params"] = {{"fixed_config", cfg.policy_params.fixed_config},
                          {"fixed_price", cfg.policy_params.fixed_price},
                          {"epsilon", cfg.policy_params.epsilon}};
    j["output"] = {{"log_csv", cfg.output.log_csv},
                   {"timing_csv", cfg.output.timing_csv},
                   {"report_prefix", cfg.output.report_prefix}};
    j["interval_rule"] = cfg.interval_rule == IntervalWidthMode::Lemma2Rate ? "lemma2" : "literal";
    j["lab_grid"] = cfg.lab_grid;
    j["oracle_grid"] = cfg.oracle_grid;
    j["smoothness_check"] = cfg.smoothness_check;
    return j;
}

}  // namespace

void RunConfig::validate() const {
    if (horizon < 0) throw std::invalid_argument("config: horizon must be nonnegative");
    grid.validate(0);
    if (grid.size() > 200) throw std::invalid_argument("config: grid too large");
    if (!(price.lo > 0.0) || !(price.hi > price.lo))
        throw std::invalid_argument("config: need 0 < price.lo < price.hi");
    if (price.intervals < 0 || price.intervals > 200)
        throw std::invalid_argument("config: price.intervals out of range");
    taylor.validate();
    if (queries.c_max <= 1.0) throw std::invalid_argument("config: c_max must exceed 1");
    if (queries.c_lo < 1.0 || queries.c_hi < queries.c_lo || queries.c_hi > queries.c_max)
        throw std::invalid_argument("config: c range must satisfy 1 <= c_lo <= c_hi <= c_max");
    if (queries.k_lo < 1 || queries.k_hi < queries.k_lo)
        throw std::invalid_argument("config: k range must satisfy 1 <= k_lo <= k_hi");
    if (!(queries.holdout > 0.0 && queries.holdout < 1.0))
        throw std::invalid_argument("config: holdout fraction must be in (0,1)");
    if (index.nlist < 1) throw std::invalid_argument("config: nlist must be positive");
    if (index_nprobe < 1 || index_nprobe > index.nlist)
        throw std::invalid_argument("config: nprobe must be in [1, nlist]");
    if (index.max_iters < 1 || !(index.tol > 0.0))
        throw std::invalid_argument("config: bad k-means parameters");
    if (lab_grid < 2) throw std::invalid_argument("config: lab_grid must be >= 2");
    if (oracle_grid < 100) throw std::invalid_argument("config: oracle_grid must be >= 100");
    if (dataset.source == "fvecs") {
        if (dataset.path.empty()) throw std::invalid_argument("config: fvecs dataset needs a path");
    } else if (dataset.source == "synthetic") {
        if (dataset.count == 0 || dataset.dim == 0 || dataset.components == 0)
            throw std::invalid_argument("config: synthetic dataset needs count, dim, components");
    } else {
        throw std::invalid_argument("config: dataset.source must be synthetic or fvecs");
    }
    if (policy_params.fixed_config >= static_cast<int>(grid.size()))
        throw std::invalid_argument("config: fixed_config out of range");
    if (!(policy_params.epsilon >= 0.0 && policy_params.epsilon <= 1.0))
        throw std::invalid_argument("config: epsilon must be in [0,1]");
    if (policy_params.fixed_price > 0.0 &&
        (policy_params.fixed_price < price.lo || policy_params.fixed_price > price.hi))
        throw std::invalid_argument("config: fixed_price outside the price range");
    if (market.response_noise < 0.0 || market.cost_noise_rel < 0.0 || market.jitter < 0.0)
        throw std::invalid_argument("config: market noise/jitter must be nonnegative");
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str());
}

std::string RunConfig::to_json_text() const { return to_json(*this).dump(2); }

void RunConfig::override_field(const std::string& dotted_key, const std::string& value) {
    json j = to_json(*this);
    json* node = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted_key.find('.', start);
        const std::string part = dotted_key.substr(start, dot - start);
        if (part.empty()) throw std::invalid_argument("config: bad override key " + dotted_key);
        if (dot == std::string::npos) {
            json parsed;
            try {
                parsed = json::parse(value);
            } catch (const json::exception&) {
                parsed = json(value);  // bare strings pass through
            }
            (*node)[part] = parsed;
            break;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
    try {
        *this = from_json(j);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

}  // namespace vdt
