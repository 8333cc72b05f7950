#include "vdt_capi.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "vdt/selftest.hpp"
#include "vdt/simulate.hpp"

extern "C" {

struct vdt_config {
    vdt::RunConfig rep;
};

struct vdt_result {
    vdt::RunResult rep;
    vdt::Summary summary;
};

}  // extern "C"

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Invalid-argument failures are configuration errors; everything else that
// escapes a run is a runtime abort.
template <typename Fn>
vdt_status guarded(Fn&& fn) {
    try {
        fn();
        return VDT_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return VDT_ERR_CONFIG;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return VDT_ERR_RUNTIME;
    }
}

std::vector<std::string> split_csv(const char* text) {
    std::vector<std::string> out;
    if (text == nullptr) return out;
    std::string item;
    for (const char* p = text;; ++p) {
        if (*p == ',' || *p == '\0') {
            if (!item.empty()) out.push_back(item);
            item.clear();
            if (*p == '\0') break;
        } else {
            item.push_back(*p);
        }
    }
    return out;
}

}  // namespace

extern "C" {

const char* vdt_version(void) { return "0.1.0"; }

const char* vdt_last_error(void) { return g_last_error.c_str(); }

void vdt_string_free(char* str) { std::free(str); }

vdt_status vdt_config_create(vdt_config** out) {
    return guarded([&] { *out = new vdt_config{vdt::RunConfig{}}; });
}

vdt_status vdt_config_parse(const char* json_text, vdt_config** out) {
    return guarded([&] {
        auto cfg = vdt::RunConfig::from_json_text(json_text ? json_text : "");
        cfg.validate();
        *out = new vdt_config{std::move(cfg)};
    });
}

vdt_status vdt_config_load(const char* path, vdt_config** out) {
    return guarded([&] {
        auto cfg = vdt::RunConfig::load(path ? path : "");
        cfg.validate();
        *out = new vdt_config{std::move(cfg)};
    });
}

vdt_status vdt_config_override(vdt_config* cfg, const char* dotted_key, const char* value) {
    return guarded([&] {
        cfg->rep.override_field(dotted_key ? dotted_key : "", value ? value : "");
        cfg->rep.validate();
    });
}

vdt_status vdt_config_dump(const vdt_config* cfg, char** out_json) {
    return guarded([&] { *out_json = copy_string(cfg->rep.to_json_text()); });
}

void vdt_config_free(vdt_config* cfg) { delete cfg; }

vdt_status vdt_run(const vdt_config* cfg, vdt_result** out) {
    return guarded([&] {
        auto result = vdt::run(cfg->rep);
        auto summary = vdt::summarize(result.rows, result.oracle_slack);
        *out = new vdt_result{std::move(result), std::move(summary)};
    });
}

vdt_status vdt_result_log_csv(const vdt_result* result, char** out_csv) {
    return guarded([&] { *out_csv = copy_string(result->rep.log_csv()); });
}

vdt_status vdt_result_timing_csv(const vdt_result* result, char** out_csv) {
    return guarded([&] { *out_csv = copy_string(result->rep.timing_csv()); });
}

vdt_status vdt_result_summary(const vdt_result* result, char** out_text) {
    return guarded([&] { *out_text = copy_string(vdt::summary_text(result->summary)); });
}

vdt_status vdt_result_write_report(const vdt_result* result, const char* prefix) {
    return guarded([&] { vdt::write_report_files(result->summary, prefix ? prefix : "report"); });
}

vdt_status vdt_result_metric(const vdt_result* result, const char* name, double* out_value) {
    return guarded([&] {
        const std::string key = name ? name : "";
        const auto& s = result->summary;
        if (key == "rounds") *out_value = static_cast<double>(s.rounds);
        else if (key == "clusters") *out_value = static_cast<double>(s.clusters.size());
        else if (key == "avg_reward") *out_value = s.avg_reward;
        else if (key == "cum_regret") *out_value = s.cum_regret;
        else if (key == "cum_regret_raw") *out_value = s.cum_regret_raw;
        else if (key == "config_regret") *out_value = s.config_regret;
        else if (key == "price_regret") *out_value = s.price_regret;
        else if (key == "weighted_regret") *out_value = s.weighted_regret;
        else if (key == "oracle_slack") *out_value = s.oracle_slack;
        else throw std::invalid_argument("unknown metric " + key);
    });
}

void vdt_result_free(vdt_result* result) { delete result; }

vdt_status vdt_index_report(const vdt_config* cfg, char** out_text) {
    return guarded([&] { *out_text = copy_string(vdt::index_report(cfg->rep)); });
}

vdt_status vdt_report_from_csv(const char* log_csv_path, const char* out_prefix,
                               char** out_text) {
    return guarded([&] {
        std::ifstream in(log_csv_path ? log_csv_path : "", std::ios::binary);
        if (!in) throw std::invalid_argument(std::string("report: cannot open ") +
                                             (log_csv_path ? log_csv_path : "(null)"));
        const auto rows = vdt::parse_log_csv(in);
        if (rows.empty()) throw std::invalid_argument("report: empty round log");
        const auto summary = vdt::summarize(rows);
        if (out_prefix != nullptr && out_prefix[0] != '\0')
            vdt::write_report_files(summary, out_prefix);
        if (out_text != nullptr) *out_text = copy_string(vdt::summary_text(summary));
    });
}

vdt_status vdt_sweep(const vdt_config* cfg, const char* axis, const char* values_csv,
                     const char* seeds_csv, const char* out_csv_path, char** out_csv) {
    return guarded([&] {
        std::vector<std::uint64_t> seeds;
        for (const auto& s : split_csv(seeds_csv)) seeds.push_back(std::stoull(s));
        const auto cells = vdt::sweep(cfg->rep, axis ? axis : "", split_csv(values_csv), seeds);
        const std::string csv = vdt::sweep_csv(cells);
        if (out_csv_path != nullptr && out_csv_path[0] != '\0') {
            std::ofstream out(out_csv_path, std::ios::binary);
            if (!out) throw std::runtime_error(std::string("sweep: cannot write ") + out_csv_path);
            out << csv;
        }
        if (out_csv != nullptr) *out_csv = copy_string(csv);
    });
}

vdt_status vdt_selftest(char** out_text) {
    std::ostringstream report;
    int failed = 0;
    const vdt_status status = guarded([&] { failed = vdt::selftest(report); });
    if (out_text != nullptr) *out_text = copy_string(report.str());
    if (status != VDT_OK) return status;
    if (failed != 0) {
        g_last_error = std::to_string(failed) + " selftest checks failed";
        return VDT_ERR_RUNTIME;
    }
    return VDT_OK;
}

}  // extern "C"
