// Command-line frontend for the trading simulator; talks to the shared
// library through the C API only.
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vdt_capi.h"

namespace {

int fail(vdt_status status) {
    std::fprintf(stderr, "error: %s\n", vdt_last_error());
    return static_cast<int>(status);
}

struct ConfigHandle {
    vdt_config* ptr = nullptr;
    ~ConfigHandle() { vdt_config_free(ptr); }
};

struct ResultHandle {
    vdt_result* ptr = nullptr;
    ~ResultHandle() { vdt_result_free(ptr); }
};

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value pairs
    std::string policy;
    std::string seed;
    std::string horizon;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "JSON run configuration file");
    cmd->add_option("-s,--set", opts.overrides,
                    "override a config field, dotted.key=json-value (repeatable)");
    cmd->add_option("--policy", opts.policy,
                    "policy: vthb, stcf, rdcf, stp, rdp, linp, conp");
    cmd->add_option("--seed", opts.seed, "run seed");
    cmd->add_option("--horizon", opts.horizon, "number of rounds");
}

vdt_status make_config(const CommonOpts& opts, ConfigHandle& handle) {
    vdt_status status = opts.config_path.empty()
                            ? vdt_config_create(&handle.ptr)
                            : vdt_config_load(opts.config_path.c_str(), &handle.ptr);
    if (status != VDT_OK) return status;

    auto apply = [&](const std::string& key, const std::string& value) {
        return vdt_config_override(handle.ptr, key.c_str(), value.c_str());
    };
    for (const auto& pair : opts.overrides) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", pair.c_str());
            return VDT_ERR_CONFIG;
        }
        status = apply(pair.substr(0, eq), pair.substr(eq + 1));
        if (status != VDT_OK) return status;
    }
    if (!opts.policy.empty() && (status = apply("policy", opts.policy)) != VDT_OK) return status;
    if (!opts.seed.empty() && (status = apply("seed", opts.seed)) != VDT_OK) return status;
    if (!opts.horizon.empty() && (status = apply("horizon", opts.horizon)) != VDT_OK)
        return status;
    return VDT_OK;
}

void print_and_free(char* text) {
    if (text != nullptr) {
        std::fputs(text, stdout);
        vdt_string_free(text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vector data trading simulator"};
    app.require_subcommand(1);

    CommonOpts run_opts, index_opts, sweep_opts;

    auto* cmd_run = app.add_subcommand("run", "execute one simulated trading run");
    add_common(cmd_run, run_opts);
    std::string run_log, run_timing, run_report;
    cmd_run->add_option("--log", run_log, "write the round-log CSV here");
    cmd_run->add_option("--timing", run_timing, "write the per-round timing CSV here");
    cmd_run->add_option("--report", run_report, "write report files with this prefix");
    bool run_dump_config = false;
    cmd_run->add_flag("--dump-config", run_dump_config, "print the resolved config and exit");

    auto* cmd_index = app.add_subcommand("build-index", "build the IVF index and describe it");
    add_common(cmd_index, index_opts);

    auto* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep");
    add_common(cmd_sweep, sweep_opts);
    std::string sweep_axis, sweep_values, sweep_seeds, sweep_out;
    cmd_sweep->add_option("--axis", sweep_axis, "p_hi | k-range | nlist | policy | seed")
        ->required();
    cmd_sweep->add_option("--values", sweep_values, "comma-separated axis values")->required();
    cmd_sweep->add_option("--seeds", sweep_seeds, "comma-separated seeds (default: config seed)");
    cmd_sweep->add_option("--out", sweep_out, "write the sweep CSV here");

    auto* cmd_report = app.add_subcommand("report", "summarize an existing round-log CSV");
    std::string report_log, report_out;
    cmd_report->add_option("--log", report_log, "round-log CSV to read")->required();
    cmd_report->add_option("--out", report_out, "write report files with this prefix");

    auto* cmd_selftest = app.add_subcommand("selftest", "run the oracle-backed example suite");

    CLI11_PARSE(app, argc, argv);

    if (cmd_run->parsed()) {
        ConfigHandle cfg;
        vdt_status status = make_config(run_opts, cfg);
        if (status != VDT_OK) return fail(status);
        auto set = [&](const char* key, const std::string& value) {
            return value.empty() ? VDT_OK : vdt_config_override(cfg.ptr, key, value.c_str());
        };
        if ((status = set("output.log_csv", run_log)) != VDT_OK) return fail(status);
        if ((status = set("output.timing_csv", run_timing)) != VDT_OK) return fail(status);
        if ((status = set("output.report_prefix", run_report)) != VDT_OK) return fail(status);
        if (run_dump_config) {
            char* text = nullptr;
            if ((status = vdt_config_dump(cfg.ptr, &text)) != VDT_OK) return fail(status);
            print_and_free(text);
            std::fputs("\n", stdout);
            return 0;
        }
        ResultHandle result;
        if ((status = vdt_run(cfg.ptr, &result.ptr)) != VDT_OK) return fail(status);
        char* text = nullptr;
        if ((status = vdt_result_summary(result.ptr, &text)) != VDT_OK) return fail(status);
        print_and_free(text);
        return 0;
    }

    if (cmd_index->parsed()) {
        ConfigHandle cfg;
        vdt_status status = make_config(index_opts, cfg);
        if (status != VDT_OK) return fail(status);
        char* text = nullptr;
        if ((status = vdt_index_report(cfg.ptr, &text)) != VDT_OK) return fail(status);
        print_and_free(text);
        return 0;
    }

    if (cmd_sweep->parsed()) {
        ConfigHandle cfg;
        vdt_status status = make_config(sweep_opts, cfg);
        if (status != VDT_OK) return fail(status);
        char* text = nullptr;
        status = vdt_sweep(cfg.ptr, sweep_axis.c_str(), sweep_values.c_str(),
                           sweep_seeds.empty() ? nullptr : sweep_seeds.c_str(),
                           sweep_out.empty() ? nullptr : sweep_out.c_str(), &text);
        if (status != VDT_OK) return fail(status);
        print_and_free(text);
        return 0;
    }

    if (cmd_report->parsed()) {
        char* text = nullptr;
        const vdt_status status = vdt_report_from_csv(
            report_log.c_str(), report_out.empty() ? nullptr : report_out.c_str(), &text);
        if (status != VDT_OK) return fail(status);
        print_and_free(text);
        return 0;
    }

    if (cmd_selftest->parsed()) {
        char* text = nullptr;
        const vdt_status status = vdt_selftest(&text);
        print_and_free(text);
        if (status != VDT_OK) return fail(status);
        return 0;
    }

    return 0;
}
