// cqed: device / spectrum / dephasing / validate runs from a config file.
//
// Exit codes: 0 ok, 1 config error, 2 numeric or capacity error,
// 3 validation failure.

#include "cqed/config.hpp"
#include "cqed/diagnostics.hpp"
#include "cqed/errors.hpp"
#include "cqed/scenarios.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

namespace {

enum Exit { kOk = 0, kConfig = 1, kNumeric = 2, kValidation = 3 };

struct Args {
    std::string config;
    std::string out;
    unsigned workers = 0;
    double tol = 0.0;
};

void print_summary(const cqed::ResultBundle& b)
{
    const auto& r = b.report;
    if (r.contains("cross_phase"))
        std::printf("cross phase: %.6f cycles\n", r["cross_phase"]["cycles"].get<double>());
    if (r.contains("degenerate_classes"))
        std::printf("degenerate classes: %zu\n", r["degenerate_classes"].size());
    if (r.contains("checks")) {
        for (const auto& c : r["checks"])
            std::printf("%-4s %-13s %-34s residual=%-12.4g tol=%.3g\n", c["pass"].get<bool>() ? "PASS" : "FAIL",
                        c["module"].get<std::string>().c_str(), c["check"].get<std::string>().c_str(),
                        c["residual"].is_number() ? c["residual"].get<double>() : INFINITY,
                        c["tolerance"].get<double>());
    }
    for (const auto& t : b.tables) std::printf("wrote %s.csv (%zu rows)\n", t.name.c_str(), t.rows.size());
}

int execute(cqed::Scenario scenario, const Args& a, bool tol_given)
{
    cqed::RunConfig cfg;
    if (!a.config.empty()) {
        cfg = cqed::load_config(a.config);
        if (cfg.scenario != scenario)
            throw cqed::ConfigError("scenario", 0,
                                    std::string("config declares '") + to_string(cfg.scenario) +
                                        "' but the subcommand is '" + to_string(scenario) + "'");
    } else if (scenario == cqed::Scenario::Validate) {
        cfg = cqed::parse_config("scenario = validate\n");
    } else {
        throw cqed::ConfigError("", 0, "--config is required for this subcommand");
    }

    if (a.workers > 0) cfg.workers = a.workers;
    if (tol_given) {
        if (!(a.tol > 0.0)) throw cqed::ConfigError("--tol", 0, "tolerance must be positive");
        switch (scenario) {
        case cqed::Scenario::Validate: cfg.tol.validation = a.tol; break;
        case cqed::Scenario::Dephasing: cfg.tol.quad_rel = a.tol; break;
        case cqed::Scenario::Spectrum: cfg.tol.dfs = a.tol; break;
        case cqed::Scenario::Device: throw cqed::ConfigError("--tol", 0, "the device scenario has no tolerance");
        }
    }
    std::string out = a.out;
    if (out.empty()) out = cfg.output.dir.empty() ? "." : cfg.output.dir;

    const cqed::ResultBundle b = cqed::run(cfg);
    cqed::write_bundle(b, out);
    print_summary(b);
    return b.validation_failed ? kValidation : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cross-Kerr circuit QED dephasing toolkit"};
    app.set_version_flag("--version", cqed::kArtifactVersion);
    app.require_subcommand(1);

    Args args;
    struct Sub {
        const char* name;
        const char* help;
        cqed::Scenario scenario;
    };
    const Sub subs[] = {
        {"device", "effective parameters, regime report, cross phase", cqed::Scenario::Device},
        {"spectrum", "level table and degenerate (decoherence-free) classes", cqed::Scenario::Spectrum},
        {"dephasing", "reduced density-matrix trajectories", cqed::Scenario::Dephasing},
        {"validate", "invariant suite with measured residuals", cqed::Scenario::Validate},
    };
    std::vector<std::pair<CLI::App*, cqed::Scenario>> apps;
    std::vector<CLI::Option*> tol_opts;
    for (const auto& s : subs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--config", args.config, "config file")->check(CLI::ExistingFile);
        sub->add_option("--out", args.out, "output directory");
        sub->add_option("--workers", args.workers, "worker threads")->check(CLI::Range(1u, 1024u));
        tol_opts.push_back(sub->add_option("--tol", args.tol, "tolerance override"));
        apps.emplace_back(sub, s.scenario);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        for (std::size_t k = 0; k < apps.size(); ++k)
            if (apps[k].first->parsed()) return execute(apps[k].second, args, tol_opts[k]->count() > 0);
    } catch (const cqed::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kNumeric;
    }
    return kConfig;
}
