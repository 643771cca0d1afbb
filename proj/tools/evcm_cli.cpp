// SPDX-License-Identifier: Apache-2.0
// evcm command-line tool: generate eigen-domain channel traces, run tracking
// scenarios with per-mode SIR output, analyze traces into plot-ready CSVs,
// inspect trace files, and run the built-in validation suite.
//
// Exit codes:
//   0  success (for `validate`: every criterion passed)
//   1  command-line usage error (or a failed validation run)
//   2  invalid configuration or trace content
//   3  file I/O or processing failure

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <evcm/evcm.hpp>

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Update-rule option value: "every", "frozen", or "every:K".
evcm::UpdateRule parse_update(const std::string& text) {
    evcm::UpdateRule rule;
    if (text == "every") {
        rule.kind = evcm::UpdateKind::every_sample;
    } else if (text == "frozen") {
        rule.kind = evcm::UpdateKind::frozen_at_start;
    } else if (text.rfind("every:", 0) == 0) {
        rule.kind = evcm::UpdateKind::every_k_samples;
        try {
            std::size_t used = 0;
            const std::string num = text.substr(6);
            rule.k = std::stoull(num, &used);
            if (used != num.size() || rule.k == 0) throw std::invalid_argument("bad period");
        } catch (const std::exception&) {
            throw std::invalid_argument("update rule '" + text + "': expected every:K with K >= 1");
        }
    } else {
        throw std::invalid_argument("update rule '" + text +
                                    "': expected 'every', 'frozen', or 'every:K'");
    }
    return rule;
}

std::string join_args(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += ' ';
        s += argv[i];
    }
    return s;
}

struct GenerateArgs {
    std::string config_path;
    std::string out_path;
    std::string payload = "eigen";
    // Optional overrides of the config document.
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t samples = 0;
    bool samples_set = false;
    std::string class_token;
};

int cmd_generate(const GenerateArgs& a, const std::string& command) {
    evcm::ModelConfig cfg = evcm::parse_config(read_file(a.config_path));
    if (a.seed_set) cfg.seed = a.seed;
    if (a.samples_set) {
        cfg.n_samples = a.samples;
        cfg.validate();
    }
    if (!a.class_token.empty()) cfg.channel_class = evcm::detail::parse_class_field(a.class_token);

    evcm::PayloadKind kind = evcm::PayloadKind::eigen;
    if (a.payload == "physical") kind = evcm::PayloadKind::physical;
    else if (a.payload == "both") kind = evcm::PayloadKind::both;
    else if (a.payload != "eigen")
        throw std::invalid_argument("payload '" + a.payload + "': expected eigen, physical, or both");

    const evcm::EigenTrace trace = evcm::gen_trace(cfg);
    evcm::TraceFile tf;
    tf.header = evcm::make_header(cfg, kind);
    if (kind != evcm::PayloadKind::physical) tf.eigen = trace;
    if (kind != evcm::PayloadKind::eigen) tf.physical = evcm::assemble_trace(trace);
    const std::size_t bytes = evcm::write_trace(tf, a.out_path);

    evcm::RunManifest man;
    man.config = cfg;
    man.command = command;
    man.outputs = {a.out_path};
    evcm::write_manifest(man, a.out_path + ".manifest.json");
    std::printf("wrote %s (%zu bytes, %llu samples)\n", a.out_path.c_str(), bytes,
                static_cast<unsigned long long>(cfg.n_samples));
    return 0;
}

struct SirArgs {
    std::string config_path;
    std::string trace_path;
    std::string out_path;
    std::string u_update = "every";
    std::string v_update = "every";
    std::size_t swap_period = 0;
    bool power_sum = false;
    bool sorted = false;
};

int cmd_sir(const SirArgs& a, const std::string& command) {
    if (a.config_path.empty() == a.trace_path.empty())
        throw std::invalid_argument("give exactly one of --config or --trace");

    evcm::ModelConfig cfg;
    evcm::EigenTrace trace;
    if (!a.config_path.empty()) {
        cfg = evcm::parse_config(read_file(a.config_path), evcm::ConfigPurpose::scenario);
        trace = evcm::gen_trace(cfg);
    } else {
        const evcm::TraceFile tf = evcm::read_trace(a.trace_path);
        if (tf.header.payload == evcm::PayloadKind::physical)
            throw std::invalid_argument(
                "trace '" + a.trace_path +
                "' carries only physical matrices; SIR tracking needs the eigen payload");
        trace = tf.eigen;
        cfg.n_rx = tf.header.n;
        cfg.n_tx = tf.header.m;
        cfg.n_samples = tf.header.n_samples;
        cfg.f_d_hz = tf.header.f_d_hz;
        cfg.s_f = tf.header.s_f;
        cfg.k_f = tf.header.k_f;
        cfg.seed = tf.header.seed;
        cfg.channel_class = static_cast<evcm::ChannelClass>(tf.header.class_tag);
    }

    evcm::TrackingPolicy policy;
    policy.u_update = parse_update(a.u_update);
    policy.v_update = parse_update(a.v_update);
    policy.swap_period = a.swap_period;

    const evcm::SirSeries series =
        a.sorted ? evcm::sorted_decomposition_sir(trace, policy, cfg.s_f)
                 : evcm::run_tracking(trace, policy, cfg.s_f, a.power_sum);
    evcm::export_csv(series, a.out_path);

    evcm::RunManifest man;
    man.config = cfg;
    man.command = command;
    man.outputs = {a.out_path};
    man.policies = {series.policy};
    evcm::write_manifest(man, a.out_path + ".manifest.json");
    std::printf("wrote %s (%zu samples, %zu modes, policy %s)\n", a.out_path.c_str(),
                series.size(), series.mode_count, series.policy.c_str());
    return 0;
}

struct AnalyzeArgs {
    std::string trace_path;
    std::string out_prefix;
    std::string what = "both";   // cdf | psd | both
    std::vector<std::string> entries;
    std::vector<std::size_t> modes;
};

int cmd_analyze(const AnalyzeArgs& a, const std::string& command) {
    if (a.what != "cdf" && a.what != "psd" && a.what != "both")
        throw std::invalid_argument("analysis kind '" + a.what + "': expected cdf, psd, or both");

    const evcm::TraceFile tf = evcm::read_trace(a.trace_path);
    evcm::ChannelTrace physical = tf.physical;
    if (physical.size() == 0) {
        if (tf.eigen.size() == 0)
            throw std::invalid_argument("trace '" + a.trace_path + "' carries no payload");
        physical = evcm::assemble_trace(tf.eigen);
    }

    std::vector<std::pair<std::size_t, std::size_t>> entries;
    for (const std::string& e : a.entries) {
        const auto comma = e.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("entry '" + e + "': expected row,col (zero-based)");
        try {
            const std::size_t r = std::stoull(e.substr(0, comma));
            const std::size_t c = std::stoull(e.substr(comma + 1));
            if (r >= tf.header.n || c >= tf.header.m) throw std::out_of_range("entry");
            entries.emplace_back(r, c);
        } catch (const std::exception&) {
            throw std::invalid_argument("entry '" + e + "': out of range for a " +
                                        std::to_string(tf.header.n) + "x" +
                                        std::to_string(tf.header.m) + " channel");
        }
    }
    if (entries.empty()) entries.emplace_back(0, 0);

    const double f_s = tf.header.s_f * tf.header.f_d_hz;
    std::vector<std::string> outputs;
    for (const auto& [r, c] : entries) {
        std::vector<double> mags(physical.size());
        std::vector<evcm::Complex> series(physical.size());
        for (std::size_t n = 0; n < physical.size(); ++n) {
            series[n] = physical.h[n].at(r, c);
            mags[n] = std::abs(series[n]);
        }
        const std::string tag = "h" + std::to_string(r + 1) + std::to_string(c + 1);
        if (a.what != "psd") {
            const std::string path = a.out_prefix + "_cdf_" + tag + ".csv";
            evcm::export_csv(evcm::empirical_cdf(mags), path);
            outputs.push_back(path);
        }
        if (a.what != "cdf") {
            const std::string path = a.out_prefix + "_psd_" + tag + ".csv";
            evcm::export_csv(evcm::periodogram(series, f_s), tf.header.f_d_hz, path);
            outputs.push_back(path);
        }
    }
    for (std::size_t mode : a.modes) {
        if (tf.eigen.size() == 0)
            throw std::invalid_argument("mode gain analysis needs the eigen payload");
        if (mode == 0 || mode > tf.eigen.s.front().size())
            throw std::invalid_argument("mode " + std::to_string(mode) + " out of range (1.." +
                                        std::to_string(tf.eigen.s.front().size()) + ")");
        std::vector<double> gains(tf.eigen.size());
        for (std::size_t n = 0; n < tf.eigen.size(); ++n) gains[n] = std::abs(tf.eigen.s[n][mode - 1]);
        const std::string path = a.out_prefix + "_cdf_s" + std::to_string(mode) + ".csv";
        evcm::export_csv(evcm::empirical_cdf(gains), path);
        outputs.push_back(path);
    }

    evcm::RunManifest man;
    man.config.n_rx = tf.header.n;
    man.config.n_tx = tf.header.m;
    man.config.n_samples = tf.header.n_samples;
    man.config.f_d_hz = tf.header.f_d_hz;
    man.config.s_f = tf.header.s_f;
    man.config.k_f = tf.header.k_f;
    man.config.seed = tf.header.seed;
    man.config.channel_class = static_cast<evcm::ChannelClass>(tf.header.class_tag);
    man.command = command;
    man.outputs = outputs;
    evcm::write_manifest(man, a.out_prefix + ".manifest.json");
    std::printf("wrote %zu file(s) with prefix %s\n", outputs.size(), a.out_prefix.c_str());
    return 0;
}

int cmd_info(const std::string& trace_path) {
    const evcm::TraceFile tf = evcm::read_trace(trace_path);
    const evcm::TraceHeader& h = tf.header;
    const char* payload = h.payload == evcm::PayloadKind::eigen      ? "eigen"
                          : h.payload == evcm::PayloadKind::physical ? "physical"
                                                                     : "both";
    std::printf("trace:      %s\n", trace_path.c_str());
    std::printf("format:     EVCM v%u\n", evcm::TraceHeader::format_version);
    std::printf("channel:    %ux%u, class %s\n", h.n, h.m,
                evcm::detail::class_token(static_cast<evcm::ChannelClass>(h.class_tag)));
    std::printf("samples:    %llu (normalized duration %.6g / f_d)\n",
                static_cast<unsigned long long>(h.n_samples),
                static_cast<double>(h.n_samples) / h.s_f);
    std::printf("f_d:        %.6g Hz (sampled at %.6g x f_d)\n", h.f_d_hz, h.s_f);
    std::printf("k_f:        %.6g\n", h.k_f);
    std::printf("seed:       %llu\n", static_cast<unsigned long long>(h.seed));
    std::printf("payload:    %s (%zu bytes)\n", payload, h.payload_bytes());
    if (tf.eigen.size() > 0) {
        double worst = 0.0;
        const std::size_t stride = std::max<std::size_t>(1, tf.eigen.size() / 1000);
        for (std::size_t n = 0; n < tf.eigen.size(); n += stride) {
            worst = std::max(worst, evcm::unitarity_error(tf.eigen.u[n]));
            worst = std::max(worst, evcm::unitarity_error(tf.eigen.v[n]));
        }
        std::printf("unitarity:  max error %.3g (sampled)\n", worst);
    }
    return 0;
}

int cmd_validate(const std::string& profile_name) {
    evcm::ValidationProfile profile = evcm::ValidationProfile::from_env();
    if (profile_name == "quick") profile = evcm::ValidationProfile::quick();
    else if (profile_name == "full") profile = evcm::ValidationProfile::full();
    else if (!profile_name.empty())
        throw std::invalid_argument("profile '" + profile_name + "': expected quick or full");
    const evcm::ValidationReport report = evcm::run_validation(profile);
    std::fputs(evcm::format_report(report).c_str(), stdout);
    return report.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eigen-domain MIMO channel simulator"};
    app.require_subcommand(1);
    const std::string command = join_args(argc, argv);

    GenerateArgs gen;
    CLI::App* c_gen = app.add_subcommand("generate", "generate a channel trace file");
    c_gen->add_option("--config", gen.config_path, "config document (key = value lines)")
        ->required();
    c_gen->add_option("--out", gen.out_path, "output trace path")->required();
    c_gen->add_option("--payload", gen.payload, "payload kind: eigen | physical | both");
    c_gen->add_option("--seed", gen.seed, "override the config seed")
        ->each([&](const std::string&) { gen.seed_set = true; });
    c_gen->add_option("--samples", gen.samples, "override the sample count")
        ->each([&](const std::string&) { gen.samples_set = true; });
    c_gen->add_option("--class", gen.class_token, "override the channel class (I..V)");

    SirArgs sir;
    CLI::App* c_sir = app.add_subcommand("sir", "run a tracking scenario, export per-mode SIR");
    c_sir->add_option("--config", sir.config_path, "config document (trace generated on the fly)");
    c_sir->add_option("--trace", sir.trace_path, "existing eigen trace file");
    c_sir->add_option("--out", sir.out_path, "output CSV path")->required();
    c_sir->add_option("--u-update", sir.u_update, "receive-weight updates: every | frozen | every:K");
    c_sir->add_option("--v-update", sir.v_update, "transmit-weight updates: every | frozen | every:K");
    c_sir->add_option("--swap-period", sir.swap_period,
                      "inject forced eigenmode swaps with this block period (0 = off)");
    c_sir->add_flag("--power-sum", sir.power_sum,
                    "accumulate interference as a power sum instead of a coherent sum");
    c_sir->add_flag("--sorted", sir.sorted,
                    "track the per-sample sorted re-decomposition instead of the natural path");

    SirArgs stress;
    CLI::App* c_stress =
        app.add_subcommand("stress", "swap-injection stress scenario (sir with a required period)");
    c_stress->add_option("--config", stress.config_path, "config document")->required();
    c_stress->add_option("--out", stress.out_path, "output CSV path")->required();
    c_stress->add_option("--swap-period", stress.swap_period, "swap block period in samples")
        ->required()
        ->check(CLI::PositiveNumber);
    c_stress->add_option("--u-update", stress.u_update, "receive-weight updates");
    c_stress->add_option("--v-update", stress.v_update, "transmit-weight updates");
    c_stress->add_flag("--sorted", stress.sorted, "track the sorted re-decomposition");

    AnalyzeArgs ana;
    CLI::App* c_ana = app.add_subcommand("analyze", "export CDFs and spectra from a trace file");
    c_ana->add_option("--trace", ana.trace_path, "trace file")->required();
    c_ana->add_option("--out-prefix", ana.out_prefix, "output path prefix")->required();
    c_ana->add_option("--what", ana.what, "cdf | psd | both");
    c_ana->add_option("--entry", ana.entries, "channel entry row,col (zero-based; repeatable)");
    c_ana->add_option("--mode", ana.modes, "eigenmode gain CDF, 1-based mode index (repeatable)");

    std::string trace_path;
    CLI::App* c_info = app.add_subcommand("info", "print a trace file's header and quick stats");
    c_info->add_option("--trace", trace_path, "trace file")->required();

    std::string profile_name;
    CLI::App* c_val = app.add_subcommand("validate", "run the built-in validation suite");
    c_val->add_option("--profile", profile_name,
                      "quick | full (default: EIGENCHAN_PROFILE env, else full)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_gen->parsed()) return cmd_generate(gen, command);
        if (c_sir->parsed()) return cmd_sir(sir, command);
        if (c_stress->parsed()) {
            if (stress.trace_path.empty() && stress.config_path.empty())
                throw std::invalid_argument("stress needs --config");
            return cmd_sir(stress, command);
        }
        if (c_ana->parsed()) return cmd_analyze(ana, command);
        if (c_info->parsed()) return cmd_info(trace_path);
        if (c_val->parsed()) return cmd_validate(profile_name);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
