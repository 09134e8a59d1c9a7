// nldiff: nonlocal nonlinear diffusion denoising for 1D signals and images,
// with Perona-Malik and linear-diffusion baselines, synthetic data generation
// and quality metrics. See README.md for the format contracts.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nldiff/nldiff.hpp"

using namespace nldiff;

namespace {

bool has_ext(const std::string& path, const char* ext) {
    const auto pos = path.find_last_of('.');
    if (pos == std::string::npos)
        return false;
    std::string e = path.substr(pos);
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e == ext;
}

bool is_signal_path(const std::string& path) { return has_ext(path, ".csv"); }

Image2D load_image(const std::string& path) {
    if (has_ext(path, ".png"))
        return read_png(path);
    if (has_ext(path, ".pgm"))
        return read_pgm(path).image;
    throw format_error("unsupported image format: '" + path + "' (use .pgm or .png)");
}

void save_image(const std::string& path, const Image2D& img) {
    if (has_ext(path, ".png"))
        write_png(path, img);
    else if (has_ext(path, ".pgm"))
        write_pgm(path, img);
    else
        throw format_error("unsupported image format: '" + path + "' (use .pgm or .png)");
}

double data_range(const std::vector<double>& v) {
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    return *mx - *mn;
}

double resolve_eps_tv(double requested, double range) {
    if (requested > 0.0)
        return requested;
    return 1e-4 * (range > 0.0 ? range : 1.0);
}

EdgeStopSpec make_edge_stop(const RunConfig& cfg) {
    EdgeStopSpec spec;
    if (cfg.edge_stop_form == "poly")
        spec.form = EdgeStopSpec::Form::polynomial;
    else if (cfg.edge_stop_form == "pm")
        spec.form = EdgeStopSpec::Form::perona_malik;
    else
        throw argument_error("--edge-stop must be 'poly' or 'pm'");
    spec.eps_g = cfg.eps_g;
    spec.lambda = cfg.lambda;
    spec.validate();
    return spec;
}

void write_metrics_csv(const std::string& path, const std::vector<StepMetrics>& rows) {
    std::ofstream out(path);
    if (!out)
        throw format_error("cannot write '" + path + "'");
    out << "step,mean,l2,tv\n";
    char buf[128];
    for (const auto& m : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g\n", m.step, m.mean, m.l2, m.tv);
        out << buf;
    }
}

void report_signal_quality(const RunConfig& cfg, const Signal1D& result) {
    if (cfg.reference.empty())
        return;
    const Signal1D ref = read_signal_csv(cfg.reference);
    const double m = mse(ref, result);
    const double range = data_range(ref.values);
    std::printf("mse=%.8g psnr=%.6g\n", m, psnr_from_mse(m, range > 0 ? range : 1.0));
}

void report_image_quality(const RunConfig& cfg, const Image2D& result) {
    if (cfg.reference.empty())
        return;
    const Image2D ref = load_image(cfg.reference);
    const double m = mse(ref, result);
    std::printf("mse=%.8g psnr=%.6g\n", m, psnr_from_mse(m));
}

int run_denoise1d(const RunConfig& cfg, bool pm_baseline) {
    const Signal1D input = read_signal_csv(cfg.input);
    SolverParams params;
    params.tau = cfg.tau;
    params.steps = cfg.steps;
    params.eps_tv = resolve_eps_tv(cfg.eps_tv, data_range(input.values));
    params.edge_stop = make_edge_stop(cfg);
    params.sigma0 = cfg.sigma0 < 0 ? 0.0 : cfg.sigma0;

    RunResult1D res;
    if (pm_baseline) {
        params.validate();
        Signal1D u = gaussian_presmooth(input, params.sigma0 / input.h);
        res.metrics.push_back(signal_metrics(u, 0));
        for (int k = 1; k <= params.steps; ++k) {
            u = perona_malik_step(u, cfg.lambda, params.tau);
            res.metrics.push_back(signal_metrics(u, k));
            if (cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0 && k != params.steps)
                res.snapshots.emplace_back(k, u);
        }
        res.final = std::move(u);
    } else {
        res = run_1d(input, params, {cfg.l}, cfg.snapshot_stride);
    }

    write_signal_csv(cfg.output, res.final);
    for (const auto& [step, snap] : res.snapshots)
        write_signal_csv(snapshot_path(cfg.output, step), snap);
    if (!cfg.metrics_out.empty())
        write_metrics_csv(cfg.metrics_out, res.metrics);
    report_signal_quality(cfg, res.final);
    return 0;
}

int run_denoise2d(const RunConfig& cfg, bool pm_baseline) {
    const Image2D input = load_image(cfg.input);
    SolverParams params;
    params.tau = cfg.tau;
    params.steps = cfg.steps;
    params.eps_tv = resolve_eps_tv(cfg.eps_tv, 1.0);
    params.edge_stop = make_edge_stop(cfg);
    params.sigma0 = cfg.sigma0 < 0 ? 0.5 : cfg.sigma0;

    RunResult2D res;
    if (pm_baseline) {
        params.validate();
        Image2D u = gaussian_smooth(input, params.sigma0);
        res.metrics.push_back(image_metrics(u, 0));
        for (int k = 1; k <= params.steps; ++k) {
            u = perona_malik_step(u, cfg.lambda, params.tau, cfg.threads);
            res.metrics.push_back(image_metrics(u, k));
            if (cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0 && k != params.steps)
                res.snapshots.emplace_back(k, u);
        }
        res.final = std::move(u);
    } else {
        Run2DOptions opt;
        opt.modes = cfg.modes;
        opt.boundary_mesh = cfg.bmesh;
        opt.refresh_every = cfg.refresh_every;
        opt.snapshot_stride = cfg.snapshot_stride;
        opt.threads = cfg.threads;
        res = run_2d(input, params, {cfg.q1, cfg.q2}, opt);
        std::printf("clamp_events=%lld\n", static_cast<long long>(res.clamp_events));
    }

    save_image(cfg.output, res.final);
    for (const auto& [step, snap] : res.snapshots)
        save_image(snapshot_path(cfg.output, step), snap);
    if (!cfg.metrics_out.empty())
        write_metrics_csv(cfg.metrics_out, res.metrics);
    report_image_quality(cfg, res.final);
    return 0;
}

int run_linear(const RunConfig& cfg) {
    if (is_signal_path(cfg.input)) {
        const Signal1D out = linear_diffusion(read_signal_csv(cfg.input), cfg.t_total);
        write_signal_csv(cfg.output, out);
        report_signal_quality(cfg, out);
    } else {
        const Image2D out = linear_diffusion(load_image(cfg.input), cfg.t_total);
        save_image(cfg.output, out);
        report_image_quality(cfg, out);
    }
    return 0;
}

std::string noisy_path(const std::string& path) {
    const std::size_t dot = path.find_last_of('.');
    const std::size_t slash = path.find_last_of("/\\");
    const bool has = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return has ? path.substr(0, dot) + "_noisy" + path.substr(dot) : path + "_noisy";
}

int run_synth(const RunConfig& cfg) {
    SynthParams p;
    p.noise_sigma = cfg.noise_sigma;
    if (synth_kind_is_1d(cfg.kind)) {
        const SynthSignal s = synth_signal(cfg.kind, p, cfg.seed);
        write_signal_csv(cfg.output, s.clean);
        write_signal_csv(noisy_path(cfg.output), s.noisy);
    } else if (synth_kind_is_2d(cfg.kind)) {
        const SynthImage s = synth_image(cfg.kind, p, cfg.seed);
        save_image(cfg.output, s.clean);
        save_image(noisy_path(cfg.output), s.noisy);
    } else {
        throw argument_error("unknown synth kind '" + cfg.kind + "'");
    }
    return 0;
}

int run_metrics(const RunConfig& cfg) {
    if (is_signal_path(cfg.input)) {
        const Signal1D ref = read_signal_csv(cfg.reference);
        const Signal1D test = read_signal_csv(cfg.input);
        const double m = mse(ref, test);
        const double range = data_range(ref.values);
        std::printf("mse=%.8g psnr=%.6g\n", m, psnr_from_mse(m, range > 0 ? range : 1.0));
    } else {
        const double m = mse(load_image(cfg.reference), load_image(cfg.input));
        std::printf("mse=%.8g psnr=%.6g\n", m, psnr_from_mse(m));
    }
    return 0;
}

struct FlagBinding {
    CLI::Option* opt = nullptr;
    std::function<void(RunConfig&, const RunConfig&)> copy;
};

// every flag records how to copy its parsed value over a config-file base
void add_flags(CLI::App* cmd, RunConfig& bound, std::vector<FlagBinding>& binds,
               const std::string& mode) {
    auto reg = [&](CLI::Option* opt, auto member) {
        binds.push_back({opt, [member](RunConfig& dst, const RunConfig& src) {
                             dst.*member = src.*member;
                         }});
    };
    const bool wants_input = mode != "synth";
    const bool wants_output = mode != "metrics";
    if (wants_input) {
        auto* o = cmd->add_option("--in", bound.input, "input path");
        if (mode != "metrics")
            o->required();
        reg(o, &RunConfig::input);
    }
    if (wants_output) {
        reg(cmd->add_option("--out", bound.output, "output path")->required(), &RunConfig::output);
    }
    reg(cmd->add_option("--ref", bound.reference, "ground truth for quality metrics"),
        &RunConfig::reference);
    reg(cmd->add_option("--metrics", bound.metrics_out, "per-step metrics CSV path"),
        &RunConfig::metrics_out);
    reg(cmd->add_option("--tau", bound.tau, "time step"), &RunConfig::tau);
    reg(cmd->add_option("--steps", bound.steps, "iteration count"), &RunConfig::steps);
    reg(cmd->add_option("--l", bound.l, "1D forward window length in samples"), &RunConfig::l);
    auto* qopt = cmd->add_option_function<int>(
        "--q", [&bound](int q) { bound.q1 = bound.q2 = q; }, "2D window half-width (sets q1=q2)");
    binds.push_back({qopt, [](RunConfig& dst, const RunConfig& src) {
                         dst.q1 = src.q1;
                         dst.q2 = src.q2;
                     }});
    reg(cmd->add_option("--q1", bound.q1, "2D window half-width in x"), &RunConfig::q1);
    reg(cmd->add_option("--q2", bound.q2, "2D window half-width in y"), &RunConfig::q2);
    reg(cmd->add_option("--modes", bound.modes, "harmonic wavenumbers M (4M+3 modes)"),
        &RunConfig::modes);
    reg(cmd->add_option("--bmesh", bound.bmesh, "boundary mesh size L"), &RunConfig::bmesh);
    reg(cmd->add_option("--eps-tv", bound.eps_tv, "TV regularizer (0 = 1e-4 of dynamic range)"),
        &RunConfig::eps_tv);
    reg(cmd->add_option("--eps-g", bound.eps_g, "diffusivity floor in (0,1)"), &RunConfig::eps_g);
    reg(cmd->add_option("--edge-stop", bound.edge_stop_form, "edge-stop form: poly|pm"),
        &RunConfig::edge_stop_form);
    reg(cmd->add_option("--lambda", bound.lambda, "Perona-Malik contrast parameter"),
        &RunConfig::lambda);
    reg(cmd->add_option("--sigma0", bound.sigma0,
                        "presmoothing sigma (1D: abscissa units; 2D: pixels)"),
        &RunConfig::sigma0);
    reg(cmd->add_option("--t", bound.t_total, "linear diffusion time"), &RunConfig::t_total);
    reg(cmd->add_option("--noise", bound.noise_sigma, "AWGN sigma for synth"),
        &RunConfig::noise_sigma);
    reg(cmd->add_option("--kind", bound.kind, "synth kind: piecewise|spiketrain|step2d|testcard"),
        &RunConfig::kind);
    reg(cmd->add_option("--refresh-every", bound.refresh_every,
                        "recompute the ratio field every k steps"),
        &RunConfig::refresh_every);
    reg(cmd->add_option("--snapshot-stride", bound.snapshot_stride, "snapshot output stride"),
        &RunConfig::snapshot_stride);
    reg(cmd->add_option("--seed", bound.seed, "RNG seed"), &RunConfig::seed);
    reg(cmd->add_option("--threads", bound.threads, "worker threads (0 = all cores)"),
        &RunConfig::threads);
}

int dispatch(const RunConfig& cfg) {
    if (cfg.mode == "denoise1d")
        return run_denoise1d(cfg, false);
    if (cfg.mode == "pm1d")
        return run_denoise1d(cfg, true);
    if (cfg.mode == "denoise2d")
        return run_denoise2d(cfg, false);
    if (cfg.mode == "pm2d")
        return run_denoise2d(cfg, true);
    if (cfg.mode == "linear")
        return run_linear(cfg);
    if (cfg.mode == "synth")
        return run_synth(cfg);
    if (cfg.mode == "metrics")
        return run_metrics(cfg);
    throw argument_error("unknown mode '" + cfg.mode + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal nonlinear diffusion denoising"};
    app.require_subcommand(1);

    const std::vector<std::string> modes{"denoise1d", "denoise2d", "pm1d", "pm2d",
                                         "linear", "synth", "metrics"};
    struct PerMode {
        RunConfig bound;
        std::vector<FlagBinding> binds;
        std::string config_path;
        std::string save_config_path;
        CLI::App* cmd = nullptr;
    };
    std::vector<PerMode> per_mode(modes.size());

    for (std::size_t i = 0; i < modes.size(); ++i) {
        PerMode& pm = per_mode[i];
        pm.cmd = app.add_subcommand(modes[i]);
        pm.bound.mode = modes[i];
        add_flags(pm.cmd, pm.bound, pm.binds, modes[i]);
        pm.cmd->add_option("--config", pm.config_path, "key=value config file (flags override)");
        pm.cmd->add_option("--save-config", pm.save_config_path,
                           "write the effective configuration");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (std::size_t i = 0; i < modes.size(); ++i) {
            PerMode& pm = per_mode[i];
            if (!pm.cmd->parsed())
                continue;
            RunConfig cfg;
            if (!pm.config_path.empty())
                cfg = read_config(pm.config_path);
            cfg.mode = modes[i];
            for (const auto& bind : pm.binds)
                if (bind.opt->count() > 0)
                    bind.copy(cfg, pm.bound);
            if (cfg.input.empty() && modes[i] != "synth")
                throw argument_error("--in is required (flag or config)");
            if (cfg.output.empty() && modes[i] != "metrics")
                throw argument_error("--out is required (flag or config)");
            if (modes[i] == "metrics" && cfg.reference.empty())
                throw argument_error("metrics mode needs --ref");
            if (!pm.save_config_path.empty())
                write_config(pm.save_config_path, cfg);
            return dispatch(cfg);
        }
        return 2;
    } catch (const numerical_error& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 1;
    } catch (const argument_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const format_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
