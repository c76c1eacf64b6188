// SPDX-License-Identifier: Apache-2.0
//
// mmcest - millimeter-wave MIMO sparse channel estimation
// Copyright (C) 2026 the mmcest authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mmcest/simulate.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <deque>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

namespace
{

constexpr double k_pi = 3.14159265358979323846;

struct KeyOpt
{
    std::string key;
    std::string value;
    CLI::Option *opt = nullptr;
};

// Every config-file key is mirrored as a flag of the same name; flags the user
// actually passes override the config file
struct ConfigCli
{
    std::string config_path;
    unsigned threads = 1;
    std::deque<KeyOpt> keys;

    bool passed(const std::string &key) const
    {
        for (const KeyOpt &ko : keys)
            if (ko.key == key)
                return ko.opt->count() > 0;
        return false;
    }
};

void add_config_options(CLI::App *cmd, ConfigCli &cc, bool with_dictionary_kind = true)
{
    cmd->add_option("--config", cc.config_path, "key=value config file, loaded before other flags");
    auto reg = [&](const char *key, const char *help) {
        cc.keys.push_back(KeyOpt{key, "", nullptr});
        KeyOpt &ko = cc.keys.back();
        ko.opt = cmd->add_option("--" + ko.key, ko.value, help);
    };
    reg("n_bs", "transmit antenna count");
    reg("n_ms", "receive antenna count");
    reg("big_k", "codebook branching factor K");
    reg("big_s", "codebook depth S");
    reg("num_grid", "grid size N; must equal 2*K^S (0 derives it)");
    if (with_dictionary_kind)
        reg("dictionary_kind", "'grid' or 'cbp'");
    reg("algorithm", "'single', 'multipath-sequential' or 'multipath-joint'");
    reg("num_paths", "path count, or 'uniform' for a random 1..6 per trial");
    reg("gain_distribution", "'unit-gain' or 'complex-normal'");
    reg("angle_mode", "'continuous-uniform' or 'on-grid'");
    reg("snr_db_sweep", "comma-separated SNR points in dB");
    reg("trials", "Monte Carlo trials per SNR point");
    reg("power", "per-measurement transmit power");
    reg("spacing_wavelengths", "ULA element spacing in wavelengths");
    reg("delta_phi", "derivative-atom detuning, or 'auto' for pi/N");
    reg("master_seed", "seed for the whole experiment");
    reg("output_path", "output file");
    cmd->add_option("--threads", cc.threads, "worker threads for the Monte Carlo loop");
}

mmcest::ExperimentConfig resolve_config(const ConfigCli &cc)
{
    mmcest::ExperimentConfig cfg;
    if (!cc.config_path.empty())
        cfg = mmcest::load_config_file(cc.config_path);
    for (const KeyOpt &ko : cc.keys)
        if (ko.opt->count() > 0)
            mmcest::apply_config_entry(cfg, ko.key, ko.value);
    return cfg;
}

const char *kind_str(mmcest::DictionaryKind k)
{
    return k == mmcest::DictionaryKind::cbp ? "cbp" : "grid";
}

const char *algorithm_str(mmcest::Algorithm a)
{
    switch (a)
    {
    case mmcest::Algorithm::single:
        return "single";
    case mmcest::Algorithm::multipath_sequential:
        return "multipath-sequential";
    default:
        return "multipath-joint";
    }
}

std::string strip_csv_suffix(const std::string &path)
{
    const std::string suffix = ".csv";
    if (path.size() > suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return path.substr(0, path.size() - suffix.size());
    return path;
}

void write_file(const std::string &path, const std::string &what,
                const std::function<void(std::ostream &)> &writer)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    writer(os);
    if (!os)
        throw std::runtime_error("failed writing " + what + " to " + path);
}

void print_summary(const std::vector<mmcest::SnrPointResult> &results)
{
    for (const mmcest::SnrPointResult &r : results)
        std::printf("  snr %+6.1f dB   err %.4f   se_est %8.3f   se_perfect %8.3f   (%llu trials)\n",
                    r.snr_db, r.error_probability, r.se_estimated_mean, r.se_perfect_mean,
                    static_cast<unsigned long long>(r.trials));
}

int do_run(const ConfigCli &cc)
{
    const mmcest::ExperimentConfig cfg = resolve_config(cc);
    mmcest::validate(cfg);
    const auto results = mmcest::run_experiment(cfg, cc.threads);
    write_file(cfg.output_path, "results",
               [&](std::ostream &os) { mmcest::write_results_csv(cfg, results, os); });
    std::printf("%s / %s\n", kind_str(cfg.dictionary_kind), algorithm_str(cfg.algorithm));
    print_summary(results);
    std::printf("wrote %s\n", cfg.output_path.c_str());
    return 0;
}

int do_sweep(const ConfigCli &cc)
{
    const mmcest::ExperimentConfig base = resolve_config(cc);
    mmcest::validate(base);
    const std::string stem = strip_csv_suffix(base.output_path);

    const mmcest::DictionaryKind kinds[] = {mmcest::DictionaryKind::grid, mmcest::DictionaryKind::cbp};
    const mmcest::Algorithm algs[] = {mmcest::Algorithm::single,
                                      mmcest::Algorithm::multipath_sequential,
                                      mmcest::Algorithm::multipath_joint};
    for (mmcest::DictionaryKind kind : kinds)
        for (mmcest::Algorithm alg : algs)
        {
            mmcest::ExperimentConfig cfg = base;
            cfg.dictionary_kind = kind;
            cfg.algorithm = alg;
            cfg.output_path = stem + "_" + kind_str(kind) + "_" + algorithm_str(alg) + ".csv";
            std::printf("%s / %s\n", kind_str(kind), algorithm_str(alg));
            const auto results = mmcest::run_experiment(cfg, cc.threads);
            write_file(cfg.output_path, "results",
                       [&](std::ostream &os) { mmcest::write_results_csv(cfg, results, os); });
            print_summary(results);
            std::printf("wrote %s\n", cfg.output_path.c_str());
        }
    return 0;
}

int do_patterns(const ConfigCli &cc, const std::string &which, arma::uword resolution)
{
    mmcest::ExperimentConfig cfg = resolve_config(cc);
    mmcest::validate(cfg);

    std::vector<mmcest::DictionaryKind> kinds;
    if (which == "grid")
        kinds = {mmcest::DictionaryKind::grid};
    else if (which == "cbp")
        kinds = {mmcest::DictionaryKind::cbp};
    else if (which == "both")
        kinds = {mmcest::DictionaryKind::grid, mmcest::DictionaryKind::cbp};
    else
        throw std::invalid_argument("patterns: --dictionary_kind must be 'grid', 'cbp' or 'both'");

    arma::uword n = 2;
    for (arma::uword i = 0; i < cfg.big_s; ++i)
        n *= cfg.big_k;
    const mmcest::UlaConfig bs{cfg.n_bs, cfg.spacing_wavelengths};
    const mmcest::AngleGrid grid = mmcest::make_grid(n);

    for (mmcest::DictionaryKind kind : kinds)
    {
        mmcest::Dictionary dict;
        if (kind == mmcest::DictionaryKind::cbp)
        {
            const double dphi = cfg.delta_phi < 0.0 ? k_pi / double(n) : cfg.delta_phi;
            dict = mmcest::build_cbp_dictionary(bs, grid, dphi);
        }
        else
            dict = mmcest::build_grid_dictionary(bs, grid);
        const mmcest::HierarchicalCodebook cb = mmcest::build_codebook(dict, bs, cfg.big_s, cfg.big_k);

        const std::string path = (kinds.size() == 2)
                                     ? strip_csv_suffix(cfg.output_path) + "_" + kind_str(kind) + ".csv"
                                     : cfg.output_path;
        write_file(path, "beam patterns",
                   [&](std::ostream &os) { mmcest::emit_beam_patterns(cb, bs, resolution, os); });
        std::printf("%s dictionary: %llu atoms, mutual coherence %.6f, wrote %s\n",
                    kind_str(kind), static_cast<unsigned long long>(dict.atoms.n_cols),
                    mmcest::mutual_coherence(dict.atoms), path.c_str());
    }
    return 0;
}

int do_trace(const ConfigCli &cc, double snr_db, arma::uword trial_id)
{
    const mmcest::ExperimentConfig cfg = resolve_config(cc);
    const std::string out = mmcest::trace_trial(cfg, snr_db, trial_id);
    if (cc.passed("output_path"))
    {
        write_file(cfg.output_path, "trace", [&](std::ostream &os) { os << out; });
        std::printf("wrote %s\n", cfg.output_path.c_str());
    }
    else
        std::fputs(out.c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"hierarchical beam-search channel estimation for mmWave MIMO"};
    app.require_subcommand(1);

    ConfigCli run_cc, sweep_cc, pat_cc, trace_cc;
    std::string pat_kind = "both";
    arma::uword pat_resolution = 2048;
    double trace_snr = 20.0;
    arma::uword trace_trial_id = 0;

    CLI::App *run_cmd = app.add_subcommand("run", "one Monte Carlo experiment, results to CSV");
    add_config_options(run_cmd, run_cc);

    CLI::App *sweep_cmd = app.add_subcommand(
        "sweep", "the same experiment across every dictionary and algorithm, one CSV each");
    add_config_options(sweep_cmd, sweep_cc);

    CLI::App *pat_cmd = app.add_subcommand("patterns", "level-1 beam patterns and dictionary stats");
    add_config_options(pat_cmd, pat_cc, false);
    pat_cmd->add_option("--dictionary_kind", pat_kind, "'grid', 'cbp' or 'both'");
    pat_cmd->add_option("--resolution", pat_resolution, "angle samples over [0, 2*pi); at least N");

    CLI::App *trace_cmd = app.add_subcommand("trace", "one fully-traced trial as JSON lines");
    add_config_options(trace_cmd, trace_cc);
    trace_cmd->add_option("--snr_db", trace_snr, "SNR point to trace");
    trace_cmd->add_option("--trial", trace_trial_id, "trial id to trace");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    try
    {
        if (run_cmd->parsed())
            return do_run(run_cc);
        if (sweep_cmd->parsed())
            return do_sweep(sweep_cc);
        if (pat_cmd->parsed())
            return do_patterns(pat_cc, pat_kind, pat_resolution);
        if (trace_cmd->parsed())
            return do_trace(trace_cc, trace_snr, trace_trial_id);
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
