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
#include "mmcest/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace mmcest
{

namespace
{

constexpr double k_pi = 3.14159265358979323846;

// fixed scenario constants, echoed into result metadata
constexpr double k_carrier_ghz = 28.0;
constexpr double k_rf_bandwidth_mhz = 800.0;

arma::uword grid_size_for(arma::uword branching, arma::uword levels)
{
    arma::uword n = 2;
    for (arma::uword i = 0; i < levels; ++i)
    {
        n *= branching;
        if (n > (arma::uword(1) << 20))
            throw std::invalid_argument("config: branching^levels too large");
    }
    return n;
}

const char *kind_name(DictionaryKind k)
{
    return k == DictionaryKind::cbp ? "cbp" : "grid";
}

const char *algorithm_name(Algorithm a)
{
    switch (a)
    {
    case Algorithm::single:
        return "single";
    case Algorithm::multipath_sequential:
        return "multipath-sequential";
    default:
        return "multipath-joint";
    }
}

const char *gain_name(GainDistribution g)
{
    return g == GainDistribution::unit_gain ? "unit-gain" : "complex-normal";
}

const char *angle_name(AngleMode m)
{
    return m == AngleMode::on_grid ? "on-grid" : "continuous-uniform";
}

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

// Dictionaries and codebooks shared by every trial of an experiment
struct Workspace
{
    UlaConfig bs;
    UlaConfig ms;
    AngleGrid grid;
    Dictionary bs_dict;
    Dictionary ms_dict;
    HierarchicalCodebook fcb;
    HierarchicalCodebook wcb;
};

Workspace make_workspace(const ExperimentConfig &cfg)
{
    Workspace w;
    w.bs = UlaConfig{cfg.n_bs, cfg.spacing_wavelengths};
    w.ms = UlaConfig{cfg.n_ms, cfg.spacing_wavelengths};
    const arma::uword n = grid_size_for(cfg.big_k, cfg.big_s);
    w.grid = make_grid(n);
    if (cfg.dictionary_kind == DictionaryKind::cbp)
    {
        const double dphi = cfg.delta_phi < 0.0 ? k_pi / double(n) : cfg.delta_phi;
        w.bs_dict = build_cbp_dictionary(w.bs, w.grid, dphi);
        w.ms_dict = build_cbp_dictionary(w.ms, w.grid, dphi);
    }
    else
    {
        w.bs_dict = build_grid_dictionary(w.bs, w.grid);
        w.ms_dict = build_grid_dictionary(w.ms, w.grid);
    }
    w.fcb = build_codebook(w.bs_dict, w.bs, cfg.big_s, cfg.big_k);
    w.wcb = build_codebook(w.ms_dict, w.ms, cfg.big_s, cfg.big_k);
    return w;
}

struct TrialOutcome
{
    bool err = false;
    double se_est = 0.0;
    double se_perfect = 0.0;
};

struct TrialDetail
{
    std::vector<PathParams> truth;
    std::vector<EstimateResult> est;
    TrialOutcome outcome;
    double noise_var = 0.0;
};

// One Monte Carlo trial; all randomness comes from the per-trial seed so the
// outcome is independent of scheduling
TrialDetail run_trial_detail(const ExperimentConfig &cfg, const Workspace &ws,
                             double snr_db, std::uint64_t seed)
{
    Rng rng(seed);

    PathSamplerConfig ps;
    ps.num_paths = cfg.num_paths;
    ps.randomize_num_paths = cfg.randomize_num_paths;
    ps.gain_distribution = cfg.gain_distribution;
    ps.angle_mode = cfg.angle_mode;
    ps.grid = ws.grid;

    TrialDetail d;
    d.truth = sample_paths(ps, rng);
    const ChannelRealization ch = synthesize_channel(d.truth, ws.bs, ws.ms);
    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    d.noise_var = noise_var_for_snr(ch.h, cfg.power, snr_linear);
    const arma::uword l_true = d.truth.size();

    // the estimator is told the true path count (single-path mode ignores it)
    arma::uword matched = 1;
    if (cfg.algorithm == Algorithm::single)
    {
        d.est.push_back(estimate_single_path(ch.h, ws.fcb, ws.wcb, ws.bs_dict, ws.ms_dict,
                                             cfg.power, d.noise_var, rng));
    }
    else
    {
        matched = l_true;
        MultipathEstimate me =
            (cfg.algorithm == Algorithm::multipath_sequential)
                ? estimate_multipath_sequential(ch.h, ws.fcb, ws.wcb, ws.bs_dict, ws.ms_dict,
                                                l_true, cfg.power, d.noise_var, rng)
                : estimate_multipath_joint(ch.h, ws.fcb, ws.wcb, ws.bs_dict, ws.ms_dict,
                                           l_true, cfg.power, d.noise_var, rng);
        d.est = std::move(me.paths);
    }

    d.outcome.err = angle_error(d.est, d.truth, matched, cfg.big_k, cfg.big_s);
    const arma::uword n_streams = std::min(l_true, std::min<arma::uword>(ch.h.n_rows, ch.h.n_cols));
    const cx_mat h_hat = reconstruct_channel(d.est, ws.bs, ws.ms);
    d.outcome.se_est = spectral_efficiency(ch.h, h_hat, n_streams, snr_linear);
    d.outcome.se_perfect = spectral_efficiency(ch.h, ch.h, n_streams, snr_linear);
    return d;
}

TrialOutcome run_trial(const ExperimentConfig &cfg, const Workspace &ws,
                       double snr_db, std::uint64_t seed)
{
    return run_trial_detail(cfg, ws, snr_db, seed).outcome;
}

arma::uword parse_uword(const std::string &value, const std::string &key)
{
    std::size_t pos = 0;
    unsigned long long v = 0;
    try
    {
        v = std::stoull(value, &pos);
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad integer for '" + key + "': " + value);
    return static_cast<arma::uword>(v);
}

double parse_double(const std::string &value, const std::string &key)
{
    std::size_t pos = 0;
    double v = 0.0;
    try
    {
        v = std::stod(value, &pos);
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: bad number for '" + key + "': " + value);
    }
    if (pos != value.size())
        throw std::invalid_argument("config: bad number for '" + key + "': " + value);
    return v;
}

std::string trim(const std::string &s)
{
    const char *ws = " \t\r\n";
    const std::size_t b = s.find_first_not_of(ws);
    if (b == std::string::npos)
        return "";
    const std::size_t e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

} // namespace

void validate(const ExperimentConfig &cfg)
{
    if (cfg.n_bs < 1 || cfg.n_ms < 1)
        throw std::invalid_argument("config: need at least one antenna per side");
    if (cfg.big_k < 2)
        throw std::invalid_argument("config: big_k must be >= 2");
    if (cfg.big_s < 1)
        throw std::invalid_argument("config: big_s must be >= 1");
    const arma::uword n = grid_size_for(cfg.big_k, cfg.big_s);
    if (cfg.num_grid != 0 && cfg.num_grid != n)
        throw std::invalid_argument("config: num_grid must equal 2 * big_k^big_s (or 0 to derive it)");
    if (cfg.trials < 1)
        throw std::invalid_argument("config: trials must be >= 1");
    if (cfg.snr_db_sweep.empty())
        throw std::invalid_argument("config: empty snr_db_sweep");
    for (double s : cfg.snr_db_sweep)
        if (!std::isfinite(s))
            throw std::invalid_argument("config: non-finite SNR point");
    if (!(cfg.power > 0.0) || !std::isfinite(cfg.power))
        throw std::invalid_argument("config: power must be positive and finite");
    if (!(cfg.spacing_wavelengths > 0.0) || !std::isfinite(cfg.spacing_wavelengths))
        throw std::invalid_argument("config: spacing must be positive and finite");
    if (std::isnan(cfg.delta_phi))
        throw std::invalid_argument("config: delta_phi must be a number or negative for the default");
    if (cfg.delta_phi >= 0.0 && cfg.delta_phi > k_pi / double(n))
        throw std::invalid_argument("config: delta_phi must not exceed pi / num_grid");
    if (cfg.num_paths < 1)
        throw std::invalid_argument("config: num_paths must be >= 1");
    if (cfg.algorithm != Algorithm::single)
    {
        arma::uword beams = 1;
        for (arma::uword i = 0; i < cfg.big_s; ++i)
            beams *= cfg.big_k;
        const arma::uword max_paths = cfg.randomize_num_paths ? 6 : cfg.num_paths;
        if (max_paths > beams)
            throw std::invalid_argument("config: more paths than final-level beams");
    }
    if (cfg.output_path.empty())
        throw std::invalid_argument("config: empty output_path");
}

bool angle_error(const std::vector<EstimateResult> &estimate, const std::vector<PathParams> &truth,
                 arma::uword num_paths, arma::uword branching, arma::uword levels)
{
    if (num_paths < 1)
        throw std::invalid_argument("angle_error: num_paths must be >= 1");
    if (estimate.size() < num_paths || truth.size() < num_paths)
        return true;

    arma::uword beams = 1;
    for (arma::uword i = 0; i < levels; ++i)
        beams *= branching;
    const double tol = k_pi / (2.0 * double(beams));

    // greedy matching: each estimate, in detection order, claims the nearest
    // still-unmatched truth among the num_paths strongest, under the max of
    // the folded AoD and AoA distances
    std::vector<bool> used(num_paths, false);
    for (arma::uword i = 0; i < num_paths; ++i)
    {
        const double eaod = fold_angle(estimate[i].aod);
        const double eaoa = fold_angle(estimate[i].aoa);
        double best = -1.0;
        arma::uword best_j = num_paths;
        for (arma::uword j = 0; j < num_paths; ++j)
        {
            if (used[j])
                continue;
            const double dist = std::max(std::abs(eaod - fold_angle(truth[j].aod_az)),
                                         std::abs(eaoa - fold_angle(truth[j].aoa_az)));
            if (best_j == num_paths || dist < best)
            {
                best = dist;
                best_j = j;
            }
        }
        used[best_j] = true;
        if (best > tol)
            return true;
    }
    return false;
}

double spectral_efficiency(const cx_mat &h_true, const cx_mat &h_hat, arma::uword n_streams, double snr_linear)
{
    if (h_true.n_rows != h_hat.n_rows || h_true.n_cols != h_hat.n_cols)
        throw std::invalid_argument("spectral_efficiency: channel dimension mismatch");
    if (n_streams < 1 || n_streams > std::min(h_true.n_rows, h_true.n_cols))
        throw std::invalid_argument("spectral_efficiency: bad stream count");
    if (!(snr_linear >= 0.0) || !std::isfinite(snr_linear))
        throw std::invalid_argument("spectral_efficiency: bad SNR");

    const linalg::SvdResult dec = linalg::svd_decompose(h_hat);
    const cx_mat f = dec.v.cols(0, n_streams - 1);
    const cx_mat w = dec.u.cols(0, n_streams - 1);
    const cx_mat he = w.t() * h_true * f;

    arma::vec ev;
    if (!arma::eig_sym(ev, cx_mat(he * he.t())))
        throw std::runtime_error("spectral_efficiency: eigendecomposition failed");
    double se = 0.0;
    const double scale = snr_linear / double(n_streams);
    for (arma::uword i = 0; i < ev.n_elem; ++i)
        se += std::log2(1.0 + scale * std::max(ev(i), 0.0));
    return se;
}

cx_mat reconstruct_channel(const std::vector<EstimateResult> &paths, const UlaConfig &bs, const UlaConfig &ms)
{
    if (paths.empty())
        throw std::invalid_argument("reconstruct_channel: no paths");
    std::vector<PathParams> pp;
    pp.reserve(paths.size());
    for (const EstimateResult &e : paths)
    {
        PathParams q;
        q.gain = cx_double(e.gain_magnitude, 0.0);
        q.aod_az = e.aod;
        q.aoa_az = e.aoa;
        pp.push_back(q);
    }
    return synthesize_channel(pp, bs, ms).h;
}

std::vector<SnrPointResult> run_experiment(const ExperimentConfig &cfg, unsigned num_threads)
{
    validate(cfg);
    if (num_threads == 0)
        num_threads = 1;
    const Workspace ws = make_workspace(cfg);

    std::vector<double> sweep = cfg.snr_db_sweep;
    std::sort(sweep.begin(), sweep.end());

    std::vector<SnrPointResult> results;
    results.reserve(sweep.size());
    for (std::size_t si = 0; si < sweep.size(); ++si)
    {
        const double snr_db = sweep[si];
        std::vector<TrialOutcome> outcomes(cfg.trials);

        std::mutex fail_mutex;
        std::string fail_msg;
        auto body = [&](arma::uword t0, arma::uword t1) {
            try
            {
                for (arma::uword t = t0; t < t1; ++t)
                    outcomes[t] = run_trial(cfg, ws, snr_db, derive_seed(cfg.master_seed, si, t));
            }
            catch (const std::exception &e)
            {
                const std::lock_guard<std::mutex> lock(fail_mutex);
                if (fail_msg.empty())
                    fail_msg = e.what();
            }
        };

        const arma::uword nt = std::min<arma::uword>(num_threads, cfg.trials);
        if (nt <= 1)
            body(0, cfg.trials);
        else
        {
            std::vector<std::thread> pool;
            pool.reserve(nt);
            for (arma::uword i = 0; i < nt; ++i)
                pool.emplace_back(body, cfg.trials * i / nt, cfg.trials * (i + 1) / nt);
            for (std::thread &th : pool)
                th.join();
        }
        if (!fail_msg.empty())
            throw std::runtime_error(fail_msg);

        SnrPointResult r;
        r.snr_db = snr_db;
        r.trials = cfg.trials;
        arma::uword errs = 0;
        double se = 0.0, sp = 0.0;
        for (arma::uword t = 0; t < cfg.trials; ++t)
        {
            errs += outcomes[t].err ? 1 : 0;
            se += outcomes[t].se_est;
            sp += outcomes[t].se_perfect;
        }
        r.error_probability = double(errs) / double(cfg.trials);
        r.se_estimated_mean = se / double(cfg.trials);
        r.se_perfect_mean = sp / double(cfg.trials);
        results.push_back(r);
    }
    return results;
}

void write_results_csv(const ExperimentConfig &cfg, const std::vector<SnrPointResult> &results, std::ostream &os)
{
    const arma::uword n = grid_size_for(cfg.big_k, cfg.big_s);
    os << "# mmcest monte carlo results\n";
    os << "# n_bs=" << cfg.n_bs << " n_ms=" << cfg.n_ms
       << " big_k=" << cfg.big_k << " big_s=" << cfg.big_s << " num_grid=" << n << "\n";
    os << "# dictionary_kind=" << kind_name(cfg.dictionary_kind)
       << " algorithm=" << algorithm_name(cfg.algorithm) << " num_paths=";
    if (cfg.randomize_num_paths)
        os << "uniform";
    else
        os << cfg.num_paths;
    os << "\n";
    os << "# gain_distribution=" << gain_name(cfg.gain_distribution)
       << " angle_mode=" << angle_name(cfg.angle_mode) << "\n";
    os << "# power=" << fmt(cfg.power)
       << " spacing_wavelengths=" << fmt(cfg.spacing_wavelengths) << " delta_phi=";
    if (cfg.delta_phi < 0.0)
        os << "auto";
    else
        os << fmt(cfg.delta_phi);
    os << "\n";
    os << "# carrier_ghz=" << fmt(k_carrier_ghz)
       << " rf_bandwidth_mhz=" << fmt(k_rf_bandwidth_mhz) << "\n";
    os << "snr_db,error_probability,se_estimated_mean,se_perfect_mean,trials,master_seed\n";
    for (const SnrPointResult &r : results)
        os << fmt(r.snr_db) << ',' << fmt(r.error_probability) << ','
           << fmt(r.se_estimated_mean) << ',' << fmt(r.se_perfect_mean) << ','
           << r.trials << ',' << cfg.master_seed << "\n";
}

void emit_beam_patterns(const HierarchicalCodebook &cb, const UlaConfig &ula,
                        arma::uword resolution, std::ostream &os)
{
    if (cb.mats.empty() || cb.mats[0].empty())
        throw std::invalid_argument("emit_beam_patterns: empty codebook");
    if (resolution < cb.num_grid)
        throw std::invalid_argument("emit_beam_patterns: resolution below the codebook grid size");
    const cx_mat &f = cb.mat(1, 1);
    if (f.n_rows != ula.num_elements)
        throw std::invalid_argument("emit_beam_patterns: codebook does not match the array");

    os << "angle_rad";
    for (arma::uword m = 1; m <= f.n_cols; ++m)
        os << ",beam_" << m;
    os << "\n";
    for (arma::uword r = 0; r < resolution; ++r)
    {
        const double phi = 2.0 * k_pi * double(r) / double(resolution);
        const cx_vec a = steering_vector(ula, phi);
        os << fmt(phi);
        for (arma::uword m = 0; m < f.n_cols; ++m)
            os << ',' << fmt(std::abs(arma::cdot(f.col(m), a)));
        os << "\n";
    }
}

void apply_config_entry(ExperimentConfig &cfg, const std::string &key, const std::string &value)
{
    if (key == "n_bs")
        cfg.n_bs = parse_uword(value, key);
    else if (key == "n_ms")
        cfg.n_ms = parse_uword(value, key);
    else if (key == "big_k")
        cfg.big_k = parse_uword(value, key);
    else if (key == "big_s")
        cfg.big_s = parse_uword(value, key);
    else if (key == "num_grid")
        cfg.num_grid = parse_uword(value, key);
    else if (key == "dictionary_kind")
    {
        if (value == "grid")
            cfg.dictionary_kind = DictionaryKind::grid;
        else if (value == "cbp")
            cfg.dictionary_kind = DictionaryKind::cbp;
        else
            throw std::invalid_argument("config: dictionary_kind must be 'grid' or 'cbp'");
    }
    else if (key == "algorithm")
    {
        if (value == "single")
            cfg.algorithm = Algorithm::single;
        else if (value == "multipath-sequential")
            cfg.algorithm = Algorithm::multipath_sequential;
        else if (value == "multipath-joint")
            cfg.algorithm = Algorithm::multipath_joint;
        else
            throw std::invalid_argument(
                "config: algorithm must be 'single', 'multipath-sequential' or 'multipath-joint'");
    }
    else if (key == "num_paths")
    {
        if (value == "uniform")
        {
            cfg.randomize_num_paths = true;
        }
        else
        {
            cfg.randomize_num_paths = false;
            cfg.num_paths = parse_uword(value, key);
        }
    }
    else if (key == "gain_distribution")
    {
        if (value == "unit-gain")
            cfg.gain_distribution = GainDistribution::unit_gain;
        else if (value == "complex-normal")
            cfg.gain_distribution = GainDistribution::complex_normal;
        else
            throw std::invalid_argument("config: gain_distribution must be 'unit-gain' or 'complex-normal'");
    }
    else if (key == "angle_mode")
    {
        if (value == "continuous-uniform")
            cfg.angle_mode = AngleMode::continuous_uniform;
        else if (value == "on-grid")
            cfg.angle_mode = AngleMode::on_grid;
        else
            throw std::invalid_argument("config: angle_mode must be 'continuous-uniform' or 'on-grid'");
    }
    else if (key == "snr_db_sweep")
    {
        std::vector<double> sweep;
        std::string rest = value;
        while (!rest.empty())
        {
            const std::size_t comma = rest.find(',');
            const std::string tok = trim(rest.substr(0, comma));
            if (tok.empty())
                throw std::invalid_argument("config: empty entry in snr_db_sweep");
            sweep.push_back(parse_double(tok, key));
            rest = (comma == std::string::npos) ? "" : rest.substr(comma + 1);
        }
        if (sweep.empty())
            throw std::invalid_argument("config: empty snr_db_sweep");
        cfg.snr_db_sweep = std::move(sweep);
    }
    else if (key == "trials")
        cfg.trials = parse_uword(value, key);
    else if (key == "power")
        cfg.power = parse_double(value, key);
    else if (key == "spacing_wavelengths")
        cfg.spacing_wavelengths = parse_double(value, key);
    else if (key == "delta_phi")
        cfg.delta_phi = (value == "auto") ? -1.0 : parse_double(value, key);
    else if (key == "master_seed")
    {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try
        {
            v = std::stoull(value, &pos);
        }
        catch (const std::exception &)
        {
            throw std::invalid_argument("config: bad integer for 'master_seed': " + value);
        }
        if (pos != value.size())
            throw std::invalid_argument("config: bad integer for 'master_seed': " + value);
        cfg.master_seed = v;
    }
    else if (key == "output_path")
        cfg.output_path = value;
    else
        throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string &path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("config: cannot open " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(is, line))
    {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected key=value, got '" + line + "'");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::string trace_trial(const ExperimentConfig &cfg, double snr_db, arma::uword trial_id)
{
    validate(cfg);
    const Workspace ws = make_workspace(cfg);

    // seeds match a run whose sorted sweep contains this SNR point; otherwise
    // the trace behaves like a single-point sweep
    std::vector<double> sweep = cfg.snr_db_sweep;
    std::sort(sweep.begin(), sweep.end());
    std::size_t snr_index = 0;
    for (std::size_t i = 0; i < sweep.size(); ++i)
        if (sweep[i] == snr_db)
        {
            snr_index = i;
            break;
        }
    const std::uint64_t seed = derive_seed(cfg.master_seed, snr_index, trial_id);
    const TrialDetail d = run_trial_detail(cfg, ws, snr_db, seed);

    std::string out;
    {
        nlohmann::json j;
        j["record"] = "config";
        j["n_bs"] = cfg.n_bs;
        j["n_ms"] = cfg.n_ms;
        j["big_k"] = cfg.big_k;
        j["big_s"] = cfg.big_s;
        j["dictionary_kind"] = kind_name(cfg.dictionary_kind);
        j["algorithm"] = algorithm_name(cfg.algorithm);
        j["snr_db"] = snr_db;
        j["trial"] = trial_id;
        j["seed"] = seed;
        j["noise_var"] = d.noise_var;
        out += j.dump() + "\n";
    }
    for (std::size_t p = 0; p < d.truth.size(); ++p)
    {
        nlohmann::json j;
        j["record"] = "truth";
        j["path"] = p + 1;
        j["gain_re"] = d.truth[p].gain.real();
        j["gain_im"] = d.truth[p].gain.imag();
        j["aod_az"] = d.truth[p].aod_az;
        j["aoa_az"] = d.truth[p].aoa_az;
        out += j.dump() + "\n";
    }
    for (std::size_t p = 0; p < d.est.size(); ++p)
    {
        for (const StageTrace &st : d.est[p].trace)
        {
            nlohmann::json j;
            j["record"] = "stage";
            j["path"] = p + 1;
            j["level"] = st.level;
            j["bs_subset"] = st.bs_subset;
            j["ms_subset"] = st.ms_subset;
            j["bs_beam"] = st.bs_beam;
            j["ms_beam"] = st.ms_beam;
            std::vector<std::vector<double>> pw(st.measurement_power.n_rows);
            for (arma::uword r = 0; r < st.measurement_power.n_rows; ++r)
                for (arma::uword c = 0; c < st.measurement_power.n_cols; ++c)
                    pw[r].push_back(st.measurement_power(r, c));
            j["power"] = pw;
            out += j.dump() + "\n";
        }
        nlohmann::json j;
        j["record"] = "path";
        j["path"] = p + 1;
        j["aod"] = d.est[p].aod;
        j["aoa"] = d.est[p].aoa;
        j["gain"] = d.est[p].gain_magnitude;
        j["aod_grid_index"] = d.est[p].aod_grid_index;
        j["aoa_grid_index"] = d.est[p].aoa_grid_index;
        j["aod_candidates"] = d.est[p].aod_candidates;
        j["aoa_candidates"] = d.est[p].aoa_candidates;
        out += j.dump() + "\n";
    }
    {
        nlohmann::json j;
        j["record"] = "summary";
        j["num_paths_true"] = d.truth.size();
        j["angle_error"] = d.outcome.err;
        j["se_estimated"] = d.outcome.se_est;
        j["se_perfect"] = d.outcome.se_perfect;
        out += j.dump() + "\n";
    }
    return out;
}

} // namespace mmcest
