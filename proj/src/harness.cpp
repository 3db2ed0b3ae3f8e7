#include "machlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "machlab/csv.hpp"
#include "machlab/osgood.hpp"
#include "machlab/spectral_ops.hpp"
#include "machlab/svg_plot.hpp"

namespace machlab {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double norm_w1r(const VectorField& v, double r) {
    VectorField gx = gradient(v.x);
    VectorField gy = gradient(v.y);
    const SpectralField* comps[6] = {&v.x, &v.y, &gx.x, &gx.y, &gy.x, &gy.y};
    double s = 0.0;
    for (const auto* c : comps) s += std::pow(lp_norm(*c, r), r);
    return std::pow(s, 1.0 / r);
}

} // namespace

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
    KeyValueConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        cfg.values[key] = val;
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

bool KeyValueConfig::has(const std::string& key) const {
    return values.count(key) != 0;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
    auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

std::string KeyValueConfig::require_string(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("config key " + key + ": not a number: " + it->second);
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const double v = get_double(key, fallback);
    if (v != std::floor(v))
        throw ConfigError("config key " + key + ": not an integer");
    return static_cast<int>(v);
}

std::vector<double> KeyValueConfig::get_list(const std::string& key) const {
    auto it = values.find(key);
    std::vector<double> out;
    if (it == values.end()) return out;
    std::istringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ConfigError("config key " + key + ": bad list entry " + tok);
        }
    }
    return out;
}

std::string KeyValueConfig::resolved() const {
    std::string out;
    for (const auto& [k, v] : values) { // std::map iterates sorted
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

SweepConfig SweepConfig::from_config(const KeyValueConfig& kv) {
    SweepConfig c;
    if (kv.has("epsilons")) c.epsilons = kv.get_list("epsilons");
    if (c.epsilons.empty()) c.epsilons = {0.1, 0.05, 0.025, 0.0125};
    c.n = kv.get_int("n", c.n);
    c.box_length = kv.get_double("L", c.box_length);
    c.s = kv.get_double("s", c.s);
    c.alpha = kv.get_double("alpha", c.alpha);
    c.p = kv.get_double("p", c.p);
    c.q = kv.get_double("q", c.q);
    c.T = kv.get_double("T", c.T);
    c.gamma_bar = kv.get_double("gamma_bar", c.gamma_bar);
    c.dt_safety = kv.get_double("dt_safety", c.dt_safety);
    c.dt_max = kv.get_double("dt_max", c.dt_max);
    c.sample_stride = kv.get_int("sample_stride", c.sample_stride);
    c.seed = static_cast<unsigned>(kv.get_int("seed", static_cast<int>(c.seed)));
    c.perturb = kv.get_double("perturb", c.perturb);
    c.f_name = kv.get_string("F", c.f_name);
    c.profile = kv.get_string("data_recipe", c.profile);
    c.mollifier_index = kv.get_int("mollifier_index", c.mollifier_index);
    c.cutoff_radius = kv.get_double("cutoff_radius", c.cutoff_radius);
    c.threads = kv.get_int("threads", c.threads);
    c.out_dir = kv.get_string("out_dir", c.out_dir);
    c.validate();
    return c;
}

void SweepConfig::validate() const {
    if (epsilons.empty()) throw ConfigError("epsilons: empty list");
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] < 1.0))
            throw ConfigError("epsilons: entries must lie in (0,1)");
        if (i && !(epsilons[i] < epsilons[i - 1]))
            throw ConfigError("epsilons: must be strictly decreasing");
    }
    if (!(p > 1.0 && p < 2.0)) throw ConfigError("p must lie in (1,2)");
    if (!(q >= p)) throw ConfigError("q must be >= p");
    if (!(s > 0.0 && s < 1.0)) throw ConfigError("s must lie in (0,1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
    if (!(T > 0.0)) throw ConfigError("T must be positive");
    if (n < 8) throw ConfigError("n too small");
    if (threads < 1) throw ConfigError("threads must be >= 1");
    if (sample_stride < 1) throw ConfigError("sample_stride must be >= 1");
}

KeyValueConfig SweepConfig::to_config() const {
    KeyValueConfig kv;
    std::string eps;
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (i) eps += ',';
        eps += CsvTable::format_number(epsilons[i]);
    }
    kv.values["epsilons"] = eps;
    kv.values["n"] = std::to_string(n);
    kv.values["L"] = CsvTable::format_number(box_length);
    kv.values["s"] = CsvTable::format_number(s);
    kv.values["alpha"] = CsvTable::format_number(alpha);
    kv.values["p"] = CsvTable::format_number(p);
    kv.values["q"] = CsvTable::format_number(q);
    kv.values["T"] = CsvTable::format_number(T);
    kv.values["gamma_bar"] = CsvTable::format_number(gamma_bar);
    kv.values["dt_safety"] = CsvTable::format_number(dt_safety);
    kv.values["dt_max"] = CsvTable::format_number(dt_max);
    kv.values["sample_stride"] = std::to_string(sample_stride);
    kv.values["seed"] = std::to_string(seed);
    kv.values["perturb"] = CsvTable::format_number(perturb);
    kv.values["F"] = f_name;
    kv.values["data_recipe"] = profile;
    kv.values["mollifier_index"] = std::to_string(mollifier_index);
    kv.values["cutoff_radius"] = CsvTable::format_number(cutoff_radius);
    kv.values["threads"] = std::to_string(threads);
    kv.values["out_dir"] = out_dir;
    return kv;
}

SweepReport run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    const Grid g = Grid::make(cfg.n, cfg.box_length);
    DataRecipe recipe;
    recipe.base_profile = cfg.profile;
    recipe.mollifier_index = cfg.mollifier_index;
    recipe.cutoff_radius = cfg.cutoff_radius;
    recipe.s = cfg.s;
    recipe.alpha = cfg.alpha;
    recipe.gamma_bar = cfg.gamma_bar;
    recipe.epsilon = cfg.epsilons.back(); // tightest budget
    IllPreparedData data = ill_prepared_family(g, recipe);

    SpectralField c0 = data.sound;
    if (cfg.perturb != 0.0) {
        // seeded low-mode perturbation, generated once so every run (and
        // every thread ordering) sees the same data
        std::mt19937 rng(cfg.seed);
        std::uniform_real_distribution<double> U(0.0, 2.0 * M_PI);
        SpectralField noise = sample(g, [&](double, double) { return 0.0; });
        std::vector<double> ph(static_cast<std::size_t>(g.n) * g.n, 0.0);
        for (int kx = 1; kx <= 3; ++kx)
            for (int ky = 1; ky <= 3; ++ky) {
                const double phase = U(rng);
                const double ax = 2.0 * M_PI * kx / g.box_length;
                const double ay = 2.0 * M_PI * ky / g.box_length;
                for (int j = 0; j < g.n; ++j)
                    for (int i = 0; i < g.n; ++i)
                        ph[static_cast<std::size_t>(j) * g.n + i] +=
                            std::cos(ax * g.coord(i) + ay * g.coord(j) + phase);
            }
        SpectralField pert = SpectralField::from_physical(g, std::move(ph));
        c0 = mean_zero(c0 + cfg.perturb * pert);
    }

    const SpectralField probe = mean_zero(smooth_bump(g, 2.0, 1.0));

    SolverConfig scfg;
    scfg.dt_safety = cfg.dt_safety;
    scfg.dt_max = cfg.dt_max;
    scfg.s = cfg.s;

    SweepReport rep;
    rep.config = cfg;
    rep.runs.resize(cfg.epsilons.size());

    auto worker = [&](std::size_t idx) {
        EpsilonRunSummary& out = rep.runs[idx];
        out.epsilon = cfg.epsilons[idx];
        CompressibleState init;
        init.v = data.velocity;
        init.c = c0;
        init.epsilon = out.epsilon;
        init.gamma_bar = cfg.gamma_bar;
        DiagnosticsConfig diag;
        diag.weak_probe = &probe;
        diag.keep_velocity_history = true;
        out.trajectory = simulate(init, cfg.T, cfg.sample_stride, scfg, diag);
        for (std::size_t k = 0; k < out.trajectory.history_times.size(); ++k) {
            VectorField v{
                SpectralField::from_physical(g, out.trajectory.vx_history[k]),
                SpectralField::from_physical(g, out.trajectory.vy_history[k])};
            out.omega_history.push_back(curl2d(v));
            out.pv_history.push_back(leray_decompose(v).solenoidal);
            out.sample_times.push_back(out.trajectory.history_times[k]);
        }
    };

    if (cfg.threads <= 1) {
        for (std::size_t i = 0; i < rep.runs.size(); ++i) worker(i);
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        while (next < rep.runs.size()) {
            const std::size_t batch = std::min<std::size_t>(
                cfg.threads, rep.runs.size() - next);
            pool.clear();
            for (std::size_t b = 0; b < batch; ++b)
                pool.emplace_back(worker, next + b);
            for (auto& t : pool) t.join();
            next += batch;
        }
    }

    VorticityDiagnostics vd;
    vd.keep_velocity_history = true;
    rep.reference =
        simulate_reference(curl2d(data.velocity), cfg.T, cfg.sample_stride,
                           scfg, vd);

    // final-time convergence measurements
    const SpectralField& omega_ref = rep.reference.omega_history.back();
    VectorField v_ref{
        SpectralField::from_physical(g, rep.reference.vx_history.back()),
        SpectralField::from_physical(g, rep.reference.vy_history.back())};
    std::vector<double> ok_eps;
    for (const auto& run : rep.runs) {
        if (run.trajectory.blown_up || run.omega_history.empty()) continue;
        ok_eps.push_back(run.epsilon);
        rep.omega_l2_diff.push_back(
            l2_norm(run.omega_history.back() - omega_ref));
        rep.pv_inf_diff.push_back(
            max_norm(run.pv_history.back() - v_ref));
        const auto& samples = run.trajectory.samples;
        rep.weak_values.push_back(std::abs(samples.back().weak_acc));
        // trapezoid of the Besov diagnostic over sample times
        double acc = 0.0;
        for (std::size_t k = 1; k < samples.size(); ++k)
            acc += 0.5 * (samples[k].t - samples[k - 1].t) *
                   (samples[k].div_v_besov + samples[k - 1].div_v_besov);
        rep.besov_values.push_back(acc);
    }
    rep.omega_diff_fit = fit_loglog(ok_eps, rep.omega_l2_diff);
    rep.weak_decay_fit = fit_loglog(ok_eps, rep.weak_values);
    rep.besov_fit = fit_loglog(ok_eps, rep.besov_values);
    return rep;
}

namespace {

std::size_t nearest_index(const std::vector<double>& ts, double t) {
    std::size_t best = 0;
    double gap = INFINITY;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double d = std::abs(ts[i] - t);
        if (d < gap) {
            gap = d;
            best = i;
        }
    }
    return best;
}

} // namespace

std::vector<ConvergenceRow> convergence_report(const SweepReport& rep,
                                               double t, double q, double r) {
    if (!(q >= rep.config.p))
        throw std::invalid_argument("convergence_report: q below p");
    for (const auto& run : rep.runs)
        if (!run.trajectory.blown_up && !run.sample_times.empty() &&
            t > run.sample_times.back() + 1e-9)
            throw std::out_of_range(
                "convergence_report: t beyond shortest trajectory");
    if (t > rep.reference.history_times.back() + 1e-9)
        throw std::out_of_range("convergence_report: t beyond reference run");

    const Grid& g = rep.reference.omega_history.front().grid();
    const std::size_t ri = nearest_index(rep.reference.history_times, t);
    const SpectralField& omega_ref = rep.reference.omega_history[ri];
    VectorField v_ref{
        SpectralField::from_physical(g, rep.reference.vx_history[ri]),
        SpectralField::from_physical(g, rep.reference.vy_history[ri])};

    std::vector<ConvergenceRow> rows;
    for (const auto& run : rep.runs) {
        if (run.trajectory.blown_up || run.sample_times.empty()) continue;
        const std::size_t i = nearest_index(run.sample_times, t);
        ConvergenceRow row;
        row.epsilon = run.epsilon;
        row.t_used = run.sample_times[i];
        row.omega_lq = lp_norm(run.omega_history[i] - omega_ref, q);
        VectorField diff = run.pv_history[i] - v_ref;
        row.pv_w1r = norm_w1r(diff, r);
        row.pv_inf = max_norm(diff);
        rows.push_back(row);
    }
    return rows;
}

std::vector<LifespanRow> lifespan_probe(const SweepReport& rep, const ClassF& F,
                                        double C0, double alpha,
                                        const std::vector<double>& extra_epsilons) {
    if (!(C0 > 0.0)) throw std::invalid_argument("lifespan_probe: C0 > 0");
    std::vector<LifespanRow> rows;
    auto predicted = [&](double eps) -> std::pair<double, std::string> {
        if (!F.is_class_F_prime)
            return {0.0, "class F without Osgood: eps-independent T0"};
        if (!(eps < std::exp(-1.0)))
            return {0.0, "epsilon too large for the iterated-log bound"};
        const double x = (1.0 - alpha) * std::log(std::log(1.0 / eps));
        return {osgood_M(F, C0, x) / C0, "Osgood bound"};
    };
    for (const auto& run : rep.runs) {
        LifespanRow row;
        row.epsilon = run.epsilon;
        if (run.trajectory.blown_up) {
            row.measured = run.trajectory.first_bad_time;
            row.note = "blow-up detected";
        } else {
            row.measured = -1.0;
            row.note = "no blow-up within T=" +
                       CsvTable::format_number(rep.config.T);
        }
        auto [pred, note] = predicted(run.epsilon);
        row.predicted = pred;
        row.note += "; " + note;
        rows.push_back(row);
    }
    for (double eps : extra_epsilons) {
        LifespanRow row;
        row.epsilon = eps;
        row.measured = -1.0;
        auto [pred, note] = predicted(eps);
        row.predicted = pred;
        row.note = "not simulated; " + note;
        rows.push_back(row);
    }
    return rows;
}

std::string slope_label(const SlopeFit& fit) {
    if (fit.count < 2) return "slope n/a";
    std::string s = "slope " + CsvTable::format_number(fit.slope) +
                    " (residual " + CsvTable::format_number(fit.residual) +
                    ", points " + std::to_string(fit.count) + ")";
    if (fit.residual > 0.5) s += " [inconclusive]";
    return s;
}

void emit_report(const SweepReport& rep, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw std::runtime_error("emit_report: cannot create " + out_dir);
    const auto path = [&](const std::string& name) {
        return (fs::path(out_dir) / name).string();
    };

    std::ofstream cfg_out(path("resolved_config.txt"), std::ios::binary);
    cfg_out << rep.config.to_config().resolved();
    cfg_out.close();

    CsvTable summary({"epsilon", "blown_up", "first_bad_time", "omega_l2_diff",
                      "pv_inf_diff", "weak_decay", "besov_l1", "V_final",
                      "W_final", "qv_l4"});
    std::size_t mi = 0;
    for (std::size_t i = 0; i < rep.runs.size(); ++i) {
        const auto& run = rep.runs[i];
        const bool ok = !run.trajectory.blown_up &&
                        !run.trajectory.samples.empty();
        const auto& last = run.trajectory.samples.back();
        summary.add_row({run.epsilon,
                         run.trajectory.blown_up ? 1.0 : 0.0,
                         run.trajectory.first_bad_time,
                         ok ? rep.omega_l2_diff[mi] : -1.0,
                         ok ? rep.pv_inf_diff[mi] : -1.0,
                         ok ? rep.weak_values[mi] : -1.0,
                         ok ? rep.besov_values[mi] : -1.0,
                         last.V_acc, last.W_acc,
                         std::pow(std::max(last.qv4_acc, 0.0), 0.25)});
        if (ok) ++mi;
    }
    summary.write(path("sweep_summary.csv"));

    for (std::size_t i = 0; i < rep.runs.size(); ++i) {
        CsvTable traj({"t", "grad_v_inf", "grad_c_inf", "div_v_inf",
                       "div_v_besov", "qv_inf", "c_inf", "omega_l2", "omega_lp",
                       "omega_bmo", "omega_bmo_f", "v_ll", "hs_norm", "V_acc",
                       "W_acc", "qv4_acc", "weak_acc", "rho_proxy"});
        for (const auto& s : rep.runs[i].trajectory.samples)
            traj.add_row({s.t, s.grad_v_inf, s.grad_c_inf, s.div_v_inf,
                          s.div_v_besov, s.qv_inf, s.c_inf, s.omega_l2,
                          s.omega_lp, s.omega_bmo, s.omega_bmo_f, s.v_ll,
                          s.hs_norm, s.V_acc, s.W_acc, s.qv4_acc, s.weak_acc,
                          s.rho_proxy});
        traj.write(path("trajectory_" + std::to_string(i) + ".csv"));
    }

    CsvTable slopes({"law", "slope", "residual", "points"});
    slopes.add_text_row({"omega_l2_diff",
                         CsvTable::format_number(rep.omega_diff_fit.slope),
                         CsvTable::format_number(rep.omega_diff_fit.residual),
                         std::to_string(rep.omega_diff_fit.count)});
    slopes.add_text_row({"weak_decay",
                         CsvTable::format_number(rep.weak_decay_fit.slope),
                         CsvTable::format_number(rep.weak_decay_fit.residual),
                         std::to_string(rep.weak_decay_fit.count)});
    slopes.add_text_row({"besov_l1",
                         CsvTable::format_number(rep.besov_fit.slope),
                         CsvTable::format_number(rep.besov_fit.residual),
                         std::to_string(rep.besov_fit.count)});
    slopes.write(path("slopes.csv"));

    std::vector<double> ok_eps;
    for (const auto& run : rep.runs)
        if (!run.trajectory.blown_up && !run.trajectory.samples.empty())
            ok_eps.push_back(run.epsilon);

    auto plot = [&](const std::string& file, const std::string& title,
                    const std::vector<double>& ys, const SlopeFit& fit) {
        std::vector<PlotSeries> series{{title, ok_eps, ys}};
        std::optional<FittedLine> line;
        if (fit.count >= 2 && fit.residual <= 0.5)
            line = FittedLine{fit.slope, fit.intercept, slope_label(fit)};
        write_loglog_svg(path(file), title + "; " + slope_label(fit), series,
                         line);
    };
    plot("omega_diff.svg", "vorticity difference vs epsilon",
         rep.omega_l2_diff, rep.omega_diff_fit);
    plot("weak_decay.svg", "weak acoustic decay vs epsilon", rep.weak_values,
         rep.weak_decay_fit);
    plot("besov_decay.svg", "divergence Besov integral vs epsilon",
         rep.besov_values, rep.besov_fit);
}

} // namespace machlab
