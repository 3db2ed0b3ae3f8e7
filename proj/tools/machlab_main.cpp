#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "machlab/csv.hpp"
#include "machlab/field_io.hpp"
#include "machlab/flow_transport.hpp"
#include "machlab/harness.hpp"
#include "machlab/osgood.hpp"
#include "machlab/spectral_ops.hpp"

namespace {

using namespace machlab;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitBlowup = 2;

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

ClassF class_f_by_name(const std::string& name) {
    if (name == "one_plus_log") return ClassF::one_plus_log(1.0);
    if (name == "loglog_log") return ClassF::loglog_log();
    if (name.rfind("power:", 0) == 0)
        return ClassF::power(std::stod(name.substr(6)));
    if (name.rfind("one_plus_log:", 0) == 0)
        return ClassF::one_plus_log(std::stod(name.substr(13)));
    throw ConfigError("unknown weight function: " + name);
}

void write_trajectory_csv(const TrajectoryRecord& rec, const std::string& path) {
    CsvTable traj({"t", "grad_v_inf", "grad_c_inf", "div_v_inf", "div_v_besov",
                   "qv_inf", "c_inf", "omega_l2", "omega_lp", "omega_bmo",
                   "omega_bmo_f", "v_ll", "hs_norm", "V_acc", "W_acc",
                   "qv4_acc", "weak_acc", "rho_proxy"});
    for (const auto& s : rec.samples)
        traj.add_row({s.t, s.grad_v_inf, s.grad_c_inf, s.div_v_inf,
                      s.div_v_besov, s.qv_inf, s.c_inf, s.omega_l2, s.omega_lp,
                      s.omega_bmo, s.omega_bmo_f, s.v_ll, s.hs_norm, s.V_acc,
                      s.W_acc, s.qv4_acc, s.weak_acc, s.rho_proxy});
    traj.write(path);
}

CompressibleState build_initial_state(const KeyValueConfig& kv, Grid& g_out) {
    const int n = kv.get_int("n", 128);
    const double L = kv.get_double("L", 8.0 * M_PI);
    g_out = Grid::make(n, L);
    DataRecipe recipe;
    recipe.base_profile = kv.get_string("data_recipe", "lbmo_vortex");
    recipe.mollifier_index = kv.get_int("mollifier_index", 4);
    recipe.cutoff_radius = kv.get_double("cutoff_radius", 2.0);
    recipe.epsilon = kv.get_double("epsilon", 0.1);
    recipe.s = kv.get_double("s", 0.5);
    recipe.alpha = kv.get_double("alpha", 0.5);
    recipe.gamma_bar = kv.get_double("gamma_bar", 0.2);
    IllPreparedData data = ill_prepared_family(g_out, recipe);
    CompressibleState st;
    st.v = data.velocity;
    st.c = data.sound;
    st.epsilon = recipe.epsilon;
    st.gamma_bar = recipe.gamma_bar;
    return st;
}

int cmd_simulate(const KeyValueConfig& kv, const std::string& out_dir,
                 bool incompressible) {
    fs::create_directories(out_dir);
    SolverConfig scfg;
    scfg.dt_safety = kv.get_double("dt_safety", 0.5);
    scfg.dt_max = kv.get_double("dt_max", 5e-3);
    scfg.s = kv.get_double("s", 0.5);
    const double T = kv.get_double("T", 0.5);
    const int stride = kv.get_int("sample_stride", 10);
    const std::string out_csv =
        kv.get_string("out_csv", join(out_dir, "trajectory.csv"));

    std::ofstream(join(out_dir, "resolved_config.txt"), std::ios::binary)
        << kv.resolved();

    Grid g;
    CompressibleState st = build_initial_state(kv, g);
    if (incompressible) {
        VorticityDiagnostics vd;
        VorticityTrajectory rec =
            simulate_reference(curl2d(st.v), T, stride, scfg, vd);
        CsvTable traj({"t", "omega_l2", "omega_lp", "omega_inf", "omega_mean",
                       "omega_bmo", "omega_bmo_f", "v_ll", "div_l2"});
        for (const auto& s : rec.samples)
            traj.add_row({s.t, s.omega_l2, s.omega_lp, s.omega_inf,
                          s.omega_mean, s.omega_bmo, s.omega_bmo_f, s.v_ll,
                          s.div_l2});
        traj.write(out_csv);
        return kExitOk;
    }
    TrajectoryRecord rec = simulate(st, T, stride, scfg);
    write_trajectory_csv(rec, out_csv);
    if (rec.blown_up) {
        std::cerr << "blow-up detected at t=" << rec.first_bad_time << "\n";
        return kExitBlowup;
    }
    return kExitOk;
}

int cmd_sweep(const KeyValueConfig& kv, const std::string& out_dir) {
    SweepConfig cfg = SweepConfig::from_config(kv);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (cfg.out_dir.empty()) throw ConfigError("sweep: no output directory");
    SweepReport rep = run_sweep(cfg);
    emit_report(rep, cfg.out_dir);

    ClassF F = class_f_by_name(cfg.f_name);
    verify_class_f(F);
    auto rows = lifespan_probe(rep, F, kv.get_double("C0", 1.0), cfg.alpha);
    CsvTable life({"epsilon", "measured", "predicted", "note"});
    for (const auto& r : rows)
        life.add_text_row({CsvTable::format_number(r.epsilon),
                           CsvTable::format_number(r.measured),
                           CsvTable::format_number(r.predicted), r.note});
    life.write(join(cfg.out_dir, "lifespan.csv"));

    const double r_exp = 2.0 * cfg.p / (2.0 - cfg.p);
    auto conv = convergence_report(rep, cfg.T, cfg.q, r_exp);
    CsvTable ct({"epsilon", "t_used", "omega_lq", "pv_w1r", "pv_inf"});
    for (const auto& r : conv)
        ct.add_row({r.epsilon, r.t_used, r.omega_lq, r.pv_w1r, r.pv_inf});
    ct.write(join(cfg.out_dir, "convergence.csv"));

    for (const auto& run : rep.runs)
        if (run.trajectory.blown_up) return kExitBlowup;
    return kExitOk;
}

int cmd_norms(const KeyValueConfig& kv, const std::string& out_dir) {
    fs::create_directories(out_dir);
    SpectralField f;
    std::string name;
    if (kv.has("field")) {
        NamedField nf = read_field(kv.require_string("field"));
        f = nf.field;
        name = nf.name;
    } else {
        const int n = kv.get_int("n", 128);
        const double L = kv.get_double("L", 8.0 * M_PI);
        Grid g = Grid::make(n, L);
        name = kv.get_string("data_recipe", "lbmo_vortex");
        if (name == "lbmo_vortex")
            f = lbmo_vortex(g);
        else if (name == "smooth_bump")
            f = smooth_bump(g, kv.get_double("rho", 1.0), 1.0);
        else
            throw ConfigError("norms: unknown data_recipe " + name);
    }
    ClassF F = class_f_by_name(kv.get_string("F", "one_plus_log"));
    verify_class_f(F);
    BallSampler sampler = BallSampler::make_default(f.grid());
    DyadicPartition lp = DyadicPartition::build(f.grid());
    const double p = kv.get_double("p", 1.5);
    const double s = kv.get_double("s", 0.5);

    CsvTable table({"norm", "value"});
    auto row = [&](const std::string& k, double v) {
        table.add_text_row({k, CsvTable::format_number(v)});
    };
    row("l2", l2_norm(f));
    row("lp", lp_norm(f, p));
    row("linf", max_norm(f));
    row("mean", f.mean());
    row("sobolev_s", sobolev_norm(f, s));
    row("besov_s_inf_inf", lp.besov_norm(f, s, INFINITY, INFINITY, false));
    row("bmo", bmo_norm(f, sampler));
    row("bmo_f", bmo_f_norm(f, F, sampler));
    row("lmo_f", lmo_f_norm(f, F, sampler));
    table.write(join(out_dir, "norms.csv"));
    std::cout << table.to_string();
    return kExitOk;
}

int cmd_flowmap(const KeyValueConfig& kv, const std::string& out_dir) {
    fs::create_directories(out_dir);
    SolverConfig scfg;
    scfg.dt_safety = kv.get_double("dt_safety", 0.5);
    scfg.dt_max = kv.get_double("dt_max", 5e-3);
    scfg.s = kv.get_double("s", 0.5);
    const double T = kv.get_double("T", 0.5);
    const int stride = kv.get_int("sample_stride", 5);
    const int m = kv.get_int("lattice", 64);

    Grid g;
    CompressibleState st = build_initial_state(kv, g);
    BallSampler sampler = BallSampler::make_default(g);
    DiagnosticsConfig diag;
    diag.sampler = &sampler;
    TrajectoryRecord rec = simulate(st, T, stride, scfg, diag);
    if (rec.blown_up) {
        std::cerr << "blow-up detected at t=" << rec.first_bad_time << "\n";
        return kExitBlowup;
    }
    VelocityHistory hist = VelocityHistory::from_arrays(
        g, rec.history_times, rec.vx_history, rec.vy_history);
    FlowMap fm = integrate_flow(hist, m, rec.history_times);

    CsvTable particles({"t", "seed_i", "seed_j", "x", "y", "jacobian",
                        "div_int"});
    const std::size_t last = fm.times.size() - 1;
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * m + i;
            particles.add_row({fm.times[last], double(i), double(j),
                               fm.px[last][k], fm.py[last][k], fm.jac[last][k],
                               fm.div_int[last][k]});
        }
    particles.write(join(out_dir, "particles.csv"));

    ClassF F = class_f_by_name(kv.get_string("F", "one_plus_log"));
    verify_class_f(F);
    TransportNormHistory nh;
    double D = 0.0, V = 0.0, G = 0.0;
    const auto& samples = rec.samples;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i) {
            const double dt = samples[i].t - samples[i - 1].t;
            D += 0.5 * dt * (samples[i].div_v_inf + samples[i - 1].div_v_inf);
            V += 0.5 * dt * (samples[i].v_ll + samples[i - 1].v_ll);
            G += 0.5 * dt * (samples[i].div_v_inf + samples[i - 1].div_v_inf);
        }
        nh.times.push_back(samples[i].t);
        nh.div_inf_int.push_back(D);
        nh.v_ll_int.push_back(V);
        nh.div_lmo_int.push_back(G);
    }
    SpectralField omega0 = curl2d(st.v);
    const std::size_t cal = std::min<std::size_t>(1, nh.times.size() - 1);
    BoundReport bound = theorem_bound_eval(omega0, hist, F, sampler, nh,
                                           kv.get_double("p", 1.5), cal);
    CsvTable bt({"t", "lhs", "rhs", "ratio"});
    for (std::size_t i = 0; i < bound.times.size(); ++i)
        bt.add_row({bound.times[i], bound.lhs[i], bound.rhs[i],
                    bound.rhs[i] > 0 ? bound.lhs[i] / bound.rhs[i] : -1.0});
    bt.write(join(out_dir, "bound_report.csv"));
    return kExitOk;
}

int cmd_compare(const KeyValueConfig& kv, const std::string& out_dir) {
    fs::create_directories(out_dir);
    NamedField a = read_field(kv.require_string("field_a"));
    NamedField b = read_field(kv.require_string("field_b"));
    if (!(a.field.grid() == b.field.grid()))
        throw ConfigError("compare: fields on different grids");
    SpectralField diff = a.field - b.field;
    CsvTable table({"norm", "value"});
    auto row = [&](const std::string& k, double v) {
        table.add_text_row({k, CsvTable::format_number(v)});
    };
    row("diff_l2", l2_norm(diff));
    row("diff_linf", max_norm(diff));
    row("rel_l2", l2_norm(b.field) > 0 ? l2_norm(diff) / l2_norm(b.field) : -1);
    table.write(join(out_dir, "compare.csv"));
    std::cout << table.to_string();
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"machlab: rescaled compressible Euler laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".";
    int seed = -1, threads = -1;
    bool incompressible = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "override config seed");
    app.add_option("--threads", threads, "override config threads");

    auto* sim = app.add_subcommand("simulate", "run one simulation");
    sim->add_flag("--incompressible", incompressible,
                  "vorticity-form reference solver");
    auto* swp = app.add_subcommand("sweep", "run an epsilon sweep");
    auto* nrm = app.add_subcommand("norms", "function-space norms of a field");
    auto* flw = app.add_subcommand("flowmap", "particle flow map + bound report");
    auto* cmp = app.add_subcommand("compare", "compare two field files");

    CLI11_PARSE(app, argc, argv);

    try {
        KeyValueConfig kv;
        if (!config_path.empty()) kv = KeyValueConfig::parse_file(config_path);
        if (seed >= 0) kv.values["seed"] = std::to_string(seed);
        if (threads >= 1) kv.values["threads"] = std::to_string(threads);

        if (sim->parsed()) return cmd_simulate(kv, out_dir, incompressible);
        if (swp->parsed()) return cmd_sweep(kv, out_dir);
        if (nrm->parsed()) return cmd_norms(kv, out_dir);
        if (flw->parsed()) return cmd_flowmap(kv, out_dir);
        if (cmp->parsed()) return cmd_compare(kv, out_dir);
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
