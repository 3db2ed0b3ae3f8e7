#pragma once

#include <map>
#include <string>
#include <vector>

#include "machlab/compressible.hpp"
#include "machlab/incompressible.hpp"
#include "machlab/initial_data.hpp"

namespace machlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Flat key=value configuration ('#' comments, blank lines ignored).
struct KeyValueConfig {
    std::map<std::string, std::string> values;

    static KeyValueConfig parse_file(const std::string& path);
    static KeyValueConfig parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::string require_string(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    // deterministic serialization (sorted keys), written next to outputs
    std::string resolved() const;
};

struct SweepConfig {
    std::vector<double> epsilons; // strictly decreasing
    int n = 128;
    double box_length = 8.0 * M_PI;
    double s = 0.5;
    double alpha = 0.5;
    double p = 1.5;   // in (1, 2)
    double q = 2.0;   // >= p
    double T = 0.5;
    double gamma_bar = 0.2;
    double dt_safety = 0.5;
    double dt_max = 5e-3;
    int sample_stride = 10;
    unsigned seed = 1;
    double perturb = 0.0; // seeded low-mode perturbation of c0
    std::string f_name = "one_plus_log";
    std::string profile = "lbmo_vortex";
    int mollifier_index = 4;
    double cutoff_radius = 2.0;
    int threads = 1;
    std::string out_dir;

    static SweepConfig from_config(const KeyValueConfig& kv);
    void validate() const; // throws ConfigError
    KeyValueConfig to_config() const;
};

struct EpsilonRunSummary {
    double epsilon = 0.0;
    TrajectoryRecord trajectory;
    std::vector<SpectralField> omega_history;
    std::vector<VectorField> pv_history;
    std::vector<double> sample_times;
};

struct SweepReport {
    SweepConfig config;
    std::vector<EpsilonRunSummary> runs;
    VorticityTrajectory reference;
    // fitted laws against epsilon at final time
    std::vector<double> omega_l2_diff; // ||omega_eps(T) - omega(T)||_L2
    std::vector<double> pv_inf_diff;   // ||P v_eps(T) - v(T)||_inf
    std::vector<double> weak_values;   // |int <div v_eps, probe>|
    std::vector<double> besov_values;  // int ||div v_eps||_{B^{s/3}_{inf,inf}}
    SlopeFit omega_diff_fit, weak_decay_fit, besov_fit;
};

SweepReport run_sweep(const SweepConfig& cfg);

struct ConvergenceRow {
    double epsilon = 0.0;
    double t_used = 0.0;
    double omega_lq = 0.0;
    double pv_w1r = 0.0;
    double pv_inf = 0.0;
};
// Norm differences against the incompressible reference at the sample time
// nearest to t; r is the Sobolev-slot exponent of the W^{1,r} record.
std::vector<ConvergenceRow> convergence_report(const SweepReport& rep,
                                               double t, double q, double r);

struct LifespanRow {
    double epsilon = 0.0;
    double measured = -1.0;  // first bad time; -1 = no blow-up within T
    double predicted = 0.0;  // Osgood bound, 0 when not applicable
    std::string note;
};
std::vector<LifespanRow> lifespan_probe(const SweepReport& rep, const ClassF& F,
                                        double C0, double alpha,
                                        const std::vector<double>& extra_epsilons = {});

// Slope with residual > 0.5 is labelled inconclusive rather than asserted.
std::string slope_label(const SlopeFit& fit);

void emit_report(const SweepReport& rep, const std::string& out_dir);

} // namespace machlab
