#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "machlab/spectral_field.hpp"

namespace machlab {

// Weight function F: [1,inf) -> [1,inf) with its verification flags.
struct ClassF {
    std::string name;
    std::function<double(double)> eval;
    bool is_class_F = false;
    bool is_class_F_prime = false;

    double operator()(double x) const { return eval(x); }

    static ClassF one_plus_log(double alpha = 1.0);
    static ClassF power(double beta);
    static ClassF loglog_log(); // 1 + lnln(e+x) ln(x)
};

struct ClassFFlags {
    bool nondecreasing = false;
    bool blow_up = false;
    bool asymptotic = false;       // integral tail bound, fitted constant
    bool submultiplicative = false; // F(xy) <= C F(x) F(y) on a lattice
    bool osgood = false;            // partial sums of dx/(xF) diverge
    double asymptotic_constant = 0.0;
    double submultiplicative_constant = 0.0;
    double osgood_partial_sum = 0.0; // integral of dx/(xF) up to the budget cap
    bool is_class_F() const {
        return nondecreasing && blow_up && asymptotic && submultiplicative;
    }
};

// Numerically probes the class-F / F' conditions and stamps the flags.
ClassFFlags verify_class_f(ClassF& F, int sample_budget = 2000);

// Finite family of ball centers and dyadic radii used by all estimators.
struct BallSampler {
    Grid grid;
    int center_stride = 4;       // grid points between centers
    std::vector<double> radii;   // dyadic, descending, all >= 4h and <= 1

    static BallSampler make_default(const Grid& g);
    std::uint64_t hash() const;
};

// Mean of f over the torus ball |x - c| <= r (unweighted grid sum).
double ball_average(const SpectralField& f, double cx, double cy, double r);
// Mean oscillation over the same ball.
double ball_oscillation(const SpectralField& f, double cx, double cy, double r);

double bmo_norm(const SpectralField& f, const BallSampler& s);
double bmo_f_norm(const SpectralField& f, const ClassF& F, const BallSampler& s);
double lmo_f_norm(const SpectralField& f, const ClassF& F, const BallSampler& s);

// sup over sampled pairs of |v(x)-v(y)| / (|x-y| log(e/|x-y|)) plus sup|v|.
double log_lipschitz_norm(const VectorField& v, const BallSampler& s);

// ||f||_{L^q} / (||f||_{L^p}^{p/q} ||f||_{BMO}^{1-p/q}); the BMO estimate
// must be nonzero, otherwise a degenerate-case error is thrown.
double interpolation_check(const SpectralField& f, double p, double q,
                           const BallSampler& s);

} // namespace machlab
