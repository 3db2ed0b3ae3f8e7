#include "machlab/funcspaces.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "machlab/spectral_ops.hpp"

namespace machlab {

ClassF ClassF::one_plus_log(double alpha) {
    ClassF F;
    F.name = alpha == 1.0 ? "one_plus_log"
                          : "one_plus_log_alpha_" + std::to_string(alpha);
    F.eval = [alpha](double x) { return 1.0 + std::pow(std::log(x), alpha); };
    return F;
}

ClassF ClassF::power(double beta) {
    ClassF F;
    F.name = "power_" + std::to_string(beta);
    F.eval = [beta](double x) { return std::pow(x, beta); };
    return F;
}

ClassF ClassF::loglog_log() {
    ClassF F;
    F.name = "one_plus_loglog_log";
    F.eval = [](double x) {
        return 1.0 + std::log(std::log(M_E + x)) * std::log(x);
    };
    return F;
}

ClassFFlags verify_class_f(ClassF& F, int sample_budget) {
    ClassFFlags flags;
    const int m = std::max(16, sample_budget / 8);

    // (monotone + blow-up) on a geometric lattice
    flags.nondecreasing = true;
    double prev = F(1.0);
    for (int i = 1; i < m; ++i) {
        const double x = std::pow(10.0, 8.0 * i / m);
        const double y = F(x);
        if (y < prev - 1e-12 * std::abs(prev)) flags.nondecreasing = false;
        prev = y;
    }
    flags.blow_up = F(1e10) > 2.0 * F(10.0);

    // asymptotic tail: int_x^inf e^{-y/l} F(y) dy <= C l e^{-x/l} F(x)
    {
        double worst = 0.0;
        for (double lam : {1.0, 2.0, 5.0, 10.0}) {
            for (double x : {1.0, 2.0, 5.0, 10.0, 25.0, 50.0}) {
                if (x < lam) continue;
                // quadrature to x + 40*lam (tail negligible beyond)
                const int steps = 4000;
                const double hi = x + 40.0 * lam;
                const double dy = (hi - x) / steps;
                double integral = 0.0;
                for (int i = 0; i < steps; ++i) {
                    const double y0 = x + i * dy, y1 = y0 + dy;
                    integral += 0.5 * dy *
                                (std::exp(-y0 / lam) * F(y0) +
                                 std::exp(-y1 / lam) * F(y1));
                }
                worst = std::max(worst,
                                 integral / (lam * std::exp(-x / lam) * F(x)));
            }
        }
        flags.asymptotic_constant = worst;
        flags.asymptotic = worst < 100.0;
    }

    // submultiplicativity lattice
    {
        double worst = 0.0;
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                const double x = std::pow(10.0, 0.5 * i);
                const double y = std::pow(10.0, 0.5 * j);
                worst = std::max(worst, F(x * y) / (F(x) * F(y)));
            }
        flags.submultiplicative_constant = worst;
        flags.submultiplicative = worst < 100.0;
    }

    // Osgood divergence: partial sums of int dx/(x F(x)) on doubling spans.
    // With x = e^u the integrand is du / F(e^u); divergence shows as
    // non-shrinking increments per doubling of u.
    {
        double total = 0.0;
        double last_span = 0.0;
        double u = 0.0;
        // u <= 512 keeps exp(u) representable in double
        for (int d = 0; d < 10; ++d) {
            const double u1 = std::pow(2.0, d);
            const int steps = 256;
            const double du = (u1 - u) / steps;
            double span = 0.0;
            for (int i = 0; i < steps; ++i) {
                const double uu = u + (i + 0.5) * du;
                span += du / F(std::exp(uu));
            }
            total += span;
            last_span = span;
            u = u1;
        }
        flags.osgood_partial_sum = total;
        // Divergent integrals keep contributing per doubling; convergent
        // ones (F >= x^beta) have vanishing increments.
        flags.osgood = last_span > 1e-4;
    }

    F.is_class_F = flags.is_class_F();
    F.is_class_F_prime = F.is_class_F && flags.osgood;
    return flags;
}

BallSampler BallSampler::make_default(const Grid& g) {
    BallSampler s;
    s.grid = g;
    s.center_stride = std::max(1, g.n / 32);
    const double h = g.spacing();
    for (double r = 1.0; r >= 4.0 * h; r *= 0.5) s.radii.push_back(r);
    if (s.radii.empty())
        throw std::invalid_argument("BallSampler: grid too coarse for r<=1");
    return s;
}

std::uint64_t BallSampler::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<std::uint64_t>(grid.n));
    mix(static_cast<std::uint64_t>(grid.box_length * 1e6));
    mix(static_cast<std::uint64_t>(center_stride));
    for (double r : radii) mix(static_cast<std::uint64_t>(r * 1e9));
    return h;
}

namespace {

// Grid offsets of the disc |x| <= r, cached per (n, L, r).
struct DiscOffsets {
    std::vector<int> flat; // pairs (di, dj)
    int count = 0;
};

const DiscOffsets& disc_offsets(const Grid& g, double r) {
    static std::map<std::tuple<int, long long, long long>, DiscOffsets> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(
        g.n, static_cast<long long>(g.box_length * 1e9),
        static_cast<long long>(r * 1e9));
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const double h = g.spacing();
    const int m = static_cast<int>(std::floor(r / h));
    DiscOffsets d;
    for (int dj = -m; dj <= m; ++dj)
        for (int di = -m; di <= m; ++di)
            if ((di * di + dj * dj) * h * h <= r * r + 1e-12) {
                d.flat.push_back(di);
                d.flat.push_back(dj);
            }
    d.count = static_cast<int>(d.flat.size() / 2);
    return cache.emplace(key, std::move(d)).first->second;
}

int wrap_index(int i, int n) {
    i %= n;
    return i < 0 ? i + n : i;
}

struct BallStats {
    double mean;
    double oscillation;
};

BallStats ball_stats(const SpectralField& f, double cx, double cy, double r,
                     bool need_osc) {
    const Grid& g = f.grid();
    const double h = g.spacing();
    if (r < 2.0 * h)
        throw std::invalid_argument("ball: radius below 2 grid spacings");
    const auto& off = disc_offsets(g, r);
    const auto& vals = f.phys();
    const int n = g.n;
    const int ci = static_cast<int>(std::lround(cx / h));
    const int cj = static_cast<int>(std::lround(cy / h));
    double sum = 0.0;
    for (int t = 0; t < off.count; ++t) {
        const int i = wrap_index(ci + off.flat[2 * t], n);
        const int j = wrap_index(cj + off.flat[2 * t + 1], n);
        sum += vals[static_cast<std::size_t>(j) * n + i];
    }
    const double mean = sum / off.count;
    double osc = 0.0;
    if (need_osc) {
        for (int t = 0; t < off.count; ++t) {
            const int i = wrap_index(ci + off.flat[2 * t], n);
            const int j = wrap_index(cj + off.flat[2 * t + 1], n);
            osc += std::abs(vals[static_cast<std::size_t>(j) * n + i] - mean);
        }
        osc /= off.count;
    }
    return {mean, osc};
}

// Enumerate the sampler's (B1, B2) pairs with 2*B2 inside B1: concentric,
// or offset by r1/4, with r2 in {r1/4, r1/8, ...} down to 4h.
template <typename Fn>
void for_each_pair(const BallSampler& s, Fn&& fn) {
    const Grid& g = s.grid;
    const double h = g.spacing();
    const double stride = s.center_stride * h;
    for (double r1 : s.radii) {
        for (int cj = 0; cj < g.n; cj += s.center_stride)
            for (int ci = 0; ci < g.n; ci += s.center_stride) {
                const double cx = ci * h, cy = cj * h;
                for (double r2 = r1 / 4.0; r2 >= 4.0 * h; r2 *= 0.5) {
                    fn(cx, cy, r1, cx, cy, r2);
                    const double d = r1 / 4.0;
                    if (d + 2.0 * r2 <= r1)
                        fn(cx, cy, r1, cx + d, cy, r2);
                }
            }
        (void)stride;
    }
}

} // namespace

double ball_average(const SpectralField& f, double cx, double cy, double r) {
    return ball_stats(f, cx, cy, r, false).mean;
}

double ball_oscillation(const SpectralField& f, double cx, double cy, double r) {
    return ball_stats(f, cx, cy, r, true).oscillation;
}

double bmo_norm(const SpectralField& f, const BallSampler& s) {
    const Grid& g = s.grid;
    const double h = g.spacing();
    double sup = 0.0;
    for (double r : s.radii)
        for (int cj = 0; cj < g.n; cj += s.center_stride)
            for (int ci = 0; ci < g.n; ci += s.center_stride)
                sup = std::max(sup,
                               ball_stats(f, ci * h, cj * h, r, true).oscillation);
    return sup;
}

double bmo_f_norm(const SpectralField& f, const ClassF& F, const BallSampler& s) {
    if (!F.is_class_F)
        throw std::invalid_argument("bmo_f_norm: F not verified class-F");
    double pair_sup = 0.0;
    for_each_pair(s, [&](double c1x, double c1y, double r1, double c2x,
                         double c2y, double r2) {
        const double a1 = ball_average(f, c1x, c1y, r1);
        const double a2 = ball_average(f, c2x, c2y, r2);
        const double w = F((1.0 - std::log(r2)) / (1.0 - std::log(r1)));
        pair_sup = std::max(pair_sup, std::abs(a2 - a1) / w);
    });
    return bmo_norm(f, s) + pair_sup;
}

double lmo_f_norm(const SpectralField& f, const ClassF& F, const BallSampler& s) {
    if (!F.is_class_F)
        throw std::invalid_argument("lmo_f_norm: F not verified class-F");
    const Grid& g = s.grid;
    const double h = g.spacing();
    double osc_sup = 0.0;
    for (double r : s.radii) {
        const double w = F(1.0 - std::log(r));
        for (int cj = 0; cj < g.n; cj += s.center_stride)
            for (int ci = 0; ci < g.n; ci += s.center_stride)
                osc_sup = std::max(
                    osc_sup,
                    w * ball_stats(f, ci * h, cj * h, r, true).oscillation);
    }
    double pair_sup = 0.0;
    for_each_pair(s, [&](double c1x, double c1y, double r1, double c2x,
                         double c2y, double r2) {
        const double a1 = ball_average(f, c1x, c1y, r1);
        const double a2 = ball_average(f, c2x, c2y, r2);
        pair_sup = std::max(pair_sup,
                            F(1.0 - std::log(r1)) * std::abs(a2 - a1));
    });
    return osc_sup + pair_sup;
}

double log_lipschitz_norm(const VectorField& v, const BallSampler& s) {
    const Grid& g = s.grid;
    const auto& vx = v.x.phys();
    const auto& vy = v.y.phys();
    const double h = g.spacing();
    const int n = g.n;
    double sup = 0.0;
    static const int dirs[8][2] = {{1, 0}, {0, 1},  {1, 1},  {1, -1},
                                   {-1, 0}, {0, -1}, {-1, -1}, {-1, 1}};
    for (double delta : s.radii) {
        if (delta >= 1.0) continue;
        const double weight = delta * std::log(M_E / delta);
        const int steps = std::max(1, static_cast<int>(std::lround(delta / h)));
        const double actual = steps * h;
        const double diag = actual * std::sqrt(2.0);
        const double w_axis = actual * std::log(M_E / actual);
        const double w_diag =
            diag < 1.0 ? diag * std::log(M_E / diag) : 0.0;
        for (int cj = 0; cj < n; cj += s.center_stride)
            for (int ci = 0; ci < n; ci += s.center_stride) {
                const std::size_t a = static_cast<std::size_t>(cj) * n + ci;
                for (const auto& d : dirs) {
                    const int i2 = wrap_index(ci + d[0] * steps, n);
                    const int j2 = wrap_index(cj + d[1] * steps, n);
                    const std::size_t b = static_cast<std::size_t>(j2) * n + i2;
                    const double dx = vx[a] - vx[b], dy = vy[a] - vy[b];
                    const double diff = std::sqrt(dx * dx + dy * dy);
                    const bool diagonal = d[0] != 0 && d[1] != 0;
                    const double w = diagonal ? w_diag : w_axis;
                    if (w > 0.0) sup = std::max(sup, diff / w);
                }
            }
        (void)weight;
    }
    return sup + max_norm(v);
}

double interpolation_check(const SpectralField& f, double p, double q,
                           const BallSampler& s) {
    if (p > q || !(q < INFINITY))
        throw std::invalid_argument("interpolation_check: need p <= q < inf");
    const double bmo = bmo_norm(f, s);
    if (bmo < 1e-14)
        throw std::invalid_argument(
            "interpolation_check: degenerate (BMO estimate is zero)");
    const double lp = lp_norm(f, p);
    const double lq = lp_norm(f, q);
    return lq / (std::pow(lp, p / q) * std::pow(bmo, 1.0 - p / q));
}

} // namespace machlab
