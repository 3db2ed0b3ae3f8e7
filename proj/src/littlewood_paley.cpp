#include "machlab/littlewood_paley.hpp"

#include <cmath>
#include <stdexcept>

#include "machlab/simd/kernels.hpp"
#include "machlab/spectral_ops.hpp"

namespace machlab {
namespace {

double bump(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

} // namespace

double lp_chi(double t) {
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    const double s = 2.0 * (t - 0.5); // in (0,1)
    return bump(1.0 - s) / (bump(s) + bump(1.0 - s));
}

DyadicPartition DyadicPartition::build(const Grid& grid) {
    DyadicPartition p;
    p.grid_ = grid;
    p.q_max_ = static_cast<int>(std::lround(std::log2(grid.n / 2))) - 1;
    if (p.q_max_ < 2)
        throw std::invalid_argument("DyadicPartition: grid too small");

    const int n = grid.n;
    const std::size_t sz = static_cast<std::size_t>(n) * n;
    auto modulus = [&](int i, int j) {
        const double mi = grid.wavenumber(i);
        const double mj = grid.wavenumber(j);
        return std::sqrt(mi * mi + mj * mj);
    };

    p.delta_.assign(p.q_max_ + 2, std::vector<double>(sz, 0.0));
    p.homog_.assign(p.q_max_ + 1, std::vector<double>(sz, 0.0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const std::size_t idx = static_cast<std::size_t>(j) * n + i;
            const double m = modulus(i, j);
            p.delta_[0][idx] = lp_chi(m); // q = -1
            for (int q = 0; q < p.q_max_; ++q) {
                const double t = std::ldexp(m, -q); // m / 2^q
                p.delta_[q + 1][idx] = lp_chi(0.5 * t) - lp_chi(t);
            }
            // closing block: everything above 2^{q_max - 1}
            p.delta_[p.q_max_ + 1][idx] =
                1.0 - lp_chi(std::ldexp(m, -p.q_max_));
            for (int q = 0; q <= p.q_max_; ++q) {
                if (i == 0 && j == 0) continue;
                p.homog_[q][idx] =
                    q == p.q_max_ ? p.delta_[p.q_max_ + 1][idx]
                                  : p.delta_[q + 1][idx];
            }
        }

    p.s_.assign(p.q_max_ + 2, std::vector<double>(sz, 0.0));
    for (int q = 0; q <= p.q_max_ + 1; ++q) {
        for (std::size_t idx = 0; idx < sz; ++idx) {
            double acc = 0.0;
            for (int jq = -1; jq <= q - 1; ++jq) acc += p.delta_[jq + 1][idx];
            p.s_[q][idx] = acc;
        }
    }
    return p;
}

const std::vector<double>& DyadicPartition::mask(int q, Kind kind) const {
    switch (kind) {
    case Kind::delta_q:
        if (q < -1 || q > q_max_)
            throw std::out_of_range("DyadicPartition: q out of range");
        return delta_[q + 1];
    case Kind::s_q:
        if (q < 0) throw std::out_of_range("DyadicPartition: q out of range");
        return s_[std::min(q, q_max_ + 1)];
    case Kind::homog_delta_q:
        if (q < 0 || q > q_max_)
            throw std::out_of_range("DyadicPartition: q out of range");
        return homog_[q];
    }
    throw std::invalid_argument("DyadicPartition: bad kind");
}

SpectralField DyadicPartition::project(const SpectralField& f, int q,
                                       Kind kind) const {
    const auto& m = mask(q, kind);
    const auto& in = f.spec();
    std::vector<cplx> out(in.size());
    simd::active().mask_mul(in.data(), m.data(), out.data(), in.size());
    return SpectralField::from_spectral(grid_, std::move(out));
}

double DyadicPartition::besov_norm(const SpectralField& f, double s, double p,
                                   double r, bool homogeneous) const {
    if (p < 1.0 || r < 1.0)
        throw std::invalid_argument("besov_norm: p and r must be >= 1");
    const int q_lo = homogeneous ? 0 : -1;
    double acc = 0.0, m = 0.0;
    for (int q = q_lo; q <= q_max_; ++q) {
        auto block = project(f, q, homogeneous ? Kind::homog_delta_q : Kind::delta_q);
        const double lp = std::isinf(p) ? max_norm(block) : lp_norm(block, p);
        const double term = std::pow(2.0, q * s) * lp;
        if (std::isinf(r))
            m = std::max(m, term);
        else
            acc += std::pow(term, r);
    }
    return std::isinf(r) ? m : std::pow(acc, 1.0 / r);
}

DyadicPartition::BernsteinReport
DyadicPartition::bernstein_verify(const SpectralField& f, int q, int k,
                                  double a, double b) const {
    if (a > b) throw std::invalid_argument("bernstein_verify: need a <= b");
    auto lp_of = [&](const SpectralField& u, double p) {
        return std::isinf(p) ? max_norm(u) : lp_norm(u, p);
    };
    auto deriv = [&](const SpectralField& u, int ax, int ay) {
        SpectralField d = u;
        for (int i = 0; i < ax; ++i) d = gradient(d).x;
        for (int i = 0; i < ay; ++i) d = gradient(d).y;
        return d;
    };

    BernsteinReport rep{0.0, 0.0, 0.0, false};
    const double two_q = std::pow(2.0, q);

    SpectralField sq = project(f, q, Kind::s_q);
    const double base = lp_of(sq, a);
    if (base < 1e-14) {
        rep.vacuous = true;
    } else {
        double sup = 0.0;
        for (int ax = 0; ax <= k; ++ax)
            for (int ay = 0; ax + ay <= k; ++ay) {
                const int ord = ax + ay;
                const double num = lp_of(deriv(sq, ax, ay), b);
                const double denom =
                    std::pow(two_q, ord + 2.0 * (1.0 / a - 1.0 / b)) * base;
                sup = std::max(sup, num / denom);
            }
        rep.nonhomogeneous_ratio = sup;
    }

    if (q >= 0 && q <= q_max_) {
        SpectralField dq = project(f, q, Kind::homog_delta_q);
        const double block = lp_of(dq, b);
        if (block < 1e-14) {
            rep.vacuous = true;
        } else {
            double hi = 0.0, lo = 0.0;
            for (int ax = 0; ax <= k; ++ax) {
                const int ay = k - ax;
                const double num = lp_of(deriv(dq, ax, ay), b);
                hi = std::max(hi, num);
            }
            lo = hi; // sup over |alpha| = k is what both sides bound
            rep.homogeneous_upper = hi / (std::pow(two_q, k) * block);
            rep.homogeneous_lower = lo / (std::pow(two_q, k) * block);
        }
    }
    return rep;
}

} // namespace machlab
