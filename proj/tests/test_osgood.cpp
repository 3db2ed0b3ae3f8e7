#include <doctest.h>

#include <cmath>

#include "machlab/osgood.hpp"

using namespace machlab;

TEST_SUITE("osgood") {

TEST_CASE("closed form for the logarithmic weight") {
    // F(x) = 1 + ln x gives F(e^{Cy}) = 1 + Cy, so M(x) = ln(1 + Cx)/C
    ClassF F = ClassF::one_plus_log(1.0);
    verify_class_f(F);
    const double C = 2.0;
    for (double x : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        const double want = std::log(1.0 + C * x) / C;
        CHECK(osgood_M(F, C, x) == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("inverse and derivative are consistent") {
    ClassF F = ClassF::one_plus_log(1.0);
    verify_class_f(F);
    const double C = 1.5;
    for (double x : {0.2, 1.0, 4.0}) {
        const double t = osgood_M(F, C, x);
        CHECK(osgood_M_inverse(F, C, t) == doctest::Approx(x).epsilon(1e-8));
        // (M^{-1})'(t) = F(e^{C M^{-1}(t)}) = 1 + C x
        CHECK(osgood_M_inverse_derivative(F, C, t) ==
              doctest::Approx(1.0 + C * x).epsilon(1e-7));
    }
    CHECK(osgood_solve(F, C, 1.0, OsgoodDirection::M) ==
          doctest::Approx(osgood_M(F, C, 1.0)));
}

TEST_CASE("closed-form growth shape") {
    // with F = 1 + ln and unit constant, M^{-1}(t) = e^t - 1 and
    // (M^{-1})'(C0(1+t)) = e^{C0 (1+t)}: pure exponential growth in t
    ClassF F = ClassF::one_plus_log(1.0);
    verify_class_f(F);
    const double C0 = 0.8;
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
        const double got = osgood_M_inverse_derivative(F, 1.0, C0 * (1.0 + t));
        CHECK(got == doctest::Approx(std::exp(C0 * (1.0 + t))).epsilon(1e-6));
    }
}

TEST_CASE("comparison bound matches Gronwall in the linear case") {
    // mu(x) = x reduces the Osgood bound to rho <= C e^{int gamma}
    auto gamma = [](double) { return 0.7; };
    auto mu = [](double x) { return x; };
    const double C = 2.0, t = 1.3;
    const double got = osgood_bound(C, gamma, mu, 0.5, t);
    CHECK(got == doctest::Approx(C * std::exp(0.7 * t)).epsilon(1e-6));
}

TEST_CASE("lifespan bound is monotone in the data size") {
    ClassF F = ClassF::one_plus_log(1.0);
    verify_class_f(F);
    double prev = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double x = 0.5 * std::log(std::log(1.0 / eps));
        const double T = osgood_M(F, 1.0, x);
        CHECK(T > prev);
        prev = T;
    }
}

TEST_CASE("out-of-range inverse throws") {
    // power weight: M has a finite limit, beyond which no inverse exists
    ClassF F = ClassF::power(1.0);
    verify_class_f(F);
    const double cap = osgood_M(F, 1.0, 1e6);
    CHECK_THROWS_AS(osgood_M_inverse(F, 1.0, cap * 10.0), std::out_of_range);
}

} // TEST_SUITE
