#pragma once

#include <functional>

#include "machlab/funcspaces.hpp"

namespace machlab {

// M(x) = int_0^x dy / F(e^{Cy}), its inverse, and the inverse's derivative
// (M^{-1})'(t) = F(e^{C M^{-1}(t)}).
double osgood_M(const ClassF& F, double C, double x);
double osgood_M_inverse(const ClassF& F, double C, double t);
double osgood_M_inverse_derivative(const ClassF& F, double C, double t);

enum class OsgoodDirection { M, M_inverse, M_inverse_derivative };
double osgood_solve(const ClassF& F, double C, double x_or_t,
                    OsgoodDirection direction);

// Osgood comparison bound: rho(t) <= C + int gamma(s) mu(rho(s)) ds implies
// rho(t) <= Mmu^{-1}(Mmu(C) + int_0^t gamma), Mmu(y) = int_a^y dx/mu(x).
double osgood_bound(double C, const std::function<double(double)>& gamma,
                    const std::function<double(double)>& mu, double a, double t);

} // namespace machlab
