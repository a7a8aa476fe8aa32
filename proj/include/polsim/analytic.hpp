#ifndef POLSIM_ANALYTIC_HPP_
#define POLSIM_ANALYTIC_HPP_

#include <utility>

#include "polsim/core.hpp"

namespace polsim {

// Truncated Taylor jets in t: carry a value and its first (Jet1) or first two
// (Jet2) time derivatives through products and quotients, so the nested
// d/dt operators in the perturbative coherences can be applied to explicit
// derivative values supplied by the caller.
struct Jet1 {
    cplx f{}, d1{};
};

struct Jet2 {
    cplx f{}, d1{}, d2{};

    Jet1 lower() const { return {f, d1}; }   // forget the second derivative
    Jet1 ddt() const { return {d1, d2}; }    // d/dt, one order lower
};

Jet1 operator+(const Jet1& a, const Jet1& b);
Jet1 operator-(const Jet1& a, const Jet1& b);
Jet1 operator*(const Jet1& a, const Jet1& b);
Jet1 operator*(const cplx& c, const Jet1& a);
Jet1 operator/(const Jet1& a, const Jet1& b);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(const cplx& c, const Jet2& a);
Jet2 operator/(const Jet2& a, const Jet2& b);

// Field and control values with explicit time derivatives (zero for static
// cases; analytic for parametric pulses; finite differences from simulation
// data otherwise).
struct CoherenceInputs {
    cplx E{}, dE{}, d2E{};
    double Omega = 0.0, dOmega = 0.0, d2Omega = 0.0;
    double g = 0.0;  // coupling (collective units: pass sqrt(g^2 N))
};

// First-order perturbative coherences of a single detuning class.
// Gamma12/Gamma13 follow the equation-of-motion sign convention
// Gamma = -i dw - gamma (negative real part for decay).
std::pair<cplx, cplx> first_order_coherences(const CoherenceInputs& in,
                                             cplx Gamma12, cplx Gamma13);

// Lorentzian-averaged closed forms, valid on resonance for gamma << W.
// sigma12bar has three terms, sigma13bar six (the last two carry nested
// second derivatives).
std::pair<cplx, cplx> averaged_coherences(const CoherenceInputs& in,
                                          const MaterialSpec& m);

}  // namespace polsim

#endif  // POLSIM_ANALYTIC_HPP_
