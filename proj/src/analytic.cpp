#include "polsim/analytic.hpp"

#include <stdexcept>

namespace polsim {

Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.f + b.f, a.d1 + b.d1}; }
Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.f - b.f, a.d1 - b.d1}; }
Jet1 operator*(const Jet1& a, const Jet1& b) {
    return {a.f * b.f, a.f * b.d1 + a.d1 * b.f};
}
Jet1 operator*(const cplx& c, const Jet1& a) { return {c * a.f, c * a.d1}; }
Jet1 operator/(const Jet1& a, const Jet1& b) {
    const cplx q = a.f / b.f;
    return {q, (a.d1 - q * b.d1) / b.f};
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2};
}
Jet2 operator-(const Jet2& a, const Jet2& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2};
}
Jet2 operator*(const Jet2& a, const Jet2& b) {
    return {a.f * b.f, a.f * b.d1 + a.d1 * b.f,
            a.f * b.d2 + 2.0 * a.d1 * b.d1 + a.d2 * b.f};
}
Jet2 operator*(const cplx& c, const Jet2& a) { return {c * a.f, c * a.d1, c * a.d2}; }
Jet2 operator/(const Jet2& a, const Jet2& b) {
    const cplx q0 = a.f / b.f;
    const cplx q1 = (a.d1 - q0 * b.d1) / b.f;
    const cplx q2 = (a.d2 - q0 * b.d2 - 2.0 * q1 * b.d1) / b.f;
    return {q0, q1, q2};
}

namespace {

Jet2 jet_const(cplx v) { return {v, 0.0, 0.0}; }

// (d/dt - Gamma) applied to a jet, one order lower.
Jet1 dt_minus(const Jet2& a, cplx Gamma) {
    return {a.d1 - Gamma * a.f, a.d2 - Gamma * a.d1};
}
cplx dt_minus(const Jet1& a, cplx Gamma) { return a.d1 - Gamma * a.f; }

}  // namespace

std::pair<cplx, cplx> first_order_coherences(const CoherenceInputs& in,
                                             cplx Gamma12, cplx Gamma13) {
    if (in.Omega == 0.0)
        throw std::domain_error(
            "first_order_coherences: Omega = 0 (expansion is in gE/Omega)");

    const Jet2 E{in.E, in.dE, in.d2E};
    const Jet2 Om{in.Omega, in.dOmega, in.d2Omega};
    const Jet2 den = Om * Om + jet_const(Gamma12 * Gamma13);
    const Jet1 omInv1{1.0 / in.Omega, -cplx(in.dOmega) / (in.Omega * in.Omega)};
    const cplx g = in.g;

    // sigma12 = -gE/Omega + (1/Om)(dt - G13)(1/Om)(dt - G12)[gE Om / den]
    const Jet2 core = g * (E * Om / den);
    const Jet1 step = omInv1 * dt_minus(core, Gamma12);
    const cplx sigma12 =
        -g * in.E / in.Omega + dt_minus(step, Gamma13) / in.Omega;

    // sigma13 = (ig/Om)(dt - G12)[E Om / den]
    //         + (ig/Om)(dt - G12)[ (G13/Om^2) dt(E Om / den)
    //                            + (G12/Om)   dt(E / den) ]
    const cplx ig = cplx(0.0, 1.0) * g;
    const Jet2 a = E * Om / den;
    const Jet2 b = E / den;
    const Jet1 omInv2{1.0 / (in.Omega * in.Omega),
                      -2.0 * in.dOmega / (in.Omega * in.Omega * in.Omega)};
    const Jet1 bracket = (Gamma13 * omInv2) * a.ddt() + (Gamma12 * omInv1) * b.ddt();
    const cplx sigma13 = ig / in.Omega *
                         (dt_minus(a, Gamma12).f + dt_minus(bracket, Gamma12));
    return {sigma12, sigma13};
}

std::pair<cplx, cplx> averaged_coherences(const CoherenceInputs& in,
                                          const MaterialSpec& m) {
    if (in.Omega == 0.0)
        throw std::domain_error("averaged_coherences: Omega = 0");

    const double W12 = m.W12, W13 = m.W13;
    const double g12 = m.gamma12, g13 = m.gamma13;
    const double P = W12 * W13;
    const cplx g = in.g;
    const cplx ig = cplx(0.0, 1.0) * in.g;

    const Jet2 E{in.E, in.dE, in.d2E};
    const Jet2 Om{in.Omega, in.dOmega, in.d2Omega};
    const Jet2 om2 = Om * Om;
    const Jet2 den = om2 + jet_const(P);
    const Jet2 den2 = den * den;
    // the two gamma-linear numerators of the averaged expressions
    const Jet2 numA = jet_const(g13 * W12 * W12) - g12 * om2;  // -g12 Om^2 + g13 W12^2
    const Jet2 numB = jet_const(g12 * W13 * W13) - g13 * om2;  // -g13 Om^2 + g12 W13^2

    const double omv = in.Omega;
    const Jet1 omInv1{1.0 / omv, -in.dOmega / (omv * omv)};
    const Jet1 omInv2{1.0 / (omv * omv), -2.0 * in.dOmega / (omv * omv * omv)};

    // sigma12bar: leading term, then the two first-derivative corrections with
    // the 1/Om^n prefactors outside d/dt.
    const cplx s12 = -(g * (E * Om / den)).f
                     - (g * (E * Om * numB / den2)).d1 / (omv * omv)
                     - (g * (E * numA / den2)).d1 / omv;

    // sigma13bar: six terms as printed.
    const cplx t1 = -(ig * (E * numA / den2)).f;
    const cplx t2 = -(ig / (omv * omv * omv)) * (E * Om * jet_const(P) / den).d1;
    const cplx t3 = -(ig / (omv * omv)) * (jet_const(W12 * W12) * E / den).d1;
    const cplx t4 = (ig / omv) * (E * Om / den).d1;
    const Jet1 inner5 = omInv1 * (E * numA / den2).ddt();
    const cplx t5 = (ig / omv) * inner5.d1;
    const Jet1 inner6 = omInv2 * (E * Om * numB / den2).ddt();
    const cplx t6 = (ig / omv) * inner6.d1;

    return {s12, t1 + t2 + t3 + t4 + t5 + t6};
}

}  // namespace polsim
