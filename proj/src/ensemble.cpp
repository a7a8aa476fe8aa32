#include "polsim/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace polsim {

namespace {

// Nodes and weights of n-point Gauss-Legendre on [-1, 1] by Newton iteration
// on the Legendre polynomial roots.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

}  // namespace

std::vector<DetuningClass> build_lorentzian_grid(double W, int n, double cutoff,
                                                 GridScheme scheme) {
    if (n < 1) throw std::domain_error("build_lorentzian_grid: n must be >= 1");
    if (n == 1) return {{0.0, 1.0}};
    if (!(W > 0.0))
        throw std::domain_error("build_lorentzian_grid: W must be > 0 for n > 1");
    if (!(cutoff >= 3.0))
        throw std::domain_error("build_lorentzian_grid: cutoff must be >= 3");

    std::vector<DetuningClass> classes(n);
    if (scheme == GridScheme::kMidpointEqualProb) {
        // Nodes at the probability midpoints of the truncated Lorentzian via
        // the inverse CDF; equal weights sum to 1 exactly and the quantile
        // symmetry pairs each node with its negative.
        const double half = std::atan(cutoff) / kPi;  // CDF(cW) - CDF(0)
        for (int i = 0; i < n; ++i) {
            const double u = -half + (2.0 * half) * (i + 0.5) / n;
            classes[i] = {W * std::tan(kPi * u), 1.0 / n};
        }
    } else {
        std::vector<double> x, w;
        gauss_legendre(n, x, w);
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = cutoff * W * x[i];
            const double lorentz = (W / kPi) / (d * d + W * W);
            classes[i] = {d, w[i] * cutoff * W * lorentz};
            sum += classes[i].weight;
        }
        for (auto& c : classes) c.weight /= sum;
        // Symmetrize midpoints pairwise against roundoff.
        for (int i = 0; i < n / 2; ++i) {
            const double d = 0.5 * (classes[n - 1 - i].delta - classes[i].delta);
            classes[i].delta = -d;
            classes[n - 1 - i].delta = d;
        }
    }
    return classes;
}

DetuningGrid DetuningGrid::build(const MaterialSpec& m, int n12, int n13,
                                 double cutoff, GridScheme scheme) {
    DetuningGrid g;
    g.scheme = scheme;
    g.cutoff = cutoff;
    g.classes12 = build_lorentzian_grid(m.W12, n12, cutoff, scheme);
    g.classes13 = build_lorentzian_grid(m.W13, n13, cutoff, scheme);
    return g;
}

cplx ensemble_average(std::span<const cplx> values,
                      std::span<const DetuningClass> classes) {
    if (values.size() != classes.size())
        throw std::domain_error("ensemble_average: length mismatch");
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i)
        sum += classes[i].weight * values[i];
    return sum;
}

cplx ensemble_average(std::span<const cplx> values, const DetuningGrid& grid) {
    if (values.size() != grid.joint_size())
        throw std::domain_error("ensemble_average: length mismatch");
    const std::size_t n13 = grid.classes13.size();
    cplx sum(0.0, 0.0);
    for (std::size_t i = 0; i < grid.classes12.size(); ++i) {
        cplx row(0.0, 0.0);
        for (std::size_t j = 0; j < n13; ++j)
            row += grid.classes13[j].weight * values[i * n13 + j];
        sum += grid.classes12[i].weight * row;
    }
    return sum;
}

}  // namespace polsim
