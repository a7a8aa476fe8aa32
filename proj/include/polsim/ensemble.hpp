#ifndef POLSIM_ENSEMBLE_HPP_
#define POLSIM_ENSEMBLE_HPP_

#include <span>
#include <vector>

#include "polsim/core.hpp"

namespace polsim {

struct DetuningClass {
    double delta = 0.0;  // rad/s offset from the inhomogeneous line center
    double weight = 0.0;
};

enum class GridScheme { kMidpointEqualProb, kGauss };

// One detuning axis of the truncated Lorentzian, weights summing to 1,
// nodes symmetric about 0.
std::vector<DetuningClass> build_lorentzian_grid(double W, int n, double cutoff,
                                                 GridScheme scheme);

// Tensor-product ensemble over (dw12, dw13).
struct DetuningGrid {
    std::vector<DetuningClass> classes12;
    std::vector<DetuningClass> classes13;
    GridScheme scheme = GridScheme::kMidpointEqualProb;
    double cutoff = 30.0;

    static DetuningGrid build(const MaterialSpec& m, int n12, int n13,
                              double cutoff,
                              GridScheme scheme = GridScheme::kMidpointEqualProb);
    std::size_t joint_size() const {
        return classes12.size() * classes13.size();
    }
    // Joint weight of class (i12, i13); axes are independent.
    double joint_weight(std::size_t i12, std::size_t i13) const {
        return classes12[i12].weight * classes13[i13].weight;
    }
};

// Weighted sum over one axis. Lengths must match.
cplx ensemble_average(std::span<const cplx> values,
                      std::span<const DetuningClass> classes);

// Weighted sum over the joint grid, values indexed [i12 * n13 + i13].
// Summation order is fixed for reproducibility.
cplx ensemble_average(std::span<const cplx> values, const DetuningGrid& grid);

}  // namespace polsim

#endif  // POLSIM_ENSEMBLE_HPP_
