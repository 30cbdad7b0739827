#pragma once

#include "carrylab/matrices.hpp"
#include "carrylab/poly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace carrylab {

struct MomentConstants {
    Rational e_m, e_n; // mean growth of carries 1 and -1
    Rational v_m, v_n; // variance growth
    Rational c;        // covariance growth

    bool operator==(const MomentConstants&) const = default;
};

// det(I - z A(x, y)) by subset dynamic programming over the used columns.
TriPolynomial char_det(const PolyMatrix& a);

// Growth constants from the partial derivatives of f at (1,1,1).
// Throws std::domain_error if f_z(1,1,1) = 0.
MomentConstants moment_constants(const TriPolynomial& f);

MomentConstants moment_constants(const PolyMatrix& a);

using JointDistribution = std::map<std::pair<int, int>, Rational>;

// Weighted distribution of (M, N) over all paths of length ell from `initial`,
// finished with the exit weights.
JointDistribution exact_distribution(const PolyMatrix& a, const std::vector<Rational>& exit, std::size_t initial,
                                     std::size_t ell);
JointDistribution exact_distribution(const CarryChain& chain, std::size_t ell);

struct ShapeStatistics {
    double mean = 0;
    double variance = 0;
    double skewness = 0;
    // Sup distance between the lattice cdf and the normal cdf evaluated at half-integers.
    double kolmogorov = 0;
};

// Shape of the M (marker_index 0) or N (marker_index 1) marginal, normalised by the total mass.
ShapeStatistics marginal_shape(const JointDistribution& dist, int marker_index);

} // namespace carrylab
