#ifndef UTS_LEAST_SQUARES_HPP
#define UTS_LEAST_SQUARES_HPP

#include <cstdint>
#include <vector>

#include "uts/taylor_poly.hpp"

namespace uts {

// Weighted discrete least squares over polynomials supported on exponents
// min_exponent..max_exponent: minimize
//   sum_i w_i |h(z_i) - t_i|^2  +  sum_j u_j |h(y_j)|^2
// over h(z) = sum_{nu=m}^{d} c_nu z^nu, where (z_i, t_i, w_i) are the target
// nodes and (y_j, u_j) the zero-constraint nodes.
struct LeastSquaresProblem {
    std::vector<Complex> nodes;
    std::vector<Complex> targets;
    std::vector<double> weights;
    std::vector<Complex> zero_nodes;
    std::vector<double> zero_weights;
    std::int64_t min_exponent = 0;
    std::int64_t max_exponent = 0;
};

struct LeastSquaresResult {
    std::vector<Complex> coeffs;  // exponents min..max, ascending (rounded view)
    // The same coefficients in compensated form.  The orthonormal-basis
    // re-expansion cancels catastrophically in the monomial basis; the
    // compensated values still evaluate correctly on the node set where the
    // rounded doubles alone would not.
    std::vector<QDComplex> coeffs_qd;
    double residual = 0.0;        // max |h(z_i) - t_i| over target nodes (basis values)
    double residual_direct = 0.0; // same, re-evaluated from the monomial coefficients

    // the solution as a polynomial around 0 (zero coefficients below min_exponent)
    TaylorPoly polynomial() const;
    std::int64_t min_exponent = 0;
};

// Solved via an orthonormal basis built by a twice-reorthogonalized
// Gram-Schmidt/Arnoldi recurrence on the node set; raw normal equations on
// the monomial basis are never formed.  Rank collapse of the recurrence
// raises NumericalError.
LeastSquaresResult ls_approximate(const LeastSquaresProblem& problem);

}  // namespace uts

#endif
