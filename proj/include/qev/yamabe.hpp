#pragma once

#include "qev/quasi_einstein.hpp"

namespace qev {

/// Test data for the conformal quotient: a nonzero function and the free
/// constant k != 0 of the pointwise decomposition.
struct YamabeEval {
    TensorField phi;
    double k = 1;
};

/// Conformally weighted Rayleigh quotient of phi (n >= 3).
double yamabe_quotient(const TensorField& g, const TensorField& phi, const QuadratureRule& rule);

/// Pointwise gap between the curvature form c_n |grad phi|^2 + R phi^2 and
/// its rearrangement through the trace of the quasi-Einstein equation; both
/// sides computed independently, the divergence term kept explicit.
double decomposition_check(const QEProblem& prob, const YamabeEval& eval, const Point& p);

/// Integral of div(phi^2 X) against the rule (discrete divergence theorem).
double divergence_term_integral(const QEProblem& prob, const TensorField& phi,
                                const QuadratureRule& rule);

/// Lower bound on the quotient for lambda >= 0 and 0 < m <= k^2 < c_n;
/// reports both sides.
VerificationReport bound_check(const QEProblem& prob, const YamabeEval& eval,
                               const QuadratureRule& rule);

}  // namespace qev
