#pragma once

#include "qev/quasi_einstein.hpp"

namespace qev {

/// Near-horizon stress data on the cross-section M, plus the spacetime
/// 2-form generating it when available.
struct MatterBundle {
    TensorField T;    // symmetric (0,2) on M
    TensorField Tpm;  // scalar on M
    std::optional<TensorField> maxwell;  // 2-form on the spacetime chart
};

/// Verbatim stress tensor of a 2-form: 2 (F_{mu rho} F_nu^rho - g |F|^2 / 4).
PointValue maxwell_stress(const TensorField& F, const TensorField& g_lorentz, const Point& p);

/// beta_i = -del^j T_ij + T_ij X^j - Tpm X_i.
PointValue beta(const MatterBundle& bundle, const TensorField& X, const TensorField& g,
                const Point& p);

/// Divergence of beta (needed by the full stress reconstruction).
double beta_divergence(const MatterBundle& bundle, const TensorField& X, const TensorField& g,
                       const Point& p);

/// Spacetime stress components reconstructed from the cross-section data at
/// a spacetime point (v, r, x...): the dv dr, dv dx, dv dv and dx dx blocks.
PointValue reconstruct_stress(const MatterBundle& bundle, const TensorField& X,
                              const TensorField& Y, const TensorField& g, const Point& p_st);

/// Residual of the reduced matter equation (m = 2 structure) plus |dX|.
VerificationReport matter_qe_residual(const TensorField& g, const TensorField& X,
                                      const MatterBundle& bundle, double lambda, const Grid& grid);

/// Matter potential Y from the constraint, then the two derived identities.
VerificationReport matter_Y_and_lemma41(const TensorField& g, const TensorField& X,
                                        const MatterBundle& bundle, double lambda,
                                        const Grid& grid);

/// Vacuum-form reduction with lambda_tilde = lambda - 2 Tpm / n; requires a
/// pure-trace T and constant Tpm, else reports the failing hypothesis.
VerificationReport theorem42_reduction(const TensorField& g, const TensorField& X,
                                       const MatterBundle& bundle, double lambda,
                                       const Grid& grid);

double matter_qe_residual_at(const TensorField& g, const TensorField& X,
                             const MatterBundle& bundle, double lambda, const Point& p);

}  // namespace qev
