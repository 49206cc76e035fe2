// Checks of the commutator / Poisson-bracket correspondence
// [U, V] = i*hbar * quantize({u, v}) on interior blocks, and a least-squares
// estimate of the proportionality constant from a family of pairs.
//
// With Weyl ordering the identity is exact (up to truncation, hence the
// interior block) whenever both operands have degree <= 2; for higher
// degrees a residual of order hbar^3 survives every refinement, and reports
// carry the operand degrees so suites can assert the failure instead.
#pragma once

#include <utility>
#include <vector>

#include "qaxiom/quantize.hpp"

namespace qaxiom {

struct CorrespondenceReport {
    double max_interior_deviation = 0.0;
    int degree_u = -1; // -1: not polynomial in (q, p)
    int degree_v = -1;
    bool passed = false;
};

// Truncating a ladder contaminates the top levels; a product of operators of
// total degree d reaches d-1 levels below the edge, so correspondence checks
// widen the representation margin by deg u + deg v - 2.
int correspondence_extra_margin(const RepPtr& rep, int degree_u, int degree_v);

CorrespondenceReport check_correspondence(const Expr& u, const Expr& v,
                                          const RepPtr& rep, double tol,
                                          const ParamValues& params = {});

struct OmegaEstimate {
    Complex omega{0.0, 0.0};
    double residual = 0.0;              // sqrt of the summed squared misfit
    double pure_imaginary_defect = 0.0; // |Re omega|
};

// Least squares over the stacked interior entries of [U_i, V_i] against
// quantize({u_i, v_i}); every pair must have operand degrees <= 2 and a
// bracket that is not identically zero.
OmegaEstimate estimate_omega(const std::vector<std::pair<Expr, Expr>>& pairs,
                             const RepPtr& rep, const ParamValues& params = {});

} // namespace qaxiom
