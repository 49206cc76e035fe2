// Symbolic expression -> operator on a single-pair representation.
//
// The expression is expanded as a polynomial in p1; each coefficient is
// either a function of q1 alone (grid: mapped to the diagonal; ladder: must
// itself be polynomial) or a q1-polynomial attached to a positive momentum
// power. Mixed monomials q^a p^b are substituted with Weyl-symmetric
// ordering, W(q^a p^b) = 2^-a * sum_j C(a,j) Q^j P^b Q^(a-j), which is what
// makes the bracket correspondence exact through degree 2.
#pragma once

#include <map>
#include <string>

#include "qaxiom/expr.hpp"
#include "qaxiom/representation.hpp"

namespace qaxiom {

// Numeric values for parameters (and, when present, for t or E) appearing
// in the expression; canonical symbols must be q1 and p1.
using ParamValues = std::map<std::string, double>;

Operator quantize(const Expr& e, const RepPtr& rep, const ParamValues& params = {});

// Weyl-ordered monomial W(q^a p^b) on rep.
Operator weyl_monomial(const RepPtr& rep, int q_power, int p_power);

} // namespace qaxiom
