#include "qaxiom/correspondence.hpp"

#include <cmath>

#include "qaxiom/sampling.hpp"

namespace qaxiom {

int correspondence_extra_margin(const RepPtr& rep, int degree_u, int degree_v) {
    if (rep->kind() == RepKind::Grid) return 0;
    if (degree_u < 0 || degree_v < 0) return 0;
    return std::max(0, degree_u + degree_v - 2);
}

CorrespondenceReport check_correspondence(const Expr& u, const Expr& v,
                                          const RepPtr& rep, double tol,
                                          const ParamValues& params) {
    CorrespondenceReport report;
    report.degree_u = degree_in_canonical(u).value_or(-1);
    report.degree_v = degree_in_canonical(v).value_or(-1);

    Operator big_u = quantize(u, rep, params);
    Operator big_v = quantize(v, rep, params);
    Operator bracket_op = quantize(poisson_bracket(u, v), rep, params);

    Matrix diff = commutator(big_u, big_v).matrix() -
                  Complex(0, rep->hbar()) * bracket_op.matrix();

    auto [lo, hi] = rep->interior_range(
        correspondence_extra_margin(rep, report.degree_u, report.degree_v));
    report.max_interior_deviation = max_abs(diff.block(lo, lo, hi - lo, hi - lo));
    report.passed = report.max_interior_deviation <= tol;
    return report;
}

OmegaEstimate estimate_omega(const std::vector<std::pair<Expr, Expr>>& pairs,
                             const RepPtr& rep, const ParamValues& params) {
    if (pairs.empty()) throw std::invalid_argument("estimate_omega needs at least one pair");

    struct Prepared {
        Matrix comm;
        Matrix bracket;
    };
    std::vector<Prepared> prepared;
    prepared.reserve(pairs.size());

    for (const auto& [u, v] : pairs) {
        int du = degree_in_canonical(u).value_or(-1);
        int dv = degree_in_canonical(v).value_or(-1);
        if (du < 0 || du > 2 || dv < 0 || dv > 2)
            throw std::invalid_argument("estimate_omega wants polynomial operands of degree <= 2");

        Expr pb = poisson_bracket(u, v);
        if (equal_numeric(pb, Expr::constant(u.space(), Rational(0))))
            throw DegeneratePair("pair (" + to_string(u) + ", " + to_string(v) +
                                 ") has an identically vanishing Poisson bracket");

        auto [lo, hi] = rep->interior_range(correspondence_extra_margin(rep, du, dv));
        int n = hi - lo;
        Matrix comm = commutator(quantize(u, rep, params), quantize(v, rep, params)).matrix();
        Matrix w = quantize(pb, rep, params).matrix();
        prepared.push_back({comm.block(lo, lo, n, n), w.block(lo, lo, n, n)});
    }

    // Minimize sum_i ||C_i - omega W_i||_F^2 over complex omega; stacking the
    // real and imaginary parts of the entries gives the normal equation
    // omega = <W, C> / <W, W> with the Frobenius inner product.
    Complex num(0, 0);
    double den = 0;
    for (const auto& p : prepared) {
        num += (p.bracket.conjugate().cwiseProduct(p.comm)).sum();
        den += p.bracket.squaredNorm();
    }
    if (den == 0.0) throw DegeneratePair("all quantized brackets vanish on the interior");

    OmegaEstimate est;
    est.omega = num / den;
    double misfit = 0;
    for (const auto& p : prepared)
        misfit += (p.comm - est.omega * p.bracket).squaredNorm();
    est.residual = std::sqrt(misfit);
    est.pure_imaginary_defect = std::abs(est.omega.real());
    return est;
}

} // namespace qaxiom
