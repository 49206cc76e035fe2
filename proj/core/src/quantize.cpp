#include "qaxiom/quantize.hpp"

#include <vector>

namespace qaxiom {

namespace {

// Polynomial in one designated symbol with Expr coefficients.
using Poly = std::vector<Expr>; // index = power of the designated symbol

Poly poly_add(const SpacePtr& space, const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Expr::constant(space, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = out[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = out[i] + b[i];
    return out;
}

Poly poly_mul(const SpacePtr& space, const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Expr::constant(space, Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

Poly expand_node(const SpacePtr& space, const NodePtr& n, int var, const char* what) {
    switch (n->kind) {
        case NodeKind::Constant:
            return {Expr::constant(space, n->value)};
        case NodeKind::Symbol: {
            if (n->symbol == var)
                return {Expr::constant(space, Rational(0)), Expr::constant(space, Rational(1))};
            return {Expr::symbol(space, space->name_of(n->symbol))};
        }
        case NodeKind::Sum: {
            Poly out{Expr::constant(space, Rational(0))};
            for (const auto& k : n->kids)
                out = poly_add(space, out, expand_node(space, k, var, what));
            return out;
        }
        case NodeKind::Product: {
            Poly out{Expr::constant(space, Rational(1))};
            for (const auto& k : n->kids)
                out = poly_mul(space, out, expand_node(space, k, var, what));
            return out;
        }
        case NodeKind::Power: {
            Poly base = expand_node(space, n->kids[0], var, what);
            Poly out{Expr::constant(space, Rational(1))};
            for (int i = 0; i < n->exponent; ++i) out = poly_mul(space, out, base);
            return out;
        }
        case NodeKind::Quotient: {
            // Denominators are phase-constant, hence free of var; divide
            // each coefficient.
            Poly num = expand_node(space, n->kids[0], var, what);
            Expr den = expand_node(space, n->kids[1], var, what).at(0);
            Poly out;
            out.reserve(num.size());
            for (const auto& c : num) out.push_back(Expr::quotient(c, den));
            return out;
        }
        case NodeKind::Call: {
            // A transcendental factor may not contain the expansion symbol.
            Poly arg = expand_node(space, n->kids[0], var, what);
            if (arg.size() > 1)
                throw UnsupportedExpression(std::string("sin/cos/exp of ") + what +
                                            " cannot be quantized");
            switch (n->fn) {
                case FnKind::Sin: return {Expr::call(FnKind::Sin, arg[0])};
                case FnKind::Cos: return {Expr::call(FnKind::Cos, arg[0])};
                case FnKind::Exp: return {Expr::call(FnKind::Exp, arg[0])};
            }
        }
    }
    throw UnsupportedExpression("unexpandable expression node");
}

Poly expand_in(const Expr& e, int var, const char* what) {
    Poly out = expand_node(e.space(), e.node(), var, what);
    while (out.size() > 1 && out.back().is_constant() &&
           out.back().constant_value().is_zero())
        out.pop_back();
    return out;
}

bool is_zero_constant(const Expr& e) {
    return e.is_constant() && e.constant_value().is_zero();
}

} // namespace

Operator weyl_monomial(const RepPtr& rep, int q_power, int p_power) {
    int n = rep->dim();
    std::vector<Matrix> q_pow(q_power + 1), p_pow(p_power + 1);
    q_pow[0] = Matrix::Identity(n, n);
    for (int i = 1; i <= q_power; ++i) q_pow[i] = q_pow[i - 1] * rep->position();
    p_pow[0] = Matrix::Identity(n, n);
    for (int i = 1; i <= p_power; ++i) p_pow[i] = p_pow[i - 1] * rep->momentum();

    // W(q^a p^b) = 2^-a sum_j C(a,j) Q^j P^b Q^(a-j)
    Matrix acc = Matrix::Zero(n, n);
    double binom = 1.0;
    for (int j = 0; j <= q_power; ++j) {
        acc += binom * (q_pow[j] * p_pow[p_power] * q_pow[q_power - j]);
        binom = binom * (q_power - j) / (j + 1);
    }
    acc *= std::pow(0.5, q_power);
    return Operator(rep, acc);
}

Operator quantize(const Expr& e, const RepPtr& rep, const ParamValues& params) {
    const SpacePtr& space = e.space();
    const int q1 = space->position_id(1);
    const int p1 = space->momentum_id(1);

    // Bind every non-canonical symbol.
    std::vector<double> values(space->symbol_count(), 0.0);
    std::vector<char> bound(space->symbol_count(), 0);
    for (const auto& [name, value] : params) {
        auto id = space->find(name);
        if (!id) throw UnknownSymbol(name);
        values[*id] = value;
        bound[*id] = 1;
    }
    for (int id : free_symbols(e)) {
        if (id == q1 || id == p1) continue;
        if (space->is_canonical(id))
            throw UnsupportedExpression(
                "multi-pair expression on a single-pair representation (symbol " +
                space->name_of(id) + ")");
        if (!bound[id]) throw UnboundSymbol(space->name_of(id));
    }

    auto eval_coeff = [&](const Expr& c) {
        return eval_dense(c, values);
    };

    int n = rep->dim();
    Matrix out = Matrix::Zero(n, n);

    Poly in_p = expand_in(e, p1, "a momentum symbol");
    for (std::size_t k = 0; k < in_p.size(); ++k) {
        const Expr& coeff = in_p[k];
        if (is_zero_constant(coeff)) continue;

        if (k == 0 && rep->kind() == RepKind::Grid) {
            // Any function of q alone maps to the diagonal on a grid.
            const auto& pts = rep->grid_points();
            for (int i = 0; i < n; ++i) {
                values[q1] = pts[i];
                out(i, i) += eval_coeff(coeff);
            }
            values[q1] = 0.0;
            continue;
        }

        Poly in_q = expand_in(coeff, q1, rep->kind() == RepKind::Ladder
                                             ? "a coordinate on a ladder representation"
                                             : "a coordinate multiplying a momentum power");
        for (std::size_t a = 0; a < in_q.size(); ++a) {
            if (is_zero_constant(in_q[a])) continue;
            double c = eval_coeff(in_q[a]);
            if (c == 0.0) continue;
            out += c * weyl_monomial(rep, static_cast<int>(a), static_cast<int>(k)).matrix();
        }
    }
    return Operator(rep, out);
}

} // namespace qaxiom
