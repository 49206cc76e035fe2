#include "qaxiom/expr.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qaxiom/errors.hpp"

namespace qaxiom {

namespace {

NodePtr constant_node(Rational v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Constant;
    n->value = v;
    return n;
}

bool is_const(const NodePtr& n) { return n->kind == NodeKind::Constant; }

SpacePtr common_space(const std::vector<Expr>& parts) {
    SpacePtr space;
    for (const auto& p : parts) {
        if (!p.valid()) throw std::invalid_argument("empty expression operand");
        if (!space) space = p.space();
        else if (!same_space(space, p.space())) throw MismatchedSpace();
    }
    if (!space) throw std::invalid_argument("combinator needs at least one operand");
    return space;
}

const char* fn_name(FnKind fn) {
    switch (fn) {
        case FnKind::Sin: return "sin";
        case FnKind::Cos: return "cos";
        case FnKind::Exp: return "exp";
    }
    return "?";
}

} // namespace

Expr Expr::constant(SpacePtr space, Rational value) {
    return Expr(std::move(space), constant_node(value));
}

Expr Expr::symbol(SpacePtr space, const std::string& name) {
    int id = space->require(name);
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Symbol;
    n->symbol = id;
    return Expr(std::move(space), std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
    SpacePtr space = common_space(terms);
    Rational folded(0);
    std::vector<NodePtr> kids;
    for (const auto& t : terms) {
        const NodePtr& n = t.node();
        if (is_const(n)) {
            folded = folded + n->value;
        } else if (n->kind == NodeKind::Sum) {
            for (const auto& k : n->kids) {
                if (is_const(k)) folded = folded + k->value;
                else kids.push_back(k);
            }
        } else {
            kids.push_back(n);
        }
    }
    if (!folded.is_zero()) kids.insert(kids.begin(), constant_node(folded));
    if (kids.empty()) return Expr(space, constant_node(Rational(0)));
    if (kids.size() == 1) return Expr(space, kids.front());
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Sum;
    n->kids = std::move(kids);
    return Expr(space, std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
    SpacePtr space = common_space(factors);
    Rational folded(1);
    std::vector<NodePtr> kids;
    for (const auto& f : factors) {
        const NodePtr& n = f.node();
        if (is_const(n)) {
            folded = folded * n->value;
        } else if (n->kind == NodeKind::Product) {
            for (const auto& k : n->kids) {
                if (is_const(k)) folded = folded * k->value;
                else kids.push_back(k);
            }
        } else {
            kids.push_back(n);
        }
    }
    if (folded.is_zero()) return Expr(space, constant_node(Rational(0)));
    if (!folded.is_one()) kids.insert(kids.begin(), constant_node(folded));
    if (kids.empty()) return Expr(space, constant_node(Rational(1)));
    if (kids.size() == 1) return Expr(space, kids.front());
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Product;
    n->kids = std::move(kids);
    return Expr(space, std::move(n));
}

Expr Expr::pow(const Expr& base, int exponent) {
    if (exponent < 0) throw std::invalid_argument("integer power wants exponent >= 0");
    if (exponent == 0) return constant(base.space(), Rational(1));
    if (exponent == 1) return base;
    if (base.is_constant())
        return constant(base.space(), base.constant_value().pow(exponent));
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Power;
    n->kids = {base.node()};
    n->exponent = exponent;
    return Expr(base.space(), std::move(n));
}

Expr Expr::quotient(const Expr& numerator, const Expr& denominator) {
    if (!same_space(numerator.space(), denominator.space())) throw MismatchedSpace();
    if (!is_phase_constant(denominator))
        throw std::invalid_argument(
            "division is only defined by phase-space constants (rationals and parameters)");
    if (numerator.is_constant() && numerator.constant_value().is_zero())
        return constant(numerator.space(), Rational(0));
    if (denominator.is_constant()) {
        Rational d = denominator.constant_value();
        if (d.is_zero()) throw std::invalid_argument("division by zero");
        if (numerator.is_constant())
            return constant(numerator.space(), numerator.constant_value() / d);
        if (d.is_one()) return numerator;
    }
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Quotient;
    n->kids = {numerator.node(), denominator.node()};
    return Expr(numerator.space(), std::move(n));
}

Expr Expr::call(FnKind fn, const Expr& argument) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Call;
    n->fn = fn;
    n->kids = {argument.node()};
    return Expr(argument.space(), std::move(n));
}

Expr operator-(const Expr& a, const Expr& b) {
    return Expr::sum({a, Rational(-1) * b});
}

Expr operator-(const Expr& a) { return Rational(-1) * a; }

Expr operator*(Rational a, const Expr& b) {
    return Expr::product({Expr::constant(b.space(), a), b});
}

// ---------------------------------------------------------------------------
// differentiation

// Private-constructor access for internal rebuilding.
struct ExprInternal {
    static Expr make(SpacePtr space, NodePtr node) {
        return Expr(std::move(space), std::move(node));
    }
};

namespace {

Expr subexpr(const SpacePtr& space, const NodePtr& n) {
    return ExprInternal::make(space, n);
}

Expr diff_node(const SpacePtr& space, const NodePtr& n, int var) {
    switch (n->kind) {
        case NodeKind::Constant:
            return Expr::constant(space, Rational(0));
        case NodeKind::Symbol:
            return Expr::constant(space, Rational(n->symbol == var ? 1 : 0));
        case NodeKind::Sum: {
            std::vector<Expr> parts;
            parts.reserve(n->kids.size());
            for (const auto& k : n->kids) parts.push_back(diff_node(space, k, var));
            return Expr::sum(std::move(parts));
        }
        case NodeKind::Product: {
            std::vector<Expr> terms;
            for (std::size_t i = 0; i < n->kids.size(); ++i) {
                std::vector<Expr> factors;
                factors.reserve(n->kids.size());
                for (std::size_t j = 0; j < n->kids.size(); ++j) {
                    if (i == j) factors.push_back(diff_node(space, n->kids[j], var));
                    else factors.push_back(subexpr(space, n->kids[j]));
                }
                terms.push_back(Expr::product(std::move(factors)));
            }
            return Expr::sum(std::move(terms));
        }
        case NodeKind::Power: {
            Expr base = subexpr(space, n->kids[0]);
            Expr db = diff_node(space, n->kids[0], var);
            return Expr::product({Expr::constant(space, Rational(n->exponent)),
                                  Expr::pow(base, n->exponent - 1), db});
        }
        case NodeKind::Quotient: {
            Expr num = subexpr(space, n->kids[0]);
            Expr den = subexpr(space, n->kids[1]);
            Expr dnum = diff_node(space, n->kids[0], var);
            Expr dden = diff_node(space, n->kids[1], var);
            Expr first = Expr::quotient(dnum, den);
            if (dden.is_constant() && dden.constant_value().is_zero()) return first;
            Expr second = Expr::quotient(Expr::product({num, dden}),
                                         Expr::product({den, den}));
            return first - second;
        }
        case NodeKind::Call: {
            Expr arg = subexpr(space, n->kids[0]);
            Expr darg = diff_node(space, n->kids[0], var);
            switch (n->fn) {
                case FnKind::Sin:
                    return Expr::product({Expr::call(FnKind::Cos, arg), darg});
                case FnKind::Cos:
                    return Expr::product({Expr::constant(space, Rational(-1)),
                                          Expr::call(FnKind::Sin, arg), darg});
                case FnKind::Exp:
                    return Expr::product({Expr::call(FnKind::Exp, arg), darg});
            }
        }
    }
    throw std::logic_error("unhandled node kind");
}

} // namespace

Expr differentiate(const Expr& e, int symbol_id) {
    if (symbol_id < 0 || symbol_id >= e.space()->symbol_count())
        throw UnknownSymbol("#" + std::to_string(symbol_id));
    return diff_node(e.space(), e.node(), symbol_id);
}

Expr differentiate(const Expr& e, const std::string& var) {
    return differentiate(e, e.space()->require(var));
}

Expr poisson_bracket(const Expr& u, const Expr& v) {
    if (!same_space(u.space(), v.space())) throw MismatchedSpace();
    const SpacePtr& space = u.space();
    std::vector<Expr> terms;
    for (int r = 1; r <= space->dof(); ++r) {
        int q = space->position_id(r);
        int p = space->momentum_id(r);
        terms.push_back(Expr::product({differentiate(u, q), differentiate(v, p)}));
        terms.push_back(Rational(-1) *
                        Expr::product({differentiate(u, p), differentiate(v, q)}));
    }
    if (space->has_time() && space->has_energy()) {
        // The conjugate pair r = 0 is (t, -E): d/dp~_0 = -d/dE.
        int t = space->time_id();
        int en = space->energy_id();
        terms.push_back(Expr::product({differentiate(u, en), differentiate(v, t)}));
        terms.push_back(Rational(-1) *
                        Expr::product({differentiate(u, t), differentiate(v, en)}));
    }
    return Expr::sum(std::move(terms));
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double eval_node(const NodePtr& n, const std::vector<double>& values,
                 const std::vector<char>* bound, const PhaseSpace& space) {
    switch (n->kind) {
        case NodeKind::Constant:
            return n->value.to_double();
        case NodeKind::Symbol:
            if (bound && !(*bound)[n->symbol]) throw UnboundSymbol(space.name_of(n->symbol));
            return values[n->symbol];
        case NodeKind::Sum: {
            double s = 0;
            for (const auto& k : n->kids) s += eval_node(k, values, bound, space);
            return s;
        }
        case NodeKind::Product: {
            double s = 1;
            for (const auto& k : n->kids) s *= eval_node(k, values, bound, space);
            return s;
        }
        case NodeKind::Power:
            return std::pow(eval_node(n->kids[0], values, bound, space), n->exponent);
        case NodeKind::Quotient: {
            double num = eval_node(n->kids[0], values, bound, space);
            double den = eval_node(n->kids[1], values, bound, space);
            if (den == 0.0) throw EvalError("denominator evaluated to zero");
            return num / den;
        }
        case NodeKind::Call: {
            double a = eval_node(n->kids[0], values, bound, space);
            switch (n->fn) {
                case FnKind::Sin: return std::sin(a);
                case FnKind::Cos: return std::cos(a);
                case FnKind::Exp: return std::exp(a);
            }
        }
    }
    throw std::logic_error("unhandled node kind");
}

} // namespace

double eval_expr(const Expr& e, const Assignment& a) {
    const PhaseSpace& space = *e.space();
    std::vector<double> values(space.symbol_count(), 0.0);
    std::vector<char> bound(space.symbol_count(), 0);
    for (const auto& [name, value] : a) {
        auto id = space.find(name);
        if (!id) throw UnknownSymbol(name);
        values[*id] = value;
        bound[*id] = 1;
    }
    return eval_node(e.node(), values, &bound, space);
}

double eval_dense(const Expr& e, const std::vector<double>& values) {
    return eval_node(e.node(), values, nullptr, *e.space());
}

// ---------------------------------------------------------------------------
// structure queries

namespace {

void collect_symbols(const NodePtr& n, std::set<int>& out) {
    if (n->kind == NodeKind::Symbol) out.insert(n->symbol);
    for (const auto& k : n->kids) collect_symbols(k, out);
}

} // namespace

std::vector<int> free_symbols(const Expr& e) {
    std::set<int> ids;
    collect_symbols(e.node(), ids);
    return {ids.begin(), ids.end()};
}

bool contains_symbol(const Expr& e, int symbol_id) {
    std::set<int> ids;
    collect_symbols(e.node(), ids);
    return ids.count(symbol_id) > 0;
}

bool is_phase_constant(const Expr& e) {
    for (int id : free_symbols(e))
        if (e.space()->kind_of(id) != SymbolKind::Parameter) return false;
    return true;
}

namespace {

std::optional<int> degree_node(const NodePtr& n, const PhaseSpace& space) {
    switch (n->kind) {
        case NodeKind::Constant:
            return 0;
        case NodeKind::Symbol:
            return space.is_canonical(n->symbol) ? 1 : 0;
        case NodeKind::Sum: {
            int deg = 0;
            for (const auto& k : n->kids) {
                auto d = degree_node(k, space);
                if (!d) return std::nullopt;
                deg = std::max(deg, *d);
            }
            return deg;
        }
        case NodeKind::Product: {
            int deg = 0;
            for (const auto& k : n->kids) {
                auto d = degree_node(k, space);
                if (!d) return std::nullopt;
                deg += *d;
            }
            return deg;
        }
        case NodeKind::Power: {
            auto d = degree_node(n->kids[0], space);
            if (!d) return std::nullopt;
            return *d * n->exponent;
        }
        case NodeKind::Quotient:
            return degree_node(n->kids[0], space); // denominator is phase-constant
        case NodeKind::Call: {
            std::set<int> ids;
            collect_symbols(n->kids[0], ids);
            for (int id : ids)
                if (space.is_canonical(id)) return std::nullopt;
            return 0;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<int> degree_in_canonical(const Expr& e) {
    return degree_node(e.node(), *e.space());
}

namespace {

Expr rebase_node(const NodePtr& n, const PhaseSpace& from, const SpacePtr& to) {
    switch (n->kind) {
        case NodeKind::Constant:
            return Expr::constant(to, n->value);
        case NodeKind::Symbol:
            return Expr::symbol(to, from.name_of(n->symbol));
        case NodeKind::Sum:
        case NodeKind::Product: {
            std::vector<Expr> parts;
            parts.reserve(n->kids.size());
            for (const auto& k : n->kids) parts.push_back(rebase_node(k, from, to));
            return n->kind == NodeKind::Sum ? Expr::sum(std::move(parts))
                                            : Expr::product(std::move(parts));
        }
        case NodeKind::Power:
            return Expr::pow(rebase_node(n->kids[0], from, to), n->exponent);
        case NodeKind::Quotient:
            return Expr::quotient(rebase_node(n->kids[0], from, to),
                                  rebase_node(n->kids[1], from, to));
        case NodeKind::Call:
            return Expr::call(n->fn, rebase_node(n->kids[0], from, to));
    }
    throw std::logic_error("unhandled node kind");
}

} // namespace

Expr rebase(const Expr& e, const SpacePtr& target) {
    return rebase_node(e.node(), *e.space(), target);
}

// ---------------------------------------------------------------------------
// printing

namespace {

enum class Ctx { Term, Factor, PowerBase };

void print_node(std::ostream& os, const NodePtr& n, const PhaseSpace& space, Ctx ctx);

bool needs_parens(const NodePtr& n, Ctx ctx) {
    switch (n->kind) {
        case NodeKind::Symbol:
            return false;
        case NodeKind::Constant:
            if (ctx == Ctx::PowerBase) return n->value.negative() || !n->value.is_integer();
            return false;
        case NodeKind::Sum:
            return ctx != Ctx::Term;
        case NodeKind::Product:
        case NodeKind::Quotient:
            return ctx == Ctx::PowerBase;
        case NodeKind::Power:
        case NodeKind::Call:
            return false;
    }
    return false;
}

// Split a leading -1 coefficient off a product for "a - b" rendering.
bool negated_form(const NodePtr& n, NodePtr& positive) {
    if (n->kind == NodeKind::Constant && n->value.negative()) {
        positive = constant_node(Rational(-1) * n->value);
        return true;
    }
    if (n->kind == NodeKind::Product && n->kids[0]->kind == NodeKind::Constant &&
        n->kids[0]->value.negative()) {
        Rational flipped = Rational(-1) * n->kids[0]->value;
        auto m = std::make_shared<ExprNode>();
        m->kind = NodeKind::Product;
        if (!flipped.is_one()) m->kids.push_back(constant_node(flipped));
        for (std::size_t i = 1; i < n->kids.size(); ++i) m->kids.push_back(n->kids[i]);
        if (m->kids.size() == 1) positive = m->kids[0];
        else positive = m;
        return true;
    }
    return false;
}

void print_node(std::ostream& os, const NodePtr& n, const PhaseSpace& space, Ctx ctx) {
    if (needs_parens(n, ctx)) {
        os << '(';
        print_node(os, n, space, Ctx::Term);
        os << ')';
        return;
    }
    switch (n->kind) {
        case NodeKind::Constant:
            os << n->value.str();
            return;
        case NodeKind::Symbol:
            os << space.name_of(n->symbol);
            return;
        case NodeKind::Sum:
            for (std::size_t i = 0; i < n->kids.size(); ++i) {
                NodePtr positive;
                if (i > 0 && negated_form(n->kids[i], positive)) {
                    os << " - ";
                    print_node(os, positive, space, Ctx::Factor);
                } else {
                    if (i > 0) os << " + ";
                    print_node(os, n->kids[i], space, Ctx::Factor);
                }
            }
            return;
        case NodeKind::Product:
            for (std::size_t i = 0; i < n->kids.size(); ++i) {
                if (i > 0) os << '*';
                print_node(os, n->kids[i], space, Ctx::Factor);
            }
            return;
        case NodeKind::Power:
            print_node(os, n->kids[0], space, Ctx::PowerBase);
            os << '^' << n->exponent;
            return;
        case NodeKind::Quotient: {
            const NodePtr& num = n->kids[0];
            const NodePtr& den = n->kids[1];
            if (num->kind == NodeKind::Symbol || num->kind == NodeKind::Call ||
                (num->kind == NodeKind::Constant && num->value.is_integer() &&
                 !num->value.negative())) {
                print_node(os, num, space, Ctx::Factor);
            } else {
                os << '(';
                print_node(os, num, space, Ctx::Term);
                os << ')';
            }
            os << '/';
            if (den->kind == NodeKind::Symbol ||
                (den->kind == NodeKind::Constant && den->value.is_integer() &&
                 !den->value.negative())) {
                print_node(os, den, space, Ctx::Factor);
            } else {
                os << '(';
                print_node(os, den, space, Ctx::Term);
                os << ')';
            }
            return;
        }
        case NodeKind::Call:
            os << fn_name(n->fn) << '(';
            print_node(os, n->kids[0], space, Ctx::Term);
            os << ')';
            return;
    }
}

} // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print_node(os, e.node(), *e.space(), Ctx::Term);
    return os.str();
}

} // namespace qaxiom
