// Immutable expression trees over a phase space: sums, products, integer
// powers, quotients by phase-space constants, and sin/cos/exp.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qaxiom/phase_space.hpp"
#include "qaxiom/rational.hpp"

namespace qaxiom {

enum class NodeKind { Constant, Symbol, Sum, Product, Power, Quotient, Call };
enum class FnKind { Sin, Cos, Exp };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind;
    Rational value;            // Constant
    int symbol = -1;           // Symbol
    std::vector<NodePtr> kids; // Sum/Product: children; Power: {base};
                               // Quotient: {num, den}; Call: {arg}
    int exponent = 0;          // Power
    FnKind fn = FnKind::Sin;   // Call
};

// Value handle: a shared immutable node tree plus the space its symbols
// live in. All combinators fold constants and flatten nested sums and
// products; nothing else is simplified.
class Expr {
public:
    Expr() = default;

    static Expr constant(SpacePtr space, Rational value);
    static Expr symbol(SpacePtr space, const std::string& name);
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr pow(const Expr& base, int exponent);
    static Expr quotient(const Expr& numerator, const Expr& denominator);
    static Expr call(FnKind fn, const Expr& argument);

    const SpacePtr& space() const { return space_; }
    const NodePtr& node() const { return node_; }
    bool valid() const { return static_cast<bool>(node_); }

    bool is_constant() const { return node_->kind == NodeKind::Constant; }
    Rational constant_value() const { return node_->value; }

    friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
    friend Expr operator*(Rational a, const Expr& b);

private:
    friend struct ExprInternal;
    Expr(SpacePtr space, NodePtr node) : space_(std::move(space)), node_(std::move(node)) {}

    SpacePtr space_;
    NodePtr node_;
};

using Assignment = std::map<std::string, double>;

// Exact partial derivative with respect to a declared symbol.
Expr differentiate(const Expr& e, const std::string& var);
Expr differentiate(const Expr& e, int symbol_id);

// {u, v} = sum_r (du/dq_r dv/dp_r - du/dp_r dv/dq_r); when the space has
// both t and E, the pair (t, -E) takes part as r = 0.
Expr poisson_bracket(const Expr& u, const Expr& v);

double eval_expr(const Expr& e, const Assignment& a);
// Fast path: values indexed by symbol id, all bound.
double eval_dense(const Expr& e, const std::vector<double>& values);

std::string to_string(const Expr& e);

// Symbol ids appearing in e, sorted.
std::vector<int> free_symbols(const Expr& e);
bool contains_symbol(const Expr& e, int symbol_id);
// True when e involves no position/momentum/time/energy symbol.
bool is_phase_constant(const Expr& e);
// Total degree in the canonical symbols q_r, p_r, or nullopt when e is not
// polynomial in them (e.g. sin of a coordinate).
std::optional<int> degree_in_canonical(const Expr& e);
// Rebuild e over another space, matching symbols by name.
Expr rebase(const Expr& e, const SpacePtr& target);

} // namespace qaxiom
