// Finite-dimensional realizations of one canonical pair, and the kets and
// operators living in them.
//
// Grid: position diagonal on n uniformly spaced points, momentum
// -i*hbar times a central finite-difference matrix (order 2 or 4) with
// dirichlet (zero-extension) or periodic closure. Both closures give an
// exactly skew-symmetric difference matrix, so the momentum is Hermitian.
//
// Ladder: dim lowest oscillator levels of mass m, frequency omega;
// Q = sqrt(hbar/2 m omega) (a + a+), P = i sqrt(m omega hbar / 2) (a+ - a).
//
// Canonical identities can only hold on an interior block in finite
// dimension (the trace of a commutator vanishes), so every representation
// carries an interior margin: grid reps exclude fd_order/2 points per edge,
// ladder reps exclude the top level.
#pragma once

#include <complex>
#include <memory>
#include <optional>

#include <Eigen/Dense>

#include "qaxiom/errors.hpp"

namespace qaxiom {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class RepKind { Grid, Ladder };
enum class Boundary { Dirichlet, Periodic };

struct GridSpec {
    int n_points = 0;
    double q_min = 0.0;
    double q_max = 0.0;
    Boundary boundary = Boundary::Dirichlet;
    int fd_order = 2;
};

struct LadderSpec {
    int dim = 0;
    double mass = 1.0;
    double omega = 1.0;
};

class Representation;
using RepPtr = std::shared_ptr<const Representation>;

class Representation {
public:
    static RepPtr grid(const GridSpec& spec, double hbar = 1.0,
                       std::optional<int> interior_margin = std::nullopt);
    static RepPtr ladder(const LadderSpec& spec, double hbar = 1.0,
                         std::optional<int> interior_margin = std::nullopt);

    RepKind kind() const { return kind_; }
    int dim() const { return static_cast<int>(q_.rows()); }
    double hbar() const { return hbar_; }
    int interior_margin() const { return interior_margin_; }

    const Matrix& position() const { return q_; }
    const Matrix& momentum() const { return p_; }
    // Grid point coordinates (grid reps only).
    const Eigen::VectorXd& grid_points() const;
    const GridSpec& grid_spec() const { return grid_; }
    const LadderSpec& ladder_spec() const { return ladder_; }

    // Index range [lo, hi) of basis states inside the interior margin.
    std::pair<int, int> interior_range(int extra_margin = 0) const;

    friend bool operator==(const Representation& a, const Representation& b);

private:
    Representation() = default;

    RepKind kind_ = RepKind::Grid;
    GridSpec grid_;
    LadderSpec ladder_;
    double hbar_ = 1.0;
    int interior_margin_ = 1;
    Matrix q_, p_;
    Eigen::VectorXd points_;
};

// Convenience wrappers matching the one-call construction style used by the
// suites.
RepPtr build_representation(const GridSpec& spec, double hbar = 1.0);
RepPtr build_representation(const LadderSpec& spec, double hbar = 1.0);

inline bool same_rep(const RepPtr& a, const RepPtr& b) {
    return a == b || (a && b && *a == *b);
}

class Operator {
public:
    Operator(RepPtr rep, Matrix m);

    const RepPtr& rep() const { return rep_; }
    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    Operator adjoint() const { return Operator(rep_, m_.adjoint()); }

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(Complex c, const Operator& a);

private:
    RepPtr rep_;
    Matrix m_;
};

class Ket {
public:
    Ket(RepPtr rep, Vector v);

    const RepPtr& rep() const { return rep_; }
    const Vector& vector() const { return v_; }
    double norm() const { return v_.norm(); }

private:
    RepPtr rep_;
    Vector v_;
};

Operator commutator(const Operator& a, const Operator& b);
// Normalized expectation <psi|A|psi> / <psi|psi>.
Complex expectation(const Ket& psi, const Operator& a);

Operator identity_operator(const RepPtr& rep);
Operator position_operator(const RepPtr& rep);
Operator momentum_operator(const RepPtr& rep);
Ket apply(const Operator& a, const Ket& psi);

// Real Gaussian profile exp(-(q - center)^2 / (2 sigma^2)) sampled on a grid
// rep; handy as a smooth test state.
Ket gaussian_ket(const RepPtr& rep, double center, double sigma);

// Elementwise max |.|; deviation metric used throughout (order independent).
double max_abs(const Matrix& m);
// max |A - A+|.
double hermiticity_defect(const Matrix& m);

} // namespace qaxiom
