#include "qaxiom/evolution.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qaxiom/rng.hpp"

namespace qaxiom {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTransportUnitarityTol = 1e-8;

void require_hermitian(const Matrix& h) {
    double defect = hermiticity_defect(h);
    if (defect > kHermitianTol) throw NonHermitianHamiltonian(defect);
}

Matrix hermitian_exponential(const Matrix& h, double scale) {
    // exp(i * scale * H) via eigendecomposition of Hermitian H.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    Vector phases(h.rows());
    for (int i = 0; i < h.rows(); ++i)
        phases[i] = std::polar(1.0, scale * solver.eigenvalues()[i]);
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix cayley_step(const Matrix& h, double dt, double hbar) {
    // (1 + i H dt / 2 hbar)^-1 (1 - i H dt / 2 hbar): unitary for Hermitian H.
    int n = static_cast<int>(h.rows());
    Matrix x = Complex(0, dt / (2.0 * hbar)) * h;
    Matrix id = Matrix::Identity(n, n);
    return (id + x).partialPivLu().solve(id - x);
}

void validate_deltas(const std::vector<double>& deltas) {
    if (deltas.size() < 3)
        throw std::invalid_argument("need at least 3 delta samples for extrapolation");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0)) throw std::invalid_argument("deltas must be positive");
        if (i > 0 && std::abs(deltas[i] - 0.5 * deltas[i - 1]) > 1e-9 * deltas[i - 1])
            throw std::invalid_argument("deltas must halve at each step");
    }
}

struct Extrapolated {
    Matrix limit;
    double error_estimate;
};

// Richardson table for samples A(d_k), d_k = d_0 / 2^k, assuming an error
// expansion in integer powers of d.
Extrapolated richardson(const std::vector<Matrix>& samples) {
    std::vector<Matrix> row = samples;
    Matrix previous = row.back();
    for (std::size_t m = 1; m < samples.size(); ++m) {
        double factor = std::pow(2.0, static_cast<double>(m));
        for (std::size_t k = row.size() - 1; k >= m; --k)
            row[k] = (factor * row[k] - row[k - 1]) / (factor - 1.0);
        if (m + 1 == samples.size()) previous = row[row.size() - 2];
    }
    Matrix limit = row.back();
    return {limit, max_abs(limit - previous)};
}

} // namespace

// ---------------------------------------------------------------------------
// schedules and gauges

HamiltonianSchedule HamiltonianSchedule::constant(Operator h) {
    require_hermitian(h.matrix());
    HamiltonianSchedule s;
    s.rep_ = h.rep();
    s.constant_ = std::move(h);
    s.t_lo_ = -std::numeric_limits<double>::infinity();
    s.t_hi_ = std::numeric_limits<double>::infinity();
    return s;
}

HamiltonianSchedule HamiltonianSchedule::sampled(RepPtr rep,
                                                 std::function<Operator(double)> sample,
                                                 double t_lo, double t_hi) {
    if (!sample) throw std::invalid_argument("sampled schedule needs a sampler");
    if (!(t_lo < t_hi)) throw InvalidInterval("sampled schedule needs t_lo < t_hi");
    HamiltonianSchedule s;
    s.rep_ = std::move(rep);
    s.sample_ = std::move(sample);
    s.t_lo_ = t_lo;
    s.t_hi_ = t_hi;
    return s;
}

Operator HamiltonianSchedule::at(double t) const {
    if (constant_) return *constant_;
    Operator h = sample_(t);
    if (!same_rep(h.rep(), rep_)) throw MismatchedRep();
    require_hermitian(h.matrix());
    return h;
}

HamiltonianSchedule schedule_from_expr(const Expr& h, const RepPtr& rep,
                                       const ParamValues& params) {
    const auto& space = h.space();
    bool time_dependent = space->has_time() && contains_symbol(h, space->time_id());
    if (!time_dependent) return HamiltonianSchedule::constant(quantize(h, rep, params));
    auto sampler = [h, rep, params](double t) {
        ParamValues bound = params;
        bound["t"] = t;
        return quantize(h, rep, bound);
    };
    constexpr double kBig = std::numeric_limits<double>::max();
    return HamiltonianSchedule::sampled(rep, sampler, -kBig, kBig);
}

PhaseGauge PhaseGauge::constant_rate(double alpha) {
    PhaseGauge g;
    g.theta_ = [alpha](double, double dt) { return alpha * dt; };
    return g;
}

PhaseGauge PhaseGauge::from_rate(std::function<double(double)> alpha) {
    PhaseGauge g;
    g.theta_ = [alpha = std::move(alpha)](double t0, double dt) {
        // Composite Simpson with a fixed subdivision, for determinism.
        const int n = 64;
        double h = dt / n;
        double acc = alpha(t0) + alpha(t0 + dt);
        for (int i = 1; i < n; ++i) acc += alpha(t0 + i * h) * (i % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    return g;
}

// ---------------------------------------------------------------------------
// propagation

Propagator propagate(const HamiltonianSchedule& h, double t0, double t1, Scheme scheme,
                     int steps) {
    if (!(t1 >= t0)) throw InvalidInterval("propagate needs t1 >= t0");
    if (steps < 1) throw InvalidInterval("propagate needs steps >= 1");

    const RepPtr& rep = h.rep();
    double hbar = rep->hbar();
    double span = t1 - t0;
    int n = rep->dim();

    Matrix total;
    if (h.is_constant() && scheme == Scheme::EigExp) {
        total = hermitian_exponential(h.at(t0).matrix(), -span / hbar);
    } else if (h.is_constant() && scheme == Scheme::CrankNicolson) {
        Matrix step = cayley_step(h.at(t0).matrix(), span / steps, hbar);
        total = Matrix::Identity(n, n);
        for (int k = 0; k < steps; ++k) total = step * total;
    } else {
        double dt = span / steps;
        total = Matrix::Identity(n, n);
        for (int k = 0; k < steps; ++k) {
            double mid = t0 + (k + 0.5) * dt;
            Matrix hk = h.at(mid).matrix();
            Matrix factor = scheme == Scheme::EigExp
                                ? hermitian_exponential(hk, -dt / hbar)
                                : cayley_step(hk, dt, hbar);
            total = factor * total; // later times act on the left
        }
    }
    return Propagator{Operator(rep, std::move(total)), t0, t1, scheme, steps};
}

Propagator apply_gauge(const Propagator& prop, const PhaseGauge& gauge) {
    Propagator out = prop;
    double theta = gauge.theta(prop.t0, prop.t1 - prop.t0);
    out.op = Complex(std::cos(theta), std::sin(theta)) * prop.op;
    return out;
}

UnitarityReport check_unitarity(const Operator& t, double tol) {
    const Matrix& m = t.matrix();
    Matrix id = Matrix::Identity(m.rows(), m.cols());
    UnitarityReport report;
    report.left_defect = max_abs(m.adjoint() * m - id);
    report.right_defect = max_abs(m * m.adjoint() - id);
    report.passed = report.left_defect <= tol && report.right_defect <= tol;
    return report;
}

// ---------------------------------------------------------------------------
// time displacement and its consequences

DisplacementResult time_displacement_family(const std::function<Operator(double)>& family,
                                            double t0, const std::vector<double>& deltas,
                                            const PhaseGauge& gauge) {
    validate_deltas(deltas);
    RepPtr rep;
    std::vector<Matrix> samples;
    samples.reserve(deltas.size());
    for (double dt : deltas) {
        Operator t = family(dt);
        if (!rep) rep = t.rep();
        else if (!same_rep(rep, t.rep())) throw MismatchedRep();
        double theta = gauge.theta(t0, dt);
        Matrix gauged = Complex(std::cos(theta), std::sin(theta)) * t.matrix();
        samples.push_back((gauged - Matrix::Identity(gauged.rows(), gauged.cols())) / dt);
    }
    auto ex = richardson(samples);
    return DisplacementResult{Operator(rep, std::move(ex.limit)), ex.error_estimate};
}

DisplacementResult time_displacement(const HamiltonianSchedule& h, double t0,
                                     const std::vector<double>& deltas,
                                     const PhaseGauge& gauge) {
    Scheme scheme = h.is_constant() ? Scheme::EigExp : Scheme::CrankNicolson;
    auto family = [&h, t0, scheme](double dt) {
        return propagate(h, t0, t0 + dt, scheme, 1).op;
    };
    return time_displacement_family(family, t0, deltas, gauge);
}

AntiHermitianReport check_anti_hermitian(const Operator& d, double tol) {
    AntiHermitianReport report;
    report.defect = max_abs(d.matrix() + d.matrix().adjoint().eval());
    report.passed = report.defect <= tol;
    return report;
}

Operator heisenberg_transport(const Operator& s, const Propagator& t) {
    if (!same_rep(s.rep(), t.op.rep())) throw MismatchedRep();
    auto unitarity = check_unitarity(t.op, kTransportUnitarityTol);
    if (!unitarity.passed)
        throw NonUnitaryPropagator(std::max(unitarity.left_defect, unitarity.right_defect));
    return Operator(s.rep(), t.op.matrix() * s.matrix() * t.op.matrix().adjoint());
}

RateReport check_heisenberg_rate(const Operator& s, const HamiltonianSchedule& h,
                                 double t0, const std::vector<double>& deltas, double tol) {
    validate_deltas(deltas);
    Scheme scheme = h.is_constant() ? Scheme::EigExp : Scheme::CrankNicolson;
    std::vector<Matrix> samples;
    samples.reserve(deltas.size());
    for (double dt : deltas) {
        Propagator t = propagate(h, t0, t0 + dt, scheme, 1);
        Matrix transported = heisenberg_transport(s, t).matrix();
        samples.push_back((transported - s.matrix()) / dt);
    }
    auto lhs = richardson(samples);

    auto displaced = time_displacement(h, t0, deltas);
    Matrix rhs = displaced.op.matrix() * s.matrix() - s.matrix() * displaced.op.matrix();

    RateReport report;
    report.transported_rate = std::move(lhs.limit);
    report.commutator_rate = std::move(rhs);
    report.deviation = max_abs(report.transported_rate - report.commutator_rate);
    report.passed = report.deviation <= tol;
    return report;
}

ReconstructionReport reconstruct_hamiltonian(const std::function<Operator(double)>& family,
                                             double t0, const std::vector<double>& deltas,
                                             double hbar, const PhaseGauge& gauge,
                                             const std::optional<Operator>& reference) {
    auto displaced = time_displacement_family(family, t0, deltas, gauge);
    Operator recovered = Complex(0, hbar) * displaced.op;

    ReconstructionReport report;
    report.extrapolation_error = hbar * displaced.extrapolation_error;
    if (reference) {
        if (!same_rep(recovered.rep(), reference->rep())) throw MismatchedRep();
        int n = recovered.dim();
        Complex tr = (recovered.matrix() - reference->matrix()).trace();
        report.trace_offset = tr.real() / n;
        report.deviation = max_abs(recovered.matrix() -
                                   report.trace_offset * Matrix::Identity(n, n) -
                                   reference->matrix());
    }
    report.h_recovered = std::move(recovered);
    return report;
}

// ---------------------------------------------------------------------------
// trajectories

double schrodinger_residual(const std::vector<std::pair<double, Ket>>& trajectory,
                            const HamiltonianSchedule& h, double hbar) {
    std::size_t n = trajectory.size();
    if (n < 5) throw TooFewSamples(n);
    double step = trajectory[1].first - trajectory[0].first;
    if (!(step > 0)) throw NonuniformGrid();
    for (std::size_t j = 1; j < n; ++j) {
        double dt = trajectory[j].first - trajectory[j - 1].first;
        if (std::abs(dt - step) > 1e-9 * std::max(1.0, std::abs(step)))
            throw NonuniformGrid();
    }

    double worst = 0.0;
    for (std::size_t j = 2; j + 2 < n; ++j) {
        const Vector& m2 = trajectory[j - 2].second.vector();
        const Vector& m1 = trajectory[j - 1].second.vector();
        const Vector& p1 = trajectory[j + 1].second.vector();
        const Vector& p2 = trajectory[j + 2].second.vector();
        Vector dpsi = (-p2 + 8.0 * p1 - 8.0 * m1 + m2) / (12.0 * step);

        const Vector& psi = trajectory[j].second.vector();
        double norm = psi.norm();
        if (norm == 0.0) throw ZeroKet();
        Vector residual = Complex(0, hbar) * dpsi -
                          h.at(trajectory[j].first).matrix() * psi;
        worst = std::max(worst, residual.norm() / norm);
    }
    return worst;
}

std::vector<std::pair<double, Ket>> sample_evolution(const HamiltonianSchedule& h,
                                                     const Ket& psi0, double t0, double t1,
                                                     int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("need at least 2 samples");
    if (!same_rep(psi0.rep(), h.rep())) throw MismatchedRep();
    double step = (t1 - t0) / (n_samples - 1);
    std::vector<std::pair<double, Ket>> out;
    out.reserve(n_samples);

    if (h.is_constant()) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(h.at(t0).matrix());
        Vector modal = solver.eigenvectors().adjoint() * psi0.vector();
        for (int j = 0; j < n_samples; ++j) {
            double t = t0 + j * step;
            Vector phased(modal.size());
            for (int i = 0; i < modal.size(); ++i)
                phased[i] = std::polar(1.0, -solver.eigenvalues()[i] * (t - t0) /
                                                h.rep()->hbar()) *
                            modal[i];
            out.emplace_back(t, Ket(psi0.rep(), solver.eigenvectors() * phased));
        }
        return out;
    }

    const int substeps = 4;
    Vector state = psi0.vector();
    out.emplace_back(t0, psi0);
    for (int j = 1; j < n_samples; ++j) {
        double lo = t0 + (j - 1) * step;
        Propagator t = propagate(h, lo, lo + step, Scheme::CrankNicolson, substeps);
        state = t.op.matrix() * state;
        out.emplace_back(lo + step, Ket(psi0.rep(), state));
    }
    return out;
}

Operator random_hermitian(const RepPtr& rep, std::mt19937_64& g, double spectral_norm) {
    int n = rep->dim();
    Matrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [re, im] = normal_pair(g);
            a(i, j) = Complex(re, im);
        }
    Matrix h = 0.5 * (a + a.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    double top = std::max(std::abs(solver.eigenvalues().minCoeff()),
                          std::abs(solver.eigenvalues().maxCoeff()));
    if (top == 0.0) top = 1.0;
    return Operator(rep, (spectral_norm / top) * h);
}

} // namespace qaxiom
