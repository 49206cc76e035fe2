// Time evolution: unitary propagators for constant and sampled Hamiltonian
// schedules, the time-displacement operator as an extrapolated difference
// quotient, Heisenberg transport, Hamiltonian reconstruction, and the
// equation-of-motion residual of a sampled state trajectory.
#pragma once

#include <functional>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qaxiom/quantize.hpp"
#include "qaxiom/representation.hpp"

namespace qaxiom {

enum class Scheme { EigExp, CrankNicolson };

// Either a fixed Hermitian operator or a Hermitian-valued function of time
// on a declared interval. Sampled operators are Hermiticity-checked (1e-12)
// each time they are drawn.
class HamiltonianSchedule {
public:
    static HamiltonianSchedule constant(Operator h);
    static HamiltonianSchedule sampled(RepPtr rep, std::function<Operator(double)> sample,
                                       double t_lo, double t_hi);

    bool is_constant() const { return static_cast<bool>(constant_); }
    const RepPtr& rep() const { return rep_; }
    std::pair<double, double> interval() const { return {t_lo_, t_hi_}; }
    Operator at(double t) const;

private:
    HamiltonianSchedule() = default;
    RepPtr rep_;
    std::optional<Operator> constant_;
    std::function<Operator(double)> sample_;
    double t_lo_ = 0.0, t_hi_ = 0.0;
};

// Quantized symbolic Hamiltonian; expressions with a time symbol become
// sampled schedules (t bound per sample), the rest are constant.
HamiltonianSchedule schedule_from_expr(const Expr& h, const RepPtr& rep,
                                       const ParamValues& params = {});

// Removable phase multiplying a propagator: theta(t0, dt) is the integral of
// the rate alpha over [t0, t0 + dt].
class PhaseGauge {
public:
    static PhaseGauge trivial() { return PhaseGauge{}; }
    static PhaseGauge constant_rate(double alpha);
    static PhaseGauge from_rate(std::function<double(double)> alpha);

    double theta(double t0, double dt) const { return theta_ ? theta_(t0, dt) : 0.0; }
    bool is_trivial() const { return !theta_; }

private:
    std::function<double(double, double)> theta_;
};

struct Propagator {
    Operator op;
    double t0 = 0.0;
    double t1 = 0.0;
    Scheme scheme = Scheme::EigExp;
    int steps = 1;
};

// Constant + EigExp: exact Hermitian-eigendecomposition exponential.
// Anything stepped: ordered product of midpoint-sampled per-step factors;
// Crank-Nicolson factors are Cayley transforms, unitary at any step size.
Propagator propagate(const HamiltonianSchedule& h, double t0, double t1, Scheme scheme,
                     int steps = 1);

// Multiply the propagator by e^{i theta} for its own interval.
Propagator apply_gauge(const Propagator& prop, const PhaseGauge& gauge);

struct UnitarityReport {
    bool passed = false;
    double left_defect = 0.0;  // max |T+ T - 1|
    double right_defect = 0.0; // max |T T+ - 1|
};
UnitarityReport check_unitarity(const Operator& t, double tol);

struct DisplacementResult {
    Operator op;                      // extrapolated limit of (T e^{i theta} - 1)/dt
    double extrapolation_error = 0.0; // last Richardson correction size
};

// deltas must be a decreasing geometric sequence (ratio 1/2), length >= 3.
DisplacementResult time_displacement(const HamiltonianSchedule& h, double t0,
                                     const std::vector<double>& deltas,
                                     const PhaseGauge& gauge = PhaseGauge::trivial());
DisplacementResult time_displacement_family(const std::function<Operator(double)>& family,
                                            double t0, const std::vector<double>& deltas,
                                            const PhaseGauge& gauge = PhaseGauge::trivial());

struct AntiHermitianReport {
    bool passed = false;
    double defect = 0.0; // max |d + d+|
};
AntiHermitianReport check_anti_hermitian(const Operator& d, double tol);

// T S T+ after a unitarity precheck at 1e-8; the inverse is realized as the
// adjoint.
Operator heisenberg_transport(const Operator& s, const Propagator& t);

struct RateReport {
    bool passed = false;
    double deviation = 0.0;
    Matrix transported_rate; // extrapolated (T S T+ - S)/dt
    Matrix commutator_rate;  // d S - S d
};
RateReport check_heisenberg_rate(const Operator& s, const HamiltonianSchedule& h,
                                 double t0, const std::vector<double>& deltas, double tol);

struct ReconstructionReport {
    std::optional<Operator> h_recovered;
    double trace_offset = 0.0;               // removed gauge offset (with reference)
    std::optional<double> deviation;         // max |H_rec - offset*1 - H_ref|
    double extrapolation_error = 0.0;
};
ReconstructionReport reconstruct_hamiltonian(
    const std::function<Operator(double)>& family, double t0,
    const std::vector<double>& deltas, double hbar,
    const PhaseGauge& gauge = PhaseGauge::trivial(),
    const std::optional<Operator>& reference = std::nullopt);

// max_j ||i hbar FD_t psi_j - H(t_j) psi_j|| / ||psi_j|| over interior
// samples of a uniformly spaced trajectory (4th-order stencil).
double schrodinger_residual(const std::vector<std::pair<double, Ket>>& trajectory,
                            const HamiltonianSchedule& h, double hbar);

// Exactly propagated samples psi(t_j), j = 0..n_samples-1, t_j uniform on
// [t0, t1].
std::vector<std::pair<double, Ket>> sample_evolution(const HamiltonianSchedule& h,
                                                     const Ket& psi0, double t0, double t1,
                                                     int n_samples);

// Deterministic dense Hermitian operator with the given spectral norm.
Operator random_hermitian(const RepPtr& rep, std::mt19937_64& g, double spectral_norm);

} // namespace qaxiom
