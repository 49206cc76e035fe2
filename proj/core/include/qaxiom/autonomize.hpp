// Extended-phase-space embedding of time-dependent Hamiltonians and the
// classical machinery around it: H~(q~, p~) = H(q, p, t) - E with the new
// conjugate pair q~_0 = t, p~_0 = -E, Hamilton equations, fixed-step RK4
// trajectories, and finite-difference checks of d zeta / dt = {zeta, H~}.
//
// States store E itself (not p~_0 = -E); the sign convention of the
// embedding lives entirely in the right-hand-side assembly.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qaxiom/expr.hpp"
#include "qaxiom/quantize.hpp"
#include "qaxiom/sampling.hpp"

namespace qaxiom {

struct ExtendedSystem {
    Expr original;        // H(q, p, t) over a space with has_time
    SpacePtr extended_space; // same pairs and parameters, t and E conjugate
    Expr h_tilde;         // H - E over the extended space
};

// Embed H; time-independent Hamiltonians embed with t cyclic. Throws
// EContamination when H already mentions E.
ExtendedSystem autonomize(const Expr& h);

// Phase-space point: (q_1..q_M, p_1..p_M) for plain systems, plus (t, E)
// for extended ones; `time` is the integration clock.
struct ClassicalState {
    std::vector<double> coords;
    double time = 0.0;
};

struct Trajectory {
    double step = 0.0;
    std::vector<ClassicalState> states;
};

// Compiled Hamilton equations: derivatives are differentiated once and then
// evaluated per step.
class HamiltonFlow {
public:
    HamiltonFlow(const Expr& h, const ParamValues& params);          // plain
    HamiltonFlow(const ExtendedSystem& system, const ParamValues& params);

    int state_size() const { return static_cast<int>(rhs_.size()); }
    bool extended() const { return extended_; }
    std::vector<double> rhs(const ClassicalState& s) const;

private:
    SpacePtr space_;
    std::vector<Expr> rhs_; // one expression per state component
    std::vector<int> coord_ids_;
    std::vector<double> base_values_;
    bool extended_ = false;
    bool has_time_symbol_ = false;
    int time_id_ = -1;
    int energy_sign_flip_ = -1; // index of the E-rate component, -1 if none
};

std::vector<double> hamilton_rhs(const Expr& h, const ClassicalState& s,
                                 const ParamValues& params = {});
std::vector<double> hamilton_rhs(const ExtendedSystem& system, const ClassicalState& s,
                                 const ParamValues& params = {});

// Classic RK4 with a uniform step. The requested step is shrunk to
// span / ceil(span / h) so the trajectory is uniform and ends exactly at
// t_end.
Trajectory integrate_classical(const Expr& h, const ClassicalState& s0, double t_end,
                               double h_step, const ParamValues& params = {});
Trajectory integrate_classical(const ExtendedSystem& system, const ClassicalState& s0,
                               double t_end, double h_step,
                               const ParamValues& params = {});

struct FlowCheckReport {
    bool passed = false;
    double max_deviation = 0.0;
};

// Compare the finite-difference rate of zeta along the trajectory against
// {zeta, H~} evaluated on the same states (interior points, 4th-order
// stencil).
FlowCheckReport observable_flow_check(const Expr& zeta, const ExtendedSystem& system,
                                      const Trajectory& traj, double tol,
                                      const ParamValues& params = {});

// CSV export: header "t,q1..qM,p1..pM[,E]", one full-precision row per state.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int dof,
                          bool extended);
std::string trajectory_csv(const Trajectory& traj, int dof, bool extended);

} // namespace qaxiom
