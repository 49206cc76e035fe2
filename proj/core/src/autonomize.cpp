#include "qaxiom/autonomize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace qaxiom {

namespace {

Expr minus_d(const Expr& e, int id) { return Rational(-1) * differentiate(e, id); }

} // namespace

ExtendedSystem autonomize(const Expr& h) {
    const SpacePtr& space = h.space();
    if (space->has_energy() && contains_symbol(h, space->energy_id()))
        throw EContamination();

    SpacePtr ext = space->extended();
    Expr lifted = rebase(h, ext);
    Expr h_tilde = lifted - Expr::symbol(ext, "E");

    // Embedding identities, verified at construction.
    Expr de = differentiate(h_tilde, "E");
    if (!equal_numeric(de, Expr::constant(ext, Rational(-1))))
        throw std::logic_error("embedding broke dH~/dp~_0 = 1");
    if (space->has_time()) {
        Expr dt_tilde = differentiate(h_tilde, "t");
        Expr dt_orig = rebase(differentiate(h, "t"), ext);
        if (!equal_numeric(dt_tilde, dt_orig))
            throw std::logic_error("embedding broke dH~/dq~_0 = dH/dt");
    }

    return ExtendedSystem{h, ext, h_tilde};
}

// ---------------------------------------------------------------------------
// compiled Hamilton equations

HamiltonFlow::HamiltonFlow(const Expr& h, const ParamValues& params) {
    space_ = h.space();
    int m = space_->dof();
    for (int r = 1; r <= m; ++r) coord_ids_.push_back(space_->position_id(r));
    for (int r = 1; r <= m; ++r) coord_ids_.push_back(space_->momentum_id(r));
    for (int r = 1; r <= m; ++r) rhs_.push_back(differentiate(h, space_->momentum_id(r)));
    for (int r = 1; r <= m; ++r) rhs_.push_back(minus_d(h, space_->position_id(r)));
    has_time_symbol_ = space_->has_time() && contains_symbol(h, space_->time_id());
    time_id_ = space_->time_id();

    base_values_.assign(space_->symbol_count(), 0.0);
    std::vector<char> bound(space_->symbol_count(), 0);
    for (int id : coord_ids_) bound[id] = 1;
    if (time_id_ >= 0) bound[time_id_] = 1;
    for (const auto& [name, value] : params) {
        int id = space_->require(name);
        base_values_[id] = value;
        bound[id] = 1;
    }
    for (int id : free_symbols(h))
        if (!bound[id]) throw UnboundSymbol(space_->name_of(id));
}

HamiltonFlow::HamiltonFlow(const ExtendedSystem& system, const ParamValues& params) {
    space_ = system.extended_space;
    extended_ = true;
    const Expr& ht = system.h_tilde;
    int m = space_->dof();
    for (int r = 1; r <= m; ++r) coord_ids_.push_back(space_->position_id(r));
    for (int r = 1; r <= m; ++r) coord_ids_.push_back(space_->momentum_id(r));
    coord_ids_.push_back(space_->time_id());
    coord_ids_.push_back(space_->energy_id());

    for (int r = 1; r <= m; ++r) rhs_.push_back(differentiate(ht, space_->momentum_id(r)));
    for (int r = 1; r <= m; ++r) rhs_.push_back(minus_d(ht, space_->position_id(r)));
    // t' = dH~/dp~_0 = -dH~/dE; the state stores E, not p~_0 = -E, so the
    // E rate picks up the opposite sign: E' = +dH~/dt.
    rhs_.push_back(minus_d(ht, space_->energy_id()));
    rhs_.push_back(differentiate(ht, space_->time_id()));

    base_values_.assign(space_->symbol_count(), 0.0);
    std::vector<char> bound(space_->symbol_count(), 0);
    for (int id : coord_ids_) bound[id] = 1;
    for (const auto& [name, value] : params) {
        int id = space_->require(name);
        base_values_[id] = value;
        bound[id] = 1;
    }
    for (int id : free_symbols(ht))
        if (!bound[id]) throw UnboundSymbol(space_->name_of(id));
}

std::vector<double> HamiltonFlow::rhs(const ClassicalState& s) const {
    if (static_cast<int>(s.coords.size()) != state_size())
        throw std::invalid_argument("state length does not match the system");
    std::vector<double> values = base_values_;
    for (std::size_t i = 0; i < coord_ids_.size(); ++i)
        values[coord_ids_[i]] = s.coords[i];
    if (!extended_ && has_time_symbol_) values[time_id_] = s.time;

    std::vector<double> out(rhs_.size());
    for (std::size_t i = 0; i < rhs_.size(); ++i) out[i] = eval_dense(rhs_[i], values);
    return out;
}

std::vector<double> hamilton_rhs(const Expr& h, const ClassicalState& s,
                                 const ParamValues& params) {
    return HamiltonFlow(h, params).rhs(s);
}

std::vector<double> hamilton_rhs(const ExtendedSystem& system, const ClassicalState& s,
                                 const ParamValues& params) {
    return HamiltonFlow(system, params).rhs(s);
}

// ---------------------------------------------------------------------------
// integration

namespace {

Trajectory integrate(const HamiltonFlow& flow, const ClassicalState& s0, double t_end,
                     double h_step) {
    if (!(h_step > 0)) throw InvalidInterval("integrator step must be positive");
    double span = t_end - s0.time;
    if (!(span > 0)) throw InvalidInterval("t_end must exceed the initial time");
    long long n = static_cast<long long>(std::ceil(span / h_step - 1e-12));
    double h = span / static_cast<double>(n);

    Trajectory traj;
    traj.step = h;
    traj.states.reserve(n + 1);
    traj.states.push_back(s0);

    std::size_t dim = s0.coords.size();
    ClassicalState scratch;
    scratch.coords.resize(dim);
    ClassicalState current = s0;

    for (long long step = 0; step < n; ++step) {
        double t = s0.time + step * h;
        auto k1 = flow.rhs(current);
        scratch.time = t + 0.5 * h;
        for (std::size_t i = 0; i < dim; ++i)
            scratch.coords[i] = current.coords[i] + 0.5 * h * k1[i];
        auto k2 = flow.rhs(scratch);
        for (std::size_t i = 0; i < dim; ++i)
            scratch.coords[i] = current.coords[i] + 0.5 * h * k2[i];
        auto k3 = flow.rhs(scratch);
        scratch.time = t + h;
        for (std::size_t i = 0; i < dim; ++i)
            scratch.coords[i] = current.coords[i] + h * k3[i];
        auto k4 = flow.rhs(scratch);

        for (std::size_t i = 0; i < dim; ++i) {
            current.coords[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(current.coords[i])) throw NonfiniteState(t);
        }
        current.time = s0.time + (step + 1) * h;
        traj.states.push_back(current);
    }
    return traj;
}

} // namespace

Trajectory integrate_classical(const Expr& h, const ClassicalState& s0, double t_end,
                               double h_step, const ParamValues& params) {
    return integrate(HamiltonFlow(h, params), s0, t_end, h_step);
}

Trajectory integrate_classical(const ExtendedSystem& system, const ClassicalState& s0,
                               double t_end, double h_step, const ParamValues& params) {
    return integrate(HamiltonFlow(system, params), s0, t_end, h_step);
}

// ---------------------------------------------------------------------------
// observable flow

FlowCheckReport observable_flow_check(const Expr& zeta, const ExtendedSystem& system,
                                      const Trajectory& traj, double tol,
                                      const ParamValues& params) {
    if (!same_space(zeta.space(), system.extended_space)) throw MismatchedSpace();
    const SpacePtr& space = system.extended_space;
    Expr bracket = poisson_bracket(zeta, system.h_tilde);

    int m = space->dof();
    std::vector<int> coord_ids;
    for (int r = 1; r <= m; ++r) coord_ids.push_back(space->position_id(r));
    for (int r = 1; r <= m; ++r) coord_ids.push_back(space->momentum_id(r));
    coord_ids.push_back(space->time_id());
    coord_ids.push_back(space->energy_id());

    std::vector<double> base(space->symbol_count(), 0.0);
    std::vector<char> bound(space->symbol_count(), 0);
    for (int id : coord_ids) bound[id] = 1;
    for (const auto& [name, value] : params) {
        int id = space->require(name);
        base[id] = value;
        bound[id] = 1;
    }
    for (const Expr* e : {&zeta, static_cast<const Expr*>(&bracket)})
        for (int id : free_symbols(*e))
            if (!bound[id]) throw UnboundSymbol(space->name_of(id));

    const auto& states = traj.states;
    if (states.size() < 5) throw TooFewSamples(states.size());

    auto values_at = [&](const ClassicalState& s) {
        std::vector<double> values = base;
        for (std::size_t i = 0; i < coord_ids.size(); ++i)
            values[coord_ids[i]] = s.coords[i];
        return values;
    };

    std::vector<double> zeta_samples(states.size());
    for (std::size_t j = 0; j < states.size(); ++j)
        zeta_samples[j] = eval_dense(zeta, values_at(states[j]));

    FlowCheckReport report;
    for (std::size_t j = 2; j + 2 < states.size(); ++j) {
        double fd = (-zeta_samples[j + 2] + 8.0 * zeta_samples[j + 1] -
                     8.0 * zeta_samples[j - 1] + zeta_samples[j - 2]) /
                    (12.0 * traj.step);
        double pb = eval_dense(bracket, values_at(states[j]));
        report.max_deviation = std::max(report.max_deviation, std::abs(fd - pb));
    }
    report.passed = report.max_deviation <= tol;
    return report;
}

// ---------------------------------------------------------------------------
// CSV export

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, int dof,
                          bool extended) {
    os << "t";
    for (int r = 1; r <= dof; ++r) os << ",q" << r;
    for (int r = 1; r <= dof; ++r) os << ",p" << r;
    if (extended) os << ",E";
    os << "\n";

    char buf[32];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    std::size_t expected = extended ? 2 * dof + 2 : 2 * dof;
    for (const auto& s : traj.states) {
        if (s.coords.size() != expected)
            throw std::invalid_argument("state length does not match dof/extended layout");
        emit(s.time);
        for (int i = 0; i < 2 * dof; ++i) {
            os << ',';
            emit(s.coords[i]);
        }
        if (extended) {
            os << ',';
            emit(s.coords[2 * dof + 1]);
        }
        os << "\n";
    }
}

std::string trajectory_csv(const Trajectory& traj, int dof, bool extended) {
    std::ostringstream os;
    write_trajectory_csv(os, traj, dof, extended);
    return os.str();
}

} // namespace qaxiom
