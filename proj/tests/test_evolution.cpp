#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qaxiom/evolution.hpp"
#include "qaxiom/parser.hpp"
#include "test_support.hpp"

using namespace qaxiom;

namespace {

RepPtr ladder(int dim, double hbar = 1.0) {
    return Representation::ladder(LadderSpec{.dim = dim}, hbar);
}

Ket random_ket(const RepPtr& rep, std::mt19937_64& g) {
    Vector v(rep->dim());
    for (int i = 0; i < rep->dim(); ++i) {
        auto [re, im] = normal_pair(g);
        v[i] = Complex(re, im);
    }
    return Ket(rep, v);
}

// diag(1, -1) on a 2-level ladder rep.
Operator sigma_z(const RepPtr& rep) {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator(rep, m);
}

Operator sigma_x(const RepPtr& rep) {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(rep, m);
}

Operator sigma_y(const RepPtr& rep) {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return Operator(rep, m);
}

std::vector<double> geometric_deltas(double first, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i) out.push_back(first / std::pow(2.0, i));
    return out;
}

} // namespace

TEST_CASE("zero generator propagates to the identity") {
    auto rep = ladder(8);
    auto h = HamiltonianSchedule::constant(Operator(rep, Matrix::Zero(8, 8)));
    for (auto scheme : {Scheme::EigExp, Scheme::CrankNicolson}) {
        auto prop = propagate(h, 0.0, 0.7, scheme, 3);
        CHECK(max_abs(prop.op.matrix() - Matrix::Identity(8, 8)) <= 1e-14);
    }
}

TEST_CASE("two-level phase evolution matches the analytic exponential") {
    auto rep = ladder(2);
    double omega = 1.3, dt = 0.42;
    auto h = HamiltonianSchedule::constant(Complex(omega / 2, 0) * sigma_z(rep));
    auto prop = propagate(h, 0.0, dt, Scheme::EigExp);
    Matrix expected(2, 2);
    expected << std::polar(1.0, -omega * dt / 2), 0.0, 0.0, std::polar(1.0, omega * dt / 2);
    CHECK(max_abs(prop.op.matrix() - expected) <= 1e-14);
}

TEST_CASE("commuting schedule converges at second order to the exact flow") {
    auto rep = ladder(16);
    std::mt19937_64 g(mix_seed(31, "commuting-schedule"));
    Operator h0 = random_hermitian(rep, g, 2.0);
    auto f = [](double t) { return 1.0 + 0.5 * std::sin(t); };
    auto schedule = HamiltonianSchedule::sampled(
        rep, [&](double t) { return Complex(f(t), 0) * h0; }, -1.0, 3.0);

    double t1 = 2.0;
    double integral = t1 + 0.5 * (1.0 - std::cos(t1));
    Matrix exact =
        propagate(HamiltonianSchedule::constant(Complex(integral / t1, 0) * h0), 0.0, t1,
                  Scheme::EigExp)
            .op.matrix();

    for (auto scheme : {Scheme::CrankNicolson, Scheme::EigExp}) {
        double e32 = max_abs(propagate(schedule, 0.0, t1, scheme, 32).op.matrix() - exact);
        double e64 = max_abs(propagate(schedule, 0.0, t1, scheme, 64).op.matrix() - exact);
        CAPTURE(static_cast<int>(scheme));
        CHECK(std::log2(e32 / e64) >= 1.9);
    }
}

TEST_CASE("unitarity reports") {
    auto rep = ladder(64);
    CHECK(check_unitarity(identity_operator(rep), 1e-15).passed);

    std::mt19937_64 g(mix_seed(37, "unitarity"));
    Operator h = random_hermitian(rep, g, 10.0);
    auto prop = propagate(HamiltonianSchedule::constant(h), 0.0, 0.1, Scheme::EigExp);
    auto report = check_unitarity(prop.op, 1e-10);
    CHECK(report.passed);

    // exp of a generic (non-skew-Hermitian) matrix is not unitary.
    Matrix a = h.matrix() * Complex(0.3, 0.1);
    Matrix exp_a = a.exp(); // dense scaling-and-squaring from MatrixFunctions
    CHECK_FALSE(check_unitarity(Operator(rep, exp_a), 1e-10).passed);
}

TEST_CASE("crank-nicolson is unitary at any step size") {
    auto rep = ladder(32);
    std::mt19937_64 g(mix_seed(41, "cn-unitarity"));
    Operator h = random_hermitian(rep, g, 10.0);
    auto schedule = HamiltonianSchedule::constant(h);
    for (int steps : {1, 3, 17}) {
        auto prop = propagate(schedule, 0.0, 2.5, Scheme::CrankNicolson, steps);
        auto report = check_unitarity(prop.op, 1e-12);
        CAPTURE(steps);
        CHECK(report.passed);
    }
}

TEST_CASE("hamiltonians must be Hermitian") {
    auto rep = ladder(4);
    Matrix bad = Matrix::Zero(4, 4);
    bad(0, 1) = Complex(0.5, 0.5);
    CHECK_THROWS_AS(HamiltonianSchedule::constant(Operator(rep, bad)),
                    NonHermitianHamiltonian);
    auto h = HamiltonianSchedule::constant(Operator(rep, Matrix::Zero(4, 4)));
    CHECK_THROWS_AS(propagate(h, 1.0, 0.5, Scheme::EigExp), InvalidInterval);
    CHECK_THROWS_AS(propagate(h, 0.0, 1.0, Scheme::EigExp, 0), InvalidInterval);
}

TEST_CASE("time displacement recovers -iH/hbar") {
    auto rep = ladder(2);
    double omega = 0.9;
    Operator h = Complex(omega / 2, 0) * sigma_z(rep);
    auto schedule = HamiltonianSchedule::constant(h);

    auto zero = time_displacement(
        HamiltonianSchedule::constant(Operator(rep, Matrix::Zero(2, 2))), 0.0,
        geometric_deltas(0.2, 3));
    CHECK(max_abs(zero.op.matrix()) <= 1e-13);

    auto d = time_displacement(schedule, 0.0, geometric_deltas(0.1, 4));
    Matrix expected = Complex(0, -1.0) * h.matrix();
    CHECK(max_abs(d.op.matrix() - expected) <= 1e-9);

    // Raw single-delta samples err at first order; the extrapolated limit
    // gains a factor >= 3.5 when the whole delta sequence is halved.
    auto coarse = time_displacement(schedule, 0.0, geometric_deltas(0.2, 3));
    auto fine = time_displacement(schedule, 0.0, geometric_deltas(0.1, 3));
    double e_coarse = max_abs(coarse.op.matrix() - expected);
    double e_fine = max_abs(fine.op.matrix() - expected);
    CHECK(e_coarse / e_fine >= 3.5);

    CHECK_THROWS_AS(time_displacement(schedule, 0.0, {0.2, 0.1}), std::invalid_argument);
    CHECK_THROWS_AS(time_displacement(schedule, 0.0, {0.2, 0.15, 0.1}),
                    std::invalid_argument);
}

TEST_CASE("constant gauge shifts the displacement by i alpha") {
    auto rep = ladder(6);
    std::mt19937_64 g(mix_seed(43, "gauge-shift"));
    Operator h = random_hermitian(rep, g, 1.5);
    auto schedule = HamiltonianSchedule::constant(h);
    auto deltas = geometric_deltas(0.02, 5);

    double alpha = 0.37;
    auto plain = time_displacement(schedule, 0.0, deltas);
    auto gauged = time_displacement(schedule, 0.0, deltas, PhaseGauge::constant_rate(alpha));
    Matrix shift = gauged.op.matrix() - plain.op.matrix();
    CHECK(max_abs(shift - Complex(0, alpha) * Matrix::Identity(6, 6)) <= 1e-9);
}

TEST_CASE("displacement operators are anti-Hermitian") {
    auto rep = ladder(16);
    std::mt19937_64 g(mix_seed(47, "anti-hermitian"));
    Operator h = random_hermitian(rep, g, 3.0);

    Matrix d = Complex(0, -1.0 / rep->hbar()) * h.matrix();
    CHECK(check_anti_hermitian(Operator(rep, d), 1e-14).passed);

    auto extrapolated = time_displacement(HamiltonianSchedule::constant(h), 0.0,
                                          geometric_deltas(0.02, 5));
    CHECK(check_anti_hermitian(extrapolated.op, 1e-8).passed);

    Matrix sym = Matrix::Identity(16, 16);
    CHECK_FALSE(check_anti_hermitian(Operator(rep, sym), 1e-8).passed);
}

TEST_CASE("heisenberg transport") {
    auto rep = ladder(2);
    auto h = HamiltonianSchedule::constant(Complex(0.5, 0) * sigma_z(rep));

    // Identity commutes with everything.
    auto prop = propagate(h, 0.0, 0.8, Scheme::EigExp);
    CHECK(max_abs(heisenberg_transport(identity_operator(rep), prop).matrix() -
                  Matrix::Identity(2, 2)) <= 1e-14);

    // A constant Hamiltonian commutes with its own propagator.
    Operator hop = Complex(0.5, 0) * sigma_z(rep);
    CHECK(max_abs(heisenberg_transport(hop, prop).matrix() - hop.matrix()) <= 1e-10);

    // Quarter-period rotation takes sigma_x to sigma_y: T sx T+ =
    // cos(theta) sx + sin(theta) sy with theta = omega dt.
    auto quarter = propagate(h, 0.0, M_PI / 2, Scheme::EigExp);
    Matrix rotated = heisenberg_transport(sigma_x(rep), quarter).matrix();
    CHECK(max_abs(rotated - sigma_y(rep).matrix()) <= 1e-12);

    // Non-unitary propagators are rejected.
    Propagator broken = prop;
    broken.op = Complex(1.1, 0) * broken.op;
    CHECK_THROWS_AS(heisenberg_transport(sigma_x(rep), broken), NonUnitaryPropagator);
}

TEST_CASE("transport preserves scalar products and ignores gauge") {
    auto rep = ladder(24);
    std::mt19937_64 g(mix_seed(53, "norm-conservation"));
    Operator h = random_hermitian(rep, g, 5.0);
    auto schedule = HamiltonianSchedule::constant(h);
    auto prop = propagate(schedule, 0.0, 0.9, Scheme::EigExp);

    for (int round = 0; round < 10; ++round) {
        Ket phi = random_ket(rep, g);
        Ket psi = random_ket(rep, g);
        Complex before = phi.vector().dot(psi.vector());
        Complex after = (prop.op.matrix() * phi.vector()).dot(prop.op.matrix() * psi.vector());
        CHECK(std::abs(after - before) <= 1e-9);
    }

    // A global phase on T cancels in T S T+.
    auto gauged = apply_gauge(prop, PhaseGauge::constant_rate(0.71));
    Operator s = random_hermitian(rep, g, 1.0);
    Ket probe = random_ket(rep, g);
    Complex a = expectation(probe, heisenberg_transport(s, prop));
    Complex b = expectation(probe, heisenberg_transport(s, gauged));
    CHECK(std::abs(a - b) <= 1e-10);
}

TEST_CASE("propagator composition for constant schedules") {
    auto rep = ladder(24);
    std::mt19937_64 g(mix_seed(59, "composition"));
    auto schedule = HamiltonianSchedule::constant(random_hermitian(rep, g, 4.0));
    Matrix t01 = propagate(schedule, 0.0, 0.4, Scheme::EigExp).op.matrix();
    Matrix t12 = propagate(schedule, 0.4, 1.1, Scheme::EigExp).op.matrix();
    Matrix t02 = propagate(schedule, 0.0, 1.1, Scheme::EigExp).op.matrix();
    CHECK(max_abs(t12 * t01 - t02) <= 1e-9);
}

TEST_CASE("heisenberg rate matches the displacement commutator") {
    auto deltas = geometric_deltas(0.05, 4);

    // S = H: both sides vanish.
    auto rep2 = ladder(2);
    Operator h2 = Complex(0.5, 0) * sigma_z(rep2);
    auto schedule2 = HamiltonianSchedule::constant(h2);
    auto self_rate = check_heisenberg_rate(h2, schedule2, 0.0, deltas, 1e-9);
    CHECK(self_rate.passed);
    CHECK(max_abs(self_rate.transported_rate) <= 1e-9);

    // S = sigma_x rotating under (1/2) sigma_z: rate is sigma_y.
    auto pauli_rate = check_heisenberg_rate(sigma_x(rep2), schedule2, 0.0, deltas, 1e-8);
    CHECK(pauli_rate.passed);
    CHECK(max_abs(pauli_rate.transported_rate - sigma_y(rep2).matrix()) <= 1e-8);

    // S = Q under kinetic H = P^2/2m: the transported rate is -P/m on the
    // interior block ([Q, P^2] = 2 i hbar P in the truncated algebra).
    auto rep = ladder(64);
    auto s = PhaseSpace::create(1, false, false, {"m"});
    ParamValues params{{"m", 1.0}};
    Operator kinetic = quantize(parse_expr("p1^2/(2*m)", s), rep, params);
    auto rate = check_heisenberg_rate(position_operator(rep),
                                      HamiltonianSchedule::constant(kinetic), 0.0,
                                      geometric_deltas(0.004, 5), 1e-7);
    CHECK(rate.passed);
    auto [lo, hi] = rep->interior_range(1);
    Matrix expected = (-1.0) * rep->momentum();
    CHECK(max_abs((rate.transported_rate - expected).block(lo, lo, hi - lo, hi - lo)) <=
          1e-6);
}

TEST_CASE("hamiltonian reconstruction round trip") {
    auto rep = ladder(32);
    std::mt19937_64 g(mix_seed(61, "reconstruction"));
    Operator h = random_hermitian(rep, g, 2.0);
    auto schedule = HamiltonianSchedule::constant(h);
    auto deltas = geometric_deltas(0.04, 5);
    auto family = [&](double dt) { return propagate(schedule, 0.0, dt, Scheme::EigExp).op; };

    auto report = reconstruct_hamiltonian(family, 0.0, deltas, rep->hbar(),
                                          PhaseGauge::trivial(), h);
    REQUIRE(report.deviation.has_value());
    CHECK(*report.deviation <= 1e-7);
    CHECK(std::abs(report.trace_offset) <= 1e-7);

    // A gauge-shifted family recovers H - hbar alpha 1.
    double alpha = 0.23;
    auto shifted_family = [&](double dt) {
        return Complex(std::cos(alpha * dt), std::sin(alpha * dt)) * family(dt);
    };
    Operator shifted_ref =
        h - Complex(rep->hbar() * alpha, 0) * identity_operator(rep);
    auto shifted = reconstruct_hamiltonian(shifted_family, 0.0, deltas, rep->hbar(),
                                           PhaseGauge::trivial(), shifted_ref);
    REQUIRE(shifted.deviation.has_value());
    CHECK(*shifted.deviation <= 1e-7);

    // Against the unshifted reference the trace alignment absorbs the offset.
    auto absorbed = reconstruct_hamiltonian(shifted_family, 0.0, deltas, rep->hbar(),
                                            PhaseGauge::trivial(), h);
    REQUIRE(absorbed.deviation.has_value());
    CHECK(*absorbed.deviation <= 1e-7);
    CHECK(absorbed.trace_offset == doctest::Approx(-rep->hbar() * alpha).epsilon(1e-4));

    // H = 0 family reconstructs zero.
    auto zero_schedule = HamiltonianSchedule::constant(Operator(rep, Matrix::Zero(32, 32)));
    auto zero_family = [&](double dt) {
        return propagate(zero_schedule, 0.0, dt, Scheme::EigExp).op;
    };
    auto zero = reconstruct_hamiltonian(zero_family, 0.0, deltas, rep->hbar());
    CHECK(max_abs(zero.h_recovered->matrix()) <= 1e-12);
    CHECK_FALSE(zero.deviation.has_value());
}

TEST_CASE("equation-of-motion residual of sampled trajectories") {
    auto rep = ladder(16);
    std::mt19937_64 g(mix_seed(67, "residual"));
    Operator h = random_hermitian(rep, g, 3.0);
    auto schedule = HamiltonianSchedule::constant(h);

    // Exact eigenstate: psi(t) = e^{-i E0 t} phi0.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
    Ket phi0(rep, solver.eigenvectors().col(0));
    auto trajectory = sample_evolution(schedule, phi0, 0.0, 0.2, 201);
    CHECK(schrodinger_residual(trajectory, schedule, rep->hbar()) <= 1e-8);

    // Frozen state: residual equals ||H phi|| / ||phi||.
    Ket frozen = random_ket(rep, g);
    std::vector<std::pair<double, Ket>> still;
    for (int j = 0; j < 9; ++j) still.emplace_back(0.01 * j, frozen);
    double expected = (h.matrix() * frozen.vector()).norm() / frozen.vector().norm();
    CHECK(schrodinger_residual(still, schedule, rep->hbar()) ==
          doctest::Approx(expected).epsilon(1e-12));

    // Halving the sampling step gains about four orders: measured order >= 3.5.
    Ket mixed = random_ket(rep, g);
    auto res_of = [&](int samples) {
        auto traj = sample_evolution(schedule, mixed, 0.0, 0.8, samples);
        return schrodinger_residual(traj, schedule, rep->hbar());
    };
    double r1 = res_of(101);  // step 8e-3
    double r2 = res_of(201);  // step 4e-3
    CHECK(std::log2(r1 / r2) >= 3.5);

    // Input validation.
    CHECK_THROWS_AS(schrodinger_residual({still.begin(), still.begin() + 4}, schedule,
                                         rep->hbar()),
                    TooFewSamples);
    auto skewed = still;
    skewed[3].first += 1e-4;
    CHECK_THROWS_AS(schrodinger_residual(skewed, schedule, rep->hbar()), NonuniformGrid);
}
