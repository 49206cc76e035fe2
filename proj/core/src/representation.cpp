#include "qaxiom/representation.hpp"

#include <cmath>

namespace qaxiom {

namespace {

// Central first-derivative stencil weights for the positive offsets; the
// matrix is skew-symmetric by construction.
void fill_difference(Matrix& d, int n, double dq, int order, Boundary boundary) {
    struct Tap { int offset; double weight; };
    const Tap taps2[] = {{1, 1.0 / 2.0}};
    const Tap taps4[] = {{1, 8.0 / 12.0}, {2, -1.0 / 12.0}};
    const Tap* taps = order == 2 ? taps2 : taps4;
    int n_taps = order == 2 ? 1 : 2;

    d.setZero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n_taps; ++k) {
            double w = taps[k].weight / dq;
            int up = i + taps[k].offset;
            int dn = i - taps[k].offset;
            if (boundary == Boundary::Periodic) {
                d(i, (up % n + n) % n) += w;
                d(i, (dn % n + n) % n) -= w;
            } else {
                if (up < n) d(i, up) += w;
                if (dn >= 0) d(i, dn) -= w;
            }
        }
    }
}

} // namespace

RepPtr Representation::grid(const GridSpec& spec, double hbar,
                            std::optional<int> interior_margin) {
    if (spec.n_points < 3) throw InvalidSpec("grid needs n_points >= 3");
    if (!(spec.q_min < spec.q_max)) throw InvalidSpec("grid needs q_min < q_max");
    if (spec.fd_order != 2 && spec.fd_order != 4)
        throw InvalidSpec("fd_order must be 2 or 4");
    if (!(hbar > 0)) throw InvalidSpec("hbar must be positive");
    if (spec.fd_order == 4 && spec.n_points < 5)
        throw InvalidSpec("fd_order 4 needs n_points >= 5");

    auto rep = std::shared_ptr<Representation>(new Representation());
    rep->kind_ = RepKind::Grid;
    rep->grid_ = spec;
    rep->hbar_ = hbar;
    rep->interior_margin_ = interior_margin.value_or(spec.fd_order / 2);

    int n = spec.n_points;
    double dq = (spec.q_max - spec.q_min) / (n - 1);
    rep->points_.resize(n);
    for (int i = 0; i < n; ++i) rep->points_[i] = spec.q_min + i * dq;

    rep->q_ = rep->points_.cast<Complex>().asDiagonal();
    Matrix d;
    fill_difference(d, n, dq, spec.fd_order, spec.boundary);
    rep->p_ = Complex(0, -hbar) * d;
    return rep;
}

RepPtr Representation::ladder(const LadderSpec& spec, double hbar,
                              std::optional<int> interior_margin) {
    if (spec.dim < 2) throw InvalidSpec("ladder needs dim >= 2");
    if (!(spec.mass > 0)) throw InvalidSpec("mass must be positive");
    if (!(spec.omega > 0)) throw InvalidSpec("omega must be positive");
    if (!(hbar > 0)) throw InvalidSpec("hbar must be positive");

    auto rep = std::shared_ptr<Representation>(new Representation());
    rep->kind_ = RepKind::Ladder;
    rep->ladder_ = spec;
    rep->hbar_ = hbar;
    rep->interior_margin_ = interior_margin.value_or(1);

    int n = spec.dim;
    Matrix lower = Matrix::Zero(n, n); // annihilation: a|k> = sqrt(k)|k-1>
    for (int k = 1; k < n; ++k) lower(k - 1, k) = std::sqrt(static_cast<double>(k));
    Matrix raise = lower.adjoint();

    double qs = std::sqrt(hbar / (2.0 * spec.mass * spec.omega));
    double ps = std::sqrt(spec.mass * spec.omega * hbar / 2.0);
    rep->q_ = qs * (lower + raise);
    rep->p_ = Complex(0, 1) * ps * (raise - lower);
    return rep;
}

RepPtr build_representation(const GridSpec& spec, double hbar) {
    return Representation::grid(spec, hbar);
}

RepPtr build_representation(const LadderSpec& spec, double hbar) {
    return Representation::ladder(spec, hbar);
}

const Eigen::VectorXd& Representation::grid_points() const {
    if (kind_ != RepKind::Grid) throw InvalidSpec("not a grid representation");
    return points_;
}

std::pair<int, int> Representation::interior_range(int extra_margin) const {
    int lo = 0;
    int hi = dim();
    int margin = interior_margin_ + extra_margin;
    if (kind_ == RepKind::Grid) {
        lo = margin;
        hi -= margin;
    } else {
        hi -= margin; // only the top of a truncated ladder is contaminated
    }
    if (lo >= hi) throw InvalidSpec("interior margin leaves no interior block");
    return {lo, hi};
}

bool operator==(const Representation& a, const Representation& b) {
    if (a.kind_ != b.kind_ || a.hbar_ != b.hbar_ ||
        a.interior_margin_ != b.interior_margin_)
        return false;
    if (a.kind_ == RepKind::Grid) {
        return a.grid_.n_points == b.grid_.n_points && a.grid_.q_min == b.grid_.q_min &&
               a.grid_.q_max == b.grid_.q_max && a.grid_.boundary == b.grid_.boundary &&
               a.grid_.fd_order == b.grid_.fd_order;
    }
    return a.ladder_.dim == b.ladder_.dim && a.ladder_.mass == b.ladder_.mass &&
           a.ladder_.omega == b.ladder_.omega;
}

// ---------------------------------------------------------------------------

Operator::Operator(RepPtr rep, Matrix m) : rep_(std::move(rep)), m_(std::move(m)) {
    if (!rep_) throw InvalidSpec("operator needs a representation");
    if (m_.rows() != m_.cols() || m_.rows() != rep_->dim())
        throw InvalidSpec("operator dimension does not match its representation");
}

Operator operator+(const Operator& a, const Operator& b) {
    if (!same_rep(a.rep_, b.rep_)) throw MismatchedRep();
    return Operator(a.rep_, a.m_ + b.m_);
}

Operator operator-(const Operator& a, const Operator& b) {
    if (!same_rep(a.rep_, b.rep_)) throw MismatchedRep();
    return Operator(a.rep_, a.m_ - b.m_);
}

Operator operator*(const Operator& a, const Operator& b) {
    if (!same_rep(a.rep_, b.rep_)) throw MismatchedRep();
    return Operator(a.rep_, a.m_ * b.m_);
}

Operator operator*(Complex c, const Operator& a) { return Operator(a.rep_, c * a.m_); }

Ket::Ket(RepPtr rep, Vector v) : rep_(std::move(rep)), v_(std::move(v)) {
    if (!rep_) throw InvalidSpec("ket needs a representation");
    if (v_.size() != rep_->dim())
        throw InvalidSpec("ket dimension does not match its representation");
}

Operator commutator(const Operator& a, const Operator& b) {
    if (!same_rep(a.rep(), b.rep())) throw MismatchedRep();
    return Operator(a.rep(), a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

Complex expectation(const Ket& psi, const Operator& a) {
    if (!same_rep(psi.rep(), a.rep())) throw MismatchedRep();
    double n2 = psi.vector().squaredNorm();
    if (n2 == 0.0) throw ZeroKet();
    Complex raw = psi.vector().dot(a.matrix() * psi.vector());
    return raw / n2;
}

Operator identity_operator(const RepPtr& rep) {
    return Operator(rep, Matrix::Identity(rep->dim(), rep->dim()));
}

Operator position_operator(const RepPtr& rep) { return Operator(rep, rep->position()); }

Operator momentum_operator(const RepPtr& rep) { return Operator(rep, rep->momentum()); }

Ket apply(const Operator& a, const Ket& psi) {
    if (!same_rep(a.rep(), psi.rep())) throw MismatchedRep();
    return Ket(psi.rep(), a.matrix() * psi.vector());
}

Ket gaussian_ket(const RepPtr& rep, double center, double sigma) {
    const auto& pts = rep->grid_points();
    Vector v(pts.size());
    for (int i = 0; i < pts.size(); ++i) {
        double x = (pts[i] - center) / sigma;
        v[i] = std::exp(-0.5 * x * x);
    }
    return Ket(rep, v);
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

double hermiticity_defect(const Matrix& m) {
    return max_abs(m - m.adjoint().eval());
}

} // namespace qaxiom
