#include "qaxiom/sampling.hpp"

#include <cmath>
#include <stdexcept>

#include "qaxiom/errors.hpp"
#include "qaxiom/rng.hpp"

namespace qaxiom {

IdentityResult check_identity(const Expr& a, const Expr& b, const IdentityOptions& opts) {
    if (!same_space(a.space(), b.space())) throw MismatchedSpace();
    if (opts.trials < 1) throw std::invalid_argument("identity test needs trials >= 1");

    const PhaseSpace& space = *a.space();
    std::mt19937_64 engine(opts.seed);
    std::vector<double> values(space.symbol_count());

    IdentityResult result;
    result.equal = true;
    for (int trial = 0; trial < opts.trials; ++trial) {
        // Every symbol of the space is drawn, in declaration order, so the
        // sample points depend only on the space and the seed.
        for (int id = 0; id < space.symbol_count(); ++id) {
            auto [lo, hi] = opts.box.interval(space.name_of(id));
            values[id] = uniform_in(engine, lo, hi);
        }
        double va = eval_dense(a, values);
        double vb = eval_dense(b, values);
        double dev = std::abs(va - vb) / (1.0 + std::abs(va));
        if (!(dev <= opts.tol)) result.equal = false;
        if (std::isnan(dev)) dev = INFINITY;
        result.max_deviation = std::max(result.max_deviation, dev);
    }
    return result;
}

bool equal_numeric(const Expr& a, const Expr& b, const IdentityOptions& opts) {
    return check_identity(a, b, opts).equal;
}

} // namespace qaxiom
