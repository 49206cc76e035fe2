// Seeded randomized identity testing for expressions: two expressions are
// considered equal when they agree at every sampled point to a relative
// tolerance. This is the project's equality oracle; there is no canonical
// simplifier.
#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "qaxiom/expr.hpp"

namespace qaxiom {

struct SampleBox {
    double lo = -2.0;
    double hi = 2.0;
    // Per-symbol interval overrides, e.g. keep a mass parameter away from 0.
    std::map<std::string, std::pair<double, double>> overrides;

    std::pair<double, double> interval(const std::string& name) const {
        auto it = overrides.find(name);
        if (it != overrides.end()) return it->second;
        return {lo, hi};
    }
};

inline constexpr std::uint64_t kDefaultSamplingSeed = 12345;

struct IdentityOptions {
    int trials = 100;
    SampleBox box;
    double tol = 1e-9; // relative: |a-b| <= tol * (1 + |a|)
    std::uint64_t seed = kDefaultSamplingSeed;
};

struct IdentityResult {
    bool equal = false;
    double max_deviation = 0.0; // max over points of |a-b| / (1 + |a|)
};

IdentityResult check_identity(const Expr& a, const Expr& b,
                              const IdentityOptions& opts = {});

bool equal_numeric(const Expr& a, const Expr& b, const IdentityOptions& opts = {});

} // namespace qaxiom
