// Declaration of symbols available to expressions: canonical pairs
// q1..qM / p1..pM, optionally the time symbol t and the energy symbol E,
// plus named real parameters.
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qaxiom/errors.hpp"

namespace qaxiom {

class PhaseSpace;
using SpacePtr = std::shared_ptr<const PhaseSpace>;

enum class SymbolKind { Position, Momentum, Time, Energy, Parameter };

class PhaseSpace {
public:
    static SpacePtr create(int dof, bool has_time = false, bool has_energy = false,
                           std::vector<std::string> parameters = {});

    int dof() const { return dof_; }
    bool has_time() const { return has_time_; }
    bool has_energy() const { return has_energy_; }
    const std::vector<std::string>& parameters() const { return parameters_; }

    int symbol_count() const { return static_cast<int>(names_.size()); }
    const std::string& name_of(int id) const { return names_[id]; }
    std::optional<int> find(const std::string& name) const;
    int require(const std::string& name) const; // throws UnknownSymbol

    SymbolKind kind_of(int id) const;
    // Canonical index r in 1..M for position/momentum symbols.
    int canonical_index(int id) const;
    int position_id(int r) const { return r - 1; }
    int momentum_id(int r) const { return dof_ + r - 1; }
    int time_id() const { return time_id_; }     // -1 when absent
    int energy_id() const { return energy_id_; } // -1 when absent

    bool is_canonical(int id) const {
        SymbolKind k = kind_of(id);
        return k == SymbolKind::Position || k == SymbolKind::Momentum;
    }

    // Same space for the purpose of combining expressions: identical layout.
    friend bool operator==(const PhaseSpace& a, const PhaseSpace& b) {
        return a.dof_ == b.dof_ && a.has_time_ == b.has_time_ &&
               a.has_energy_ == b.has_energy_ && a.parameters_ == b.parameters_;
    }

    // Same canonical pairs and parameters, with t and E both available;
    // q~_0 = t and p~_0 = -E then take part in Poisson brackets.
    SpacePtr extended() const;

private:
    PhaseSpace(int dof, bool has_time, bool has_energy, std::vector<std::string> parameters);

    int dof_;
    bool has_time_;
    bool has_energy_;
    std::vector<std::string> parameters_;
    std::vector<std::string> names_; // q1..qM, p1..pM, [t], [E], parameters
    int time_id_ = -1;
    int energy_id_ = -1;
};

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

} // namespace qaxiom
