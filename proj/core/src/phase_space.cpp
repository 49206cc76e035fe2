#include "qaxiom/phase_space.hpp"

#include <set>
#include <stdexcept>

namespace qaxiom {

namespace {
const std::set<std::string> kReservedFunctions = {"sin", "cos", "exp"};
}

PhaseSpace::PhaseSpace(int dof, bool has_time, bool has_energy,
                       std::vector<std::string> parameters)
    : dof_(dof), has_time_(has_time), has_energy_(has_energy),
      parameters_(std::move(parameters)) {
    names_.reserve(2 * dof_ + 2 + parameters_.size());
    for (int r = 1; r <= dof_; ++r) names_.push_back("q" + std::to_string(r));
    for (int r = 1; r <= dof_; ++r) names_.push_back("p" + std::to_string(r));
    if (has_time_) {
        time_id_ = static_cast<int>(names_.size());
        names_.push_back("t");
    }
    if (has_energy_) {
        energy_id_ = static_cast<int>(names_.size());
        names_.push_back("E");
    }
    for (const auto& p : parameters_) names_.push_back(p);
}

SpacePtr PhaseSpace::create(int dof, bool has_time, bool has_energy,
                            std::vector<std::string> parameters) {
    if (dof < 1) throw std::invalid_argument("phase space needs dof >= 1");
    for (const auto& p : parameters) {
        if (p.empty()) throw std::invalid_argument("empty parameter name");
        if (kReservedFunctions.count(p))
            throw std::invalid_argument("parameter name '" + p + "' is a reserved function");
        if (p == "t" || p == "E")
            throw std::invalid_argument("'" + p + "' is reserved for the conjugate pair (t, -E)");
    }
    auto space = SpacePtr(new PhaseSpace(dof, has_time, has_energy, std::move(parameters)));
    std::set<std::string> seen(space->names_.begin(), space->names_.end());
    if (seen.size() != space->names_.size())
        throw std::invalid_argument("phase-space symbol names are not pairwise distinct");
    return space;
}

std::optional<int> PhaseSpace::find(const std::string& name) const {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

int PhaseSpace::require(const std::string& name) const {
    auto id = find(name);
    if (!id) throw UnknownSymbol(name);
    return *id;
}

SymbolKind PhaseSpace::kind_of(int id) const {
    if (id < dof_) return SymbolKind::Position;
    if (id < 2 * dof_) return SymbolKind::Momentum;
    if (id == time_id_) return SymbolKind::Time;
    if (id == energy_id_) return SymbolKind::Energy;
    return SymbolKind::Parameter;
}

int PhaseSpace::canonical_index(int id) const {
    if (id < dof_) return id + 1;
    if (id < 2 * dof_) return id - dof_ + 1;
    throw std::logic_error("canonical_index of a non-canonical symbol");
}

SpacePtr PhaseSpace::extended() const {
    return create(dof_, true, true, parameters_);
}

} // namespace qaxiom
