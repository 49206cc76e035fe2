#include "qaxiom/nbody.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qaxiom {

namespace {

void require_nonempty(const ParticleSystem& s) {
    if (s.particles.empty()) throw std::invalid_argument("particle system is empty");
    for (const auto& p : s.particles)
        if (!(p.mass > 0)) throw std::invalid_argument("particle masses must be positive");
}

} // namespace

Aggregate aggregate(const ParticleSystem& s) {
    require_nonempty(s);
    Aggregate a;
    Vec3 weighted;
    for (const auto& p : s.particles) {
        a.total_mass += p.mass;
        weighted = weighted + p.mass * p.position;
        a.total_momentum = a.total_momentum + p.momentum;
    }
    a.center_of_mass = weighted / a.total_mass;
    return a;
}

Vec3 booster(const ParticleSystem& s) {
    Aggregate a = aggregate(s);
    return s.time * a.total_momentum - a.total_mass * a.center_of_mass;
}

Vec3 booster_sum(const ParticleSystem& s) {
    require_nonempty(s);
    Vec3 n;
    for (const auto& p : s.particles)
        n = n + (s.time * p.momentum - p.mass * p.position);
    return n;
}

AngularMomentumSplit angular_momentum_split(const ParticleSystem& s) {
    Aggregate a = aggregate(s);
    AngularMomentumSplit split;
    split.orbital = cross(a.center_of_mass, a.total_momentum);
    for (const auto& p : s.particles) {
        Vec3 rel_r = p.position - a.center_of_mass;
        Vec3 rel_p = p.momentum - (p.mass / a.total_mass) * a.total_momentum;
        split.internal = split.internal + cross(rel_r, rel_p);
    }
    return split;
}

Vec3 total_angular_momentum(const ParticleSystem& s) {
    require_nonempty(s);
    Vec3 l;
    for (const auto& p : s.particles) l = l + cross(p.position, p.momentum);
    return l;
}

ParticleSystem free_evolve(const ParticleSystem& s, double dt) {
    require_nonempty(s);
    if (!std::isfinite(dt)) throw std::invalid_argument("dt must be finite");
    ParticleSystem out = s;
    for (auto& p : out.particles)
        p.position = p.position + (dt / p.mass) * p.momentum;
    out.time += dt;
    return out;
}

// ---------------------------------------------------------------------------

ParticleSystem read_system_csv(std::istream& in) {
    ParticleSystem s;
    std::string line;

    if (!std::getline(in, line) || line.rfind("t,", 0) != 0)
        throw std::invalid_argument("expected time header line 't,<value>'");
    s.time = std::stod(line.substr(2));

    if (!std::getline(in, line) || line != "mass,rx,ry,rz,px,py,pz")
        throw std::invalid_argument("expected column header 'mass,rx,ry,rz,px,py,pz'");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        Particle p;
        char comma;
        row >> p.mass >> comma >> p.position.x >> comma >> p.position.y >> comma >>
            p.position.z >> comma >> p.momentum.x >> comma >> p.momentum.y >> comma >>
            p.momentum.z;
        if (!row) throw std::invalid_argument("malformed particle row: " + line);
        s.particles.push_back(p);
    }
    require_nonempty(s);
    return s;
}

void write_system_csv(std::ostream& os, const ParticleSystem& s) {
    char buf[32];
    auto emit = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    os << "t,";
    emit(s.time);
    os << "\nmass,rx,ry,rz,px,py,pz\n";
    for (const auto& p : s.particles) {
        emit(p.mass);
        for (double v : {p.position.x, p.position.y, p.position.z, p.momentum.x,
                         p.momentum.y, p.momentum.z}) {
            os << ',';
            emit(v);
        }
        os << '\n';
    }
}

} // namespace qaxiom
