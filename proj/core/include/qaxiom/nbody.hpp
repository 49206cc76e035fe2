// Free many-particle bookkeeping: aggregate mass / center of mass / total
// momentum, the booster vector N = sum_k (p_k t - m_k r_k) = P t - M R, the
// orbital/internal angular-momentum split, and exact free flight.
#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <string>
#include <vector>

namespace qaxiom {

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend Vec3 operator/(Vec3 a, double s) { return {a.x / s, a.y / s, a.z / s}; }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct Particle {
    double mass = 1.0;
    Vec3 position;
    Vec3 momentum;
};

struct ParticleSystem {
    std::vector<Particle> particles;
    double time = 0.0;
};

struct Aggregate {
    double total_mass = 0.0;
    Vec3 center_of_mass;
    Vec3 total_momentum;
};

Aggregate aggregate(const ParticleSystem& s);

// N = P t - M R.
Vec3 booster(const ParticleSystem& s);
// The same vector as the literal per-particle sum sum_k (p_k t - m_k r_k);
// kept separate so the identity with booster() stays checkable.
Vec3 booster_sum(const ParticleSystem& s);

struct AngularMomentumSplit {
    Vec3 orbital;  // R x P
    Vec3 internal; // sum (r_k - R) x (p_k - (m_k/M) P)
};

AngularMomentumSplit angular_momentum_split(const ParticleSystem& s);
Vec3 total_angular_momentum(const ParticleSystem& s);

// Exact free flight: r += (p/m) dt, p unchanged, time += dt.
ParticleSystem free_evolve(const ParticleSystem& s, double dt);

// CSV form: first line "t,<value>", then the header
// "mass,rx,ry,rz,px,py,pz" and one row per particle.
ParticleSystem read_system_csv(std::istream& in);
void write_system_csv(std::ostream& os, const ParticleSystem& s);

} // namespace qaxiom
