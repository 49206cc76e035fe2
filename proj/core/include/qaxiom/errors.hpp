// Exception hierarchy shared by all qaxiom components.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qaxiom {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- symbolic layer ---

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownSymbol : public Error {
public:
    explicit UnknownSymbol(const std::string& name)
        : Error("unknown symbol '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class UnboundSymbol : public Error {
public:
    explicit UnboundSymbol(const std::string& name)
        : Error("no value bound for symbol '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class MismatchedSpace : public Error {
public:
    MismatchedSpace() : Error("expressions belong to different phase spaces") {}
};

class EvalError : public Error {
public:
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

// --- matrix layer ---

class InvalidSpec : public Error {
public:
    explicit InvalidSpec(const std::string& msg) : Error(msg) {}
};

class UnsupportedExpression : public Error {
public:
    explicit UnsupportedExpression(const std::string& msg) : Error(msg) {}
};

class MismatchedRep : public Error {
public:
    MismatchedRep() : Error("operands carry different representations") {}
};

class ZeroKet : public Error {
public:
    ZeroKet() : Error("ket has zero norm") {}
};

class DegeneratePair : public Error {
public:
    explicit DegeneratePair(const std::string& msg) : Error(msg) {}
};

// --- evolution layer ---

class NonHermitianHamiltonian : public Error {
public:
    explicit NonHermitianHamiltonian(double deviation)
        : Error("Hamiltonian is not Hermitian (max |H - H^†| = " +
                std::to_string(deviation) + ")") {}
};

class InvalidInterval : public Error {
public:
    explicit InvalidInterval(const std::string& msg) : Error(msg) {}
};

class NonUnitaryPropagator : public Error {
public:
    explicit NonUnitaryPropagator(double deviation)
        : Error("propagator fails the unitarity precheck (deviation " +
                std::to_string(deviation) + ")") {}
};

class NonuniformGrid : public Error {
public:
    NonuniformGrid() : Error("trajectory time samples are not uniformly spaced") {}
};

class TooFewSamples : public Error {
public:
    explicit TooFewSamples(std::size_t n)
        : Error("need at least 5 time samples, got " + std::to_string(n)) {}
};

// --- classical layer ---

class NonfiniteState : public Error {
public:
    explicit NonfiniteState(double t)
        : Error("state became non-finite near t = " + std::to_string(t)) {}
};

class EContamination : public Error {
public:
    EContamination() : Error("Hamiltonian already references the energy symbol E") {}
};

// --- reporting layer ---

class UnknownSuite : public Error {
public:
    explicit UnknownSuite(const std::string& name)
        : Error("unknown suite '" + name + "'") {}
};

class InvalidConfig : public Error {
public:
    explicit InvalidConfig(const std::string& msg) : Error(msg) {}
};

} // namespace qaxiom
