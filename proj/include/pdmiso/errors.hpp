#ifndef PDMISO_ERRORS_HPP
#define PDMISO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pdmiso {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DomainError : Error {
    using Error::Error;
};

// --- special functions ---
struct NonConvergence : Error {
    using Error::Error;
};
struct PoleAtC : Error {
    using Error::Error;
};
struct PoleAtNonPositiveInteger : Error {
    using Error::Error;
};

// --- model ---
struct UnphysicalParameters : Error {
    using Error::Error;
};
struct SecondBranchPole : Error {
    using Error::Error;
};
struct MuAboveGround : Error {
    using Error::Error;
};
struct NonRealPotential : Error {
    using Error::Error;
};

// --- intertwining ---
struct SeedHasNode : Error {
    using Error::Error;
};
struct WronskianNode : Error {
    using Error::Error;
};
struct NonRealEta : Error {
    using Error::Error;
};
struct DegenerateFactorization : Error {  // equal factorization energies
    using Error::Error;
};
struct InconclusiveNormalizability : Error {
    using Error::Error;
};
struct NonMonotoneZ : Error {
    using Error::Error;
};

// --- discretization / spectra ---
struct NonPositiveMass : Error {
    using Error::Error;
};
struct NonFiniteSample : Error {
    using Error::Error;
};
struct BoxTooLarge : Error {
    using Error::Error;
};
struct UnconvergedInput : Error {
    using Error::Error;
};

}  // namespace pdmiso

#endif
