#ifndef NLAB_ERRORS_HPP
#define NLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlab {

// Base class for all failure modes raised by the library. Each concrete
// type names the contract that was violated, so callers can catch narrowly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
    using Error::Error;
};

struct NotSelfAdjoint : Error {
    using Error::Error;
};

struct NotOrthonormal : Error {
    using Error::Error;
};

struct DegenerateSpectrum : Error {
    using Error::Error;
};

struct NotCommuting : Error {
    using Error::Error;
};

struct OffLattice : Error {
    using Error::Error;
};

struct TooLarge : Error {
    using Error::Error;
};

struct IncommensurateParams : Error {
    using Error::Error;
};

// Trajectory integration ran into a wave-function node; the step must be
// shrunk or the sample discarded.
struct NearNode : Error {
    using Error::Error;
};

struct StepUnderflow : Error {
    using Error::Error;
};

struct HorizonTooShort : Error {
    using Error::Error;
};

struct DegenerateInitial : Error {
    using Error::Error;
};

}  // namespace nlab

#endif
