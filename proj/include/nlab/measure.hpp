#ifndef NLAB_MEASURE_HPP
#define NLAB_MEASURE_HPP

#include <functional>
#include <vector>

#include "nlab/entangle.hpp"
#include "nlab/hilbert.hpp"
#include "nlab/rng.hpp"

namespace nlab::measure {

using hilbert::Operator;
using hilbert::SpectralDecomposition;
using hilbert::StateVector;

// Distinct outcomes are separated by clustering eigenvalues closer than this.
inline constexpr double kEigenvalueClusterTol = 1e-9;

struct Outcome {
    double eigenvalue;
    double probability;
};

// Born probabilities grouped by distinct eigenvalue.
std::vector<Outcome> born_distribution(const StateVector& state, const Operator& op);
std::vector<Outcome> born_distribution(const StateVector& state,
                                       const SpectralDecomposition& spectral);

struct MeasurementRecord {
    double eigenvalue;
    double probability;
    StateVector post_state;  // normalized eigenprojection of the input
};

MeasurementRecord measure_collapse(const StateVector& state, const Operator& op, SeededRng& rng);
// Precomputed-spectral overload for tight trial loops.
MeasurementRecord measure_collapse(const StateVector& state, const SpectralDecomposition& spectral,
                                   SeededRng& rng);

struct CorrelationTrialReport {
    long trials = 0;
    long matches = 0;
    bool all_matched() const { return matches == trials; }
};

// Per trial: measures the partner observable on system 2, then the given
// observable on system 1 of the collapsed state, and counts eigenvalue
// matches. The certainty contract requires a nondegenerate spectrum
// (DegenerateSpectrum otherwise).
CorrelationTrialReport perfect_correlation_trial(const entangle::MaximallyEntangledState& state,
                                                 const Operator& o, SeededRng& rng, long trials);

struct ConsistencyReport {
    long trials = 0;
    long matches = 0;
    double max_deviation = 0.0;
    bool consistent() const { return matches == trials; }
};

// Jointly measures a commuting family in a common eigenbasis, applies f to
// the outcome tuple, then measures f(A_1..A_n) (built by spectral calculus on
// the same basis) on the collapsed state and checks the results agree.
ConsistencyReport function_consistency_check(
    const StateVector& state, const std::vector<Operator>& ops,
    const std::function<double(const std::vector<double>&)>& f, SeededRng& rng, long trials);

}  // namespace nlab::measure

#endif
