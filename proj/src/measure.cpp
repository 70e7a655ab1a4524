#include "nlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlab::measure {

namespace {

struct Cluster {
    double eigenvalue;      // representative (mean of members)
    Eigen::Index first;     // column range [first, last) in the decomposition
    Eigen::Index last;
};

std::vector<Cluster> cluster_eigenvalues(const Eigen::VectorXd& vals) {
    std::vector<Cluster> clusters;
    Eigen::Index i = 0;
    while (i < vals.size()) {
        Eigen::Index j = i + 1;
        while (j < vals.size() && vals(j) - vals(j - 1) < kEigenvalueClusterTol) ++j;
        double sum = 0.0;
        for (Eigen::Index k = i; k < j; ++k) sum += vals(k);
        clusters.push_back({sum / static_cast<double>(j - i), i, j});
        i = j;
    }
    return clusters;
}

// Squared projection weight of `state` onto cluster columns.
double cluster_weight(const StateVector& state, const SpectralDecomposition& spectral,
                      const Cluster& c) {
    double w = 0.0;
    for (Eigen::Index k = c.first; k < c.last; ++k) {
        const hilbert::Complex amp = spectral.eigenvectors.col(k).dot(state.amplitudes());
        w += std::norm(amp);
    }
    return w;
}

StateVector project_onto_cluster(const StateVector& state, const SpectralDecomposition& spectral,
                                 const Cluster& c) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(state.dim());
    for (Eigen::Index k = c.first; k < c.last; ++k) {
        const hilbert::Complex amp = spectral.eigenvectors.col(k).dot(state.amplitudes());
        out += amp * spectral.eigenvectors.col(k);
    }
    return StateVector(std::move(out)).normalized();
}

}  // namespace

std::vector<Outcome> born_distribution(const StateVector& state,
                                       const SpectralDecomposition& spectral) {
    if (state.dim() != spectral.eigenvalues.size())
        throw DimMismatch("born_distribution: dimension mismatch");
    std::vector<Outcome> outcomes;
    for (const auto& c : cluster_eigenvalues(spectral.eigenvalues)) {
        outcomes.push_back({c.eigenvalue, cluster_weight(state, spectral, c)});
    }
    return outcomes;
}

std::vector<Outcome> born_distribution(const StateVector& state, const Operator& op) {
    if (state.dim() != op.dim()) throw DimMismatch("born_distribution: dimension mismatch");
    return born_distribution(state, hilbert::eigendecompose(op));
}

MeasurementRecord measure_collapse(const StateVector& state, const SpectralDecomposition& spectral,
                                   SeededRng& rng) {
    if (state.dim() != spectral.eigenvalues.size())
        throw DimMismatch("measure_collapse: dimension mismatch");
    const auto clusters = cluster_eigenvalues(spectral.eigenvalues);
    std::vector<double> weights(clusters.size());
    for (std::size_t i = 0; i < clusters.size(); ++i)
        weights[i] = cluster_weight(state, spectral, clusters[i]);

    const double u = rng.uniform();
    double cum = 0.0;
    std::size_t pick = clusters.size();
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        cum += weights[i];
        if (u < cum) {
            pick = i;
            break;
        }
    }
    if (pick == clusters.size()) {
        // Rounding left u beyond the cumulative sum; take the last outcome
        // that carries weight.
        for (std::size_t i = clusters.size(); i-- > 0;) {
            if (weights[i] > 0.0) {
                pick = i;
                break;
            }
        }
        if (pick == clusters.size()) throw Error("measure_collapse: state has no overlap");
    }
    return {clusters[pick].eigenvalue, weights[pick],
            project_onto_cluster(state, spectral, clusters[pick])};
}

MeasurementRecord measure_collapse(const StateVector& state, const Operator& op, SeededRng& rng) {
    if (state.dim() != op.dim()) throw DimMismatch("measure_collapse: dimension mismatch");
    return measure_collapse(state, hilbert::eigendecompose(op), rng);
}

CorrelationTrialReport perfect_correlation_trial(const entangle::MaximallyEntangledState& state,
                                                 const Operator& o, SeededRng& rng, long trials) {
    const auto spec_o = hilbert::eigendecompose(o);
    for (Eigen::Index i = 1; i < spec_o.eigenvalues.size(); ++i) {
        if (spec_o.eigenvalues(i) - spec_o.eigenvalues(i - 1) < kEigenvalueClusterTol)
            throw DegenerateSpectrum("perfect_correlation_trial: spectrum is degenerate");
    }
    const Operator o_tilde = entangle::partner_operator(state, o);

    // Joint-space spectral data computed once; trials only sample and project.
    const auto spec_sys2 = hilbert::eigendecompose(entangle::op_on_system2(o_tilde));
    const auto spec_sys1 = hilbert::eigendecompose(entangle::op_on_system1(o));

    auto nearest_index = [&](double value) {
        Eigen::Index best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < spec_o.eigenvalues.size(); ++i) {
            const double d = std::abs(spec_o.eigenvalues(i) - value);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        return best;
    };

    CorrelationTrialReport report;
    report.trials = trials;
    for (long t = 0; t < trials; ++t) {
        SeededRng trial_rng = rng.stream(static_cast<std::uint64_t>(t));
        const auto first = measure_collapse(state.joint_state(), spec_sys2, trial_rng);
        const auto second = measure_collapse(first.post_state, spec_sys1, trial_rng);
        if (nearest_index(first.eigenvalue) == nearest_index(second.eigenvalue)) ++report.matches;
    }
    return report;
}

ConsistencyReport function_consistency_check(
    const StateVector& state, const std::vector<Operator>& ops,
    const std::function<double(const std::vector<double>&)>& f, SeededRng& rng, long trials) {
    if (ops.empty()) throw Error("function_consistency_check: empty operator list");
    const Eigen::Index dim = ops.front().dim();
    for (const auto& op : ops) {
        if (op.dim() != dim) throw DimMismatch("function_consistency_check: dimension mismatch");
        if (!op.is_self_adjoint(hilbert::kSolverTol))
            throw NotSelfAdjoint("function_consistency_check: operator is not self-adjoint");
    }
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j) {
            if (hilbert::operator_norm(hilbert::commutator(ops[i], ops[j])) >= 1e-10)
                throw NotCommuting("function_consistency_check: operators do not commute");
        }

    // Common eigenbasis from a generic real linear combination.
    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& op : ops) combo += rng.uniform(1.0, 2.0) * op.dense_entries();
    const auto joint = hilbert::eigendecompose(Operator::dense(0.5 * (combo + combo.adjoint().eval())));

    // Outcome tuple carried by each joint eigenvector.
    std::vector<std::vector<double>> tuples(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k) {
        const Eigen::VectorXcd v = joint.eigenvectors.col(k);
        for (const auto& op : ops) {
            const double lambda = (v.dot(op.apply(v))).real();
            if ((op.apply(v) - lambda * v).norm() >= 1e-7)
                throw NotCommuting("function_consistency_check: no common eigenbasis found");
            tuples[static_cast<std::size_t>(k)].push_back(lambda);
        }
    }

    // B = f(A_1..A_n) by spectral calculus on the joint basis.
    Eigen::VectorXd b_vals(dim);
    for (Eigen::Index k = 0; k < dim; ++k) b_vals(k) = f(tuples[static_cast<std::size_t>(k)]);
    Eigen::MatrixXcd b_mat = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k)
        b_mat += b_vals(k) * (joint.eigenvectors.col(k) * joint.eigenvectors.col(k).adjoint());
    const auto spec_b = hilbert::eigendecompose(Operator::dense(std::move(b_mat)));

    // Group joint eigenvectors into simultaneous eigenspaces by tuple.
    std::vector<std::vector<Eigen::Index>> groups;
    std::vector<std::vector<double>> group_tuple;
    for (Eigen::Index k = 0; k < dim; ++k) {
        bool placed = false;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            bool same = true;
            for (std::size_t a = 0; a < ops.size(); ++a) {
                if (std::abs(group_tuple[g][a] - tuples[static_cast<std::size_t>(k)][a]) >=
                    kEigenvalueClusterTol) {
                    same = false;
                    break;
                }
            }
            if (same) {
                groups[g].push_back(k);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({k});
            group_tuple.push_back(tuples[static_cast<std::size_t>(k)]);
        }
    }

    ConsistencyReport report;
    report.trials = trials;
    for (long t = 0; t < trials; ++t) {
        SeededRng trial_rng = rng.stream(static_cast<std::uint64_t>(t));
        // Joint projective measurement over the groups.
        std::vector<double> weights(groups.size(), 0.0);
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (Eigen::Index k : groups[g])
                weights[g] += std::norm(joint.eigenvectors.col(k).dot(state.amplitudes()));
        const double u = trial_rng.uniform();
        double cum = 0.0;
        std::size_t pick = groups.size();
        for (std::size_t g = 0; g < groups.size(); ++g) {
            cum += weights[g];
            if (u < cum) {
                pick = g;
                break;
            }
        }
        if (pick == groups.size()) {
            for (std::size_t g = groups.size(); g-- > 0;) {
                if (weights[g] > 0.0) {
                    pick = g;
                    break;
                }
            }
        }
        Eigen::VectorXcd post = Eigen::VectorXcd::Zero(dim);
        for (Eigen::Index k : groups[pick])
            post += joint.eigenvectors.col(k).dot(state.amplitudes()) * joint.eigenvectors.col(k);
        const StateVector collapsed = StateVector(std::move(post)).normalized();

        const double f_of_outcomes = f(group_tuple[pick]);
        const auto b_measurement = measure_collapse(collapsed, spec_b, trial_rng);
        const double deviation = std::abs(b_measurement.eigenvalue - f_of_outcomes);
        report.max_deviation = std::max(report.max_deviation, deviation);
        if (deviation < 1e-7) ++report.matches;
    }
    return report;
}

}  // namespace nlab::measure
