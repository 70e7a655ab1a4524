#include "nlab/entangle.hpp"

#include <cmath>
#include <utility>

namespace nlab::entangle {

AntiLinearMap::AntiLinearMap(Basis domain, Basis image)
    : domain_(std::move(domain)), image_(std::move(image)) {
    if (domain_.dim() != image_.dim())
        throw DimMismatch("AntiLinearMap: domain and image dimensions differ");
}

Eigen::VectorXcd AntiLinearMap::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != dim()) throw DimMismatch("AntiLinearMap::apply: dimension mismatch");
    const Eigen::VectorXcd coeffs = domain_.vectors().adjoint() * v;
    return image_.vectors() * coeffs.conjugate();
}

Eigen::VectorXcd AntiLinearMap::apply_inverse(const Eigen::VectorXcd& v) const {
    if (v.size() != dim()) throw DimMismatch("AntiLinearMap::apply_inverse: dimension mismatch");
    const Eigen::VectorXcd coeffs = image_.vectors().adjoint() * v;
    return domain_.vectors() * coeffs.conjugate();
}

MaximallyEntangledState::MaximallyEntangledState(AntiLinearMap u, StateVector joint)
    : u_(std::move(u)), joint_(std::move(joint)) {
    if (joint_.dim() != u_.dim() * u_.dim())
        throw DimMismatch("MaximallyEntangledState: joint vector is not N^2-dimensional");
}

namespace {

// Joint vector (1/sqrt(N)) sum_n psi_n (x) phi_n with psi on the slow index.
StateVector joint_from_bases(const Basis& phi, const Basis& psi) {
    const Eigen::Index n = phi.dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n * n);
    for (Eigen::Index term = 0; term < n; ++term) {
        const Eigen::VectorXcd p = psi.vector(term);
        const Eigen::VectorXcd q = phi.vector(term);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) out(i * n + j) += scale * p(i) * q(j);
    }
    return StateVector(std::move(out));
}

}  // namespace

MaximallyEntangledState build_from_bases(const Basis& phi, const Basis& psi) {
    if (phi.dim() != psi.dim()) throw DimMismatch("build_from_bases: dimension mismatch");
    AntiLinearMap u(phi, psi);
    StateVector joint = joint_from_bases(phi, psi);
    return MaximallyEntangledState(std::move(u), std::move(joint));
}

MaximallyEntangledState singlet() {
    Eigen::MatrixXcd phi = Eigen::MatrixXcd::Identity(2, 2);
    Eigen::MatrixXcd psi(2, 2);
    psi << 0, 1,
          -1, 0;  // psi_1 = -|down>, psi_2 = |up>
    return build_from_bases(Basis(std::move(phi)), Basis(std::move(psi)));
}

StateVector represent_in_basis(const MaximallyEntangledState& state, const Basis& chi) {
    if (chi.dim() != state.subsystem_dim())
        throw DimMismatch("represent_in_basis: dimension mismatch");
    const Eigen::Index n = chi.dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n * n);
    for (Eigen::Index term = 0; term < n; ++term) {
        const Eigen::VectorXcd q = chi.vector(term);
        const Eigen::VectorXcd p = state.pairing().apply(q);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) out(i * n + j) += scale * p(i) * q(j);
    }
    return StateVector(std::move(out));
}

Operator partner_operator(const MaximallyEntangledState& state, const Operator& o) {
    if (o.dim() != state.subsystem_dim()) throw DimMismatch("partner_operator: dimension mismatch");
    if (!o.is_self_adjoint(hilbert::kSolverTol))
        throw NotSelfAdjoint("partner_operator: operator is not self-adjoint");
    const Eigen::Index n = o.dim();
    const auto& u = state.pairing();
    const Eigen::MatrixXcd om = o.dense_entries();

    // Columnwise U O U^{-1} on the standard basis.
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
        e(j) = 1.0;
        out.col(j) = u.apply(om * u.apply_inverse(e));
    }

    // Cross-check: in the stored bases the partner matrix is the entrywise
    // conjugate, <psi_m| O~ |psi_n> = conj(<phi_m| O |phi_n>).
    const Eigen::MatrixXcd o_phi =
        u.domain_basis().vectors().adjoint() * om * u.domain_basis().vectors();
    const Eigen::MatrixXcd alt =
        u.image_basis().vectors() * o_phi.conjugate() * u.image_basis().vectors().adjoint();
    if ((out - alt).cwiseAbs().maxCoeff() >= hilbert::kAlgebraTol)
        throw Error("partner_operator: construction routes disagree");

    return Operator::dense(std::move(out));
}

double correlation_residual(const MaximallyEntangledState& state, const Operator& o,
                            const Operator& o_tilde) {
    const Eigen::Index n = state.subsystem_dim();
    if (o.dim() != n || o_tilde.dim() != n)
        throw DimMismatch("correlation_residual: dimension mismatch");
    // Reshape the joint vector to a matrix with the system-2 slot as rows;
    // o acts on system 1 (columns), o_tilde on system 2 (rows).
    Eigen::MatrixXcd psi_mat(n, n);
    const auto& amps = state.joint_state().amplitudes();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) psi_mat(i, j) = amps(i * n + j);
    const Eigen::MatrixXcd diff =
        psi_mat * o.dense_entries().transpose() - o_tilde.dense_entries() * psi_mat;
    return diff.norm();
}

MaximallyEntangledState product_state(const MaximallyEntangledState& a,
                                      const MaximallyEntangledState& b) {
    const Eigen::Index na = a.subsystem_dim();
    const Eigen::Index nb = b.subsystem_dim();
    auto kron_basis = [](const Basis& x, const Basis& y) {
        const Eigen::Index nx = x.dim();
        const Eigen::Index ny = y.dim();
        Eigen::MatrixXcd cols(nx * ny, nx * ny);
        for (Eigen::Index m = 0; m < nx; ++m)
            for (Eigen::Index p = 0; p < ny; ++p) {
                const Eigen::VectorXcd vx = x.vector(m);
                const Eigen::VectorXcd vy = y.vector(p);
                for (Eigen::Index i = 0; i < nx; ++i)
                    for (Eigen::Index j = 0; j < ny; ++j)
                        cols(i * ny + j, m * ny + p) = vx(i) * vy(j);
            }
        return Basis(std::move(cols));
    };
    Basis phi = kron_basis(a.pairing().domain_basis(), b.pairing().domain_basis());
    Basis psi = kron_basis(a.pairing().image_basis(), b.pairing().image_basis());
    MaximallyEntangledState out = build_from_bases(phi, psi);

    // The joint vector must match the factor-reordered product of the two
    // joint vectors: index (i1 i2)(j1 j2) <- (i1 j1)(i2 j2).
    const auto& ja = a.joint_state().amplitudes();
    const auto& jb = b.joint_state().amplitudes();
    const auto& jo = out.joint_state().amplitudes();
    double dev = 0.0;
    for (Eigen::Index i1 = 0; i1 < na; ++i1)
        for (Eigen::Index i2 = 0; i2 < nb; ++i2)
            for (Eigen::Index j1 = 0; j1 < na; ++j1)
                for (Eigen::Index j2 = 0; j2 < nb; ++j2) {
                    const Eigen::Index row = i1 * nb + i2;
                    const Eigen::Index col = j1 * nb + j2;
                    const Complex expect = ja(i1 * na + j1) * jb(i2 * nb + j2);
                    dev = std::max(dev, std::abs(jo(row * na * nb + col) - expect));
                }
    if (dev >= hilbert::kAlgebraTol)
        throw Error("product_state: factor reordering deviates from index arithmetic");
    return out;
}

Eigen::VectorXd schmidt_coefficients(const StateVector& joint, Eigen::Index dim_slow,
                                     Eigen::Index dim_fast) {
    if (joint.dim() != dim_slow * dim_fast)
        throw DimMismatch("schmidt_coefficients: reshape mismatch");
    Eigen::MatrixXcd m(dim_slow, dim_fast);
    for (Eigen::Index i = 0; i < dim_slow; ++i)
        for (Eigen::Index j = 0; j < dim_fast; ++j) m(i, j) = joint[i * dim_fast + j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
}

Operator op_on_system1(const Operator& o) {
    return hilbert::tensor_op(Operator::identity(o.dim()), o);
}

Operator op_on_system2(const Operator& o) {
    return hilbert::tensor_op(o, Operator::identity(o.dim()));
}

}  // namespace nlab::entangle
