#ifndef NLAB_ENTANGLE_HPP
#define NLAB_ENTANGLE_HPP

#include <Eigen/Dense>

#include "nlab/hilbert.hpp"

namespace nlab::entangle {

using hilbert::Basis;
using hilbert::Complex;
using hilbert::Operator;
using hilbert::StateVector;

// The basis-pairing map v = sum c_n phi_n  |->  sum conj(c_n) psi_n. Storing
// the defining basis pair keeps the anti-linearity structural instead of
// emulated through matrices.
class AntiLinearMap {
public:
    AntiLinearMap(Basis domain, Basis image);

    Eigen::Index dim() const { return domain_.dim(); }
    const Basis& domain_basis() const { return domain_; }
    const Basis& image_basis() const { return image_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    // sum d_n psi_n |-> sum conj(d_n) phi_n
    Eigen::VectorXcd apply_inverse(const Eigen::VectorXcd& v) const;

private:
    Basis domain_;
    Basis image_;
};

// A unit vector on H (x) H with all Schmidt coefficients equal to 1/sqrt(N),
// stored together with the anti-linear map that generates it. In the joint
// amplitude vector the image-basis (system 2) slot is the slow index and the
// domain-basis (system 1) slot is the fast index.
class MaximallyEntangledState {
public:
    MaximallyEntangledState(AntiLinearMap u, StateVector joint);

    Eigen::Index subsystem_dim() const { return u_.dim(); }
    const AntiLinearMap& pairing() const { return u_; }
    const StateVector& joint_state() const { return joint_; }

private:
    AntiLinearMap u_;
    StateVector joint_;  // dim N^2
};

// (1/sqrt(N)) sum_n psi_n (x) phi_n. Throws NotOrthonormal / DimMismatch.
MaximallyEntangledState build_from_bases(const Basis& phi, const Basis& psi);

// The spin singlet: phi = (|up>, |down>), psi = (-|down>, |up>).
MaximallyEntangledState singlet();

// Evaluates (1/sqrt(N)) sum_n U(chi_n) (x) chi_n; equals the stored joint
// state for every orthonormal chi.
StateVector represent_in_basis(const MaximallyEntangledState& state, const Basis& chi);

// The system-2 observable perfectly correlated with o: U o U^{-1}. Computed
// columnwise and cross-checked against the entrywise-conjugation form in the
// stored bases.
Operator partner_operator(const MaximallyEntangledState& state, const Operator& o);

// || (o on system 1 - o_tilde on system 2) Psi ||; vanishes exactly when
// o_tilde is the partner of o.
double correlation_residual(const MaximallyEntangledState& state, const Operator& o,
                            const Operator& o_tilde);

// Product of two maximally entangled states under the canonical regrouping of
// (H1 (x) H1) (x) (H2 (x) H2) into (H1 (x) H2) (x) (H1 (x) H2).
MaximallyEntangledState product_state(const MaximallyEntangledState& a,
                                      const MaximallyEntangledState& b);

// Singular values of the (dim_slow x dim_fast) reshape of a joint vector.
Eigen::VectorXd schmidt_coefficients(const StateVector& joint, Eigen::Index dim_slow,
                                     Eigen::Index dim_fast);

// Helpers embedding a one-system observable into the joint space with the
// slot convention above.
Operator op_on_system1(const Operator& o);
Operator op_on_system2(const Operator& o);

}  // namespace nlab::entangle

#endif
