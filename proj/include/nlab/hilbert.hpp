#ifndef NLAB_HILBERT_HPP
#define NLAB_HILBERT_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "nlab/errors.hpp"
#include "nlab/rng.hpp"

namespace nlab::hilbert {

using Complex = std::complex<double>;

// Tolerances used across the library: exact algebraic identities are held to
// 1e-12, anything routed through an eigensolver to 1e-10.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kSolverTol = 1e-10;

// One tensor factor of a lattice grid: n_points sites with integer indices
// in [origin, origin + n_points). Structured (diagonal) operators carry one
// AxisSpec per particle so they can be conjugated by the per-axis DFT.
struct AxisSpec {
    int n_points = 0;
    int origin = 0;

    bool operator==(const AxisSpec&) const = default;
};

// Unitary centered DFT matrix for one axis: F(k, n) = exp(-2*pi*i*n*k/N)/sqrt(N)
// with row/column labels running over [origin, origin + N).
Eigen::MatrixXcd centered_dft_matrix(const AxisSpec& axis);

// Applies the per-axis DFT (or its inverse) along every axis of a flattened
// multi-axis array stored row-major with axis 0 slowest.
Eigen::VectorXcd apply_grid_dft(const Eigen::VectorXcd& v, const std::vector<AxisSpec>& axes,
                                bool forward);

// Same, but transforms only the given axis.
Eigen::VectorXcd apply_axis_dft(const Eigen::VectorXcd& v, const std::vector<AxisSpec>& axes,
                                std::size_t axis, bool forward);

class StateVector {
public:
    explicit StateVector(Eigen::VectorXcd amplitudes);

    static StateVector basis_state(Eigen::Index dim, Eigen::Index index);
    static StateVector random(Eigen::Index dim, SeededRng& rng);  // normalized

    Eigen::Index dim() const { return amps_.size(); }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Complex operator[](Eigen::Index i) const { return amps_(i); }

    double norm() const { return amps_.norm(); }
    // <this|other>
    Complex inner(const StateVector& other) const;

    // Unit-normalized copy. Idempotent: a vector already unit-normalized to
    // machine precision is returned unchanged, bit for bit.
    StateVector normalized() const;

private:
    Eigen::VectorXcd amps_;
};

// A Hermitian-capable operator on a finite-dimensional space. Dense entries
// are capped at dimension 4096; above that only the structured forms
// (a diagonal in the position or momentum representation, conjugated by the
// grid DFT on demand) are allowed.
class Operator {
public:
    enum class Repr { Dense, PositionDiagonal, MomentumDiagonal };

    static constexpr Eigen::Index kDenseCap = 4096;

    static Operator dense(Eigen::MatrixXcd entries);
    static Operator identity(Eigen::Index dim);
    static Operator position_diagonal(Eigen::VectorXcd diag, std::vector<AxisSpec> axes);
    static Operator momentum_diagonal(Eigen::VectorXcd diag, std::vector<AxisSpec> axes);

    Eigen::Index dim() const { return dim_; }
    Repr repr() const { return repr_; }
    const std::vector<AxisSpec>& axes() const { return axes_; }

    // Diagonal forms only.
    const Eigen::VectorXcd& diagonal() const;

    // Materializes the matrix. Throws TooLarge above kDenseCap.
    Eigen::MatrixXcd dense_entries() const;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    StateVector apply(const StateVector& v) const;

    // max |entry(i,j) - conj(entry(j,i))| without densifying diagonal forms.
    double hermiticity_residual() const;
    bool is_self_adjoint(double tol = kAlgebraTol) const {
        return hermiticity_residual() < tol;
    }

    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);
    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator*(Complex scalar, const Operator& a);

private:
    Operator() = default;

    Repr repr_ = Repr::Dense;
    Eigen::Index dim_ = 0;
    Eigen::MatrixXcd entries_;       // Dense only
    Eigen::VectorXcd diag_;          // diagonal forms only
    std::vector<AxisSpec> axes_;     // diagonal forms only
};

class Basis {
public:
    // Columns must be orthonormal within `tol` (Gram residual), else
    // NotOrthonormal.
    explicit Basis(Eigen::MatrixXcd columns, double tol = kAlgebraTol);

    static Basis standard(Eigen::Index dim);
    static Basis random_orthonormal(Eigen::Index dim, SeededRng& rng);

    Eigen::Index dim() const { return vectors_.cols(); }
    const Eigen::MatrixXcd& vectors() const { return vectors_; }
    Eigen::VectorXcd vector(Eigen::Index i) const { return vectors_.col(i); }

    double gram_residual() const;

private:
    Eigen::MatrixXcd vectors_;
};

struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // orthonormal columns, phase-fixed

    Eigen::MatrixXcd reconstruct() const;
    double reconstruction_residual(const Operator& op) const;
};

// Hermitian eigendecomposition; throws NotSelfAdjoint when the Hermiticity
// residual exceeds 1e-10. Eigenvalues ascending; ties broken by lexicographic
// order of the phase-fixed eigenvectors so results are deterministic within
// a build.
SpectralDecomposition eigendecompose(const Operator& op);

// Kronecker products with the repo-wide convention that the left factor is
// the slow index: (a (x) b)[(i*dim_b)+j] = a[i]*b[j].
StateVector tensor_state(const StateVector& a, const StateVector& b);
Operator tensor_op(const Operator& a, const Operator& b);

// AB - BA. Throws DimMismatch.
Operator commutator(const Operator& a, const Operator& b);

// Largest singular value (via the Hermitian square; dense path).
double operator_norm(const Operator& op);
double operator_norm(const Eigen::MatrixXcd& m);

// Random Hermitian matrix with Gaussian entries; `nondegenerate` retries
// until all spectral gaps exceed 1e-6.
Eigen::MatrixXcd random_hermitian(Eigen::Index dim, SeededRng& rng);
Eigen::MatrixXcd random_hermitian_nondegenerate(Eigen::Index dim, SeededRng& rng);

}  // namespace nlab::hilbert

#endif
