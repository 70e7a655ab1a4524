#include "nlab/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace nlab::hilbert {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Eigen::Index grid_size(const std::vector<AxisSpec>& axes) {
    Eigen::Index n = 1;
    for (const auto& a : axes) n *= a.n_points;
    return n;
}

// Phase-fix: rotate so the first component above the noise floor is real
// and positive.
void fix_column_phase(Eigen::Ref<Eigen::VectorXcd> col) {
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        const double mag = std::abs(col(i));
        if (mag > 1e-12) {
            col *= std::conj(col(i)) / mag;
            return;
        }
    }
}

bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
        if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
    }
    return false;
}

}  // namespace

Eigen::MatrixXcd centered_dft_matrix(const AxisSpec& axis) {
    const int n = axis.n_points;
    Eigen::MatrixXcd f(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (int r = 0; r < n; ++r) {
        const long long k = axis.origin + r;
        for (int c = 0; c < n; ++c) {
            const long long m = axis.origin + c;
            // n*k mod N keeps the phase argument small and the matrix exactly
            // periodic across the box.
            long long red = (k * m) % n;
            if (red < 0) red += n;
            f(r, c) = std::polar(scale, -kTwoPi * static_cast<double>(red) / n);
        }
    }
    return f;
}

Eigen::VectorXcd apply_axis_dft(const Eigen::VectorXcd& v, const std::vector<AxisSpec>& axes,
                                std::size_t axis, bool forward) {
    if (grid_size(axes) != v.size()) throw DimMismatch("apply_axis_dft: size mismatch");
    if (axis >= axes.size()) throw DimMismatch("apply_axis_dft: no such axis");
    Eigen::Index slow = 1;
    for (std::size_t a = 0; a < axis; ++a) slow *= axes[a].n_points;
    const Eigen::Index n = axes[axis].n_points;
    const Eigen::Index fast = v.size() / (slow * n);
    Eigen::MatrixXcd f = centered_dft_matrix(axes[axis]);
    if (!forward) f.adjointInPlace();
    Eigen::VectorXcd next(v.size());
    for (Eigen::Index s = 0; s < slow; ++s) {
        // Block of shape (n, fast) at offset s*n*fast, row-major over
        // (axis, fast): as a column-major Eigen map that is (fast, n).
        Eigen::Map<const Eigen::MatrixXcd> block(v.data() + s * n * fast, fast, n);
        Eigen::Map<Eigen::MatrixXcd> out(next.data() + s * n * fast, fast, n);
        out = block * f.transpose();
    }
    return next;
}

Eigen::VectorXcd apply_grid_dft(const Eigen::VectorXcd& v, const std::vector<AxisSpec>& axes,
                                bool forward) {
    Eigen::VectorXcd cur = v;
    for (std::size_t ax = 0; ax < axes.size(); ++ax) cur = apply_axis_dft(cur, axes, ax, forward);
    return cur;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Eigen::VectorXcd amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw DimMismatch("StateVector: empty amplitude vector");
}

StateVector StateVector::basis_state(Eigen::Index dim, Eigen::Index index) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(index) = 1.0;
    return StateVector(std::move(v));
}

StateVector StateVector::random(Eigen::Index dim, SeededRng& rng) {
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
    return StateVector(std::move(v)).normalized();
}

Complex StateVector::inner(const StateVector& other) const {
    if (dim() != other.dim()) throw DimMismatch("StateVector::inner: dimension mismatch");
    return amps_.dot(other.amps_);
}

StateVector StateVector::normalized() const {
    const double n = amps_.norm();
    if (n == 0.0) throw Error("normalize: zero vector");
    // Unit vectors pass through untouched, which makes normalization exactly
    // idempotent.
    if (std::abs(n - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon()) return *this;
    return StateVector(amps_ / n);
}

// ---------------------------------------------------------------------------
// Operator

Operator Operator::dense(Eigen::MatrixXcd entries) {
    if (entries.rows() != entries.cols()) throw DimMismatch("Operator::dense: non-square");
    if (entries.rows() > kDenseCap) throw TooLarge("Operator::dense: dimension above dense cap");
    Operator op;
    op.repr_ = Repr::Dense;
    op.dim_ = entries.rows();
    op.entries_ = std::move(entries);
    return op;
}

Operator Operator::identity(Eigen::Index dim) {
    return dense(Eigen::MatrixXcd::Identity(dim, dim));
}

Operator Operator::position_diagonal(Eigen::VectorXcd diag, std::vector<AxisSpec> axes) {
    if (grid_size(axes) != diag.size())
        throw DimMismatch("Operator::position_diagonal: diag/grid mismatch");
    Operator op;
    op.repr_ = Repr::PositionDiagonal;
    op.dim_ = diag.size();
    op.diag_ = std::move(diag);
    op.axes_ = std::move(axes);
    return op;
}

Operator Operator::momentum_diagonal(Eigen::VectorXcd diag, std::vector<AxisSpec> axes) {
    Operator op = position_diagonal(std::move(diag), std::move(axes));
    op.repr_ = Repr::MomentumDiagonal;
    return op;
}

const Eigen::VectorXcd& Operator::diagonal() const {
    if (repr_ == Repr::Dense) throw Error("Operator::diagonal: dense representation");
    return diag_;
}

Eigen::MatrixXcd Operator::dense_entries() const {
    if (dim_ > kDenseCap) throw TooLarge("Operator::dense_entries: dimension above dense cap");
    switch (repr_) {
        case Repr::Dense:
            return entries_;
        case Repr::PositionDiagonal:
            return diag_.asDiagonal();
        case Repr::MomentumDiagonal: {
            // F^H diag F, built axis by axis through apply().
            Eigen::MatrixXcd m(dim_, dim_);
            for (Eigen::Index j = 0; j < dim_; ++j) {
                Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim_);
                e(j) = 1.0;
                m.col(j) = apply(e);
            }
            return m;
        }
    }
    throw Error("Operator::dense_entries: unreachable");
}

Eigen::VectorXcd Operator::apply(const Eigen::VectorXcd& v) const {
    if (v.size() != dim_) throw DimMismatch("Operator::apply: dimension mismatch");
    switch (repr_) {
        case Repr::Dense:
            return entries_ * v;
        case Repr::PositionDiagonal:
            return diag_.cwiseProduct(v);
        case Repr::MomentumDiagonal: {
            Eigen::VectorXcd hat = apply_grid_dft(v, axes_, true);
            hat = diag_.cwiseProduct(hat);
            return apply_grid_dft(hat, axes_, false);
        }
    }
    throw Error("Operator::apply: unreachable");
}

StateVector Operator::apply(const StateVector& v) const {
    return StateVector(apply(v.amplitudes()));
}

double Operator::hermiticity_residual() const {
    if (repr_ == Repr::Dense) {
        return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    }
    // A diagonal form is self-adjoint iff its diagonal is real.
    return diag_.imag().cwiseAbs().maxCoeff();
}

Operator operator+(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw DimMismatch("Operator+: dimension mismatch");
    if (a.repr_ != Operator::Repr::Dense && a.repr_ == b.repr_ && a.axes_ == b.axes_) {
        Operator r = a;
        r.diag_ += b.diag_;
        return r;
    }
    return Operator::dense(a.dense_entries() + b.dense_entries());
}

Operator operator-(const Operator& a, const Operator& b) {
    return a + (Complex(-1.0, 0.0) * b);
}

Operator operator*(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw DimMismatch("Operator*: dimension mismatch");
    if (a.repr_ != Operator::Repr::Dense && a.repr_ == b.repr_ && a.axes_ == b.axes_) {
        Operator r = a;
        r.diag_ = a.diag_.cwiseProduct(b.diag_);
        return r;
    }
    return Operator::dense(a.dense_entries() * b.dense_entries());
}

Operator operator*(Complex scalar, const Operator& a) {
    Operator r = a;
    if (r.repr_ == Operator::Repr::Dense) {
        r.entries_ *= scalar;
    } else {
        r.diag_ *= scalar;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Basis

Basis::Basis(Eigen::MatrixXcd columns, double tol) : vectors_(std::move(columns)) {
    if (vectors_.rows() != vectors_.cols()) throw DimMismatch("Basis: need dim vectors of size dim");
    if (gram_residual() >= tol) throw NotOrthonormal("Basis: Gram matrix deviates from identity");
}

Basis Basis::standard(Eigen::Index dim) {
    return Basis(Eigen::MatrixXcd::Identity(dim, dim));
}

Basis Basis::random_orthonormal(Eigen::Index dim, SeededRng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Absorb the R phases so the distribution is Haar.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return Basis(std::move(q));
}

double Basis::gram_residual() const {
    const Eigen::MatrixXcd gram = vectors_.adjoint() * vectors_;
    return (gram - Eigen::MatrixXcd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Spectral decomposition

Eigen::MatrixXcd SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

double SpectralDecomposition::reconstruction_residual(const Operator& op) const {
    return (reconstruct() - op.dense_entries()).cwiseAbs().maxCoeff();
}

namespace {

SpectralDecomposition sorted_and_fixed(Eigen::VectorXd vals, Eigen::MatrixXcd vecs) {
    const Eigen::Index n = vals.size();
    for (Eigen::Index j = 0; j < n; ++j) fix_column_phase(vecs.col(j));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (vals(a) != vals(b)) return vals(a) < vals(b);
        return lex_less(vecs.col(a), vecs.col(b));
    });
    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        out.eigenvalues(j) = vals(order[static_cast<std::size_t>(j)]);
        out.eigenvectors.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
    }
    return out;
}

}  // namespace

SpectralDecomposition eigendecompose(const Operator& op) {
    if (op.hermiticity_residual() >= kSolverTol)
        throw NotSelfAdjoint("eigendecompose: operator is not self-adjoint");
    switch (op.repr()) {
        case Operator::Repr::Dense: {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.dense_entries());
            if (solver.info() != Eigen::Success) throw Error("eigendecompose: solver failed");
            return sorted_and_fixed(solver.eigenvalues(), solver.eigenvectors());
        }
        case Operator::Repr::PositionDiagonal: {
            Eigen::VectorXd vals = op.diagonal().real();
            Eigen::MatrixXcd vecs = Eigen::MatrixXcd::Identity(op.dim(), op.dim());
            return sorted_and_fixed(std::move(vals), std::move(vecs));
        }
        case Operator::Repr::MomentumDiagonal: {
            // Eigenvectors are the conjugated DFT columns (plane waves).
            Eigen::VectorXd vals = op.diagonal().real();
            Eigen::MatrixXcd vecs(op.dim(), op.dim());
            for (Eigen::Index j = 0; j < op.dim(); ++j) {
                Eigen::VectorXcd e = Eigen::VectorXcd::Zero(op.dim());
                e(j) = 1.0;
                vecs.col(j) = apply_grid_dft(e, op.axes(), false);
            }
            return sorted_and_fixed(std::move(vals), std::move(vecs));
        }
    }
    throw Error("eigendecompose: unreachable");
}

// ---------------------------------------------------------------------------
// Tensor products and commutators

StateVector tensor_state(const StateVector& a, const StateVector& b) {
    Eigen::VectorXcd out(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        for (Eigen::Index j = 0; j < b.dim(); ++j) out(i * b.dim() + j) = a[i] * b[j];
    return StateVector(std::move(out));
}

Operator tensor_op(const Operator& a, const Operator& b) {
    using Repr = Operator::Repr;
    if (a.repr() != Repr::Dense && a.repr() == b.repr()) {
        // Kronecker product of diagonals with concatenated axes.
        const auto& da = a.diagonal();
        const auto& db = b.diagonal();
        Eigen::VectorXcd diag(da.size() * db.size());
        for (Eigen::Index i = 0; i < da.size(); ++i)
            for (Eigen::Index j = 0; j < db.size(); ++j) diag(i * db.size() + j) = da(i) * db(j);
        std::vector<AxisSpec> axes = a.axes();
        axes.insert(axes.end(), b.axes().begin(), b.axes().end());
        return a.repr() == Repr::PositionDiagonal
                   ? Operator::position_diagonal(std::move(diag), std::move(axes))
                   : Operator::momentum_diagonal(std::move(diag), std::move(axes));
    }
    const Eigen::Index dim = a.dim() * b.dim();
    if (dim > Operator::kDenseCap) throw TooLarge("tensor_op: result above dense cap");
    const Eigen::MatrixXcd ma = a.dense_entries();
    const Eigen::MatrixXcd mb = b.dense_entries();
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index i = 0; i < ma.rows(); ++i)
        for (Eigen::Index j = 0; j < ma.cols(); ++j)
            out.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
    return Operator::dense(std::move(out));
}

Operator commutator(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) throw DimMismatch("commutator: dimension mismatch");
    return a * b - b * a;
}

double operator_norm(const Eigen::MatrixXcd& m) {
    // Largest singular value through the Hermitian square.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m.adjoint() * m);
    const double top = solver.eigenvalues().maxCoeff();
    return std::sqrt(std::max(top, 0.0));
}

double operator_norm(const Operator& op) {
    if (op.repr() != Operator::Repr::Dense) return op.diagonal().cwiseAbs().maxCoeff();
    return operator_norm(op.dense_entries());
}

Eigen::MatrixXcd random_hermitian(Eigen::Index dim, SeededRng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    return 0.5 * (g + g.adjoint().eval());
}

Eigen::MatrixXcd random_hermitian_nondegenerate(Eigen::Index dim, SeededRng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Eigen::MatrixXcd h = random_hermitian(dim, rng);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
        double min_gap = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 1; i < dim; ++i)
            min_gap = std::min(min_gap, solver.eigenvalues()(i) - solver.eigenvalues()(i - 1));
        if (dim == 1 || min_gap > 1e-6) return h;
    }
    throw Error("random_hermitian_nondegenerate: no well-separated spectrum found");
}

}  // namespace nlab::hilbert
