// SPDX-License-Identifier: Apache-2.0
//
// Multi-sensor fusion: normalized matrix sums, singular-value-equivalent
// conversion, and products whose eigenvalues obey the ring law.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/errors.hpp"
#include "rmtsense/parallel.hpp"
#include "rmtsense/rng.hpp"

namespace rmt {

/// Ordered list of equally-shaped data matrices (one per sensor).
struct MatrixEnsemble {
    std::vector<DataMatrix> matrices;

    std::size_t alpha() const { return matrices.size(); }

    void validate() const {
        if (matrices.empty()) throw DomainError("MatrixEnsemble: empty ensemble");
        const auto rows = matrices.front().rows();
        const auto cols = matrices.front().cols();
        for (const auto& m : matrices)
            if (m.rows() != rows || m.cols() != cols)
                throw ShapeMismatch("MatrixEnsemble: matrices differ in shape");
    }
};

/// Square complex matrix (SVE factors and their products).
class SquareComplexMatrix {
public:
    explicit SquareComplexMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
        if (entries_.rows() != entries_.cols())
            throw ShapeMismatch("SquareComplexMatrix: not square");
        if (entries_.rows() < 1) throw DomainError("SquareComplexMatrix: empty");
        if (!entries_.allFinite())
            throw DomainError("SquareComplexMatrix: entries must be finite");
    }

    Eigen::Index dim() const { return entries_.rows(); }
    const Eigen::MatrixXcd& entries() const { return entries_; }

private:
    Eigen::MatrixXcd entries_;
};

/// Eigenvalues of a non-Hermitian matrix, with the ensemble parameters that
/// produced them (for plotting the predicted annulus next to the cloud).
struct EigenCloud {
    std::vector<std::complex<double>> values;
    double source_c = 0.0;
    int source_alpha = 0;
};

/// Z = (1/sqrt(alpha)) * sum of the ensemble, entrywise.
inline DataMatrix matrix_sum(const MatrixEnsemble& ensemble) {
    ensemble.validate();
    Eigen::MatrixXcd acc = ensemble.matrices.front().entries();
    for (std::size_t i = 1; i < ensemble.matrices.size(); ++i)
        acc += ensemble.matrices[i].entries();
    acc *= 1.0 / std::sqrt(static_cast<double>(ensemble.alpha()));
    return DataMatrix(std::move(acc));
}

/// Haar-distributed unitary via QR of a Ginibre matrix. The R-diagonal
/// phases must be folded back into Q; without that correction the QR output
/// is not Haar distributed.
inline Eigen::MatrixXcd haar_unitary(Eigen::Index dim, std::uint64_t seed) {
    if (dim < 1) throw DomainError("haar_unitary: dimension must be positive");
    Xoshiro256pp rng(seed);
    Eigen::MatrixXcd ginibre(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            ginibre(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::VectorXcd diag = qr.matrixQR().diagonal();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double mag = std::abs(diag(j));
        const std::complex<double> phase = mag > 0.0 ? diag(j) / mag : std::complex<double>(1.0, 0.0);
        q.col(j) *= phase;
    }
    return q;
}

namespace detail {

// Hermitian PSD square root via eigendecomposition; negative rounding noise
// in the spectrum is clamped to zero.
inline Eigen::MatrixXcd hermitian_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("hermitian_sqrt: eigensolver did not converge");
    Eigen::VectorXd roots = solver.eigenvalues();
    for (Eigen::Index i = 0; i < roots.size(); ++i)
        roots(i) = roots(i) > 0.0 ? std::sqrt(roots(i)) : 0.0;
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().adjoint();
}

} // namespace detail

/// Singular value equivalent with an explicit unitary factor: sqrt(X X^H) Q.
/// Q is trusted to be unitary; pass haar_unitary output (or the identity in
/// tests) to get the isotropic eigenvector structure the ring law assumes.
inline SquareComplexMatrix singular_value_equivalent(const DataMatrix& x,
                                                     const Eigen::MatrixXcd& q) {
    if (q.rows() != x.rows() || q.cols() != x.rows())
        throw ShapeMismatch("singular_value_equivalent: unitary has wrong dimension");
    const Eigen::Index n_rows = x.rows();
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(n_rows, n_rows);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x.entries(), 1.0);
    gram = gram.selfadjointView<Eigen::Lower>(); // mirror for the product below
    return SquareComplexMatrix(detail::hermitian_sqrt(gram) * q);
}

/// Singular value equivalent of a rectangular matrix: an N x N matrix with
/// the same singular values and a Haar unitary eigenvector twist.
inline SquareComplexMatrix singular_value_equivalent(const DataMatrix& x, std::uint64_t seed) {
    return singular_value_equivalent(x, haar_unitary(x.rows(), seed));
}

/// Left-fold product in index order: F_alpha * ... * F_2 * F_1.
inline SquareComplexMatrix product_in_order(const std::vector<SquareComplexMatrix>& factors) {
    if (factors.empty()) throw DomainError("product_in_order: empty factor list");
    Eigen::MatrixXcd acc = factors.front().entries();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        if (factors[i].dim() != acc.rows())
            throw ShapeMismatch("product_in_order: factor dimensions differ");
        acc = factors[i].entries() * acc;
    }
    return SquareComplexMatrix(std::move(acc));
}

/// Product of SVE-converted factors. Each X_i is scaled by 1/sqrt(n) (which
/// places the ring's outer radius at unity for unit-variance entries) and
/// converted with an independent Haar factor drawn from the master seed's
/// per-factor stream. Conversions run in parallel; the product itself is a
/// sequential fold since matrix products do not commute.
inline SquareComplexMatrix matrix_product(const MatrixEnsemble& ensemble, std::uint64_t seed) {
    ensemble.validate();
    SeedStream stream(seed);
    std::vector<std::uint64_t> factor_seeds(ensemble.alpha());
    for (auto& s : factor_seeds) s = stream.next();

    const double scale = 1.0 / std::sqrt(static_cast<double>(ensemble.matrices.front().cols()));
    std::vector<Eigen::MatrixXcd> factors(ensemble.alpha());
    parallel_for(ensemble.alpha(), [&](std::size_t i) {
        DataMatrix scaled(ensemble.matrices[i].entries() * scale);
        factors[i] = singular_value_equivalent(scaled, factor_seeds[i]).entries();
    });

    Eigen::MatrixXcd acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = factors[i] * acc;
    return SquareComplexMatrix(std::move(acc));
}

/// All N eigenvalues of a general complex matrix (multiset semantics).
inline EigenCloud complex_eigenvalues(const SquareComplexMatrix& m, double source_c = 0.0,
                                      int source_alpha = 0) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m.entries(), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("complex_eigenvalues: eigensolver did not converge");
    EigenCloud cloud;
    cloud.source_c = source_c;
    cloud.source_alpha = source_alpha;
    cloud.values.reserve(static_cast<std::size_t>(m.dim()));
    for (Eigen::Index i = 0; i < m.dim(); ++i) cloud.values.push_back(solver.eigenvalues()(i));
    return cloud;
}

} // namespace rmt
