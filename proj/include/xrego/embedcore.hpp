#pragma once

#include <Eigen/Dense>

#include "xrego/rng.hpp"

namespace xrego {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Entries are drawn in row-major order (row 0 left to right, then row 1, ...).
Matrix sample_gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng& rng);

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix, then each
// column of Q is multiplied by sign(R_ii).
Matrix sample_haar_orthogonal(Eigen::Index n, SeededRng& rng);

struct EffectiveSubspace {
    Matrix U;  // D x d_e
    Matrix V;  // D x (D - d_e)

    Eigen::Index D() const { return U.rows(); }
    Eigen::Index d_e() const { return U.cols(); }

    // U = (first d_e rows of Q)^T, V = (remaining rows)^T.
    static EffectiveSubspace from_rotation(const Matrix& Q, Eigen::Index d_e);
    // U spans the first d_e coordinate axes.
    static EffectiveSubspace aligned(Eigen::Index D, Eigen::Index d_e);

    // Max-norm residuals of U^T U - I, V^T V - I and U^T V.
    double orthogonality_residual() const;
    bool is_aligned(double tol = 1e-12) const;
};

struct Embedding {
    Matrix A;  // D x d
    Vector p;  // anchor in [-1, 1]^D

    Embedding(Matrix A_, Vector p_);
    Eigen::Index D() const { return A.rows(); }
    Eigen::Index d() const { return A.cols(); }
};

struct Projection {
    Vector top;
    Vector perp;
};

Projection project_effective(const EffectiveSubspace& sub, const Vector& x);

// y = B^T (B B^T)^{-1} z via a column-pivoted QR of B^T. Throws
// DegenerateInput when rank(B) < d_e at relative pivot tolerance 1e-12.
Vector minimal_norm_y(const Matrix& B, const Vector& z_star);

// w = V^T A y2.
Vector compute_w(const EffectiveSubspace& sub, const Matrix& A, const Vector& y2);

}  // namespace xrego
