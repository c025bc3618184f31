#include "xrego/embedcore.hpp"

#include <cmath>

#include "xrego/errors.hpp"

namespace xrego {

Matrix sample_gaussian(Eigen::Index rows, Eigen::Index cols, SeededRng& rng) {
    require(rows >= 1 && cols >= 1, "sample_gaussian: rows and cols must be >= 1");
    Matrix M(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = rng.normal();
    return M;
}

Matrix sample_haar_orthogonal(Eigen::Index n, SeededRng& rng) {
    require(n >= 1, "sample_haar_orthogonal: n must be >= 1");
    const Matrix G = sample_gaussian(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(G);
    Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix& R = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j)
        if (R(j, j) < 0.0) Q.col(j) *= -1.0;
    return Q;
}

EffectiveSubspace EffectiveSubspace::from_rotation(const Matrix& Q, Eigen::Index d_e) {
    require_dims(Q.rows() == Q.cols(), "from_rotation: Q must be square");
    require(d_e >= 1 && d_e < Q.rows(), "from_rotation: need 1 <= d_e < D");
    const Eigen::Index D = Q.rows();
    return {Q.topRows(d_e).transpose(), Q.bottomRows(D - d_e).transpose()};
}

EffectiveSubspace EffectiveSubspace::aligned(Eigen::Index D, Eigen::Index d_e) {
    return from_rotation(Matrix::Identity(D, D), d_e);
}

double EffectiveSubspace::orthogonality_residual() const {
    const Matrix Iu = Matrix::Identity(U.cols(), U.cols());
    const Matrix Iv = Matrix::Identity(V.cols(), V.cols());
    double r = (U.transpose() * U - Iu).cwiseAbs().maxCoeff();
    r = std::max(r, (V.transpose() * V - Iv).cwiseAbs().maxCoeff());
    r = std::max(r, (U.transpose() * V).cwiseAbs().maxCoeff());
    return r;
}

bool EffectiveSubspace::is_aligned(double tol) const {
    const Matrix E = Matrix::Identity(D(), D()).leftCols(d_e());
    return (U - E).cwiseAbs().maxCoeff() <= tol;
}

Embedding::Embedding(Matrix A_, Vector p_) : A(std::move(A_)), p(std::move(p_)) {
    require_dims(A.rows() == p.size(), "Embedding: A rows must equal size of p");
    require(A.cols() >= 1 && A.rows() >= A.cols(), "Embedding: need 1 <= d <= D");
    require(p.cwiseAbs().maxCoeff() <= 1.0, "Embedding: p must lie in [-1,1]^D");
}

Projection project_effective(const EffectiveSubspace& sub, const Vector& x) {
    require_dims(x.size() == sub.D(), "project_effective: x has wrong dimension");
    return {sub.U * (sub.U.transpose() * x), sub.V * (sub.V.transpose() * x)};
}

Vector minimal_norm_y(const Matrix& B, const Vector& z_star) {
    require_dims(B.rows() == z_star.size(), "minimal_norm_y: B rows must equal size of z");
    require_dims(B.cols() >= B.rows(), "minimal_norm_y: need d >= d_e");
    const Eigen::Index de = B.rows();
    // B^T P = Q R, so B y = z  <=>  R1^T (Q1^T y) = P^T z.
    Eigen::ColPivHouseholderQR<Matrix> qr(B.transpose());
    qr.setThreshold(1e-12);
    if (qr.rank() < de) throw DegenerateInput("minimal_norm_y: B is rank deficient");
    const Vector pz = qr.colsPermutation().transpose() * z_star;
    const auto R1 = qr.matrixQR().topLeftCorner(de, de).triangularView<Eigen::Upper>();
    const Vector u = R1.transpose().solve(pz);
    Vector y = Vector::Zero(B.cols());
    y.head(de) = u;
    return qr.householderQ() * y;
}

Vector compute_w(const EffectiveSubspace& sub, const Matrix& A, const Vector& y2) {
    require_dims(A.rows() == sub.D() && A.cols() == y2.size(), "compute_w: dimension mismatch");
    return sub.V.transpose() * (A * y2);
}

}  // namespace xrego
