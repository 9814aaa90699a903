#include "qxy/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qxy::oracle {

namespace {

constexpr int kMaxSweeps = 50;

// Jacobi eigendecomposition for an n x n real symmetric matrix, cyclic
// row-by-row ordering. Rotations are applied until convergence; v accumulates
// the eigenvector columns.
template <int N>
void jacobi_cycle(Eigen::Matrix<double, N, N>& a,
                  Eigen::Matrix<double, N, N>& v) {
    v.setIdentity();
    const double scale = a.norm();
    if (scale == 0.0) {
        return;
    }
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                off += 2.0 * a(p, q) * a(p, q);
            }
        }
        if (std::sqrt(off) <= 1e-15 * scale) {
            return;
        }
        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                if (a(p, q) == 0.0) {
                    continue;
                }
                // Classic 2x2 symmetric Schur rotation zeroing a(p,q).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t =
                    std::copysign(1.0, theta) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < N; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < N; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < N; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
}

template <int N>
void sort_ascending(Eigen::Matrix<double, N, 1>& values,
                    Eigen::Matrix<double, N, N>& vectors) {
    std::array<int, N> order;
    for (int i = 0; i < N; ++i) {
        order[i] = i;
    }
    std::sort(order.begin(), order.end(),
              [&](int l, int r) { return values(l) < values(r); });
    Eigen::Matrix<double, N, 1> sorted_values;
    Eigen::Matrix<double, N, N> sorted_vectors;
    for (int i = 0; i < N; ++i) {
        sorted_values(i) = values(order[i]);
        sorted_vectors.col(i) = vectors.col(order[i]);
    }
    values = sorted_values;
    vectors = sorted_vectors;
}

Eigen::Matrix4d require_real_symmetric(const Matrix4& a) {
    if (a.imag().cwiseAbs().maxCoeff() > 1e-13) {
        throw std::invalid_argument("jacobi_eigen: matrix has imaginary parts");
    }
    Eigen::Matrix4d re = a.real();
    if ((re - re.transpose()).cwiseAbs().maxCoeff() > 1e-13) {
        throw std::invalid_argument("jacobi_eigen: matrix is not symmetric");
    }
    // Symmetrize exactly so rotation updates cannot drift.
    re = 0.5 * (re + re.transpose().eval());
    return re;
}

}  // namespace

DenseEigenResult jacobi_eigen(const Matrix4& a) {
    Eigen::Matrix4d work = require_real_symmetric(a);
    Eigen::Matrix4d vectors;
    jacobi_cycle<4>(work, vectors);
    Eigen::Vector4d values = work.diagonal();
    sort_ascending<4>(values, vectors);
    return {values, vectors};
}

std::array<double, 4> hermitian_eigenvalues(const Matrix4& a) {
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-13) {
        throw std::invalid_argument(
            "hermitian_eigenvalues: matrix is not Hermitian");
    }
    Eigen::Matrix<double, 8, 8> embed;
    embed.topLeftCorner<4, 4>() = a.real();
    embed.bottomRightCorner<4, 4>() = a.real();
    embed.topRightCorner<4, 4>() = -a.imag();
    embed.bottomLeftCorner<4, 4>() = a.imag();
    embed = 0.5 * (embed + embed.transpose().eval());
    Eigen::Matrix<double, 8, 8> vectors;
    jacobi_cycle<8>(embed, vectors);
    Eigen::Matrix<double, 8, 1> values = embed.diagonal();
    std::sort(values.data(), values.data() + 8);
    // Each eigenvalue of the input appears twice in the embedding.
    return {values(0), values(2), values(4), values(6)};
}

Matrix4 gibbs_state(const Matrix4& a, double t) {
    if (!(t > 0.0)) {
        throw std::domain_error("gibbs_state: temperature must be > 0");
    }
    const DenseEigenResult eig = jacobi_eigen(a);
    const double e_min = eig.eigenvalues.minCoeff();
    Eigen::Vector4d weights;
    for (int i = 0; i < 4; ++i) {
        weights(i) = std::exp(-(eig.eigenvalues(i) - e_min) / t);
    }
    weights /= weights.sum();
    const Eigen::Matrix4d rho =
        eig.eigenvectors * weights.asDiagonal() * eig.eigenvectors.transpose();
    return rho.cast<Complex>();
}

double direct_fidelity(const Matrix4& rho, const StateVector4& psi) {
    if (!is_hermitian(rho)) {
        throw std::invalid_argument("direct_fidelity: rho is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
        std::abs(rho.trace().imag()) > 1e-13) {
        throw std::invalid_argument("direct_fidelity: rho trace is not 1");
    }
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-12) {
        throw std::invalid_argument("direct_fidelity: psi is not normalized");
    }
    const Complex f = psi.dot(rho * psi);  // Eigen's dot conjugates psi
    if (std::abs(f.imag()) > 1e-13) {
        throw std::runtime_error(
            "direct_fidelity: overlap has a non-negligible imaginary part");
    }
    return f.real();
}

}  // namespace qxy::oracle
