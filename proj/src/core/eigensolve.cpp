#include "eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "errors.hpp"

namespace minpart {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Similarity transform folding the cell weights into the matrix:
// Atilde = D^{-1/2} A D^{-1/2}, eigenvectors u = D^{-1/2} utilde.
SpMat symmetrized(const SymmetricOperator& op, bool& unit_weights) {
    unit_weights = (op.w.array() == 1.0).all();
    if (unit_weights) return op.A;
    VectorXd s = op.w.cwiseSqrt().cwiseInverse();
    SpMat m = s.asDiagonal() * op.A * s.asDiagonal();
    m.makeCompressed();
    return m;
}

struct SymPair {
    double value;
    VectorXd vec; // unit l2 in the symmetrized metric
    double residual;
};

double relative_residual(const SpMat& At, double lam, const VectorXd& x) {
    double r = (At * x - lam * x).norm() / x.norm();
    return r / std::max(1.0, std::abs(lam));
}

std::vector<SymPair> dense_lowest(const SpMat& At, int want) {
    MatrixXd Ad(At);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(Ad);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolver: dense solve failed");
    std::vector<SymPair> out;
    out.reserve(want);
    for (int i = 0; i < want; ++i) {
        VectorXd x = es.eigenvectors().col(i);
        double lam = es.eigenvalues()[i];
        double res = relative_residual(At, lam, x);
        out.push_back({lam, std::move(x), res});
    }
    return out;
}

// Block Krylov on (Atilde + I)^{-1} with full reorthogonalization, explicit
// Rayleigh-Ritz every round, and thick restart. kernel (optional) is an
// exactly known eigenvector kept out of the search space.
std::vector<SymPair> iterative_lowest(const SpMat& At, int want, const VectorXd* kernel,
                                      const EigenOptions& opts) {
    const int n = static_cast<int>(At.rows());
    SpMat eye(n, n);
    eye.setIdentity();
    SpMat B = At + eye;
    Eigen::SimplicialLDLT<SpMat> ldlt;
    ldlt.compute(B);
    if (ldlt.info() != Eigen::Success) {
        throw NumericalError("eigensolver: shifted factorization failed");
    }

    const int p = std::max(want + 2, 3);
    const int qmax = std::min(n, std::max(6 * p, 48));
    const int keep_size = std::min(std::max(2 * p, want + 2), qmax - p);

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    MatrixXd V(n, qmax + p), BV(n, qmax + p);
    int q = 0;

    auto project_out = [&](VectorXd& z) {
        for (int pass = 0; pass < 2; ++pass) {
            if (kernel) z -= (*kernel) * kernel->dot(z);
            if (q > 0) z -= V.leftCols(q) * (V.leftCols(q).transpose() * z);
        }
    };
    // Orthonormalize the columns of Z against kernel, V, and each other;
    // breakdown columns are replaced with fresh random directions.
    auto orth_block = [&](MatrixXd Z) {
        for (int j = 0; j < Z.cols(); ++j) {
            for (int attempt = 0;; ++attempt) {
                VectorXd z = Z.col(j);
                project_out(z);
                for (int pass = 0; pass < 2; ++pass)
                    for (int i = 0; i < j; ++i) z -= Z.col(i) * Z.col(i).dot(z);
                double nrm = z.norm();
                if (nrm > 1e-10) {
                    Z.col(j) = z / nrm;
                    break;
                }
                if (attempt > 4) throw NumericalError("eigensolver: basis breakdown");
                for (int r = 0; r < n; ++r) Z(r, j) = gauss(rng);
            }
        }
        return Z;
    };

    MatrixXd H = MatrixXd::Zero(qmax + p, qmax + p);
    MatrixXd rand0(n, p);
    for (int j = 0; j < p; ++j)
        for (int r = 0; r < n; ++r) rand0(r, j) = gauss(rng);
    MatrixXd blk = orth_block(std::move(rand0));

    double best_max_residual = std::numeric_limits<double>::infinity();

    for (int round = 0; round < opts.max_block_rounds; ++round) {
        const int bw = static_cast<int>(blk.cols());
        V.middleCols(q, bw) = blk;
        MatrixXd W = ldlt.solve(blk);
        BV.middleCols(q, bw) = W;
        MatrixXd hcol = V.leftCols(q + bw).transpose() * W; // (q+bw) x bw
        H.block(0, q, q + bw, bw) = hcol;
        H.block(q, 0, bw, q + bw) = hcol.transpose();
        // symmetrize the new diagonal block
        H.block(q, q, bw, bw) =
            0.5 * (hcol.bottomRows(bw) + hcol.bottomRows(bw).transpose()).eval();
        q += bw;

        Eigen::SelfAdjointEigenSolver<MatrixXd> es(H.topLeftCorner(q, q));
        if (es.info() != Eigen::Success) throw NumericalError("eigensolver: Ritz solve failed");

        if (q >= want) {
            // Ritz values of B descend to the smallest of Atilde.
            std::vector<SymPair> cand;
            double max_res = 0.0;
            for (int i = 0; i < want; ++i) {
                VectorXd y = es.eigenvectors().col(q - 1 - i);
                VectorXd x = V.leftCols(q) * y;
                x /= x.norm();
                double lam = x.dot(At * x);
                double res = relative_residual(At, lam, x);
                max_res = std::max(max_res, res);
                cand.push_back({lam, std::move(x), res});
            }
            best_max_residual = std::min(best_max_residual, max_res);
            if (max_res <= opts.tol) {
                std::sort(cand.begin(), cand.end(),
                          [](const SymPair& a, const SymPair& b) { return a.value < b.value; });
                return cand;
            }
        }

        MatrixXd next = orth_block(std::move(W));

        if (q + p > qmax) {
            // thick restart: keep the dominant Ritz vectors; H stays exact
            // because the kept basis diagonalizes the projected operator.
            MatrixXd Y = es.eigenvectors().rightCols(keep_size);
            MatrixXd Vk = V.leftCols(q) * Y;
            MatrixXd BVk = BV.leftCols(q) * Y;
            V.leftCols(keep_size) = Vk;
            BV.leftCols(keep_size) = BVk;
            H.setZero();
            H.topLeftCorner(keep_size, keep_size) =
                es.eigenvalues().tail(keep_size).asDiagonal();
            q = keep_size;
        }
        blk = std::move(next);
    }

    std::ostringstream msg;
    msg << "eigensolver: no convergence after " << opts.max_block_rounds
        << " rounds; best max residual " << best_max_residual << " (tol " << opts.tol << ")";
    throw NumericalError(msg.str());
}

void assign_clusters(std::vector<EigenPair>& pairs) {
    int cluster = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (i > 0) {
            double gap = pairs[i].value - pairs[i - 1].value;
            if (gap > 1e-6 * std::max(1.0, std::abs(pairs[i].value))) ++cluster;
        }
        pairs[i].cluster = cluster;
    }
}

void fix_sign(VectorXd& u) {
    int idx = 0;
    double best = -1.0;
    for (int r = 0; r < u.size(); ++r) {
        double a = std::abs(u[r]);
        if (a > best) {
            best = a;
            idx = r;
        }
    }
    if (u[idx] < 0.0) u = -u;
}

} // namespace

std::vector<EigenPair> lowest_eigenpairs(const SymmetricOperator& op, int m,
                                         const EigenOptions& opts) {
    if (m < 1) throw InvalidArgument("lowest_eigenpairs: m must be >= 1");
    if (m > op.dim) throw InvalidArgument("lowest_eigenpairs: m exceeds operator dimension");
    if (!(opts.tol > 0.0)) throw InvalidArgument("lowest_eigenpairs: tol must be positive");

    const int n = op.dim;
    bool unit_w = true;
    SpMat At = symmetrized(op, unit_w);

    const bool dense = n <= 400;
    VectorXd kernel;
    bool deflate = op.all_neumann_unrestricted && !dense;
    if (deflate) {
        kernel = unit_w ? VectorXd::Ones(n) : VectorXd(op.w.cwiseSqrt());
        kernel /= kernel.norm();
    }

    std::vector<SymPair> sym_pairs;
    const int want = m - (deflate ? 1 : 0);
    if (want > 0) {
        sym_pairs = dense ? dense_lowest(At, want)
                          : iterative_lowest(At, want, deflate ? &kernel : nullptr, opts);
    }
    if (deflate) {
        double res = (At * kernel).norm(); // unit kernel, lambda = 0
        sym_pairs.insert(sym_pairs.begin(), SymPair{0.0, kernel, res});
    }

    VectorXd backscale;
    if (!unit_w) backscale = op.w.cwiseSqrt().cwiseInverse();

    std::vector<EigenPair> out(sym_pairs.size());
    for (std::size_t i = 0; i < sym_pairs.size(); ++i) {
        out[i].value = sym_pairs[i].value;
        out[i].residual = sym_pairs[i].residual;
        out[i].vector =
            unit_w ? std::move(sym_pairs[i].vec) : VectorXd(backscale.cwiseProduct(sym_pairs[i].vec));
        fix_sign(out[i].vector);
    }
    std::sort(out.begin(), out.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.value < b.value; });
    assign_clusters(out);
    return out;
}

std::vector<EigenPair> lowest_eigenpairs(const SymmetricOperator& op, int m, double tol) {
    EigenOptions o;
    o.tol = tol;
    return lowest_eigenpairs(op, m, o);
}

Groundstate groundstate(const SymmetricOperator& op, const EigenOptions& opts) {
    // Connectivity under the operator's own coupling structure.
    std::vector<int> parent(op.dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (int k = 0; k < op.A.outerSize(); ++k) {
        for (SpMat::InnerIterator it(op.A, k); it; ++it) {
            if (it.row() != it.col()) {
                int ra = find(static_cast<int>(it.row())), rb = find(static_cast<int>(it.col()));
                if (ra != rb) parent[ra] = rb;
            }
        }
    }
    int components = 0;
    for (int r = 0; r < op.dim; ++r)
        if (find(r) == r) ++components;
    if (components != 1) {
        throw StructuralError("groundstate: operator splits into " + std::to_string(components) +
                              " disconnected components; solve each component separately");
    }

    EigenOptions tight = opts;
    tight.tol = std::min(opts.tol, 1e-9);
    std::vector<EigenPair> pairs = lowest_eigenpairs(op, 1, tight);
    VectorXd phi = std::move(pairs[0].vector);
    if (op.w.cwiseProduct(phi).sum() < 0.0) phi = -phi;
    double peak = phi.lpNorm<Eigen::Infinity>();
    if (phi.minCoeff() < -1e-8 * peak) {
        throw StructuralError("groundstate: lowest mode changes sign; mask is not connected");
    }
    phi = phi.cwiseMax(0.0);
    return Groundstate{pairs[0].value, std::move(phi), pairs[0].residual};
}

} // namespace minpart
