#pragma once
#include <Eigen/Dense>
#include <vector>

namespace qotto::la {

// All eigenvalues of a symmetric matrix, ascending. Destroys a.
Eigen::VectorXd eigvals_sym(Eigen::MatrixXd& a);

// Full symmetric eigendecomposition, ascending. Destroys a; eigenvectors in columns.
void eig_sym(Eigen::MatrixXd& a, Eigen::VectorXd& vals, Eigen::MatrixXd& vecs);

// Lowest k eigenpairs of a symmetric tridiagonal matrix (diag d, off-diagonal e).
void eig_tridiag_lowest(const std::vector<double>& d, const std::vector<double>& e,
                        int k, Eigen::VectorXd& vals, Eigen::MatrixXd& vecs);

}  // namespace qotto::la
