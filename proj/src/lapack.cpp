#include "qotto/lapack.hpp"

#include <lapacke.h>

#include <stdexcept>

namespace qotto::la {

Eigen::VectorXd eigvals_sym(Eigen::MatrixXd& a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Eigen::VectorXd vals(n);
  lapack_int m = 0;
  std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, n));
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'N', 'A', 'L', n, a.data(), n,
                                   0.0, 0.0, 0, 0, 0.0, &m, vals.data(), nullptr, 1,
                                   isuppz.data());
  if (info != 0) throw std::runtime_error("dsyevr(N) failed, info=" + std::to_string(info));
  return vals;
}

void eig_sym(Eigen::MatrixXd& a, Eigen::VectorXd& vals, Eigen::MatrixXd& vecs) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  vals.resize(n);
  vecs.resize(n, n);
  lapack_int m = 0;
  std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, n));
  lapack_int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'A', 'L', n, a.data(), n,
                                   0.0, 0.0, 0, 0, 0.0, &m, vals.data(), vecs.data(), n,
                                   isuppz.data());
  if (info != 0) throw std::runtime_error("dsyevr(V) failed, info=" + std::to_string(info));
}

void eig_tridiag_lowest(const std::vector<double>& d, const std::vector<double>& e,
                        int k, Eigen::VectorXd& vals, Eigen::MatrixXd& vecs) {
  const lapack_int n = static_cast<lapack_int>(d.size());
  if (k < 1 || k > n) throw std::invalid_argument("eig_tridiag_lowest: bad k");
  std::vector<double> dd(d), ee(e);
  ee.resize(n, 0.0);
  vals.resize(n);
  vecs.resize(n, k);
  lapack_int m = 0;
  std::vector<lapack_int> isuppz(2 * std::max<lapack_int>(1, n));
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, dd.data(), ee.data(),
                                   0.0, 0.0, 1, k, 0.0, &m, vals.data(), vecs.data(), n,
                                   isuppz.data());
  if (info != 0) throw std::runtime_error("dstevr failed, info=" + std::to_string(info));
  vals.conservativeResize(m);
}

}  // namespace qotto::la
