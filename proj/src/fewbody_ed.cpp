#include "qotto/fewbody_ed.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "qotto/errors.hpp"
#include "qotto/interp.hpp"
#include "qotto/lapack.hpp"
#include "qotto/special.hpp"

#include "json.hpp"

namespace qotto {
namespace {

// ---- quadrature for contact matrix elements --------------------------------
// integral phi_a phi_b phi_c phi_d dx with x = y/sqrt(2):
//   sum_k s_k prod phi(y_k/sqrt(2)),  s_k = w_k exp(y_k^2) / sqrt(2)

struct DeltaQuad {
  std::vector<double> x;  // y_k / sqrt(2)
  std::vector<double> s;
};

DeltaQuad delta_quad(int n_nodes) {
  const Quadrature q = gauss_hermite(n_nodes);
  DeltaQuad d;
  d.x.resize(q.x.size());
  d.s.resize(q.x.size());
  for (std::size_t k = 0; k < q.x.size(); ++k) {
    d.x[k] = q.x[k] / std::sqrt(2.0);
    // log form keeps exp(x^2) * w finite at far-out nodes of very large rules
    d.s[k] = q.w[k] > 0.0
                 ? std::exp(std::log(q.w[k]) + q.x[k] * q.x[k] - 0.5 * std::log(2.0))
                 : 0.0;
  }
  return d;
}

// normalized oscillator eigenfunctions phi_0..phi_nmax at the given points
Eigen::MatrixXd hermite_table(int n_max, const std::vector<double>& x) {
  const int cols = static_cast<int>(x.size());
  Eigen::MatrixXd p(n_max + 1, cols);
  const double c0 = std::pow(M_PI, -0.25);
  for (int k = 0; k < cols; ++k) {
    const double xv = x[k];
    p(0, k) = c0 * std::exp(-0.5 * xv * xv);
    if (n_max >= 1) p(1, k) = std::sqrt(2.0) * xv * p(0, k);
    for (int n = 2; n <= n_max; ++n)
      p(n, k) = std::sqrt(2.0 / n) * xv * p(n - 1, k) -
                std::sqrt((n - 1.0) / n) * p(n - 2, k);
  }
  return p;
}

double bare_coupling(double gt) { return std::sqrt(2.0) * gt; }

// ---- two-particle builders --------------------------------------------------

Eigen::MatrixXd build_n2_dist(int e_cut, double gt) {
  Eigen::MatrixXd h = pair_delta_matrix(e_cut) * bare_coupling(gt);
  for (int a = 0; a <= e_cut; ++a)
    for (int b = 0; b <= e_cut - a; ++b) {
      const int i = pair_index(e_cut, a, b);
      h(i, i) += a + b + 1.0;
    }
  return h;
}

Eigen::MatrixXd build_n2_boson(int e_cut, double gt) {
  std::vector<std::array<int, 2>> kets;
  for (int a = 0; a <= e_cut; ++a)
    for (int b = a; b <= e_cut - a; ++b) kets.push_back({a, b});
  const int dim = static_cast<int>(kets.size());

  const DeltaQuad q = delta_quad(2 * e_cut + 4);
  const Eigen::MatrixXd p = hermite_table(e_cut, q.x);
  const int nk = static_cast<int>(q.x.size());

  Eigen::MatrixXd bmat(dim, nk);
  for (int i = 0; i < dim; ++i) {
    const auto [a, b] = kets[i];
    const double f = (a == b) ? 1.0 : std::sqrt(2.0);
    for (int k = 0; k < nk; ++k)
      bmat(i, k) = f * p(a, k) * p(b, k) * std::sqrt(q.s[k]);
  }
  Eigen::MatrixXd h(dim, dim);
  h.noalias() = bmat * bmat.transpose();
  h *= bare_coupling(gt);
  for (int i = 0; i < dim; ++i) h(i, i) += kets[i][0] + kets[i][1] + 1.0;
  return h;
}

// ---- three-particle product basis -------------------------------------------

struct Basis3 {
  int e_cut = 0;
  std::vector<std::array<int, 3>> tri;
  std::vector<int> off;  // block start per first index

  explicit Basis3(int e) : e_cut(e), off(e + 2, 0) {
    for (int a = 0; a <= e; ++a) {
      off[a + 1] = off[a] + pair_count(e - a);
      for (int b = 0; b <= e - a; ++b)
        for (int c = 0; c <= e - a - b; ++c) tri.push_back({a, b, c});
    }
  }
  int index(int a, int b, int c) const { return off[a] + pair_index(e_cut - a, b, c); }
};

Eigen::MatrixXd build_n3_dist(int e_cut, double gt) {
  const Basis3 basis(e_cut);
  const int dim = static_cast<int>(basis.tri.size());
  const Eigen::MatrixXd m = pair_delta_matrix(e_cut);
  const double c_int = bare_coupling(gt);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const auto [a, b, c] = basis.tri[i];
    h(i, i) = a + b + c + 1.5;
  }
  // interacting pair in two slots, spectator value s in the third
  for (int slot = 0; slot < 3; ++slot) {
    for (int s = 0; s <= e_cut; ++s) {
      const int m_sum = e_cut - s;
      for (int a = 0; a <= m_sum; ++a)
        for (int b = 0; b <= m_sum - a; ++b) {
          const int i = slot == 0 ? basis.index(s, a, b)
                      : slot == 1 ? basis.index(a, s, b)
                                  : basis.index(a, b, s);
          const int ri = pair_index(e_cut, a, b);
          for (int c = 0; c <= m_sum; ++c)
            for (int d = 0; d <= m_sum - c; ++d) {
              const int j = slot == 0 ? basis.index(s, c, d)
                          : slot == 1 ? basis.index(c, s, d)
                                      : basis.index(c, d, s);
              h(i, j) += c_int * m(ri, pair_index(e_cut, c, d));
            }
        }
    }
  }
  return h;
}

// ---- three-boson symmetric sector (occupation-number form) ------------------

std::vector<std::array<int, 3>> sym3_kets(int e_cut) {
  std::vector<std::array<int, 3>> kets;
  for (int a = 0; a <= e_cut; ++a)
    for (int b = a; b <= e_cut - a; ++b)
      for (int c = b; c <= e_cut - a - b; ++c) kets.push_back({a, b, c});
  return kets;
}

Eigen::MatrixXd build_n3_boson(int e_cut, double gt) {
  const auto kets = sym3_kets(e_cut);
  const int dim = static_cast<int>(kets.size());
  const int e1 = e_cut + 1;
  std::vector<int> tidx(static_cast<std::size_t>(e1) * e1 * e1, -1);
  auto flat = [e1](int a, int b, int c) { return (a * e1 + b) * e1 + c; };
  for (int i = 0; i < dim; ++i) tidx[flat(kets[i][0], kets[i][1], kets[i][2])] = i;

  const Eigen::MatrixXd m = pair_delta_matrix(e_cut);
  const double half_c = 0.5 * bare_coupling(gt);

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    h(i, i) = kets[i][0] + kets[i][1] + kets[i][2] + 1.5;

  for (int j = 0; j < dim; ++j) {
    const auto& ket = kets[j];
    // occupation list (value, count)
    std::array<std::pair<int, int>, 3> occ{};
    int n_vals = 0;
    for (int v : ket) {
      if (n_vals && occ[n_vals - 1].first == v)
        ++occ[n_vals - 1].second;
      else
        occ[n_vals++] = {v, 1};
    }
    // annihilate the ordered value pair (c, d), leaving spectator s
    for (int ic = 0; ic < n_vals; ++ic)
      for (int id = 0; id < n_vals; ++id) {
        const int c = occ[ic].first, d = occ[id].first;
        const int nd = occ[id].second - (ic == id ? 1 : 0);
        if (nd < 1) continue;
        const double amp = std::sqrt(double(occ[ic].second) * nd);
        int s = -1;
        for (int iv = 0; iv < n_vals; ++iv) {
          int left = occ[iv].second - (iv == ic) - (iv == id);
          if (left > 0) s = occ[iv].first;
        }
        const int col = pair_index(e_cut, c, d);
        // create the ordered pair (a, b) on the spectator
        for (int a = 0; a <= e_cut - s; ++a)
          for (int b = 0; b <= e_cut - s - a; ++b) {
            const double w = std::sqrt(1.0 + (b == s)) *
                             std::sqrt(1.0 + (a == b) + (a == s));
            std::array<int, 3> t{a, b, s};
            std::sort(t.begin(), t.end());
            h(tidx[flat(t[0], t[1], t[2])], j) +=
                half_c * amp * w * m(pair_index(e_cut, a, b), col);
          }
      }
  }
  return h;
}

// ---- result cache ------------------------------------------------------------

std::mutex cache_mutex;

std::filesystem::path cache_dir() {
  const char* env = std::getenv("QOTTO_CACHE_DIR");
  if (!env || !*env) return {};
  return std::filesystem::path(env);
}

std::string spectrum_key(const BasisSpec& s, double gt) {
  char gbuf[48];
  std::snprintf(gbuf, sizeof gbuf, "%a", gt);
  std::string g(gbuf);
  for (char& ch : g)
    if (ch == '+' || ch == '-' || ch == '.') ch = '_';
  char buf[160];
  std::snprintf(buf, sizeof buf, "ed-v1-n%d-%s-e%d-g%s.json", s.n,
                to_string(s.stat).c_str(), s.e_cut, g.c_str());
  return buf;
}

bool cache_load(const BasisSpec& s, double gt, bool need_conv, EdSpectrum& out) {
  const auto dir = cache_dir();
  if (dir.empty()) return false;
  std::lock_guard<std::mutex> lock(cache_mutex);
  std::ifstream in(dir / spectrum_key(s, gt));
  if (!in) return false;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("v").get<int>() != 1 || j.at("n").get<int>() != s.n ||
        j.at("e_cut").get<int>() != s.e_cut ||
        j.at("stat").get<std::string>() != to_string(s.stat) ||
        j.at("gt").get<double>() != gt)
      return false;
    EdSpectrum r;
    r.spec = s;
    r.gt = gt;
    r.e = j.at("e").get<std::vector<double>>();
    r.conv = j.at("conv").get<std::vector<double>>();
    r.dim = static_cast<int>(r.e.size());
    if (need_conv && r.conv.empty()) return false;
    out = std::move(r);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void cache_store(const EdSpectrum& r) {
  const auto dir = cache_dir();
  if (dir.empty()) return;
  std::lock_guard<std::mutex> lock(cache_mutex);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  nlohmann::json j{{"v", 1},
                   {"n", r.spec.n},
                   {"stat", to_string(r.spec.stat)},
                   {"e_cut", r.spec.e_cut},
                   {"gt", r.gt},
                   {"e", r.e},
                   {"conv", r.conv}};
  std::ofstream out(dir / spectrum_key(r.spec, r.gt));
  out << j.dump();
}

// ---- shift tables for the three-boson ground state ---------------------------

struct EpsTable {
  std::vector<double> gt, eps;
  MonotoneCubic inverse;  // eps -> gt
};

std::map<int, EpsTable> eps_tables;
std::mutex eps_mutex;

const EpsTable& eps_table(int e_cut) {
  std::lock_guard<std::mutex> lock(eps_mutex);
  auto it = eps_tables.find(e_cut);
  if (it != eps_tables.end()) return it->second;

  EpsTable t;
  const auto dir = cache_dir();
  const std::string key = "eps3-v1-e" + std::to_string(e_cut) + ".json";
  if (!dir.empty()) {
    std::ifstream in(dir / key);
    if (in) {
      try {
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("v").get<int>() == 1 && j.at("e_cut").get<int>() == e_cut) {
          t.gt = j.at("gt").get<std::vector<double>>();
          t.eps = j.at("eps").get<std::vector<double>>();
        }
      } catch (const std::exception&) {
        t.gt.clear();
      }
    }
  }
  if (t.gt.empty()) {
    t.gt = {0.0, 0.1, 0.2, 0.35, 0.5, 0.7, 0.95, 1.25, 1.6,  2.0,  2.5,  3.1,
            3.9, 4.9, 6.1, 7.6,  9.5, 12.0, 15.0, 19.0, 24.0, 30.0, 38.0, kGtHardMax};
    t.eps.resize(t.gt.size());
    for (std::size_t i = 0; i < t.gt.size(); ++i) t.eps[i] = epsilon_3p(e_cut, t.gt[i]);
    if (!dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      std::ofstream out(dir / key);
      out << nlohmann::json{{"v", 1}, {"e_cut", e_cut}, {"gt", t.gt}, {"eps", t.eps}}.dump();
    }
  }
  t.inverse = MonotoneCubic(t.eps, t.gt);
  return eps_tables.emplace(e_cut, std::move(t)).first->second;
}

// ---- sector decomposition -----------------------------------------------------

// remove one nearest match per target from the sorted pool
void remove_levels(std::vector<double>& pool, const std::vector<double>& targets,
                   double tol, const char* what) {
  for (double t : targets) {
    auto it = std::lower_bound(pool.begin(), pool.end(), t);
    if (it == pool.end() || (it != pool.begin() && t - *(it - 1) < *it - t)) --it;
    if (std::abs(*it - t) > tol)
      throw AccuracyError(std::string("sector split: no ") + what +
                          " match near level " + std::to_string(t));
    pool.erase(it);
  }
}

LabeledSpectrum make_tower(const std::vector<double>& e, std::size_t count,
                           const char* prefix, double weight, double omega) {
  if (count > e.size())
    throw ValidationError("transport window needs more levels than the basis holds");
  LabeledSpectrum s;
  s.omega = omega;
  s.e.assign(e.begin(), e.begin() + count);
  for (double& v : s.e) v *= omega;
  s.w.assign(count, weight);
  char buf[32];
  for (std::size_t k = 0; k < count; ++k) {
    std::snprintf(buf, sizeof buf, "%s%05zu", prefix, k);
    s.label.emplace_back(buf);
  }
  return s;
}

void append(LabeledSpectrum& dst, const LabeledSpectrum& add) {
  dst.e.insert(dst.e.end(), add.e.begin(), add.e.end());
  dst.w.insert(dst.w.end(), add.w.begin(), add.w.end());
  dst.label.insert(dst.label.end(), add.label.begin(), add.label.end());
}

void check_window(int e_cut, int window) {
  if (window < 1 || window > e_cut)
    throw ValidationError("transport window must lie in [1, e_cut]");
}

}  // namespace

// ---- public surface ------------------------------------------------------------

int pair_count(int e_cut) { return (e_cut + 1) * (e_cut + 2) / 2; }

int pair_index(int e_cut, int a, int b) {
  return a * (e_cut + 1) - a * (a - 1) / 2 + b;
}

int basis_dimension(const BasisSpec& s) {
  if (s.e_cut < 0) throw ValidationError("e_cut must be non-negative");
  if (s.n == 2) {
    if (s.stat == Statistics::dist) return pair_count(s.e_cut);
    int dim = 0;
    for (int a = 0; 2 * a <= s.e_cut; ++a) dim += s.e_cut - 2 * a + 1;
    return dim;
  }
  if (s.n == 3) {
    if (s.stat == Statistics::dist)
      return (s.e_cut + 1) * (s.e_cut + 2) * (s.e_cut + 3) / 6;
    return static_cast<int>(sym3_kets(s.e_cut).size());
  }
  throw ValidationError("particle number must be 2 or 3");
}

double delta_matrix_element(int a, int b, int c, int d) {
  const int n_max = std::max({a, b, c, d});
  const DeltaQuad q = delta_quad(2 * n_max + 4);
  const Eigen::MatrixXd p = hermite_table(n_max, q.x);
  double acc = 0.0;
  for (std::size_t k = 0; k < q.x.size(); ++k)
    acc += q.s[k] * p(a, k) * p(b, k) * p(c, k) * p(d, k);
  return acc;
}

Eigen::MatrixXd pair_delta_matrix(int e_cut) {
  const DeltaQuad q = delta_quad(2 * e_cut + 4);
  const Eigen::MatrixXd p = hermite_table(e_cut, q.x);
  const int nk = static_cast<int>(q.x.size());
  const int np = pair_count(e_cut);

  Eigen::MatrixXd amat(np, nk);
  for (int a = 0; a <= e_cut; ++a)
    for (int b = 0; b <= e_cut - a; ++b) {
      const int i = pair_index(e_cut, a, b);
      for (int k = 0; k < nk; ++k) amat(i, k) = p(a, k) * p(b, k) * std::sqrt(q.s[k]);
    }
  Eigen::MatrixXd m(np, np);
  m.noalias() = amat * amat.transpose();
  return m;
}

Eigen::MatrixXd build_hamiltonian(const BasisSpec& s, double gt) {
  if (gt < 0.0) throw ValidationError("coupling must be repulsive (gt >= 0)");
  const int dim = basis_dimension(s);
  if (dim > kEdDimCap)
    throw ResourceError("basis dimension " + std::to_string(dim) + " exceeds cap " +
                        std::to_string(kEdDimCap) + "; lower e_cut");
  if (s.n == 2)
    return s.stat == Statistics::dist ? build_n2_dist(s.e_cut, gt)
                                      : build_n2_boson(s.e_cut, gt);
  return s.stat == Statistics::dist ? build_n3_dist(s.e_cut, gt)
                                    : build_n3_boson(s.e_cut, gt);
}

EdSpectrum diagonalize(const BasisSpec& s, double gt, bool estimate) {
  EdSpectrum r;
  if (cache_load(s, gt, estimate, r)) return r;

  Eigen::MatrixXd h = build_hamiltonian(s, gt);
  const Eigen::VectorXd vals = la::eigvals_sym(h);
  r.spec = s;
  r.gt = gt;
  r.dim = static_cast<int>(vals.size());
  r.e.assign(vals.data(), vals.data() + vals.size());

  if (estimate) {
    BasisSpec wider = s;
    wider.e_cut += 4;
    const EdSpectrum ref = diagonalize(wider, gt, false);
    r.conv.resize(r.e.size());
    for (std::size_t k = 0; k < r.e.size(); ++k)
      r.conv[k] = std::abs(r.e[k] - ref.e[k]);
  }
  cache_store(r);
  return r;
}

std::vector<double> anti3_levels(int e_cut) {
  std::vector<double> e;
  for (int a = 0; a <= e_cut; ++a)
    for (int b = a + 1; b <= e_cut - a; ++b)
      for (int c = b + 1; c <= e_cut - a - b; ++c) e.push_back(a + b + c + 1.5);
  std::sort(e.begin(), e.end());
  return e;
}

double lanczos_ground(const Eigen::MatrixXd& h, int maxit, double tol) {
  const int n = static_cast<int>(h.rows());
  if (n <= 8) {
    Eigen::MatrixXd copy = h;
    return la::eigvals_sym(copy)[0];
  }
  maxit = std::min(maxit, n);
  Eigen::MatrixXd v(n, maxit);
  std::vector<double> alpha, beta;
  alpha.reserve(maxit);
  beta.reserve(maxit);

  // deterministic pseudo-random start vector
  Eigen::VectorXd vec(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    vec[i] = (double((state >> 11) & 0x1fffffffffffffull) / 9007199254740992.0) - 0.5;
  }
  vec.normalize();

  double ritz_prev = std::numeric_limits<double>::infinity();
  double ritz = std::numeric_limits<double>::quiet_NaN();
  for (int k = 0; k < maxit; ++k) {
    v.col(k) = vec;
    Eigen::VectorXd w = h * vec;
    const double a = vec.dot(w);
    alpha.push_back(a);
    w -= a * vec;
    if (k > 0) w -= beta[k - 1] * v.col(k - 1);
    // full reorthogonalization, twice
    for (int pass = 0; pass < 2; ++pass)
      w -= v.leftCols(k + 1) * (v.leftCols(k + 1).transpose() * w);
    const double b = w.norm();

    const bool breakdown = b < 1e-13 * std::max(1.0, std::abs(a));
    if (k >= 2 && (breakdown || k % 4 == 3 || k == maxit - 1)) {
      Eigen::VectorXd tv;
      Eigen::MatrixXd tz;
      la::eig_tridiag_lowest(alpha, beta, 1, tv, tz);
      ritz = tv[0];
      if (std::abs(ritz - ritz_prev) < tol * std::max(1.0, std::abs(ritz))) return ritz;
      ritz_prev = ritz;
    }
    if (breakdown) break;
    beta.push_back(b);
    vec = w / b;
  }
  if (!std::isfinite(ritz)) throw AccuracyError("lanczos failed to produce a Ritz value");
  return ritz;
}

double epsilon_3p(int e_cut, double gt) {
  if (gt < 0.0) throw ValidationError("coupling must be repulsive (gt >= 0)");
  if (gt == 0.0) return 0.0;
  const Eigen::MatrixXd h = build_hamiltonian({3, e_cut, Statistics::boson}, gt);
  return lanczos_ground(h) - 1.5;
}

double gt_of_eps3p(int e_cut, double eps) {
  if (eps < 0.0) throw ValidationError("shift must be non-negative");
  if (eps == 0.0) return 0.0;
  const EpsTable& t = eps_table(e_cut);
  if (eps > t.eps.back())
    throw ValidationError("shift " + std::to_string(eps) + " beyond reach at gt <= " +
                          std::to_string(kGtHardMax) + " (max " +
                          std::to_string(t.eps.back()) + ")");
  return std::min(kGtHardMax, std::max(0.0, t.inverse(eps)));
}

double eps3p_max(int e_cut) { return eps_table(e_cut).eps.back(); }

int count_product3_upto(int w) { return (w + 1) * (w + 2) * (w + 3) / 6; }

int count_sym3_upto(int w) {
  int n = 0;
  for (int a = 0; a <= w; ++a)
    for (int b = a; b <= w - a; ++b)
      for (int c = b; c <= w - a - b; ++c) ++n;
  return n;
}

int count_anti3_upto(int w) {
  int n = 0;
  for (int a = 0; a <= w; ++a)
    for (int b = a + 1; b <= w - a; ++b)
      for (int c = b + 1; c <= w - a - b; ++c) ++n;
  return n;
}

LabeledSpectrum ed_spectrum_rank(int e_cut, double gt, double omega, int window) {
  check_window(e_cut, window);
  const EdSpectrum full = diagonalize({3, e_cut, Statistics::dist}, gt);
  return make_tower(full.e, count_product3_upto(window), "r", 1.0, omega);
}

LabeledSpectrum ed_spectrum_boson3(int e_cut, double gt, double omega, int window) {
  check_window(e_cut, window);
  const EdSpectrum sym = diagonalize({3, e_cut, Statistics::boson}, gt);
  return make_tower(sym.e, count_sym3_upto(window), "s", 1.0, omega);
}

LabeledSpectrum ed_spectrum_sector(int e_cut, double gt, double omega, int window) {
  check_window(e_cut, window);
  const EdSpectrum prod = diagonalize({3, e_cut, Statistics::dist}, gt);
  const EdSpectrum sym = diagonalize({3, e_cut, Statistics::boson}, gt);
  const std::vector<double> anti = anti3_levels(e_cut);

  // the truncation respects permutation symmetry, so the product spectrum
  // splits exactly into one symmetric, one antisymmetric and two mixed copies
  const double tol = 1e-7;
  std::vector<double> pool = prod.e;
  remove_levels(pool, sym.e, tol, "symmetric");
  remove_levels(pool, anti, tol, "antisymmetric");
  if (pool.size() % 2 != 0)
    throw AccuracyError("sector split: mixed remainder has odd count");
  std::vector<double> mixed(pool.size() / 2);
  for (std::size_t k = 0; k < mixed.size(); ++k) {
    if (pool[2 * k + 1] - pool[2 * k] > tol)
      throw AccuracyError("sector split: mixed levels fail to pair");
    mixed[k] = 0.5 * (pool[2 * k] + pool[2 * k + 1]);
  }

  LabeledSpectrum out = make_tower(sym.e, count_sym3_upto(window), "s", 1.0, omega);
  append(out, make_tower(anti, count_anti3_upto(window), "a", 1.0, omega));
  const int n_mix =
      (count_product3_upto(window) - count_sym3_upto(window) - count_anti3_upto(window)) / 2;
  append(out, make_tower(mixed, n_mix, "m", 2.0, omega));
  out.omega = omega;
  return out;
}

Transport3 parse_transport3(const std::string& s) {
  if (s == "rank") return Transport3::rank;
  if (s == "sector") return Transport3::sector;
  if (s == "boson") return Transport3::boson;
  throw ValidationError("transport mode must be rank, sector or boson (got '" + s + "')");
}

std::string to_string(Transport3 m) {
  switch (m) {
    case Transport3::rank: return "rank";
    case Transport3::sector: return "sector";
    default: return "boson";
  }
}

SpectrumAt provider_ed3(Transport3 mode, int e_cut, int window) {
  if (e_cut == 0 && mode != Transport3::boson)
    throw ValidationError("adaptive cutoff is available for the boson sector only");
  return [mode, e_cut, window](double eps, double omega) {
    int e = e_cut;
    if (e == 0) e = eps < 1.8 ? 32 : eps < 2.6 ? 40 : 48;
    const double gt = gt_of_eps3p(e, eps);
    switch (mode) {
      case Transport3::rank: return ed_spectrum_rank(e, gt, omega, window);
      case Transport3::sector: return ed_spectrum_sector(e, gt, omega, window);
      default: return ed_spectrum_boson3(e, gt, omega, window);
    }
  };
}

}  // namespace qotto
