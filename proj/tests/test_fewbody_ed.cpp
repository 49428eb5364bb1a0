#include <algorithm>
#include <array>
#include <cstdlib>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "qotto/errors.hpp"
#include "qotto/fewbody_ed.hpp"
#include "qotto/lapack.hpp"
#include "qotto/thermo.hpp"

using namespace qotto;

TEST_CASE("contact matrix elements") {
  // <00|delta|00> = integral phi_0^4 = 1/sqrt(2 pi)
  CHECK(delta_matrix_element(0, 0, 0, 0) == doctest::Approx(0.3989422804014327).epsilon(1e-12));
  // odd total parity integrates to zero
  CHECK(std::abs(delta_matrix_element(0, 0, 0, 1)) < 1e-15);
  CHECK(std::abs(delta_matrix_element(2, 1, 0, 0)) < 1e-15);
  // full index symmetry
  const double ref = delta_matrix_element(3, 1, 2, 2);
  CHECK(delta_matrix_element(1, 3, 2, 2) == doctest::Approx(ref).epsilon(1e-13));
  CHECK(delta_matrix_element(2, 2, 3, 1) == doctest::Approx(ref).epsilon(1e-13));

  const Eigen::MatrixXd m = pair_delta_matrix(6);
  CHECK(m.rows() == pair_count(6));
  CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(m(pair_index(6, 3, 1), pair_index(6, 2, 2)) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(m(pair_index(6, 0, 0), pair_index(6, 0, 0)) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-12));
}

TEST_CASE("basis dimensions and caps") {
  CHECK(basis_dimension({2, 20, Statistics::dist}) == 231);
  CHECK(basis_dimension({2, 4, Statistics::boson}) == 9);  // 00 01 02 03 04 11 12 13 22
  CHECK(basis_dimension({3, 20, Statistics::dist}) == 1771);
  CHECK(basis_dimension({3, 6, Statistics::boson}) == 23);
  CHECK_THROWS_AS((void)build_hamiltonian({3, 50, Statistics::dist}, 1.0), ResourceError);
  CHECK_THROWS_AS((void)build_hamiltonian({2, 10, Statistics::dist}, -0.5), ValidationError);
  CHECK_THROWS_AS(basis_dimension({4, 10, Statistics::dist}), ValidationError);
}

TEST_CASE("free spectra are oscillator shells") {
  const EdSpectrum p3 = diagonalize({3, 8, Statistics::dist}, 0.0);
  // shell k holds (k+1)(k+2)/2 product states at energy k + 3/2
  std::size_t at = 0;
  for (int k = 0; k <= 3; ++k)
    for (int d = 0; d < (k + 1) * (k + 2) / 2; ++d, ++at)
      CHECK(p3.e[at] == doctest::Approx(k + 1.5).epsilon(1e-12));

  const EdSpectrum s3 = diagonalize({3, 8, Statistics::boson}, 0.0);
  const double expect[] = {1.5, 2.5, 3.5, 3.5, 4.5, 4.5, 4.5};
  for (int i = 0; i < 7; ++i) CHECK(s3.e[i] == doctest::Approx(expect[i]).epsilon(1e-12));

  const EdSpectrum p2 = diagonalize({2, 12, Statistics::dist}, 0.0);
  CHECK(p2.e[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p2.e[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(p2.e[2] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hamiltonians are symmetric") {
  for (auto [n, e, st] : {std::tuple{2, 14, Statistics::boson},
                          {3, 10, Statistics::dist},
                          {3, 14, Statistics::boson}}) {
    const Eigen::MatrixXd h = build_hamiltonian({n, e, st}, 2.5);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("two particles converge to the transcendental spectrum") {
  const double gt = 1.6;
  const double exact = 1.0 + busch_epsilon(0, gt);  // relative ground on top of CM zero point
  double err10 = 0, err40 = 0;
  double prev = 10.0;
  for (int e : {10, 20, 40}) {
    const EdSpectrum sp = diagonalize({2, e, Statistics::dist}, gt);
    const double err = sp.e[0] - exact;
    CHECK(err > 0.0);     // truncation bounds from above
    CHECK(err < prev);    // and improves monotonically
    prev = err;
    if (e == 10) err10 = err;
    if (e == 40) err40 = err;
  }
  // cutoff^(-1/2) tail: quadrupling e_cut should halve the error
  CHECK(err10 / err40 == doctest::Approx(2.0).epsilon(0.18));

  // boson basis agrees where the symmetric sector lives (even relative levels)
  const EdSpectrum bs = diagonalize({2, 30, Statistics::boson}, gt);
  const EdSpectrum ds = diagonalize({2, 30, Statistics::dist}, gt);
  CHECK(bs.e[0] == doctest::Approx(ds.e[0]).epsilon(1e-12));
  // the first odd relative level is interaction-blind: E = 2 exactly (n=0, r=1)
  CHECK(ds.e[1] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("symmetric builder matches a first-quantized projection") {
  const int e_cut = 6;
  const double gt = 1.7;
  const Eigen::MatrixXd h = build_hamiltonian({3, e_cut, Statistics::boson}, gt);

  std::vector<std::array<int, 3>> kets;
  for (int a = 0; a <= e_cut; ++a)
    for (int b = a; b <= e_cut - a; ++b)
      for (int c = b; c <= e_cut - a - b; ++c) kets.push_back({a, b, c});
  REQUIRE(static_cast<int>(kets.size()) == h.rows());

  auto perms = [](const std::array<int, 3>& t) {
    std::vector<std::array<int, 3>> p;
    std::array<int, 3> s = t;
    std::sort(s.begin(), s.end());
    do p.push_back(s);
    while (std::next_permutation(s.begin(), s.end()));
    return p;  // distinct permutations only
  };
  auto norm = [](const std::array<int, 3>& t) {
    double mu = 1.0;
    if (t[0] == t[1] && t[1] == t[2]) mu = 6.0;
    else if (t[0] == t[1] || t[1] == t[2]) mu = 2.0;
    return std::sqrt(mu / 6.0);
  };
  const double c_int = std::sqrt(2.0) * gt;
  const Eigen::MatrixXd m = pair_delta_matrix(e_cut);
  auto pd = [&](int a, int b, int c, int d) { return m(pair_index(e_cut, a, b), pair_index(e_cut, c, d)); };

  for (std::size_t i = 0; i < kets.size(); ++i)
    for (std::size_t j = i; j < kets.size(); ++j) {
      double acc = 0.0;
      for (const auto& p : perms(kets[i]))
        for (const auto& q : perms(kets[j])) {
          double v = 0.0;
          if (p[2] == q[2]) v += pd(p[0], p[1], q[0], q[1]);
          if (p[1] == q[1]) v += pd(p[0], p[2], q[0], q[2]);
          if (p[0] == q[0]) v += pd(p[1], p[2], q[1], q[2]);
          acc += v;
        }
      double want = norm(kets[i]) * norm(kets[j]) * c_int * acc;
      if (i == j) want += kets[i][0] + kets[i][1] + kets[i][2] + 1.5;
      CHECK(h(i, j) == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("symmetric sector levels live inside the product spectrum") {
  const EdSpectrum prod = diagonalize({3, 10, Statistics::dist}, 2.0);
  const EdSpectrum sym = diagonalize({3, 10, Statistics::boson}, 2.0);
  for (double s : sym.e) {
    double best = 1e9;
    for (double p : prod.e) best = std::min(best, std::abs(p - s));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("center of mass ladder survives truncation") {
  const EdSpectrum sp = diagonalize({3, 20, Statistics::dist}, 1.0);
  for (double shift : {1.0, 2.0}) {
    double best = 1e9;
    for (double v : sp.e) best = std::min(best, std::abs(v - (sp.e[0] + shift)));
    CHECK(best < 0.02);  // limited by basis truncation, not machine precision
  }
}

TEST_CASE("fermionic levels are exact combinatorics") {
  const auto anti = anti3_levels(8);
  CHECK(anti.front() == doctest::Approx(4.5));  // 0+1+2 + 3/2
  CHECK(anti[1] == doctest::Approx(5.5));
  // interaction leaves them inside the product spectrum at any coupling
  const EdSpectrum prod = diagonalize({3, 8, Statistics::dist}, 3.0);
  for (std::size_t k = 0; k < anti.size(); ++k) {
    double best = 1e9;
    for (double p : prod.e) best = std::min(best, std::abs(p - anti[k]));
    CHECK(best < 1e-8);
  }
}

TEST_CASE("lanczos ground state matches full diagonalization") {
  const Eigen::MatrixXd h = build_hamiltonian({3, 14, Statistics::boson}, 2.5);
  Eigen::MatrixXd c = h;
  const double full = la::eigvals_sym(c)[0];
  CHECK(lanczos_ground(h) == doctest::Approx(full).epsilon(1e-10));
}

TEST_CASE("three-boson shift and its inverse") {
  const int e = 14;
  CHECK(epsilon_3p(e, 0.0) == 0.0);
  const double a = epsilon_3p(e, 0.5), b = epsilon_3p(e, 1.5), c = epsilon_3p(e, 4.0);
  CHECK(a > 0.0);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c < eps3p_max(e));
  CHECK(eps3p_max(e) > 3.0);

  CHECK(gt_of_eps3p(e, 0.0) == 0.0);
  for (double eps : {0.3, 1.2, 2.6}) {
    const double back = epsilon_3p(e, gt_of_eps3p(e, eps));
    CHECK(back == doctest::Approx(eps).epsilon(5e-4));
  }
  CHECK_THROWS_AS((void)gt_of_eps3p(e, eps3p_max(e) + 0.5), ValidationError);
}

TEST_CASE("transport spectra: towers, labels, scaling") {
  const int e = 12, w = 6;
  const double gt = 1.3, omega = 2.0;

  const LabeledSpectrum rank = ed_spectrum_rank(e, gt, omega, w);
  CHECK(rank.size() == static_cast<std::size_t>(count_product3_upto(w)));
  CHECK(rank.label.front() == "r00000");
  CHECK(rank.omega == omega);
  CHECK(std::is_sorted(rank.e.begin(), rank.e.end()));

  const LabeledSpectrum sec = ed_spectrum_sector(e, gt, omega, w);
  const int ns = count_sym3_upto(w), na = count_anti3_upto(w);
  const int nm = (count_product3_upto(w) - ns - na) / 2;
  CHECK(sec.size() == static_cast<std::size_t>(ns + na + nm));
  CHECK(sec.label[0] == "s00000");
  CHECK(sec.label[ns] == "a00000");
  CHECK(sec.label[ns + na] == "m00000");
  double weights = 0;
  for (double x : sec.w) weights += x;
  CHECK(weights == doctest::Approx(count_product3_upto(w)));  // sym + anti + 2*mixed

  // sector content is consistent with the plain symmetric tower
  const LabeledSpectrum bos = ed_spectrum_boson3(e, gt, omega, w);
  for (int k = 0; k < ns; ++k) CHECK(sec.e[k] == doctest::Approx(bos.e[k]).epsilon(1e-12));

  // fermion block is coupling-blind
  const LabeledSpectrum sec0 = ed_spectrum_sector(e, 0.0, omega, w);
  for (int k = 0; k < na; ++k)
    CHECK(sec.e[ns + k] == doctest::Approx(sec0.e[ns + k]).epsilon(1e-10));

  // energies scale linearly with the trap frequency
  const LabeledSpectrum half = ed_spectrum_rank(e, gt, 1.0, w);
  for (std::size_t k = 0; k < half.size(); ++k)
    CHECK(rank.e[k] == doctest::Approx(2.0 * half.e[k]).epsilon(1e-12));

  CHECK_THROWS_AS((void)ed_spectrum_rank(e, gt, 1.0, e + 1), ValidationError);
}

TEST_CASE("transport spectra drive a cycle") {
  const int e = 14, w = 8;  // window deep enough for the tail bound at beta_h*omega_f = 3
  const double kappa = 1.0 / 3.0, omega_f = 1.0 / kappa;
  const auto si = ed_spectrum_sector(e, 1.8, 1.0, w);
  const auto sf = ed_spectrum_sector(e, 1.1, omega_f, w);
  const CycleResult r = run_cycle(si, sf, 10.0, 1.0);
  CHECK(r.first_law_rel < 1e-12);
  CHECK(r.form_gap < 1e-10);
  CHECK(r.engine);
  CHECK(r.eta > otto_eta(kappa));  // compression against weaker repulsion helps here
}

TEST_CASE("diagonalization cache round trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qotto_ed_cache_test";
  fs::remove_all(dir);
  setenv("QOTTO_CACHE_DIR", dir.c_str(), 1);

  const EdSpectrum a = diagonalize({3, 8, Statistics::boson}, 1.23, true);
  CHECK(!a.conv.empty());
  CHECK(fs::exists(dir));
  const EdSpectrum b = diagonalize({3, 8, Statistics::boson}, 1.23, true);
  REQUIRE(a.e.size() == b.e.size());
  for (std::size_t k = 0; k < a.e.size(); ++k) {
    CHECK(a.e[k] == b.e[k]);  // bitwise: second call must come from the cache
    CHECK(a.conv[k] == b.conv[k]);
  }
  CHECK(a.conv[0] > 0.0);
  CHECK(a.conv[0] < 0.2);

  unsetenv("QOTTO_CACHE_DIR");
  fs::remove_all(dir);
}
