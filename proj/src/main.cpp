// Command-line front end: config ingestion, sweep orchestration, CSV and
// plot-script emission.  Exit codes: 0 ok, 2 usage/validation, 3 resource,
// 4 numerical accuracy.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qotto/config.hpp"
#include "qotto/csvio.hpp"
#include "qotto/dynamics.hpp"
#include "qotto/emw.hpp"
#include "qotto/errors.hpp"
#include "qotto/fewbody_ed.hpp"
#include "qotto/spectrum2p.hpp"
#include "qotto/thermo.hpp"
#include "qotto/version.hpp"

namespace {

using namespace qotto;

std::string utc_stamp() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Common {
  cfg::Config file;  // --config contents, possibly empty
  std::string out_dir = ".";
  int threads = 1;
  unsigned seed = 42;
  std::string stamp;
};

// Merges one parameter from flag > config file > default, records the value
// actually used for the output header, and flags unrecognized config keys.
class Resolver {
 public:
  Resolver(cfg::Config& file, std::string section) : file_(file), sec_(std::move(section)) {}

  double real(const std::string& key, CLI::Option* o, double flagv, double dflt) {
    if (o && o->count()) file_.set_real(qual(key), flagv);
    const double v = file_.get_real(qual(key), dflt);
    res_.set_real(qual(key), v);
    return v;
  }
  long long integer(const std::string& key, CLI::Option* o, long long flagv, long long dflt) {
    if (o && o->count()) file_.set_int(qual(key), flagv);
    const long long v = file_.get_int(qual(key), dflt);
    res_.set_int(qual(key), v);
    return v;
  }
  bool boolean(const std::string& key, CLI::Option* o, bool flagv, bool dflt) {
    if (o && o->count()) file_.set_bool(qual(key), flagv);
    const bool v = file_.get_bool(qual(key), dflt);
    res_.set_bool(qual(key), v);
    return v;
  }
  std::string str(const std::string& key, CLI::Option* o, const std::string& flagv,
                  const std::string& dflt) {
    if (o && o->count()) file_.set_string(qual(key), flagv);
    const std::string v = file_.get_string(qual(key), dflt);
    res_.set_string(qual(key), v);
    return v;
  }
  std::vector<double> reals(const std::string& key, CLI::Option* o,
                            const std::vector<double>& flagv, std::vector<double> dflt) {
    if (o && o->count()) file_.set_reals(qual(key), flagv);
    const auto v = file_.get_reals(qual(key), std::move(dflt));
    res_.set_reals(qual(key), v);
    return v;
  }
  std::vector<std::string> strs(const std::string& key, CLI::Option* o,
                                const std::vector<std::string>& flagv,
                                const std::vector<std::string>& dflt) {
    if (o && o->count()) file_.set_strings(qual(key), flagv);
    const auto v = file_.has(qual(key)) ? file_.get_strings(qual(key)) : dflt;
    res_.set_strings(qual(key), v);
    return v;
  }
  bool present(const std::string& key, CLI::Option* o) const {
    return (o && o->count()) || file_.has(qual(key));
  }
  // accept a key that does not apply on this code path (other particle
  // number, alternative axis spec) without echoing it
  void ignore(std::initializer_list<const char*> keys) const {
    for (const char* k : keys) file_.touch(qual(k));
  }
  // root-level annotations (threads, seed) for the output header
  void note_int(const std::string& key, long long v) { res_.set_int(key, v); }
  void note_real(const std::string& key, double v) { res_.set_real(key, v); }
  void note_string(const std::string& key, const std::string& v) { res_.set_string(key, v); }

  const cfg::Config& resolved() const { return res_; }

  // reject config keys in this command's section (or at root) nobody consumed
  void finish() const {
    std::string bad;
    for (const auto& k : file_.unread()) {
      const auto dot = k.find('.');
      const bool mine = dot == std::string::npos ||
                        (dot == sec_.size() && k.compare(0, dot, sec_) == 0);
      if (mine) bad += (bad.empty() ? "" : ", ") + ("'" + k + "'");
    }
    if (!bad.empty()) throw ValidationError("unrecognized config key(s): " + bad);
  }

 private:
  std::string qual(const std::string& key) const { return sec_.empty() ? key : sec_ + "." + key; }
  cfg::Config& file_;
  std::string sec_;
  cfg::Config res_;
};

std::string out_path(const Common& cm, const std::string& name) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cm.out_dir, ec);
  if (ec) throw ResourceError("cannot create output directory " + cm.out_dir + ": " + ec.message());
  return (fs::path(cm.out_dir) / name).string();
}

std::string write_csv(const Common& cm, const std::string& name,
                      const std::function<void(csv::Writer&)>& body) {
  const std::string path = out_path(cm, name);
  std::ofstream f(path);
  if (!f) throw ResourceError("cannot open for writing: " + path);
  csv::Writer w(f);
  body(w);
  f.flush();
  if (!f) throw ResourceError("write failed: " + path);
  std::cout << "wrote " << path << "\n";
  return path;
}

void write_text(const Common& cm, const std::string& name, const std::string& content) {
  const std::string path = out_path(cm, name);
  std::ofstream f(path);
  if (!f) throw ResourceError("cannot open for writing: " + path);
  f << content;
  f.flush();
  if (!f) throw ResourceError("write failed: " + path);
  std::cout << "wrote " << path << "\n";
}

std::vector<double> log_grid(double lo, double hi, long long n, const char* what) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw ValidationError(std::string(what) + ": need 0 < min < max and at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k)
    g[static_cast<std::size_t>(k)] = lo * std::pow(hi / lo, double(k) / double(n - 1));
  return g;
}

std::vector<double> linear_grid(double lo, double hi, long long n, const char* what) {
  if (!(hi > lo) || n < 2)
    throw ValidationError(std::string(what) + ": need min < max and at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k)
    g[static_cast<std::size_t>(k)] = lo + (hi - lo) * double(k) / double(n - 1);
  return g;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOpts {
  CLI::App* cmd = nullptr;
  long long n = 2, levels = 20, ecut = 40;
  double gt = 0.0, omega = 1.0;
  std::string stat = "boson";
  bool estimate = true;
  CLI::Option *on = nullptr, *ostat = nullptr, *ogt = nullptr, *oomega = nullptr,
              *olevels = nullptr, *oecut = nullptr, *oest = nullptr;

  void bind(CLI::App& app) {
    cmd = app.add_subcommand("spectrum", "tabulate working-medium energy levels");
    cmd->fallthrough();
    on = cmd->add_option("--n", n, "particle number, 2 (analytic) or 3 (diagonalization)");
    ostat = cmd->add_option("--stat", stat, "particle statistics: boson | dist");
    ogt = cmd->add_option("--gtilde", gt, "dimensionless contact coupling");
    oomega = cmd->add_option("--omega", omega, "trap frequency (initial trap = 1)");
    olevels = cmd->add_option("--levels", levels, "number of levels to tabulate");
    oecut = cmd->add_option("--ecut", ecut, "N=3 basis cutoff in trap quanta");
    oest = cmd->add_flag("--estimate,!--no-estimate", estimate,
                         "N=3: rerun at a deeper cutoff and report per-level shifts");
  }

  int run(const Common& cm, Resolver& R) {
    const long long nn = R.integer("n", on, n, 2);
    const Statistics st = parse_statistics(R.str("stat", ostat, stat, "boson"));
    const double g = R.real("gtilde", ogt, gt, 0.0);
    const double w = R.real("omega", oomega, omega, 1.0);
    const long long nl = R.integer("levels", olevels, levels, 20);
    if (nn != 2 && nn != 3) throw ValidationError("spectrum: n must be 2 or 3");
    if (g < 0.0) throw ValidationError("spectrum: coupling must be >= 0");
    if (w <= 0.0) throw ValidationError("spectrum: trap frequency must be > 0");
    if (nl < 1 || nl > 2000) throw ValidationError("spectrum: levels must be in [1, 2000]");

    if (nn == 2) {
      R.ignore({"ecut", "estimate"});
      R.finish();
      std::vector<Level2P> ls;
      for (int mq = 8; mq <= 400; mq += 8) {
        ls = levels2p(st, g, w, mq);
        if (static_cast<long long>(ls.size()) >= nl + 8) break;
      }
      std::stable_sort(ls.begin(), ls.end(),
                       [](const Level2P& a, const Level2P& b) { return a.e < b.e; });
      if (static_cast<long long>(ls.size()) > nl) ls.resize(static_cast<std::size_t>(nl));
      write_csv(cm, "spectrum.csv", [&](csv::Writer& wr) {
        csv::config_header(wr, "spectrum", R.resolved(), cm.stamp);
        wr.comment("energy: total level energy; epsilon: relative-motion shift in [0,1)");
        wr.columns({"k", "n_cm", "r_rel", "energy", "epsilon"});
        for (std::size_t k = 0; k < ls.size(); ++k) {
          const double eps = ls[k].r % 2 == 0 ? busch_epsilon(ls[k].r / 2, g) : 0.0;
          wr.cell(static_cast<long long>(k)).cell(ls[k].n).cell(ls[k].r).cell(ls[k].e).cell(eps);
          wr.endrow();
        }
      });
      std::cout << "N=2 " << to_string(st) << " gtilde=" << csv::fmt(g) << ": " << ls.size()
                << " levels, ground " << csv::fmt(ls.front().e) << " (relative shift "
                << csv::fmt(busch_epsilon(0, g)) << ")\n";
      return 0;
    }

    const long long ec = R.integer("ecut", oecut, ecut, 40);
    const bool est = R.boolean("estimate", oest, estimate, true);
    R.finish();
    if (g > kGtHardMax)
      throw ValidationError("spectrum: three-body coupling capped at " +
                            std::to_string(kGtHardMax));
    if (ec < 4 || ec > 100) throw ValidationError("spectrum: ecut must be in [4, 100]");
    BasisSpec bs{3, static_cast<int>(ec), st};
    const EdSpectrum sp = diagonalize(bs, g, est);
    const std::size_t rows = std::min<std::size_t>(sp.e.size(), static_cast<std::size_t>(nl));
    write_csv(cm, "spectrum.csv", [&](csv::Writer& wr) {
      csv::config_header(wr, "spectrum", R.resolved(), cm.stamp);
      wr.comment("basis dimension: " + std::to_string(sp.dim));
      wr.comment("energies at unit trap frequency scale linearly with omega");
      wr.comment("conv_shift: level change when rerun at ecut + 4 (0 if not estimated)");
      wr.columns({"k", "energy", "conv_shift"});
      for (std::size_t k = 0; k < rows; ++k) {
        wr.cell(static_cast<long long>(k)).cell(w * sp.e[k]);
        wr.cell(est ? w * sp.conv[k] : 0.0);
        wr.endrow();
      }
    });
    std::cout << "N=3 " << to_string(st) << " gtilde=" << csv::fmt(g) << ": " << rows
              << " levels of a dim-" << sp.dim << " basis, ground " << csv::fmt(w * sp.e[0])
              << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// cycle

struct CycleOpts {
  CLI::App* cmd = nullptr;
  long long n = 2, ecut = 0, window = 16;
  double kappa = 1.0 / 3.0, beta_c = 10.0, beta_h = 1.0, gti = 0.0, gtf = 0.0;
  std::string stat = "dist", transport = "boson";
  CLI::Option *on = nullptr, *ostat = nullptr, *otr = nullptr, *oecut = nullptr, *owin = nullptr,
              *okap = nullptr, *obc = nullptr, *obh = nullptr, *ogti = nullptr, *ogtf = nullptr;

  void bind(CLI::App& app) {
    cmd = app.add_subcommand("cycle", "evaluate one four-stroke cycle");
    cmd->fallthrough();
    on = cmd->add_option("--n", n, "particle number, 2 or 3");
    ostat = cmd->add_option("--stat", stat, "N=2 statistics: boson | dist");
    otr = cmd->add_option("--transport", transport, "N=3 level pairing: rank | sector | boson");
    oecut = cmd->add_option("--ecut", ecut, "N=3 basis cutoff (0 = per-mode default)");
    owin = cmd->add_option("--window", window, "N=3 transport window in trap quanta");
    okap = cmd->add_option("--kappa", kappa, "compression ratio omega_i / omega_f, in (0,1)");
    obc = cmd->add_option("--beta-c", beta_c, "cold inverse temperature (units 1/omega_i)");
    obh = cmd->add_option("--beta-h", beta_h, "hot inverse temperature (units 1/omega_i)");
    ogti = cmd->add_option("--gti", gti, "coupling at the initial trap");
    ogtf = cmd->add_option("--gtf", gtf, "coupling at the compressed trap");
  }

  int run(const Common& cm, Resolver& R) {
    const long long nn = R.integer("n", on, n, 2);
    const double kap = R.real("kappa", okap, kappa, 1.0 / 3.0);
    const double bc = R.real("beta_c", obc, beta_c, 10.0);
    const double bh = R.real("beta_h", obh, beta_h, 1.0);
    const double gi = R.real("gtilde_i", ogti, gti, 0.0);
    const double gf = R.real("gtilde_f", ogtf, gtf, 0.0);
    if (nn != 2 && nn != 3) throw ValidationError("cycle: n must be 2 or 3");
    if (!(kap > 0.0 && kap < 1.0)) throw ValidationError("cycle: kappa must lie in (0,1)");
    if (!(bc > 0.0) || !(bh > 0.0)) throw ValidationError("cycle: temperatures must be positive");
    if (gi < 0.0 || gf < 0.0) throw ValidationError("cycle: couplings must be >= 0");

    const double omega_f = 1.0 / kap;
    LabeledSpectrum si, sf, zi, zf;
    if (nn == 2) {
      const Statistics st = parse_statistics(R.str("stat", ostat, stat, "dist"));
      R.ignore({"transport", "ecut", "window"});
      R.finish();
      const SpectrumAt prov = provider_n2(st, std::min(bc, bh));
      si = prov(busch_epsilon(0, gi), 1.0);
      sf = prov(busch_epsilon(0, gf), omega_f);
      zi = prov(0.0, 1.0);
      zf = prov(0.0, omega_f);
    } else {
      const Transport3 tr = parse_transport3(R.str("transport", otr, transport, "boson"));
      long long ec = R.integer("ecut", oecut, ecut, 0);
      const long long win = R.integer("window", owin, window, 16);
      R.ignore({"stat"});
      R.finish();
      if (std::max(gi, gf) > kGtHardMax)
        throw ValidationError("cycle: three-body couplings capped at " +
                              std::to_string(kGtHardMax));
      if (ec == 0) ec = tr == Transport3::boson ? 40 : 22;
      if (ec < 8 || ec > 100) throw ValidationError("cycle: ecut must be in [8, 100]");
      if (win < 4 || win > 32) throw ValidationError("cycle: window must be in [4, 32]");
      auto mk = [&](double gt, double omega) {
        switch (tr) {
          case Transport3::rank: return ed_spectrum_rank(int(ec), gt, omega, int(win));
          case Transport3::sector: return ed_spectrum_sector(int(ec), gt, omega, int(win));
          default: return ed_spectrum_boson3(int(ec), gt, omega, int(win));
        }
      };
      si = mk(gi, 1.0);
      sf = mk(gf, omega_f);
      zi = mk(0.0, 1.0);
      zf = mk(0.0, omega_f);
    }

    const CycleResult r = run_cycle(si, sf, bc, bh);
    const CycleResult r0 = run_cycle(zi, zf, bc, bh);
    const double eta_o = otto_eta(kap);

    write_csv(cm, "cycle.csv", [&](csv::Writer& wr) {
      csv::config_header(wr, "cycle", R.resolved(), cm.stamp);
      wr.comment("reference row: same cycle with the interaction switched off");
      wr.columns({"gtilde_i", "gtilde_f", "wc", "we", "w", "qh", "qc", "eta", "eta_otto",
                  "eta_ratio", "w_ratio", "engine", "first_law_rel"});
      auto put = [&](double a, double b, const CycleResult& c) {
        const double er = c.engine ? c.eta / eta_o : 0.0;
        const double wr_ = c.engine && r0.w < 0.0 ? c.w / r0.w : 0.0;
        wr.cell(a).cell(b).cell(c.wc).cell(c.we).cell(c.w).cell(c.qh).cell(c.qc).cell(c.eta);
        wr.cell(eta_o).cell(er).cell(wr_).cell(static_cast<long long>(c.engine ? 1 : 0));
        wr.cell(c.first_law_rel);
        wr.endrow();
      };
      put(gi, gf, r);
      put(0.0, 0.0, r0);
    });

    std::cout << "W = " << csv::fmt(r.w) << "  Qh = " << csv::fmt(r.qh)
              << "  Qc = " << csv::fmt(r.qc) << "\n";
    if (r.engine) {
      std::cout << "engine: eta = " << csv::fmt(r.eta) << " (" << csv::fmt(r.eta / eta_o)
                << " x Otto)";
      if (r0.w < 0.0) std::cout << ", W = " << csv::fmt(r.w / r0.w) << " x noninteracting";
      std::cout << "\n";
    } else {
      std::cout << (r.w > 0.0 ? "dissipator (W > 0): no engine operation here\n"
                              : "idle: no positive heat intake\n");
    }
    std::cout << "first-law residual (relative): " << csv::fmt(r.first_law_rel) << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// heatmap

const char* kHeatmapPlot = R"PY(#!/usr/bin/env python3
"""Render the interaction-landscape maps written by `qotto heatmap`."""
import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else "heatmap.csv"
rows = np.genfromtxt(path, delimiter=",", names=True, comments="#")
ei = np.unique(rows["eps_i"])
ef = np.unique(rows["eps_f"])
shape = (ei.size, ef.size)
eng = rows["engine"].reshape(shape).astype(bool)

fig, axes = plt.subplots(1, 2, figsize=(10.5, 4.2), sharey=True)
panels = (("w_ratio", "W / W_O"), ("eta_ratio", "eta / eta_O"))
for ax, (col, title) in zip(axes, panels):
    z = np.ma.masked_where(~eng, rows[col].reshape(shape))
    cmap = plt.cm.viridis.copy()
    cmap.set_bad("0.65")  # cells where the medium does not run as an engine
    m = ax.pcolormesh(ef, ei, z, cmap=cmap, shading="nearest")
    ax.set_xlabel("eps_f")
    ax.set_title(title)
    fig.colorbar(m, ax=ax)
axes[0].set_ylabel("eps_i")
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print("wrote", out)
)PY";

struct HeatmapOpts {
  CLI::App* cmd = nullptr;
  long long n = 2, nx = 60, ny = 60, ecut = 0, window = 16;
  double kappa = 1.0 / 3.0, beta_c = 10.0, beta_h = 1.0, eps_i_max = -1.0, eps_f_max = -1.0;
  std::string stat = "boson", transport = "boson", polish = "auto";
  CLI::Option *on = nullptr, *ostat = nullptr, *otr = nullptr, *oecut = nullptr, *owin = nullptr,
              *onx = nullptr, *ony = nullptr, *okap = nullptr, *obc = nullptr, *obh = nullptr,
              *oeim = nullptr, *oefm = nullptr, *opol = nullptr;

  void bind(CLI::App& app) {
    cmd = app.add_subcommand("heatmap",
                             "sweep both endpoint couplings and map work and efficiency");
    cmd->fallthrough();
    on = cmd->add_option("--n", n, "particle number, 2 or 3");
    ostat = cmd->add_option("--stat", stat, "N=2 statistics: boson | dist");
    otr = cmd->add_option("--transport", transport, "N=3 level pairing: rank | sector | boson");
    oecut = cmd->add_option("--ecut", ecut, "N=3 basis cutoff (0 = per-mode default)");
    owin = cmd->add_option("--window", window, "N=3 transport window in trap quanta");
    onx = cmd->add_option("--nx", nx, "grid points along eps_i");
    ony = cmd->add_option("--ny", ny, "grid points along eps_f");
    okap = cmd->add_option("--kappa", kappa, "compression ratio, in (0,1)");
    obc = cmd->add_option("--beta-c", beta_c, "cold inverse temperature");
    obh = cmd->add_option("--beta-h", beta_h, "hot inverse temperature");
    oeim = cmd->add_option("--eps-i-max", eps_i_max, "upper bound of the eps_i axis");
    oefm = cmd->add_option("--eps-f-max", eps_f_max, "upper bound of the eps_f axis");
    opol = cmd->add_option("--polish", polish, "maximum refinement: auto | nm | local3 | none");
  }

  int run(const Common& cm, Resolver& R) {
    const long long nn = R.integer("n", on, n, 2);
    if (nn != 2 && nn != 3) throw ValidationError("heatmap: n must be 2 or 3");

    MapSpec ms;
    ms.nx = static_cast<int>(R.integer("nx", onx, nx, 60));
    ms.ny = static_cast<int>(R.integer("ny", ony, ny, 60));
    ms.kappa = R.real("kappa", okap, kappa, 1.0 / 3.0);
    ms.beta_c = R.real("beta_c", obc, beta_c, 10.0);
    ms.beta_h = R.real("beta_h", obh, beta_h, 1.0);
    if (ms.nx < 2 || ms.nx > 400 || ms.ny < 2 || ms.ny > 400)
      throw ValidationError("heatmap: grid sides must be in [2, 400]");
    if (!(ms.kappa > 0.0 && ms.kappa < 1.0))
      throw ValidationError("heatmap: kappa must lie in (0,1)");
    if (!(ms.beta_c > 0.0) || !(ms.beta_h > 0.0))
      throw ValidationError("heatmap: temperatures must be positive");

    SpectrumAt prov;
    std::function<double(double)> gt_of;
    double axis_cap = 0.0;
    std::string pol_dflt;
    if (nn == 2) {
      const Statistics st = parse_statistics(R.str("stat", ostat, stat, "boson"));
      R.ignore({"transport", "ecut", "window"});
      prov = provider_n2(st, std::min(ms.beta_c, ms.beta_h));
      gt_of = [](double e) { return e > 0.0 ? busch_gt_of_epsilon(0, e) : 0.0; };
      axis_cap = busch_epsilon(0, kGtHardMax);
      pol_dflt = "nm";
    } else {
      const Transport3 tr = parse_transport3(R.str("transport", otr, transport, "boson"));
      long long ec = R.integer("ecut", oecut, ecut, 0);
      const long long win = R.integer("window", owin, window, 16);
      if (ec == 0 && tr != Transport3::boson) ec = 22;  // boson keeps the adaptive cutoff
      if (ec != 0 && (ec < 8 || ec > 100))
        throw ValidationError("heatmap: ecut must be 0 (auto) or in [8, 100]");
      if (win < 4 || win > 32) throw ValidationError("heatmap: window must be in [4, 32]");
      R.ignore({"stat"});
      prov = provider_ed3(tr, static_cast<int>(ec), static_cast<int>(win));
      const int rep_cut = ec != 0 ? static_cast<int>(ec) : 40;
      gt_of = [rep_cut](double e) { return e > 0.0 ? gt_of_eps3p(rep_cut, e) : 0.0; };
      axis_cap = eps3p_max(rep_cut);
      pol_dflt = "local3";
    }
    const double axis_dflt = nn == 2 ? axis_cap : 0.95 * axis_cap;
    ms.eps_i_max = R.real("eps_i_max", oeim, eps_i_max, axis_dflt);
    ms.eps_f_max = R.real("eps_f_max", oefm, eps_f_max, axis_dflt);
    if (!(ms.eps_i_max > 0.0) || !(ms.eps_f_max > 0.0) || ms.eps_i_max > axis_cap ||
        ms.eps_f_max > axis_cap)
      throw ValidationError("heatmap: eps axis bounds must lie in (0, " + csv::fmt(axis_cap) +
                            "] for this medium");
    std::string pol = R.str("polish", opol, polish, "auto");
    if (pol == "auto") pol = pol_dflt;
    R.note_string("heatmap.polish", pol);
    if (pol == "nm") ms.polish = Polish::nm;
    else if (pol == "local3") ms.polish = Polish::local3;
    else if (pol == "none") ms.polish = Polish::none;
    else throw ValidationError("heatmap: polish must be auto, nm, local3 or none");
    R.note_int("threads", cm.threads);
    R.finish();

    const MapResult mr = heatmap(ms, prov, cm.threads);

    write_csv(cm, "heatmap.csv", [&](csv::Writer& wr) {
      csv::config_header(wr, "heatmap", R.resolved(), cm.stamp);
      wr.comment("w_otto = " + csv::fmt(mr.w_otto));
      wr.comment("max eta/eta_O = " + csv::fmt(mr.max_eta.value) + " at eps_i = " +
                 csv::fmt(mr.max_eta.eps_i) + ", eps_f = " + csv::fmt(mr.max_eta.eps_f));
      wr.comment("max W/W_O = " + csv::fmt(mr.max_w.value) + " at eps_i = " +
                 csv::fmt(mr.max_w.eps_i) + ", eps_f = " + csv::fmt(mr.max_w.eps_f));
      wr.comment("dissipator cells (W > 0): " + std::to_string(mr.dissipator_cells));
      wr.comment("ratios are 0 in rows with engine = 0");
      wr.columns({"eps_i", "eps_f", "gt_i", "gt_f", "eta_ratio", "w_ratio", "engine"});
      for (int i = 0; i < ms.nx; ++i)
        for (int j = 0; j < ms.ny; ++j) {
          const std::size_t k = static_cast<std::size_t>(i) * ms.ny + j;
          wr.cell(mr.eps_i[i]).cell(mr.eps_f[j]);
          wr.cell(gt_of(mr.eps_i[i])).cell(gt_of(mr.eps_f[j]));
          wr.cell(mr.eta_ratio[k]).cell(mr.w_ratio[k]);
          wr.cell(static_cast<long long>(mr.engine[k]));
          wr.endrow();
        }
    });
    write_text(cm, "heatmap_plot.py", kHeatmapPlot);

    std::cout << ms.nx << "x" << ms.ny << " map, W_O = " << csv::fmt(mr.w_otto) << "\n"
              << "max eta/eta_O = " << csv::fmt(mr.max_eta.value) << " at (eps_i "
              << csv::fmt(mr.max_eta.eps_i) << ", eps_f " << csv::fmt(mr.max_eta.eps_f) << ")\n"
              << "max W/W_O   = " << csv::fmt(mr.max_w.value) << " at (eps_i "
              << csv::fmt(mr.max_w.eps_i) << ", eps_f " << csv::fmt(mr.max_w.eps_f) << ")\n"
              << "dissipator cells: " << mr.dissipator_cells << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// emw

const char* kEmwPlot = R"PY(#!/usr/bin/env python3
"""Plot efficiency-at-maximum-work curves written by `qotto emw`."""
import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else "emw.csv"
r = np.genfromtxt(path, delimiter=",", names=True, comments="#")
fig, (a, b) = plt.subplots(1, 2, figsize=(10.5, 4.2))
a.plot(r["ratio"], r["emw"], "o-", label="efficiency at maximum work")
a.plot(r["ratio"], r["eta_ca"], "k--", label="Curzon-Ahlborn")
a.plot(r["ratio"], r["eta_carnot"], "k:", label="Carnot")
a.set_xlabel("beta_h / beta_c")
a.set_ylabel("efficiency")
a.legend()
b.plot(r["ratio"], r["kappa"], "s-", label="kappa*")
b.plot(r["ratio"], r["gt_i"], "^-", label="gtilde_i*")
b.plot(r["ratio"], r["gt_f"], "v-", label="gtilde_f*")
b.set_xlabel("beta_h / beta_c")
b.set_ylabel("optimal controls")
b.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print("wrote", out)
)PY";

struct EmwOpts {
  CLI::App* cmd = nullptr;
  long long n = 2, ecut = 0, window = 16, starts = 8, maxfev = 400, rpoints = 18;
  double beta_c = 10.0, rmin = 0.05, rmax = 0.9, eps_hi = -1.0;
  bool pinned = false;
  std::vector<double> ratios;
  std::string stat = "dist", transport = "boson";
  CLI::Option *on = nullptr, *ostat = nullptr, *otr = nullptr, *oecut = nullptr, *owin = nullptr,
              *obc = nullptr, *ormin = nullptr, *ormax = nullptr, *orpts = nullptr,
              *oratios = nullptr, *oehi = nullptr, *opin = nullptr, *ostarts = nullptr,
              *ofev = nullptr;

  void bind(CLI::App& app) {
    cmd = app.add_subcommand("emw", "maximize work over the cycle controls per bath ratio");
    cmd->fallthrough();
    on = cmd->add_option("--n", n, "particle number, 2 or 3");
    ostat = cmd->add_option("--stat", stat, "N=2 statistics: boson | dist");
    otr = cmd->add_option("--transport", transport, "N=3 level pairing: rank | sector | boson");
    oecut = cmd->add_option("--ecut", ecut, "N=3 basis cutoff (0 = per-mode default)");
    owin = cmd->add_option("--window", window, "N=3 transport window in trap quanta");
    obc = cmd->add_option("--beta-c", beta_c, "cold inverse temperature");
    ormin = cmd->add_option("--ratio-min", rmin, "lowest beta_h / beta_c");
    ormax = cmd->add_option("--ratio-max", rmax, "highest beta_h / beta_c");
    orpts = cmd->add_option("--ratio-points", rpoints, "points on the ratio axis");
    oratios = cmd->add_option("--ratios", ratios, "explicit ratio list (overrides the grid)")
                  ->delimiter(',');
    oehi = cmd->add_option("--eps-hi", eps_hi, "upper bound of the shift axis");
    opin = cmd->add_flag("--pinned", pinned, "pin the coupling at zero (trap-only optimum)");
    ostarts = cmd->add_option("--starts", starts, "multistart count");
    ofev = cmd->add_option("--maxfev", maxfev, "objective evaluations per start");
  }

  int run(const Common& cm, Resolver& R) {
    const long long nn = R.integer("n", on, n, 2);
    if (nn != 2 && nn != 3) throw ValidationError("emw: n must be 2 or 3");
    EmwSpec es;
    es.beta_c = R.real("beta_c", obc, beta_c, 10.0);
    es.starts = static_cast<int>(R.integer("starts", ostarts, starts, 8));
    es.maxfev = static_cast<int>(R.integer("maxfev", ofev, maxfev, 400));
    es.seed = cm.seed;
    if (!(es.beta_c > 0.0)) throw ValidationError("emw: beta_c must be positive");
    if (es.starts < 1 || es.starts > 64) throw ValidationError("emw: starts must be in [1, 64]");
    if (es.maxfev < 50 || es.maxfev > 5000)
      throw ValidationError("emw: maxfev must be in [50, 5000]");

    std::vector<double> rats;
    if (R.present("ratios", oratios)) {
      rats = R.reals("ratios", oratios, ratios, {});
      R.ignore({"ratio_min", "ratio_max", "ratio_points"});
    } else {
      const double lo = R.real("ratio_min", ormin, rmin, 0.05);
      const double hi = R.real("ratio_max", ormax, rmax, 0.9);
      const long long np = R.integer("ratio_points", orpts, rpoints, 18);
      if (np > 200) throw ValidationError("emw: ratio_points must be <= 200");
      rats = linear_grid(lo, hi, np, "emw ratio grid");
    }
    if (rats.empty()) throw ValidationError("emw: no bath ratios given");
    for (std::size_t i = 0; i < rats.size(); ++i) {
      if (!(rats[i] > 0.0 && rats[i] < 1.0))
        throw ValidationError("emw: ratios must lie in (0,1)");
      if (i > 0 && rats[i] <= rats[i - 1])
        throw ValidationError("emw: ratios must be strictly increasing");
    }

    double ehi_dflt = 0.0;
    int rep_cut = 0;
    if (nn == 2) {
      const Statistics st = parse_statistics(R.str("stat", ostat, stat, "dist"));
      R.ignore({"transport", "ecut", "window"});
      es.provider = provider_n2(st, es.beta_c * rats.front());
      es.gt_of_eps = [](double e) { return e > 0.0 ? busch_gt_of_epsilon(0, e) : 0.0; };
      ehi_dflt = busch_epsilon(0, kGtHardMax);
    } else {
      const Transport3 tr = parse_transport3(R.str("transport", otr, transport, "boson"));
      long long ec = R.integer("ecut", oecut, ecut, 0);
      const long long win = R.integer("window", owin, window, 16);
      if (ec == 0 && tr != Transport3::boson) ec = 22;
      if (ec != 0 && (ec < 8 || ec > 100))
        throw ValidationError("emw: ecut must be 0 (auto) or in [8, 100]");
      if (win < 4 || win > 32) throw ValidationError("emw: window must be in [4, 32]");
      R.ignore({"stat"});
      es.provider = provider_ed3(tr, static_cast<int>(ec), static_cast<int>(win));
      rep_cut = ec != 0 ? static_cast<int>(ec) : 40;
      es.gt_of_eps = [rep_cut](double e) { return e > 0.0 ? gt_of_eps3p(rep_cut, e) : 0.0; };
      ehi_dflt = 0.9 * eps3p_max(rep_cut);
    }
    const bool pin = R.boolean("pinned", opin, pinned, false);
    es.eps_hi = pin ? 0.0 : R.real("eps_hi", oehi, eps_hi, ehi_dflt);
    if (es.eps_hi < 0.0) throw ValidationError("emw: eps_hi must be >= 0");
    if (nn == 3 && es.eps_hi > eps3p_max(rep_cut))
      throw ValidationError("emw: eps_hi exceeds the tabulated shift range");
    R.note_int("seed", cm.seed);
    R.finish();

    const std::vector<EmwPoint> pts = emw_curve(es, rats);

    write_csv(cm, "emw.csv", [&](csv::Writer& wr) {
      csv::config_header(wr, "emw", R.resolved(), cm.stamp);
      wr.comment("emw: efficiency at the work maximum; quality = 0 marks a non-engine optimum");
      wr.columns({"ratio", "beta_h", "emw", "eta_ca", "eta_carnot", "eta_otto", "kappa", "eps_i",
                  "eps_f", "gt_i", "gt_f", "w", "quality", "evals"});
      for (const EmwPoint& p : pts) {
        wr.cell(p.ratio).cell(p.beta_h).cell(p.eta).cell(p.eta_ca).cell(p.eta_carnot);
        wr.cell(p.eta_otto).cell(p.kappa).cell(p.eps_i).cell(p.eps_f).cell(p.gt_i).cell(p.gt_f);
        wr.cell(p.w).cell(static_cast<long long>(p.quality ? 1 : 0));
        wr.cell(static_cast<long long>(p.evals));
        wr.endrow();
      }
    });
    write_text(cm, "emw_plot.py", kEmwPlot);

    for (const EmwPoint& p : pts)
      std::cout << "ratio " << csv::fmt(p.ratio) << ": emw = " << csv::fmt(p.eta)
                << "  (Curzon-Ahlborn " << csv::fmt(p.eta_ca) << ")  W = " << csv::fmt(p.w)
                << (p.quality ? "" : "  [no engine optimum]") << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// finite-time

const char* kFtPlot = R"PY(#!/usr/bin/env python3
"""Plot finite-time protocol sweeps written by `qotto finite-time`."""
import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1] if len(sys.argv) > 1 else "finite_time.csv"
r = np.genfromtxt(path, delimiter=",", names=True, comments="#", dtype=None, encoding="utf-8")
kinds = sorted(set(r["protocol"].tolist()))
fig, axes = plt.subplots(1, 3, figsize=(13.5, 4.0))
for k in kinds:
    m = r["protocol"] == k
    eng = m & (r["engine"] > 0)
    axes[0].semilogx(r["tau"][eng], r["eta_tau"][eng], "o-", label=k)
    axes[1].semilogx(r["tau"][m], r["p_eff"][m], "o-", label=k)
    axes[2].loglog(r["tau"][m], np.maximum(r["w_irr"][m], 1e-12), "o-", label=k)
axes[0].set_ylabel("cycle efficiency")
axes[1].set_ylabel("effective power")
axes[2].set_ylabel("irreversible work")
for a in axes:
    a.set_xlabel("stroke time tau")
    a.legend()
fig.tight_layout()
out = path.rsplit(".", 1)[0] + ".png"
fig.savefig(out, dpi=160)
print("wrote", out)
)PY";

struct FtOpts {
  CLI::App* cmd = nullptr;
  long long points = 2049, tpoints = 16;
  double kappa = 1.0 / 3.0, beta_c = 10.0, beta_h = 1.0 / 3.0, gti = 1.95, gtf = 1.4;
  double tmin = 1.0, tmax = 100.0, half_width = 12.0, dt = 1e-3, floor_ = 1e-6;
  std::vector<double> taus;
  std::vector<std::string> protocols;
  CLI::Option *okap = nullptr, *obc = nullptr, *obh = nullptr, *ogti = nullptr, *ogtf = nullptr,
              *otmin = nullptr, *otmax = nullptr, *otpts = nullptr, *otaus = nullptr,
              *oprot = nullptr, *ohw = nullptr, *opts = nullptr, *odt = nullptr, *ofloor = nullptr;

  void bind(CLI::App& app) {
    cmd = app.add_subcommand("finite-time",
                             "propagate work strokes at finite speed and sweep the stroke time");
    cmd->fallthrough();
    okap = cmd->add_option("--kappa", kappa, "compression ratio, in (0,1)");
    obc = cmd->add_option("--beta-c", beta_c, "cold inverse temperature");
    obh = cmd->add_option("--beta-h", beta_h, "hot inverse temperature (at the compressed trap)");
    ogti = cmd->add_option("--gti", gti, "coupling at the initial trap");
    ogtf = cmd->add_option("--gtf", gtf, "coupling at the compressed trap (optimal protocol)");
    otmin = cmd->add_option("--tau-min", tmin, "shortest stroke time");
    otmax = cmd->add_option("--tau-max", tmax, "longest stroke time");
    otpts = cmd->add_option("--tau-points", tpoints, "points on the log-spaced stroke-time axis");
    otaus = cmd->add_option("--taus", taus, "explicit stroke times (overrides the grid)")
                ->delimiter(',');
    oprot = cmd->add_option("--protocols", protocols,
                            "comma-separated: optimal | scale_invariant | noninteracting")
                ->delimiter(',');
    ohw = cmd->add_option("--half-width", half_width, "grid half width in oscillator lengths");
    opts = cmd->add_option("--points", points, "grid points (odd)");
    odt = cmd->add_option("--dt", dt, "time step");
    ofloor = cmd->add_option("--floor", floor_, "thermal weight floor per coordinate");
  }

  int run(const Common& cm, Resolver& R) {
    FtConfig fc;
    fc.kappa = R.real("kappa", okap, kappa, 1.0 / 3.0);
    fc.beta_c = R.real("beta_c", obc, beta_c, 10.0);
    fc.beta_h = R.real("beta_h", obh, beta_h, 1.0 / 3.0);
    fc.gt_i = R.real("gtilde_i", ogti, gti, 1.95);
    fc.gt_f = R.real("gtilde_f", ogtf, gtf, 1.4);
    fc.grid.half_width = R.real("half_width", ohw, half_width, 12.0);
    fc.grid.points = static_cast<int>(R.integer("points", opts, points, 2049));
    fc.grid.dt = R.real("dt", odt, dt, 1e-3);
    fc.weight_floor = R.real("weight_floor", ofloor, floor_, 1e-6);

    std::vector<double> ts;
    if (R.present("taus", otaus)) {
      ts = R.reals("taus", otaus, taus, {});
      if (ts.empty()) throw ValidationError("finite-time: no stroke times given");
      R.ignore({"tau_min", "tau_max", "tau_points"});
    } else {
      const double lo = R.real("tau_min", otmin, tmin, 1.0);
      const double hi = R.real("tau_max", otmax, tmax, 100.0);
      const long long np = R.integer("tau_points", otpts, tpoints, 16);
      if (np > 200) throw ValidationError("finite-time: tau_points must be <= 200");
      ts = log_grid(lo, hi, np, "finite-time tau grid");
    }
    const std::vector<std::string> prot =
        R.strs("protocols", oprot, protocols,
               {"optimal", "scale_invariant", "noninteracting"});
    std::vector<ProtocolKind> kinds;
    for (const auto& p : prot) kinds.push_back(parse_protocol(p));
    R.finish();

    double tau_total = 0.0;
    for (double t : ts) tau_total += t;
    const double steps = 2.0 * tau_total * (1.0 + kinds.size()) / fc.grid.dt;
    std::cout << "propagating ~" << static_cast<long long>(steps / 1e6)
              << "M time steps across " << ts.size() << " stroke times x " << kinds.size()
              << " protocols\n";

    const std::vector<PropagationResult> rows = tau_sweep(fc, ts, kinds);

    write_csv(cm, "finite_time.csv", [&](csv::Writer& wr) {
      csv::config_header(wr, "finite-time", R.resolved(), cm.stamp);
      wr.comment("eta_tau is 0 in rows with engine = 0; p_eff = -W / (2 tau)");
      wr.columns({"tau", "protocol", "w_tau", "w_ad", "w_irr", "qh", "qc", "eta_tau", "eta_ad",
                  "p_eff", "engine", "norm_drift", "leakage", "modes_cold", "modes_hot"});
      for (const PropagationResult& p : rows) {
        wr.cell(p.tau).cell(to_string(p.kind)).cell(p.w_tau).cell(p.w_ad).cell(p.w_irr);
        wr.cell(p.qh).cell(p.qc).cell(p.eta_tau).cell(p.eta_ad).cell(p.p_eff);
        wr.cell(static_cast<long long>(p.engine ? 1 : 0)).cell(p.norm_drift).cell(p.leakage);
        wr.cell(static_cast<long long>(p.modes_cold)).cell(static_cast<long long>(p.modes_hot));
        wr.endrow();
      }
    });
    write_text(cm, "finite_time_plot.py", kFtPlot);

    for (const PropagationResult& p : rows)
      std::cout << "tau " << csv::fmt(p.tau) << "  " << to_string(p.kind) << ": W = "
                << csv::fmt(p.w_tau) << "  W_irr = " << csv::fmt(p.w_irr)
                << (p.engine ? "  eta = " + csv::fmt(p.eta_tau) : std::string("  [not an engine]"))
                << "\n";
    return 0;
  }
};

// ---------------------------------------------------------------------------
// selftest

int run_selftest() {
  int fails = 0;
  auto check = [&fails](const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "ok   " : "FAIL ") << name;
    if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++fails;
  };

  {  // noninteracting cycle lands exactly on the textbook efficiency
    const SpectrumAt prov = provider_n2(Statistics::boson, 1.0);
    const CycleResult r = run_cycle(prov(0.0, 1.0), prov(0.0, 3.0), 10.0, 1.0);
    check("otto anchor eta = 1 - kappa", r.engine && std::abs(r.eta - 2.0 / 3.0) < 1e-12,
          "eta = " + csv::fmt(r.eta));
    check("first law on the anchor cycle", r.first_law_rel < 1e-10,
          csv::fmt(r.first_law_rel));
  }
  {  // transcendental level shifts at tabulated couplings
    const double e16 = busch_epsilon(0, 1.6), e50 = busch_epsilon(0, 50.0);
    check("relative level shift at g = 1.6", std::abs(e16 - 0.52) <= 0.01, csv::fmt(e16));
    check("relative level shift at g = 50", std::abs(e50 - 0.98) <= 0.01, csv::fmt(e50));
    const double g3 = busch_gt_of_epsilon(0, busch_epsilon(0, 3.0));
    check("shift inversion round trip", std::abs(g3 - 3.0) < 1e-8, csv::fmt(g3));
  }
  {  // equal endpoint couplings leave the efficiency scale-invariant
    bool ok = true;
    std::string det;
    for (Statistics st : {Statistics::boson, Statistics::dist}) {
      const SpectrumAt prov = provider_n2(st, 1.0);
      const double eps = busch_epsilon(0, 5.0);
      const CycleResult r = run_cycle(prov(eps, 1.0), prov(eps, 3.0), 10.0, 1.0);
      if (std::abs(r.eta - 2.0 / 3.0) >= 1e-9) {
        ok = false;
        det = to_string(st) + " eta = " + csv::fmt(r.eta);
      }
    }
    check("matched-coupling cycle keeps eta = 1 - kappa", ok, det);
  }
  {  // three-body ground state at zero coupling is exact
    const LabeledSpectrum s = ed_spectrum_boson3(12, 0.0, 1.0, 8);
    check("three-boson ground energy at g = 0", std::abs(s.e[0] - 1.5) < 1e-9,
          csv::fmt(s.e[0]));
  }
  {  // grid eigensolver agrees with the analytic contact-interaction level
    const GridSpec g{10.0, 513, 2e-3};
    const GridLevels lv = grid_levels(g, 1.0, 1.95, 2);
    const double e0 = 0.5 + busch_epsilon(0, 1.95);
    check("grid ground level vs analytic", std::abs(lv.e_rich[0] - e0) < 1e-4,
          csv::fmt(lv.e_rich[0]) + " vs " + csv::fmt(e0));
    check("grid odd level is interaction-blind", std::abs(lv.e_rich[1] - 1.5) < 1e-5,
          csv::fmt(lv.e_rich[1]));
  }
  {  // config and CSV plumbing round trips
    const cfg::Config c = cfg::Config::parse("a = 1\n[s]\nb = 2.5\n");
    const bool rt = cfg::Config::parse(c.dump()).dump() == c.dump();
    check("config round trip", rt);
    check("csv 12-digit formatting", csv::fmt(1.0 / 3.0) == "0.333333333333",
          csv::fmt(1.0 / 3.0));
  }

  if (fails) throw AccuracyError(std::to_string(fails) + " selftest check(s) failed");
  std::cout << "all selftest checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Few-body quantum Otto engine: spectra, cycles, landscape sweeps, work\n"
               "optimization and finite-time stroke propagation for contact-interacting\n"
               "particles in a driven harmonic trap."};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  int threads = 1;
  unsigned seed = 42;
  auto* oconf = app.add_option("--config", config_path, "TOML run configuration");
  auto* oout = app.add_option("--out", out_dir, "output directory (created if missing)");
  auto* othr = app.add_option("--threads", threads, "sweep worker threads")
                   ->check(CLI::Range(1, 256));
  auto* osee = app.add_option("--seed", seed, "RNG seed for multistart optimization");

  SpectrumOpts spectrum;
  CycleOpts cycle;
  HeatmapOpts heatmap;
  EmwOpts emw;
  FtOpts ft;
  spectrum.bind(app);
  cycle.bind(app);
  heatmap.bind(app);
  emw.bind(app);
  ft.bind(app);
  auto* selftest = app.add_subcommand("selftest", "quick numerical sanity checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Common cm;
    if (oconf->count()) cm.file = cfg::Config::parse_file(config_path);
    if (cm.file.has("out")) {
      const std::string v = cm.file.get_string("out");
      if (!oout->count()) out_dir = v;
    }
    if (cm.file.has("threads")) {
      const long long v = cm.file.get_int("threads");
      if (!othr->count()) threads = static_cast<int>(v);
    }
    if (cm.file.has("seed")) {
      const long long v = cm.file.get_int("seed");
      if (!osee->count()) seed = static_cast<unsigned>(v);
    }
    if (threads < 1 || threads > 256) throw ValidationError("threads must be in [1, 256]");
    cm.out_dir = out_dir;
    cm.threads = threads;
    cm.seed = seed;
    cm.stamp = utc_stamp();

    if (*spectrum.cmd) {
      Resolver r(cm.file, "spectrum");
      return spectrum.run(cm, r);
    }
    if (*cycle.cmd) {
      Resolver r(cm.file, "cycle");
      return cycle.run(cm, r);
    }
    if (*heatmap.cmd) {
      Resolver r(cm.file, "heatmap");
      return heatmap.run(cm, r);
    }
    if (*emw.cmd) {
      Resolver r(cm.file, "emw");
      return emw.run(cm, r);
    }
    if (*ft.cmd) {
      Resolver r(cm.file, "finite-time");
      return ft.run(cm, r);
    }
    if (*selftest) return run_selftest();
    throw ValidationError("no command selected");
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
