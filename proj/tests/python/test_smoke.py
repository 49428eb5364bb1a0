import math

import pytest

import qotto


def test_version():
    assert qotto.__version__ == qotto.version()
    assert qotto.__version__.count(".") == 2


def test_contact_shift_anchors():
    assert qotto.busch_epsilon(0, 0.0) == 0.0
    assert qotto.busch_epsilon(0, 1.6) == pytest.approx(0.52, abs=0.01)
    assert qotto.busch_epsilon(0, 50.0) == pytest.approx(0.98, abs=0.01)
    eps = qotto.busch_epsilon(0, 3.0)
    assert qotto.busch_gt_of_epsilon(0, eps) == pytest.approx(3.0, rel=1e-9)


def test_otto_anchor_cycle():
    beta_c, kappa = 10.0, 1.0 / 3.0
    prov = qotto.provider_n2(qotto.Statistics.boson, 1.0)  # shared depth across endpoints
    c = qotto.run_cycle(prov(0.0, 1.0), prov(0.0, 1.0 / kappa), beta_c, 1.0)
    assert c.engine
    assert c.eta == pytest.approx(qotto.otto_eta(kappa), abs=1e-12)
    assert c.first_law_rel < 1e-10


def test_label_mismatch_raises():
    si = qotto.spectrum_n2(qotto.Statistics.boson, 1.0, 1.0, 1.0)
    sf = qotto.spectrum_n2(qotto.Statistics.dist, 1.0, 3.0, 1.0)
    with pytest.raises(qotto.ValidationError):
        qotto.run_cycle(si, sf, 10.0, 1.0)
    assert issubclass(qotto.ValidationError, ValueError)


def test_thermal_tail_guard():
    s = qotto.LabeledSpectrum()
    s.e = [0.5, 1.5]
    s.w = [1.0, 1.0]
    s.label = ["a", "b"]
    s.omega = 1.0
    with pytest.raises(qotto.AccuracyError):
        qotto.thermal_state(s, 0.1)  # two levels cannot hold a hot state
    t = qotto.thermal_state(s, 40.0)
    assert t.p[0] == pytest.approx(1.0, abs=1e-12)


def test_heatmap_native_provider():
    prov = qotto.provider_n2(qotto.Statistics.boson, 10.0)
    ms = qotto.MapSpec()
    ms.nx = ms.ny = 6
    ms.eps_i_max = ms.eps_f_max = 0.9
    ms.polish = qotto.Polish.none
    r = qotto.heatmap(ms, prov, threads=2)
    assert len(r.w_ratio) == 36
    assert r.w_otto < 0
    assert all(f in (0, 1) for f in r.engine)
    # boson map: interactions never hurt the work output
    assert min(w for w, f in zip(r.w_ratio, r.engine) if f) >= 1.0 - 1e-6
    assert r.max_w.value >= 1.0


def test_heatmap_python_provider_matches():
    native = qotto.provider_n2(qotto.Statistics.boson, 10.0)
    ms = qotto.MapSpec()
    ms.nx = ms.ny = 4
    ms.polish = qotto.Polish.none
    a = qotto.heatmap(ms, native, threads=2)
    b = qotto.heatmap(ms, lambda eps, omega: native(eps, omega), threads=2)
    assert a.w_ratio == pytest.approx(b.w_ratio, rel=1e-12)


def test_three_body_ground():
    spec = qotto.BasisSpec()
    spec.n = 3
    spec.e_cut = 12
    spec.stat = qotto.Statistics.boson
    free = qotto.diagonalize(spec, 0.0)
    assert free.e[0] == pytest.approx(1.5, abs=1e-9)
    assert qotto.epsilon_3p(12, 1.0) > 0.1
    s3 = qotto.ed_spectrum_boson3(12, 1.0, 1.0, 8)
    assert s3.e[0] > 1.5 and len(s3) > 3


def test_work_maximization_quick():
    es = qotto.EmwSpec()
    es.provider = qotto.provider_n2(qotto.Statistics.boson, 1.0)
    es.gt_of_eps = lambda e: qotto.busch_gt_of_epsilon(0, e)
    es.beta_c = 1.0
    es.ratio = 0.5
    es.eps_hi = 0.0  # pinned coupling
    es.starts = 4
    es.maxfev = 200
    p = qotto.maximize_work(es)
    assert p.quality
    assert p.w < 0
    assert p.eta == pytest.approx(qotto.curzon_ahlborn(p.beta_h, es.beta_c), abs=0.02)


def test_grid_levels_coarse():
    g = qotto.GridSpec()
    g.half_width, g.points = 9.0, 385
    lv = qotto.grid_levels(g, 1.0, 0.0, 3)
    assert lv.e_rich[0] == pytest.approx(0.5, abs=1e-4)
    assert lv.e_rich[2] == pytest.approx(2.5, abs=1e-3)


def test_finite_time_coarse():
    cfg = qotto.FtConfig()
    cfg.grid.half_width, cfg.grid.points, cfg.grid.dt = 10.0, 513, 5e-3
    r = qotto.finite_time_cycle(cfg, 1.0, qotto.ProtocolKind.noninteracting)
    assert math.isfinite(r.w_tau) and math.isfinite(r.qh)
    assert r.w_irr >= -1e-6
    assert r.norm_drift < 1e-6
    assert r.modes_cold >= 2
