import math

import pytest

import heatbound as hb


def test_entropy_and_bounds():
    assert hb.von_neumann_entropy((0.0, 0.0, 0.0)) == pytest.approx(math.log(2.0))
    assert hb.thermodynamic_bound(1.0) == 0.0
    assert hb.entropic_bound((0.0, 0.0, 0.5), (0.0, 0.0, 0.5)) == pytest.approx(0.0, abs=1e-15)
    assert hb.tighter_bound(0.2, 0.1) == "entropic"
    with pytest.raises(ValueError):
        hb.von_neumann_entropy((0.0, 0.0, 1.5))


def test_grid():
    grid = hb.bloch_disk_grid()
    assert len(grid) == 720
    assert all(x * x + z * z <= 0.95**2 + 1e-12 for x, _, z in grid)


def test_uncoupled_evolution_precesses():
    samples = hb.evolve((0.5, 0.0, 0.2), 0.0, 3.0, coupling=0.0)
    for t, v in samples:
        assert v[0].real == pytest.approx(0.5 * math.cos(t), abs=1e-9)
        assert v[3].real == pytest.approx(1.0, abs=1e-12)


def test_engine_bounds_and_crossover():
    engine = hb.BoundsEngine(horizon=10.0)
    s = engine.sample((0.0, 0.0, 0.28), 10.0)
    assert s["B_en"] <= s["beta_Q"] + 1e-6
    assert s["B_th"] <= s["beta_Q"] + 1e-6
    first, _ = engine.crossover((0.0, 0.0, -0.5))
    assert first is not None and 3.0 < first < 6.0
    rows = engine.sweep(t_bar=10.0, radial=3, angular=4)
    assert len(rows) == 12
    assert all(r["B_en"] <= r["beta_Q"] + 1e-6 for r in rows)
    assert len(engine.crossover_map(radial=2, angular=2, r_max=0.5)) == 4


def test_oracle():
    terms = hb.landauer_terms((0.0, 0.0, -0.5), 3.0, [(1.0, 0.05)])
    assert abs(terms["residual"]) < 1e-8
    assert terms["mutual_information"] >= 0.0
    assert hb.exact_modified_trace((0.0, 0.0, 0.28), 1.0, 3.0, [(1.0, 0.05)]) == pytest.approx(
        0.993849713088857, abs=1e-12
    )
    with pytest.raises(ValueError):
        hb.landauer_terms((0.0, 0.0, 0.0), 1.0, [(1.0, 0.05)], n_max=3)
    rows, ratios = hb.scaling_report((0.3, 0.0, 0.28), [0.5, 1.0, 1.5, 2.0], [0.02, 0.04])
    assert len(rows) == 2
    assert 8.0 <= ratios[0]["vz"] <= 32.0
