import numpy as np
import pytest

import horizonlab as hl


def test_catalog_is_listed():
    names = hl.scenario_names()
    assert "minkowski_box" in names
    assert "cone_ballet" in names


def test_minkowski_masks_have_grid_shape():
    m = hl.build("minkowski_box", resolution=12)
    assert m.shape == (12, 12)
    for name in ("L", "U", "E", "C", "BH", "V+", "V-"):
        mask = m.mask(name)
        assert mask.shape == m.shape
        assert mask.dtype == np.bool_


def test_inclusions_hold_on_random_window():
    m = hl.build("random", resolution=12, seed=5)
    lower, upper, event = m.mask("L"), m.mask("U"), m.mask("E")
    assert not np.any(lower & ~upper)
    assert not np.any(upper & ~event)


def test_flat_distance_matches_straight_line():
    m = hl.build("minkowski_box", resolution=12)
    d = m.lorentzian_distance((0, 5), (8, 5))
    assert d == pytest.approx(8 * 2.0 / 12)
    assert m.lorentzian_distance((8, 5), (0, 5)) is None


def test_escape_curve_on_flat_window():
    m = hl.build("minkowski_box", resolution=24)
    assert m.escape_curve_exists((2, 12), (6, 12))


def test_bad_parameters_raise_value_error():
    with pytest.raises(ValueError):
        hl.build("no_such_scenario")
    with pytest.raises(ValueError):
        hl.build("minkowski_box", params={"bogus": "1"})


def test_cone_ballet_has_a_strong_killing_horizon():
    m = hl.build("cone_ballet", resolution=32)
    kh = m.killing_horizon("dt")
    assert kh["kind"] == "strong"
    assert not np.any(m.mask("U"))
    assert not np.any(m.mask("E"))


def test_audit_reports_checks():
    m = hl.build("minkowski_box", resolution=16)
    checks = m.audit("minkowski_box")
    assert checks
    assert all(c["holds"] for c in checks)


def test_search_flags_the_open_inclusion():
    result = hl.counterexample_search("U<=C", family="random", resolution=12, budget=4)
    assert result["examined"] == 4
    assert result["open_remark"]


def test_cli_exit_codes(tmp_path):
    code, _, _ = hl.run_cli(["validate", "--scenario", "minkowski_box", "--resolution", "8",
                             "--out-dir", str(tmp_path)])
    assert code == 0
    code, _, err = hl.run_cli(["validate", "--scenario", "nowhere"])
    assert code == 4
    assert "nowhere" in err
