"""Catalog integrity, scan orchestration, reports and the CLI."""

import json
import random

import pytest

from qks.catalog import (
    CatalogError,
    make_case,
    matched_inner_pair,
    sample_point,
    sample_za_values,
)
from qks.cli import main
from qks.fiber import build_fiber
from qks.scans import (
    auslander_check,
    azumaya_scan,
    center_report,
    emit_report,
    fiber_report,
    freeness_scan,
    invariants_report,
    series_check,
)


ALL_CASE_ARGS = [
    ("0", dict(localization="none")),
    ("0", dict(localization="full")),
    ("i", dict(n=2, k=2)),
    ("i", dict(n=3, k=2)),
    ("i", dict(n=2, k=4)),
    ("i", dict(n=2, k=2, localization="none")),
    ("ii", dict(localization="none")),
    ("ii", dict(localization="torus")),
    ("ii", dict(localization="full")),
    ("iii", dict(n=2)),
    ("iii", dict(n=3)),
    ("iii", dict(n=3, localization="torus")),
    ("iii", dict(n=4, localization="none")),
    ("iv", dict()),
]


@pytest.mark.parametrize("case_id,kwargs", ALL_CASE_ARGS)
def test_catalog_cases_construct(case_id, kwargs):
    case = make_case(case_id, **kwargs)
    assert case.ring is not None
    if case.presentation is not None:
        # construction already ran validate(); spot-check homogeneity
        assert all(g.is_homogeneous() for g in case.presentation.gens.values())


def test_catalog_rejects_bad_arguments():
    with pytest.raises(CatalogError):
        make_case("v")
    with pytest.raises(CatalogError):
        make_case("iii")
    with pytest.raises(CatalogError):
        make_case("i", n=2)
    with pytest.raises(CatalogError):
        make_case("0", localization="torus")


def test_sampling_is_deterministic():
    case = make_case("ii", localization="full")
    first, second = (sample_point(case, random.Random(5)).values for _ in range(2))
    assert first["s2"] == second["s2"] and first["y"] == second["y"]
    vals1 = sample_za_values(case, random.Random(9))
    vals2 = sample_za_values(case, random.Random(9))
    assert vals1 == vals2


def test_sampled_points_respect_localization():
    case = make_case("ii", localization="full")
    rng = random.Random(0)
    for _ in range(20):
        v = sample_point(case, rng).values
        assert not v["y"].is_zero()
        assert not (v["s2"] * v["s2"] - v["y"] * 4).is_zero()


def test_stabilized_sampling_rejected_on_full_localization():
    case = make_case("ii", localization="full")
    with pytest.raises(CatalogError):
        sample_point(case, random.Random(0), stabilized=True)


def test_azumaya_scan_positive():
    case = make_case("0", localization="full")
    rep = azumaya_scan(case, samples=5, seed=2)
    assert rep.verdict == "azumaya-consistent(2)"
    assert rep.passed is True
    assert rep.exit_code == 0
    assert len(rep.body["points"]) == 5


def test_azumaya_scan_negative_control():
    rep = azumaya_scan(make_case("ii", localization="torus"), samples=6, seed=2)
    assert rep.verdict == "not-azumaya(witnessed)"
    assert rep.passed is True
    bad = [p for p in rep.body["points"] if p["certificate"] != "central-simple"]
    assert bad and all("witness" in p for p in bad)


def test_azumaya_scan_not_applicable():
    rep = azumaya_scan(make_case("iv"), samples=2, seed=0)
    assert rep.verdict.startswith("not-applicable")
    assert rep.exit_code == 2
    rep = azumaya_scan(make_case("i", n=2, q="2"), samples=2, seed=0)
    assert rep.verdict.startswith("not-applicable")


def test_freeness_cross_references_azumaya():
    # free action and constant matrix fibers co-occur on the X-outer cases,
    # sampled in both directions
    for case_id, kwargs in [("0", dict(localization="full")),
                            ("0", dict(localization="none")),
                            ("ii", dict(localization="full")),
                            ("ii", dict(localization="torus")),
                            ("iii", dict(n=3, localization="full")),
                            ("iii", dict(n=3, localization="torus"))]:
        case = make_case(case_id, **kwargs)
        free_rep = freeness_scan(case, samples=9, seed=4)
        scan_rep = azumaya_scan(case, samples=6, seed=4)
        assert free_rep.passed is True, (case.label, free_rep.verdict)
        assert scan_rep.passed is True, (case.label, scan_rep.verdict)
        assert (free_rep.verdict == "free") == scan_rep.verdict.startswith("azumaya-consistent")


def test_freeness_not_applicable_cases():
    assert freeness_scan(make_case("iii", n=2), 3, 0).exit_code == 2  # inner part
    assert freeness_scan(make_case("iv"), 3, 0).exit_code == 2


def test_matched_inner_pair_ranks():
    rng = random.Random(12)
    ring_a, rec_a, ring_t, rec_t, point = matched_inner_pair(rng)
    fa = build_fiber(ring_a, None, rec_a)
    ft = build_fiber(ring_t, point, rec_t)
    assert fa.dim == ft.dim == 4


def test_json_reports_are_deterministic():
    case = make_case("ii", localization="full")
    texts = [emit_report(azumaya_scan(case, 4, seed=9), "json") for _ in range(2)]
    assert texts[0] == texts[1]
    parsed = json.loads(texts[0])
    assert set(parsed) == {"case", "params", "seed", "conductor", "points",
                           "verdict", "expected_d", "pass"}
    for rec in parsed["points"]:
        assert "values" in rec and "fiber_dim" in rec and "certificate" in rec
        assert "d" in rec or "witness" in rec


def test_emit_report_writes_file(tmp_path):
    case = make_case("0", localization="full")
    path = tmp_path / "scan.json"
    emit_report(azumaya_scan(case, 2, seed=1), "json", str(path))
    data = json.loads(path.read_text())
    assert data["pass"] is True


def test_center_report_catalog_cases():
    rep = center_report(make_case("ii", localization="none"), 8)
    assert rep.passed is True and rep.body["generators_verified"] is True
    assert rep.body["dims"] == {"0": 1, "2": 1, "4": 2, "6": 2, "8": 3}
    rep = center_report(make_case("i", n=2, k=2), None)
    assert rep.passed is True


def test_laurent_center_case_i_32():
    # Z(T') = k[u^{+-l}, ((uv)^{-l/n} g^{l/k})^{+-1}] for n=3, k=2, l=6,
    # certified over the window 2l
    from qks.skew import verify_generating_set
    case = make_case("i", n=3, k=2)
    assert verify_generating_set(case.presentation, 12)


def test_invariants_report():
    rep = invariants_report(make_case("ii", localization="none"), 4)
    assert rep.body["dims"] == {"0": 1, "1": 1, "2": 1, "3": 2, "4": 3}


def test_fiber_report_expected_rank():
    case = make_case("ii", localization="full")
    values = {n: v for n, v in zip(("s2", "y"),
              sample_point(case, random.Random(3)).values.values())}
    rep = fiber_report(case, sample_point(case, random.Random(3)).values)
    assert rep.passed is True and rep.verdict == "central-simple(4)"


def test_auslander_positive_small():
    for cid in ("ii", "iv"):
        rep = auslander_check(make_case(cid, localization="none"), degree=2, guard=4)
        assert rep.verdict == "agree"
        for row in rep.body["degrees"]:
            assert row["dim_hom"] == row["dim_skew_ring"] == 2 * (row["j"] + 1)
            assert row["stable"] and row["injective"]


def test_auslander_requires_graded_case():
    with pytest.raises(CatalogError):
        auslander_check(make_case("ii", localization="full"), 2, 4)


def test_series_check_cases():
    assert series_check("iii", 2, 10).passed is True
    assert series_check("i", 2, 10).passed is True
    with pytest.raises(CatalogError):
        series_check("iv", 2, 10)


# -- CLI ----------------------------------------------------------------------

def test_cli_center(capsys):
    code = main(["center", "--case", "iii", "--n", "3", "--localization", "none",
                 "--degree", "6"])
    out = capsys.readouterr().out
    assert code == 0
    assert "matches-catalog-generators" in out


def test_cli_scan_json(capsys):
    code = main(["scan", "--case", "0", "--localization", "full", "--samples", "3",
                 "--seed", "7", "--format", "json"])
    out = capsys.readouterr().out
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] == "azumaya-consistent(2)"
    assert data["pass"] is True


def test_cli_fiber_point_parsing(capsys):
    code = main(["fiber", "--case", "0", "--localization", "full",
                 "--point", "s=3,m=2"])
    assert code == 0
    assert "central-simple" in capsys.readouterr().out


def test_cli_molien(capsys):
    code = main(["molien", "--case", "iii", "--m", "2", "--degree", "8"])
    assert code == 0
    assert "match" in capsys.readouterr().out


def test_cli_invariants_and_auslander(capsys):
    code = main(["invariants", "--case", "i", "--n", "3", "--k", "2",
                 "--localization", "none", "--degree", "4"])
    assert code == 0
    assert "degree : dimension" in capsys.readouterr().out
    code = main(["auslander", "--case", "iv", "--degree", "2", "--guard", "4"])
    assert code == 0
    assert "agree" in capsys.readouterr().out


def test_cli_exit_codes(capsys):
    # not-applicable scan: inconclusive exit status
    assert main(["scan", "--case", "iv", "--samples", "2", "--seed", "0"]) == 2
    capsys.readouterr()
    # malformed point: error path
    assert main(["fiber", "--case", "0", "--point", "nonsense"]) == 2
    assert "error:" in capsys.readouterr().err


def test_cli_freeness_negative(capsys):
    code = main(["freeness", "--case", "0", "--localization", "none",
                 "--samples", "9", "--seed", "4"])
    out = capsys.readouterr().out
    assert code == 0  # expected-not-free is a pass for the negative control
    assert "not-free" in out


def test_cli_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code = main(["scan", "--case", "0", "--localization", "full", "--samples", "2",
                 "--seed", "1", "--format", "json", "--out", str(path)])
    assert code == 0
    assert json.loads(path.read_text())["pass"] is True
