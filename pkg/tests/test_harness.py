import json
from fractions import Fraction
from itertools import combinations

import pytest

from ffdio import linalg
from ffdio.harness import (
    ConfigError,
    ProbeRefusal,
    admissible_subsets,
    generate,
    load_experiment,
    parse_config,
    run_reduction,
    run_verify,
    run_wang_check,
)


def base_config(**overrides):
    data = {
        "M": 1,
        "q": 3,
        "S": ["t", "inf"],
        "points": ["1", "t^a"],
        "hyperplanes": [["1", "0"], ["0", "1"], ["1", "-1"]],
        "window": [1, 20],
        "epsilon": "1/2",
    }
    data.update(overrides)
    return data


class TestConfigValidation:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(base_config()))
        cfg = load_experiment(path, "verify")
        assert cfg.m == 1 and cfg.q == 3
        assert cfg.epsilon == Fraction(1, 2)
        assert cfg.window == (1, 20)

    @pytest.mark.parametrize(
        "overrides, field",
        [
            ({"M": 0}, "M"),
            ({"q": 13}, "q"),
            ({"S": []}, "S"),
            ({"S": ["t^2 - 1"]}, "S[0]"),
            ({"points": ["1"]}, "points"),
            ({"points": ["1", "t^"]}, "points[1]"),
            ({"hyperplanes": [["1", "0"]]}, "hyperplanes"),
            ({"hyperplanes": [["1"], ["0", "1"], ["1", "-1"]]}, "hyperplanes[0]"),
            ({"window": [5, 1]}, "window"),
            ({"epsilon": "0"}, "epsilon"),
            ({"epsilon": "x"}, "epsilon"),
            ({"thresholds": {"tail_fraction": "2"}}, "thresholds.tail_fraction"),
            ({"infinite_subset": "0"}, "infinite_subset"),
        ],
    )
    def test_field_errors(self, overrides, field):
        with pytest.raises(ConfigError) as exc:
            parse_config(base_config(**overrides))
        assert str(exc.value).startswith(field)

    def test_q_constraint_is_mode_specific(self):
        cfg = base_config(q=2, hyperplanes=[["1", "0"], ["0", "1"]])
        parse_config(cfg)  # fine without a mode
        parse_config(cfg, "wang")  # fixed-target runs allow q = M+1
        with pytest.raises(ConfigError, match="q"):
            parse_config(cfg, "verify")
        with pytest.raises(ConfigError, match="q"):
            parse_config(cfg, "reduce")

    def test_general_position_spot_check(self):
        bad = base_config(hyperplanes=[["1", "0"], ["2", "0"], ["0", "1"]])
        with pytest.raises(ConfigError, match="general position"):
            parse_config(bad)


class TestGenerate:
    def test_fixed_fermat(self):
        cfg = generate("fixed-fermat", window=(1, 30))
        assert cfg.m == 1 and cfg.q == 3
        assert cfg.hyperplanes == (("1", "0"), ("0", "1"), ("1", "-1"))

    def test_slow_coeff(self):
        cfg = generate("slow-coeff")
        assert (cfg.m, cfg.q) == (2, 5)
        assert cfg.window == (8, 256)

    def test_random_gp_deterministic(self):
        a = generate("random-gp", m=2, q=5, seed=11)
        b = generate("random-gp", m=2, q=5, seed=11)
        assert a == b
        c = generate("random-gp", m=2, q=5, seed=12)
        assert a.hyperplanes != c.hyperplanes

    def test_unknown_profile(self):
        with pytest.raises(ConfigError):
            generate("nope")


class TestRunVerify:
    def test_fermat_sharpness(self):
        cfg = generate("fixed-fermat", window=(1, 40))
        report = run_verify(cfg)
        assert report.verdict == "PASS"
        assert report.fitted_constant == 0
        for row in report.rows:
            assert not row.excluded
            assert row.ratio == 2

    def test_excluded_indices_listed(self):
        # The third hyperplane passes through the point exactly at alpha = 5.
        cfg = parse_config(
            base_config(
                hyperplanes=[["1", "0"], ["0", "1"], ["t^5", "-1"]],
                window=[1, 12],
                thresholds={"smallness_delta": "3/4"},
            ),
            "verify",
        )
        report = run_verify(cfg)
        excluded = [r.alpha for r in report.rows if r.excluded]
        assert excluded == [5]
        assert "hyperplane 2" in next(r.note for r in report.rows if r.excluded)

    def test_infinite_subset_mode(self):
        cfg = parse_config(
            base_config(
                hyperplanes=[["1", "0"], ["0", "1"], ["t^5", "-1"]],
                window=[1, 12],
                thresholds={"smallness_delta": "3/4"},
                infinite_subset="1",
            ),
            "verify",
        )
        report = run_verify(cfg)
        # One excluded index means not all of the window can satisfy the bound.
        assert report.verdict == "FAIL"
        assert report.exit_code == 2

    def test_probe_refusal_on_fast_targets(self):
        cfg = parse_config(
            base_config(
                q=4,
                hyperplanes=[["1", "0"], ["0", "1"], ["1", "t^a"], ["1", "-1"]],
                window=[2, 30],
            )
        )
        with pytest.raises(ProbeRefusal) as exc:
            run_verify(cfg)
        assert "smallness" in str(exc.value)
        assert not exc.value.probes["smallness"]["holds"]

    def test_threads_match_serial(self):
        cfg = generate("fixed-fermat", window=(1, 25))
        serial = run_verify(cfg)
        import dataclasses

        threaded = run_verify(dataclasses.replace(cfg, threads=4))
        assert serial.to_csv() == threaded.to_csv()


class TestRunWang:
    def test_rejects_moving_coefficients(self):
        cfg = parse_config(
            base_config(
                q=4,
                hyperplanes=[["1", "0"], ["0", "1"], ["1", "t^ilog2(a)"], ["1", "-1"]],
                window=[4, 40],
            )
        )
        with pytest.raises(ConfigError, match="constant"):
            run_wang_check(cfg)

    def test_matches_verify_on_fermat(self):
        cfg = generate("fixed-fermat", window=(1, 40))
        wang = run_wang_check(cfg)
        verify = run_verify(cfg)
        assert wang.verdict == "PASS"
        assert wang.fitted_constant == verify.fitted_constant == 0
        # On this instance the subset maximum equals the plain sum.
        for wr, vr in zip(wang.rows, verify.rows):
            assert wr.lhs == vr.lhs

    def test_admissible_subsets_against_minor_oracle(self):
        cfg = generate("random-gp", m=2, q=6, seed=5)
        forms = [
            cfg.hyperplane_family().eval_form(j, cfg.window[0]) for j in range(cfg.q)
        ]
        subsets = admissible_subsets(forms, cfg.m)
        oracle = _bruteforce_subsets(forms, cfg.m)
        assert subsets == oracle


def _bruteforce_subsets(forms, m):
    """Independent subsets detected by scanning square minors with the
    Leibniz-formula determinant."""
    out = []
    ncols = len(forms[0].coeffs)
    for size in range(1, m + 2):
        for subset in combinations(range(len(forms)), size):
            mat = [list(forms[j].coeffs) for j in subset]
            independent = False
            for cols in combinations(range(ncols), size):
                minor = [[row[c] for c in cols] for row in mat]
                if linalg.det_cofactor(minor) != 0:
                    independent = True
                    break
            if independent:
                out.append(subset)
    return out


class TestRunReduction:
    def test_fermat(self):
        cfg = generate("fixed-fermat", window=(1, 25))
        report = run_reduction(cfg)
        assert report.verdict == "PASS"
        assert report.extra["s"] == 0
        assert report.extra["l_s"] == 1 and report.extra["l_s1"] == 1
        assert report.extra["local_inequality_checks"] == 2 * 25
        assert report.extra["selections"] == {"t": [1, 0], "inf": [0, 1]}

    def test_moving_instance(self):
        cfg = parse_config(
            base_config(
                q=4,
                hyperplanes=[["1", "0"], ["0", "1"], ["1", "t^ilog2(a)"], ["1", "-1"]],
                window=[8, 80],
            ),
            "reduce",
        )
        report = run_reduction(cfg)
        assert report.verdict == "PASS"
        assert report.extra["l_s1"] == 2  # basis {1, t^ilog2(a)}


class TestReports:
    def test_csv_shape(self):
        cfg = generate("fixed-fermat", window=(1, 10))
        report = run_verify(cfg)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == "alpha,h_x,lhs,rhs,ratio,excluded,lam_1,lam_2,lam_3"
        assert len(lines) == 11
        assert lines[1].split(",")[:6] == ["1", "1", "2", "5/2", "2", "0"]

    def test_json_mirror(self):
        cfg = generate("fixed-fermat", window=(1, 10))
        report = run_verify(cfg)
        payload = json.loads(report.to_json())
        assert payload["verdict"] == "PASS"
        assert payload["fitted_constant"] == "0"
        assert payload["config"]["M"] == 1
        assert payload["probes"]["general_position"]["holds"] is True
        assert len(payload["rows"]) == 10

    def test_determinism(self):
        a = run_verify(generate("fixed-fermat", window=(1, 15)))
        b = run_verify(generate("fixed-fermat", window=(1, 15)))
        assert a.to_csv() == b.to_csv()
        assert a.to_json() == b.to_json()
