import json

import numpy as np
import pytest
from click.testing import CliRunner

from meshrep.bimod import identity_prof
from meshrep.cli import main
from meshrep.derived import Complex, normalize
from meshrep.linalg import GF, QQ, Matrix
from meshrep.rep import Rep, random_interval_sum, random_rep
from meshrep.serialize import (bimodule_from_json, bimodule_to_json,
                               complex_from_json, complex_to_json, dumps,
                               rep_from_json, rep_to_json)
from meshrep.shapes import LineQuiver

F = GF(32003)


def test_rep_roundtrip():
    rng = np.random.default_rng(3)
    for field in (F, QQ):
        q = LineQuiver(3, "FB")
        x = random_rep(q, field, rng)
        back = rep_from_json(json.loads(dumps(rep_to_json(x))))
        assert back.dims == x.dims
        for cov in q.arrows():
            assert back.mats[cov] == x.mats[cov]


def test_complex_roundtrip():
    rng = np.random.default_rng(5)
    q = LineQuiver.linear(2)
    x, _ = random_interval_sum(q, F, rng)
    c = Complex.from_rep(x).shift(-2)
    back = complex_from_json(json.loads(dumps(complex_to_json(c))))
    assert normalize(q, back) == normalize(q, c)


def test_bimodule_roundtrip():
    q = LineQuiver(3, "BF")
    b = identity_prof(q, F)
    back = bimodule_from_json(json.loads(dumps(bimodule_to_json(b))))
    assert back.entry_pattern() == b.entry_pattern()


def test_cli_decompose_121():
    runner = CliRunner()
    q = LineQuiver.linear(3)
    rep = Rep(q.poset(), F, {1: 1, 2: 2, 3: 1},
              {(1, 2): Matrix.from_rows(F, [[1], [0]]),
               (2, 3): Matrix.from_rows(F, [[0, 1]])})
    payload = dumps(rep_to_json(rep))
    res = runner.invoke(main, ["decompose", "-q", "A3"], input=payload)
    assert res.exit_code == 0
    assert "M[1,2]" in res.output and "M[2,3]" in res.output


def test_cli_ar_quiver_zero_and_determinism():
    runner = CliRunner()
    res1 = runner.invoke(main, ["ar-quiver", "-q", "A2"])
    res2 = runner.invoke(main, ["ar-quiver", "-q", "A2"])
    assert res1.exit_code == 0
    assert res1.output == res2.output
    assert all('label="0"' in line for line in res1.output.splitlines()
               if "label" in line)


def test_cli_check_exit_codes():
    runner = CliRunner()
    res = runner.invoke(main, ["check", "golden"])
    assert res.exit_code == 0 and "[PASS]" in res.output
    res2 = runner.invoke(main, ["check", "no-such-suite"])
    assert res2.exit_code == 2


def test_cli_usage_error():
    runner = CliRunner()
    res = runner.invoke(main, ["reflect", "-q", "A3", "--interval", "1,1"])
    assert res.exit_code == 2  # missing --vertex


def test_cli_seed_env(monkeypatch):
    from meshrep.suites import run_seed
    monkeypatch.setenv("MESHREP_SEED", "424242")
    assert run_seed(7) == 424242
    monkeypatch.delenv("MESHREP_SEED")
    assert run_seed(7) == 7
