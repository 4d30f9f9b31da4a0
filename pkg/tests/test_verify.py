import sys

import numpy as np
import pytest

from ptreal.cli import main
from ptreal.verify import GROUP_NAMES, run_verify


def test_all_groups_pass():
    results = run_verify()
    assert [r.group for r in results] == list(GROUP_NAMES)
    for res in results:
        assert res.passed, f"{res.group}: {res.detail}"


def test_single_group_selection():
    results = run_verify(["parity"])
    assert len(results) == 1
    assert results[0].group == "parity"
    assert results[0].passed


def test_unknown_group_rejected():
    with pytest.raises(ValueError, match="unknown"):
        run_verify(["made_up"])


def test_injected_sign_bug_is_caught(monkeypatch, capsys):
    # a sign bug in the diagonal phase unitary must trip the U^2=P check
    realify_module = sys.modules["ptreal.realify"]

    def broken_phase_unitary(n_basis):
        u = np.ones(n_basis, dtype=complex)
        u[1::2] = -1.0
        return u

    monkeypatch.setattr(realify_module, "phase_unitary", broken_phase_unitary)
    results = run_verify(["phase_unitary"])
    assert not results[0].passed
    assert "U^2=P" in results[0].detail

    code = main(["verify", "--group", "phase_unitary"])
    captured = capsys.readouterr()
    assert code == 7
    assert "U^2=P" in captured.err
