import math
import os
import subprocess

import pytest

import becpolaron as bp


def gas_params(cutoff=200.0):
    n = 12.5 / math.pi ** 1.5
    a = 1.0 / (4.0 * math.pi * n)
    return bp.PhysicalParams(
        boson_mass=1.0,
        impurity_mass=1.0,
        density=n,
        scattering_length_bb=a,
        scattering_length_ib=a,
        uv_cutoff=cutoff,
    )


def test_context_units():
    ctx = bp.to_dimensionless(gas_params())
    assert ctx.z == pytest.approx(1.0)
    assert ctx.sound_speed == pytest.approx(1.0, rel=1e-12)
    assert ctx.gas_parameter == pytest.approx(0.01, rel=1e-12)
    assert ctx.p_c == pytest.approx(1.0)


def test_counts():
    c = bp.diagram_counts(4)
    assert (c["total_labeled"], c["pairings"], c["irreducible"]) == (2520, 105, 74)
    assert len(bp.enumerate_pairings(3)) == 15


def test_validation_raises():
    with pytest.raises(ValueError):
        bp.PhysicalParams(density=-1.0)


def test_self_energy_sign_and_rate():
    p = gas_params(cutoff=50.0)
    s = bp.self_energy(p, 0.0, 0.0)
    assert s["re"] < 0.0
    assert s["im"] == 0.0
    assert bp.golden_rule_rate(p, 0.5) == 0.0
    assert bp.golden_rule_rate(p, 1.3) > 0.0


def test_pole_free_limit():
    p = gas_params(cutoff=50.0)
    p.scattering_length_ib = 0.0
    pole = bp.pole(p, 0.6, order=1)
    assert pole["omega"]["re"] == pole["e_free"]
    assert pole["omega"]["im"] == 0.0


def test_effective_mass_drag():
    r = bp.effective_mass(gas_params(), order=1)
    assert r["m_eff"] > 1.0  # the cloud the impurity drags makes it heavier
    assert r["i1"] > 0.0


def test_cli_roundtrip(tmp_path):
    cli = os.environ.get("BECPOLARON_CLI")
    if not cli:
        pytest.skip("BECPOLARON_CLI not set")
    out = subprocess.run(
        [cli, "diagrams", "--order", "3"], capture_output=True, text=True, check=True
    )
    lines = out.stdout.strip().splitlines()
    assert lines[1] == "order,total_labeled,pairings,irreducible"
    assert lines[-1] == "3,90,15,10"
