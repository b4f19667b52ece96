import numpy as np
import pytest

from linpacket import (
    ForceProfile,
    GridSpec,
    ParseError,
    Scenario,
    ValidationError,
    emit_scenario,
    parse_scenario,
    parse_scenario_text,
)
from linpacket.scenario import write_scenario


MINIMAL = """
[run]
t_end = 1.0
"""


def test_minimal_defaults():
    s = parse_scenario_text(MINIMAL)
    assert s.params.hbar == 1.0
    assert s.params.m == 1.0
    assert s.a0 == 1.0
    assert s.b0 == 0.0
    assert s.c0 == 0.0
    assert s.a == 0.5
    assert s.force.kind == "zero"
    assert s.grid is None
    assert s.t_end == 1.0
    assert s.n_samples == 11
    assert s.quad.rel_tol == 1e-10


def test_negative_a_rejected_with_message():
    text = MINIMAL + "\n[packet]\na = -1.0\n"
    with pytest.raises(ValidationError, match="a must be positive"):
        parse_scenario_text(text)


def test_caustic_t_end_rejected():
    text = """
[invariant]
a0 = 1.0
b0 = 1.0

[run]
t_end = 2.0
"""
    with pytest.raises(ValidationError, match="caustic"):
        parse_scenario_text(text)


def test_unknown_key_is_parse_error():
    with pytest.raises(ParseError, match="unknown key"):
        parse_scenario_text(MINIMAL + "\n[physics]\nmass = 2\n")


def test_unknown_section_is_parse_error():
    with pytest.raises(ParseError, match=r"unknown section"):
        parse_scenario_text(MINIMAL + "\n[extras]\nx = 1\n")


def test_bad_number_is_parse_error():
    with pytest.raises(ParseError, match=r"\[physics\] m"):
        parse_scenario_text(MINIMAL + "\n[physics]\nm = heavy\n")


def test_malformed_ini_is_parse_error():
    with pytest.raises(ParseError):
        parse_scenario_text("t_end = 1.0\nno section header")


def test_sinusoidal_force_parsing():
    text = """
[force]
kind = sinusoidal
f0 = 1.5
omega = 2.5
phi = 0.25

[run]
t_end = 0.5
"""
    s = parse_scenario_text(text)
    assert s.force.kind == "sinusoidal"
    assert s.force.f0 == 1.5
    assert s.force.omega == 2.5
    assert s.force.phi == 0.25


def test_tabulated_force_parsing():
    text = """
[force]
kind = tabulated
times = 0.0, 0.5, 1.0
values = 0.0, 1.0, 0.0

[run]
t_end = 1.0
"""
    s = parse_scenario_text(text)
    assert s.force.kind == "tabulated"
    np.testing.assert_allclose(s.force.times, [0.0, 0.5, 1.0])


def test_tabulated_must_cover_run():
    text = """
[force]
kind = tabulated
times = 0.0, 0.5
values = 1.0, 1.0

[run]
t_end = 1.0
"""
    with pytest.raises(Exception):
        parse_scenario_text(text)


def test_grid_section():
    text = MINIMAL + """
[grid]
enabled = true
n = 512
dt = 0.001
"""
    s = parse_scenario_text(text)
    assert s.grid == GridSpec(x_min=-20.0, x_max=20.0, n=512, dt=1e-3)


@pytest.mark.parametrize("scenario", [
    Scenario(t_end=1.0),
    Scenario(t_end=0.7, a=0.25, b0=0.3, c0=-0.2,
             force=ForceProfile.sinusoidal(1.0, 2.0, 0.5),
             grid=GridSpec(-15.0, 15.0, 512, 2e-4, 1e-9)),
    Scenario(t_end=2.0, force=ForceProfile.tabulated([0.0, 1.0, 2.0], [0.0, 1.5, 0.5]),
             n_samples=5),
])
def test_roundtrip_exact(scenario):
    assert parse_scenario_text(emit_scenario(scenario)) == scenario


def test_roundtrip_through_file(tmp_path):
    s = Scenario(t_end=0.9, a=1.0 / 3.0, force=ForceProfile.constant(np.pi))
    path = tmp_path / "scenario.ini"
    write_scenario(s, path)
    assert parse_scenario(path) == s


def test_missing_file_is_parse_error(tmp_path):
    with pytest.raises(ParseError):
        parse_scenario(tmp_path / "nope.ini")


def test_replace_revalidates():
    s = Scenario(t_end=1.0)
    with pytest.raises(ValidationError):
        s.replace(b0=2.0)  # t* = 0.5 < t_end
