import math

import pytest
from hypothesis import given, settings, strategies as st

import reference_tables as ref
from effosc.errors import NoPhysicalRoot
from effosc.gap import critical_coupling
from effosc.model import OscillatorSpec, Phase, hamiltonian_average, level_factors
from effosc.spectrum import (
    cea_residual,
    level_solution,
    lo_energy_closed_form,
    sextic_ssb_solutions,
    well_referenced_energy,
)


def solution_families(lam_grid=(1e-3, 1e-1, 1e1, 1e3)):
    """(spec, n, solution) across all supported (k, g-sign, phase) families."""
    out = []
    for k in (4, 6, 8):
        for lam in lam_grid:
            for n in (0, 1, 5, 40):
                out.append((OscillatorSpec(k, 1.0, lam), n))
    for lam in (0.02, 0.05, 0.2, 10.0):
        for n in (0, 1, 5, 40):
            out.append((OscillatorSpec(4, -1.0, lam), n))
    for lam in (0.005, 0.05, 0.5, 10.0):
        for n in (0, 1, 5, 40):
            out.append((OscillatorSpec(6, -3.0, lam), n))
    return [(spec, n, level_solution(spec, n)) for spec, n in out]


def test_invariant_chain():
    # w^2 = g + 2 lam A;  s = lam B / w^2;  E0 = w x + h0 = <H>;
    # residual-interaction average vanishes.
    for spec, n, sol in solution_families():
        x = level_factors(n).x
        scale = max(1.0, abs(sol.E0))
        assert sol.w > 0.0
        assert sol.w**2 == pytest.approx(spec.g + 2.0 * spec.lam * sol.A, rel=1e-11), (spec, n)
        assert sol.s == pytest.approx(spec.lam * sol.B / sol.w**2, abs=1e-12 * max(1.0, abs(sol.s)))
        assert sol.s_sq == pytest.approx(sol.s * sol.s, rel=1e-13)
        assert sol.E0 == pytest.approx(sol.w * x + sol.h0, abs=1e-13 * scale)
        assert sol.E0 == pytest.approx(
            hamiltonian_average(spec, sol.s, sol.w, x), abs=1e-9 * scale
        ), (spec, n)
        assert abs(cea_residual(sol)) <= 1e-12 * scale, (spec, n)


def test_closed_form_energies_match_assembled():
    for spec, n, sol in solution_families():
        if spec.k == 6 and sol.phase is Phase.SPONTANEOUSLY_BROKEN:
            continue  # no fixed closed form for the displaced sextic branch
        e = lo_energy_closed_form(spec, n, sol.phase)
        assert e == pytest.approx(sol.E0, abs=1e-9 * max(1.0, abs(sol.E0))), (spec, n)


def test_contract_examples_quartic_single_well():
    sol = level_solution(OscillatorSpec(4, 1.0, 0.1), 0)
    assert sol.phase is Phase.SYMMETRY_RESTORED
    assert sol.s == 0.0
    assert sol.w == pytest.approx(1.2211966861810775, rel=1e-12)
    assert sol.E0 == pytest.approx(0.5603, abs=1e-4)


def test_contract_examples_well_referenced():
    d = OscillatorSpec(4, -1.0, 0.1)
    sol = level_solution(d, 0)
    assert well_referenced_energy(d, sol.E0) == pytest.approx(0.5496, abs=1e-4)
    d10 = OscillatorSpec(4, -1.0, 10.0)
    assert well_referenced_energy(d10, level_solution(d10, 0).E0) == pytest.approx(1.4098, abs=1e-4)
    # lam=1, n=1 sits on the rational root w=2: the level is exactly 33/16
    d1 = OscillatorSpec(4, -1.0, 1.0)
    sol11 = level_solution(d1, 1)
    assert sol11.w == pytest.approx(2.0, abs=1e-14)
    assert sol11.E0 == pytest.approx(2.0625, abs=1e-13)
    assert well_referenced_energy(d1, sol11.E0) == pytest.approx(2.125, abs=1e-13)
    with pytest.raises(ValueError):
        well_referenced_energy(OscillatorSpec(4, 1.0, 0.1), 1.0)
    with pytest.raises(ValueError):
        well_referenced_energy(OscillatorSpec(6, -3.0, 0.1), 1.0)


def test_phase_selection_is_argmin():
    for lam in (0.02, 0.05, 0.08, 0.09):
        spec = OscillatorSpec(4, -1.0, lam)
        sr = lo_energy_closed_form(spec, 0, Phase.SYMMETRY_RESTORED)
        ssb = lo_energy_closed_form(spec, 0, Phase.SPONTANEOUSLY_BROKEN)
        sol = level_solution(spec, 0)
        want = Phase.SYMMETRY_RESTORED if sr <= ssb else Phase.SPONTANEOUSLY_BROKEN
        assert sol.phase is want, lam
        assert sol.E0 == pytest.approx(min(sr, ssb), rel=1e-12)
    # above the critical coupling only the symmetric branch exists
    spec = OscillatorSpec(4, -1.0, 0.12)
    assert level_solution(spec, 0).phase is Phase.SYMMETRY_RESTORED
    with pytest.raises(NoPhysicalRoot):
        lo_energy_closed_form(spec, 0, Phase.SPONTANEOUSLY_BROKEN)


def test_quartic_phase_crossover_frozen():
    # the displaced branch wins through lam = 0.08 and loses by 0.09
    s08 = level_solution(OscillatorSpec(4, -1.0, 0.08), 0)
    assert s08.phase is Phase.SPONTANEOUSLY_BROKEN
    assert s08.E0 == pytest.approx(-0.1514296488780913, abs=1e-12)
    s09 = level_solution(OscillatorSpec(4, -1.0, 0.09), 0)
    assert s09.phase is Phase.SYMMETRY_RESTORED
    assert s09.E0 == pytest.approx(-0.10972330433625682, abs=1e-12)
    assert lo_energy_closed_form(
        OscillatorSpec(4, -1.0, 0.08), 0, Phase.SYMMETRY_RESTORED
    ) == pytest.approx(-0.15032709966689445, abs=1e-12)
    assert lo_energy_closed_form(
        OscillatorSpec(4, -1.0, 0.09), 0, Phase.SPONTANEOUSLY_BROKEN
    ) == pytest.approx(-0.0805924074571589, abs=1e-12)


def test_sextic_displaced_solutions_frozen():
    frozen = {
        0.005: (3.335652622313663, 9.261749534843007, -8.299761031968364),
        0.01: (3.280142015923354, 6.325316727158006, -5.384368479625142),
        0.02: (3.198818263320245, 4.242834084990774, -3.332869053853825),
        0.05: (3.0247159486156976, 2.378668254174938, -1.5357343831656807),
        0.1: (2.7960893758402667, 1.4123567932016399, -0.6591481806922359),
        0.2: (2.2916048067951595, 0.6341871834408335, -0.08850662231867146),
    }
    for lam, (w, s_sq, e0) in frozen.items():
        sols = sextic_ssb_solutions(OscillatorSpec(6, -3.0, lam), 0)
        assert len(sols) == 2
        assert sols[0].E0 <= sols[1].E0  # sorted by energy
        best = sols[0]
        assert best.w == pytest.approx(w, rel=1e-10)
        assert best.s_sq == pytest.approx(s_sq, rel=1e-10)
        assert best.E0 == pytest.approx(e0, rel=1e-10)
        assert best.s > 0.0
        # each displaced solution closes the variational identities
        x = 0.5
        assert best.E0 == pytest.approx(
            hamiltonian_average(best.spec, best.s, best.w, x), abs=1e-9
        )
        assert abs(cea_residual(best)) <= 1e-10
    assert sextic_ssb_solutions(OscillatorSpec(6, -3.0, 0.5), 0) == []
    with pytest.raises(ValueError):
        sextic_ssb_solutions(OscillatorSpec(4, -1.0, 0.02), 0)
    with pytest.raises(ValueError):
        sextic_ssb_solutions(OscillatorSpec(6, 1.0, 0.5), 0)


def test_sextic_symmetric_branch_below_displaced_branch():
    # Contract claim: the symmetric solution is energetically favoured
    # wherever displaced solutions exist.  Asserted over the full lam grid
    # as mandated; the claim is FALSE at small lam (deep wells), where the
    # displaced branch lies far below the symmetric one, so this test fails
    # loudly by design.  See README "Known deviations".
    violations = []
    for lam in (0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5):
        spec = OscillatorSpec(6, -3.0, lam)
        sols = sextic_ssb_solutions(spec, 0)
        if not sols:
            continue
        sr = lo_energy_closed_form(spec, 0, Phase.SYMMETRY_RESTORED)
        if not sr <= sols[0].E0:
            violations.append((lam, sr, sols[0].E0))
    assert not violations, (
        "symmetric-branch-favoured claim violated at (lam, E_symmetric, E_displaced): "
        + "; ".join("(%g, %.7f, %.7f)" % v for v in violations)
        + " — the displaced branch is lower in deep wells; see README 'Known deviations'"
    )


def test_sextic_dwo_level_ordering_exceptions_documented():
    # True behaviour: per-level variational minima of the sextic double well
    # are NOT monotone in n near the boundary where the displaced branch
    # disappears — the first symmetric level can sit above the next one.
    # The claimed strict increase fails in a small-lam pocket; frozen here
    # as a regression guard.
    spec = OscillatorSpec(6, -3.0, 0.01)
    e1 = level_solution(spec, 1).E0
    e2 = level_solution(spec, 2).E0
    assert e1 == pytest.approx(-3.2762309708640904, rel=1e-10)
    assert e2 == pytest.approx(-3.3380599493909933, rel=1e-10)
    assert e1 > e2  # the documented ordering violation
    spec2 = OscillatorSpec(6, -3.0, 0.002)
    assert level_solution(spec2, 2).E0 > level_solution(spec2, 3).E0


def test_level_monotonicity_single_wells_and_quartic_dwo():
    specs = [
        OscillatorSpec(4, 1.0, 1.0),
        OscillatorSpec(6, 1.0, 0.5),
        OscillatorSpec(8, 1.0, 0.1),
        OscillatorSpec(4, -1.0, 0.005),
        OscillatorSpec(4, -1.0, 0.02),
        OscillatorSpec(4, -1.0, 0.08),
        OscillatorSpec(4, -1.0, 10.0),
        OscillatorSpec(6, -3.0, 0.0005),
        OscillatorSpec(6, -3.0, 0.05),
        OscillatorSpec(6, -3.0, 0.5),
    ]
    for spec in specs:
        es = [level_solution(spec, n).E0 for n in range(13)]
        assert all(a < b for a, b in zip(es, es[1:])), spec


@settings(max_examples=60, deadline=None)
@given(
    k=st.sampled_from([4, 6, 8]),
    loglam=st.floats(min_value=-3.0, max_value=3.0),
    n=st.integers(min_value=0, max_value=30),
)
def test_level_monotonicity_single_well_property(k, loglam, n):
    spec = OscillatorSpec(k, 1.0, 10.0**loglam)
    assert level_solution(spec, n).E0 < level_solution(spec, n + 1).E0


def test_strong_coupling_ratio():
    e0 = level_solution(OscillatorSpec(4, 1.0, 1e9), 0).E0
    ratio = e0 / 1e9 ** (1.0 / 3.0)
    assert ratio == pytest.approx(0.6814203598923477, abs=1e-10)
    assert ratio == pytest.approx(0.68143, abs=1e-4)


def test_free_oscillator_levels():
    spec = OscillatorSpec(4, 4.0, 0.0)
    for n in (0, 3):
        sol = level_solution(spec, n)
        assert sol.w == 2.0
        assert sol.E0 == pytest.approx(2.0 * (n + 0.5), rel=1e-14)


def test_known_deviant_reference_cells_regression_guard():
    # Full-precision recomputations of every reference-table cell that
    # disagrees with its printed value beyond one unit in the last digit.
    # Guards against silent drift; the printed values are listed next to
    # each for audit.
    t1 = {(0.1, 40): 94.84034503720767}  # printed 94.843
    for (lam, n), want in t1.items():
        got = level_solution(OscillatorSpec(4, 1.0, lam), n).E0
        assert got == pytest.approx(want, rel=1e-10)
        assert abs(got - float(ref.T1_LO[lam][n])) > ref.printed_tol(ref.T1_LO[lam][n])
    t2 = {
        (1.0, 2): 4.233389008284737,     # printed 4.2324
        (1.0, 10): 30.088776545373214,   # printed 30.530
        (10.0, 1): 5.065191843033487,    # printed 5.0650
        (10.0, 2): 9.866224528199297,    # printed 9.8660
        (10.0, 10): 66.95326997645907,   # printed 66.950
        (100.0, 0): 3.1337870554591922,  # printed 3.1340
        (100.0, 4): 47.02826058161132,   # printed 47.023
    }
    for (lam, n), want in t2.items():
        spec = OscillatorSpec(4, -1.0, lam)
        got = well_referenced_energy(spec, level_solution(spec, n).E0)
        assert got == pytest.approx(want, rel=1e-10), (lam, n)
        assert abs(got - float(ref.T2_LO[lam][n])) > ref.printed_tol(ref.T2_LO[lam][n])
    t3 = {
        (0.2, 2): 7.4202523934958275,    # printed 7.240 (digit transposition)
        (0.2, 17): 111.88795298331698,   # printed 111.92
        (2000.0, 17): 1081.7141405582188,  # printed 1082.0
    }
    for (lamt, n), want in t3.items():
        got = 2.0 * level_solution(OscillatorSpec(6, 1.0, lamt / 2.0), n).E0
        assert got == pytest.approx(want, rel=1e-10), (lamt, n)
    t5 = {
        (1.0, 6): 52.6994622024399,      # printed 52.669 (digit transposition)
        (50.0, 1): 13.172228581368291,   # printed 13.1724
        (50.0, 10): 241.63916958218422,  # printed 242.64
        (200.0, 11): 368.00079155055454,  # printed 368.06
    }
    for (lamt, n), want in t5.items():
        got = 2.0 * level_solution(OscillatorSpec(8, 1.0, lamt), n).E0
        assert got == pytest.approx(want, rel=1e-10), (lamt, n)


def test_clean_reference_cells_spot():
    assert level_solution(OscillatorSpec(4, 1.0, 0.1), 0).E0 == pytest.approx(0.5603, abs=1e-4)
    spec = OscillatorSpec(4, -1.0, 1.0)
    assert well_referenced_energy(spec, level_solution(spec, 1).E0) == pytest.approx(2.1250, abs=1e-4)
    assert 2.0 * level_solution(OscillatorSpec(6, 1.0, 1.0), 0).E0 == pytest.approx(1.676, abs=1e-3)
    assert 2.0 * level_solution(OscillatorSpec(8, 1.0, 0.1), 0).E0 == pytest.approx(1.3005, abs=1e-4)
    assert 2.0 * level_solution(OscillatorSpec(6, 3.0, 0.5), 0).E0 == pytest.approx(1.9560824269169255, rel=1e-10)
    assert 2.0 * level_solution(OscillatorSpec(6, -3.0, 0.5), 1).E0 == pytest.approx(2.387215635447526, rel=1e-10)
