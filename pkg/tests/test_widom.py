"""Tests for Widom factor sequences, classification, scans, and the continuity probe."""

import math

import numpy as np
import pytest

from widomlab.bounds import asymptote, m_bound, weight_sup_bound
from widomlab.special import WeightParams, weight_to_param, weighted_monic_jacobi_sup
from widomlab.widom import (
    ScanCell,
    ScanResult,
    WidomSequence,
    classify,
    conjecture_region,
    continuity_probe,
    scan,
    widom_factor,
    widom_sequence,
)


def test_classify_basic_shapes():
    assert classify([1.0, 1.0, 1.0]) == "Constant"
    assert classify([1.0, 1.1, 1.2]) == "Increasing"
    assert classify([1.2, 1.1, 1.0]) == "Decreasing"
    assert classify([1.0, 0.9, 0.95]) == "NonMonotone"
    # spread below relative tolerance collapses to Constant
    assert classify([1.0, 1.0 + 1e-12, 1.0 - 1e-12]) == "Constant"
    # a flat step does not break monotonicity
    assert classify([1.0, 1.0, 1.1]) == "Increasing"
    with pytest.raises(ValueError):
        classify([1.0])


def test_widom_factor_known_values():
    assert abs(widom_factor(WeightParams(0.0, 0.0), 5) - 2.0) < 1e-8
    assert abs(widom_factor(WeightParams(0.5, 0.5), 7) - 1.0) < 1e-8
    assert abs(widom_factor(WeightParams(1.0, 1.0), 1) - 4.0 / (3.0 * math.sqrt(3.0))) < 1e-12
    with pytest.raises(ValueError):
        widom_factor(WeightParams(0.0, 0.0), 0)


def test_widom_sequence_constant_kind():
    seq = widom_sequence(WeightParams(0.5, 0.5), 10)
    assert seq.classification == "Constant"
    assert seq.n_start == 1 and len(seq.values) == 10
    assert np.allclose(seq.values, 1.0, atol=1e-9)
    assert abs(seq.asymptote - 1.0) < 1e-15


def test_widom_sequence_decreasing_above_asymptote():
    seq = widom_sequence(WeightParams(1.0, 1.0), 10)
    assert seq.classification == "Decreasing"
    assert all(a > b for a, b in zip(seq.values, seq.values[1:]))
    assert all(v >= 0.5 - 1e-12 for v in seq.values)
    assert abs(seq.asymptote - 0.5) < 1e-15


def test_widom_sequence_increasing_below_asymptote():
    seq = widom_sequence(WeightParams(0.25, 0.25), 10)
    assert seq.classification == "Increasing"
    assert all(v <= math.sqrt(2.0) * (1.0 + 1e-8) for v in seq.values)
    with pytest.raises(ValueError):
        widom_sequence(WeightParams(0.25, 0.25), 1)


def test_widom_sequence_bounded_by_asymptote_small_parameters():
    for ra in (0.1, 0.25, 0.4):
        for rb in (0.1, 0.25, 0.4):
            w = WeightParams(ra, rb)
            seq = widom_sequence(w, 8)
            lim = asymptote(w)
            assert all(v <= lim * (1.0 + 1e-8) for v in seq.values)


def test_chain_inequality_links():
    for ra, rb in ((0.1, 0.4), (0.25, 0.25)):
        w = WeightParams(ra, rb)
        p = weight_to_param(w)
        for n in range(1, 11):
            wn = widom_factor(w, n)
            mid = (2.0 ** n) * weighted_monic_jacobi_sup(w, n)
            top = m_bound(p, n)
            assert wn <= mid * (1.0 + 1e-9)
            assert mid <= top * (1.0 + 1e-9)


def test_part_three_monotone_and_first_factor_bound():
    for ra in (0.5, 1.0, 1.5):
        for rb in (0.5, 1.0, 1.5):
            w = WeightParams(ra, rb)
            seq = widom_sequence(w, 6)
            lim = asymptote(w)
            vals = seq.values + (lim,)
            assert all(a >= b - 1e-9 * abs(a) for a, b in zip(vals, vals[1:]))
            assert seq.values[0] <= weight_sup_bound(w) * (1.0 + 1e-12)


def test_scan_layout_and_known_cells():
    result = scan(rho_range=(0.0, 0.8), resolution=3, n_max=6)
    assert len(result.cells) == 9
    assert result.grid_values() == (0.0, 0.4, 0.8)
    assert result.n_max == 6 and result.runtime > 0.0
    # row-major with rho_a fastest
    assert result.cells[1].weight == WeightParams(0.4, 0.0)
    assert result.cells[3].weight == WeightParams(0.0, 0.4)
    assert result.cell(1, 0).weight == WeightParams(0.4, 0.0)
    assert all(cell.error is None for cell in result.cells)
    assert result.cell(0, 0).classification == "Constant"  # W_n = 2 for all n
    assert result.cell(1, 1).classification == "Increasing"
    assert result.cell(2, 2).classification == "Decreasing"
    assert all(len(cell.values) == 6 for cell in result.cells)


def test_scan_is_deterministic():
    a = scan(rho_range=(0.1, 0.7), resolution=3, n_max=4)
    b = scan(rho_range=(0.1, 0.7), resolution=3, n_max=4)
    assert [c.classification for c in a.cells] == [c.classification for c in b.cells]
    assert [c.values for c in a.cells] == [c.values for c in b.cells]


def test_scan_workers_match_serial():
    serial = scan(rho_range=(0.2, 0.6), resolution=2, n_max=4)
    pooled = scan(rho_range=(0.2, 0.6), resolution=2, n_max=4, workers=2)
    assert [c.classification for c in serial.cells] == [
        c.classification for c in pooled.cells
    ]
    assert [c.values for c in serial.cells] == [c.values for c in pooled.cells]


def test_scan_argument_validation():
    with pytest.raises(ValueError):
        scan(rho_range=(0.5, 0.5), resolution=3)
    with pytest.raises(ValueError):
        scan(rho_range=(-0.1, 0.5), resolution=3)
    with pytest.raises(ValueError):
        scan(resolution=1)


def test_sequence_and_cell_validation():
    with pytest.raises(ValueError):
        WidomSequence(WeightParams(0.0, 0.0), 1, (1.0, -1.0), 2.0, "Constant")
    with pytest.raises(ValueError):
        WidomSequence(WeightParams(0.0, 0.0), 1, (1.0, 1.0), 2.0, "Sideways")
    with pytest.raises(ValueError):
        ScanCell(WeightParams(0.0, 0.0), (), "Failed", None)
    with pytest.raises(ValueError):
        ScanCell(WeightParams(0.0, 0.0), (1.0,), "Constant", "boom")
    with pytest.raises(ValueError):
        ScanResult(((0.0, 0.8), 3), (), 10, 0.1)


def test_conjecture_region_labels():
    assert conjecture_region(WeightParams(0.25, 0.25)) == "Inside"
    assert conjecture_region(WeightParams(0.25 + math.sqrt(1.3 / 8.0), 0.25)) == "Outside"
    assert conjecture_region(WeightParams(0.25 + math.sqrt(1.1 / 8.0), 0.25)) == "Between"
    # the origin sits exactly on the circle: distance squared is 1/16 + 1/16
    assert conjecture_region(WeightParams(0.0, 0.0)) == "Between"
    assert conjecture_region(WeightParams(0.1, 0.1)) == "Inside"
    assert conjecture_region(WeightParams(1.5, 1.5)) == "Outside"


def test_continuity_probe_values():
    assert continuity_probe(WeightParams(0.5, 0.5), 0.0, 3) == 0.0
    assert continuity_probe(WeightParams(0.3, 0.6), 1e-4, 5) <= 1e-2
    # boundary point: negative perturbations are skipped
    assert continuity_probe(WeightParams(0.0, 0.0), 1e-4, 5) <= 1e-2
    with pytest.raises(ValueError):
        continuity_probe(WeightParams(0.5, 0.5), -1.0, 3)


def test_continuity_probe_random_points():
    rng = np.random.default_rng(19)
    for _ in range(3):
        w = WeightParams(rng.uniform(0.0, 1.5), rng.uniform(0.0, 1.5))
        assert continuity_probe(w, 1e-5, 5) <= 1e-3
