import math

import pytest

import kerrspec as ks


def test_forward_worked_case():
    shape = ks.smarr_from_physical(ks.PhysicalParams(5.0, 3.0))
    assert shape.eta2 == pytest.approx(90.0, rel=1e-15)
    assert shape.beta2 == pytest.approx(0.1, rel=1e-15)
    assert ks.r_plus(ks.PhysicalParams(5.0, 3.0)) == 9.0
    assert ks.area(shape) == pytest.approx(360 * math.pi, rel=1e-15)
    assert ks.profile(shape)(0.5) == pytest.approx(0.75 / 0.925, rel=1e-15)
    assert ks.gauss_curvature(ks.SmarrShape(2.0, 0.5), 1.0) == pytest.approx(-0.5)


def test_errors_carry_their_code():
    with pytest.raises(ks.KerrspecError, match="HorizonAbsent"):
        ks.validate(ks.PhysicalParams(1.0, 0.8, 0.8))
    with pytest.raises(ks.KerrspecError, match="InvalidTraces"):
        ks.shape_from_traces(ks.TraceSet(1.0, {1: 0.5}), 1)
    with pytest.raises(ks.KerrspecError, match="ChargeTooLarge"):
        ks.physical_from_traces(ks.TraceSet(84.0, {1: 90.0}), 9.0)


def test_numerics():
    nodes, weights = ks.gauss_legendre(2)
    assert nodes[1] == pytest.approx(1 / math.sqrt(3))
    assert sum(weights) == pytest.approx(2.0)
    assert ks.sym_eigenvalues([[2.0, 1.0], [1.0, 2.0]]) == pytest.approx([1.0, 3.0])
    assert ks.assoc_legendre_normalized(0, 0, 0.3) == pytest.approx(1 / math.sqrt(2))


def test_sphere_spectrum_and_traces():
    spec = ks.eigenvalues(0, ks.SmarrShape(4.0, 0.0), 3)
    assert spec.eigenvalues == pytest.approx([0.5, 1.5, 3.0], rel=1e-12)
    est = ks.trace_numeric(ks.eigenvalues(1, ks.SmarrShape(1.0, 0.3), 60))
    assert est.value == pytest.approx(1.0, rel=1e-4)
    assert est.value == est.partial_sum + est.tail_correction
    assert ks.s1_trace_integral(ks.SmarrShape(90.0, 0.1)) == pytest.approx(84.0, rel=1e-13)


def test_inversion():
    traces = ks.traces_closed_form(ks.SmarrShape(90.0, 0.1), 2)
    shape, clamped = ks.shape_from_traces(traces, 2)
    assert shape.eta2 == pytest.approx(90.0) and not clamped
    report = ks.physical_from_traces(ks.TraceSet(84.0, {1: 90.0}))
    assert (report.physical.m, report.physical.a, report.r_plus) == (5.0, 3.0, 9.0)
    assert report.residuals == {1: 0.0}
    metric = ks.reconstruct_metric(ks.TraceSet(4.0 / 3.0, {1: 2.0}))
    assert metric.g_phiphi(0.0) == pytest.approx(4.0)


def test_roundtrips():
    report, dev = ks.roundtrip(ks.PhysicalParams(5.0, 3.0))
    assert dev < 1e-12
    report, dev = ks.roundtrip(ks.PhysicalParams(1.0, 0.6), numeric=True, count=60)
    assert dev < 1e-3
    assert report.physical.a == pytest.approx(0.6, rel=1e-3)
