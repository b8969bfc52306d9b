import math

import pytest

from conftest import PSEUDO_UNITARY, bundled

from fscat.category import fp_dimension, validate
from fscat.cyclo import Cyc
from fscat.homcalc import LinMap, pivotal_trace
from fscat.pivotal import (attach_pivotal, canonical_flags,
                           enumerate_pivotal_structures, global_dimension,
                           is_pseudo_unitary, normed_square)


def test_enumerate_vec_z2():
    v2 = bundled("vec_z2")
    sols = enumerate_pivotal_structures(v2)
    assert len(sols) == 2
    values = sorted(repr(s.t["g"]) for s in sols)
    assert values == ["Cyc(-1)", "Cyc(1)"]
    flags = canonical_flags(v2, sols)
    assert sum(flags) == 1


def test_enumerate_trivial():
    cat = bundled("trivial")
    sols = enumerate_pivotal_structures(cat)
    assert len(sols) == 1
    assert sols[0].t == {"1": Cyc.one()}


def test_enumerate_fibonacci():
    fib = bundled("fibonacci")
    sols = enumerate_pivotal_structures(fib)
    # trivial universal grading: the constraint solving leaves one solution
    assert len(sols) == 1
    assert canonical_flags(fib, sols) == [True]


def test_enumerated_solutions_validate(any_bundled):
    cat = any_bundled
    sols = enumerate_pivotal_structures(cat)
    assert sols, "every bundled spec admits a pivotal structure"
    for piv in sols:
        assert validate(cat.with_pivotal(piv)).valid


def test_bundled_pivotal_is_enumerated(any_bundled):
    cat = any_bundled
    sols = enumerate_pivotal_structures(cat)
    assert any(s.t == cat.pivotal.t for s in sols)


def test_attach_pivotal_choices():
    fib = bundled("fibonacci")
    bare = fib.with_pivotal(None)
    assert attach_pivotal(bare, "canonical").pivotal.t == fib.pivotal.t
    assert attach_pivotal(bare, "first").pivotal is not None
    yl = bundled("yang_lee").with_pivotal(None)
    with pytest.raises(ValueError):
        attach_pivotal(yl, "canonical")
    assert attach_pivotal(yl, "first").pivotal is not None


# -- dimension theory -----------------------------------------------------------


def test_normed_square_examples():
    v2 = bundled("vec_z2")
    assert normed_square(v2, "g") == 1
    assert normed_square(v2, "1") == 1
    fib = bundled("fibonacci")
    sq = normed_square(fib, "t")
    # |t|^2 = d^2 with d the golden ratio
    want = ((1 + math.sqrt(5)) / 2) ** 2
    assert abs(sq.embed().real - want) < 1e-12
    assert abs(sq.embed().real - 2.618033988749895) < 1e-9
    # independent of the pivotal rescaling: flip to the other solution
    other = [s for s in enumerate_pivotal_structures(v2)
             if s.t != v2.pivotal.t][0]
    assert normed_square(v2.with_pivotal(other), "g") == 1


def test_global_dimension_examples():
    assert global_dimension(bundled("vec_z2")) == 2
    assert global_dimension(bundled("trivial")) == 1
    gd = global_dimension(bundled("fibonacci"))
    assert abs(gd.embed().real - 3.618033988749895) < 1e-9
    assert abs(gd.embed().imag) < 1e-12


def test_global_dimension_is_real(any_bundled):
    gd = global_dimension(any_bundled)
    assert abs(gd.embed().imag) < 1e-12


@pytest.mark.parametrize("name", PSEUDO_UNITARY)
def test_pseudo_unitary_bundles(name):
    ok, gap = is_pseudo_unitary(bundled(name))
    assert ok and gap < 1e-9


def test_fibonacci_pseudo_unitary_gap_is_tiny():
    ok, gap = is_pseudo_unitary(bundled("fibonacci"))
    assert ok and gap < 1e-12


def test_corrupted_pivotal_rejected_by_validate():
    from fscat.category import PivotalData
    fib = bundled("fibonacci")
    bad = fib.with_pivotal(PivotalData({"1": Cyc.one(), "t": Cyc.rational(5)}))
    report = validate(bad)
    assert not report.valid
    assert any(i.group == "pivotal" and not i.ok for i in report.items)


def test_yang_lee_not_pseudo_unitary():
    ok, gap = is_pseudo_unitary(bundled("yang_lee"))
    assert not ok
    # the gap is the exact difference 1 + 1/phi^2 versus 1 + phi^2
    phi = (1 + math.sqrt(5)) / 2
    assert abs(gap - (phi ** 2 - phi ** -2)) < 1e-9


def test_semion_verdict_reported_for_both_pivotals():
    sem = bundled("semion")
    for piv in enumerate_pivotal_structures(sem):
        ok, gap = is_pseudo_unitary(sem.with_pivotal(piv))
        # the normed squares do not depend on the pivotal choice
        assert ok and gap < 1e-12


@pytest.mark.parametrize("name", PSEUDO_UNITARY)
def test_canonical_trace_matches_fpdim(name):
    cat = bundled(name)
    for a in cat.labels:
        tr = pivotal_trace(cat, LinMap.identity(cat, (a,)), "right")
        assert abs(tr.embed() - fp_dimension(cat, a)) < 1e-9
