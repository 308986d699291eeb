import pytest

from qfpowers import closed_forms as cf
from qfpowers.forms import ZERO, DiagonalForm, diag, hyperbolic, perp, scale
from qfpowers.power_engine import lambda_power, sym_power
from qfpowers.squareclass import NEG_ONE, ONE, FieldMode, rational_class, sq
from qfpowers.witt_normal import hyp_fill, isometric, normalize

R, C = FieldMode.GENERIC, FieldMode.MINUS_ONE_SQUARE
a, b = sq("a"), sq("b")


def nf_parts(form, mode=R):
    nf = normalize(form, mode)
    return nf.residue, nf.hyp


def test_ext_hyp_examples():
    assert cf.ext_hyp_closed(3, 3) == hyperbolic(10)
    assert nf_parts(cf.ext_hyp_closed(2, 2)) == (DiagonalForm({NEG_ONE: 2}), 2)
    assert cf.ext_hyp_closed(1, 0) == diag(ONE)
    assert cf.ext_hyp_closed(1, 3) == ZERO


def test_sym_hyp_examples():
    assert cf.sym_hyp_closed(1, 3) == hyperbolic(2)
    assert nf_parts(cf.sym_hyp_closed(3, 4)) == (DiagonalForm({ONE: 6}), 60)
    assert nf_parts(cf.sym_hyp_closed(2, 2)) == (DiagonalForm({ONE: 2}), 4)
    assert cf.sym_hyp_closed(2, 0) == diag(ONE)


def test_trace_form_examples():
    assert cf.trace_form(cf.TraceParams(1)) == diag(ONE)
    assert cf.trace_form(cf.TraceParams(3)) == perp(diag(NEG_ONE), hyperbolic(4))
    two = cf.TraceParams(2, concrete=True)
    two_cls = rational_class(2)
    assert cf.trace_form(two) == diag(two_cls, two_cls * a, two_cls * b, -two_cls * a * b)
    for n in range(1, 10):
        assert cf.trace_form(cf.TraceParams(n)).dim == n * n


def test_trace_params():
    p = cf.TraceParams(6)
    assert p.m == 16 and p.eps == NEG_ONE and p.n_class == sq("n")
    assert cf.TraceParams(4, concrete=True).n_class == ONE
    with pytest.raises(ValueError):
        cf.TraceParams(3).m
    with pytest.raises(ValueError):
        cf.TraceParams(0)
    with pytest.raises(ValueError):
        cf.TraceParams(3, p1_exponent="other")


def test_sym_trace_examples():
    form, mode = cf.sym_trace_closed(cf.TraceParams(3), 2)
    assert mode is R and form.dim == 45
    assert nf_parts(form) == (DiagonalForm({ONE: 5}), 20)

    p2 = cf.TraceParams(2)
    form, mode = cf.sym_trace_closed(p2, 3)
    assert mode is R and form.dim == 20
    assert nf_parts(form) == (cf.q_form(p2).times(3), 4)

    form, mode = cf.sym_trace_closed(cf.TraceParams(4), 4)
    assert mode is C and form.dim == 3876
    # 1 + (m+3+k/2)(m+2+k/2)/((k/2)(k/2-1)) = 1 + 110/2 with m = 6
    assert nf_parts(form) == (DiagonalForm({ONE: 56}), (3876 - 56) // 2)


def test_presimplified_holds_in_generic_mode():
    for n in (2, 4, 6):
        p = cf.TraceParams(n)
        t = cf.trace_form(p)
        for k in range(0, 7):
            pre = cf.sym_trace_presimplified(p, k)
            total = sym_power(t, k).dim
            assert isometric(sym_power(t, k), hyp_fill(pre, total), R)


def test_mode_necessity():
    p = cf.TraceParams(4)
    form, mode = cf.sym_trace_closed(p, 4)
    engine = sym_power(cf.trace_form(p), 4)
    assert not isometric(engine, form, R)
    assert isometric(engine, form, C)
    residue = normalize(engine, R).residue
    assert residue[a] == residue[b] == residue[a * b] == 20


def test_displayed_matches_presimplified():
    for n in (2, 4, 6, 8):
        p = cf.TraceParams(n)
        for k in list(range(3, 8, 2)) + list(range(4, 9, 2)):
            shown, mode = cf.sym_trace_displayed(p, k)
            closed, _ = cf.sym_trace_closed(p, k)
            assert isometric(shown, closed, mode)


def test_displayed_undefined_cells():
    p = cf.TraceParams(2)
    for k in (0, 1, 2):
        with pytest.raises(ValueError):
            cf.sym_trace_displayed(p, k)
    with pytest.raises(ValueError):
        cf.sym_trace_displayed(cf.TraceParams(3), 3)


def test_ext_trace_examples():
    form, mode = cf.ext_trace_closed(cf.TraceParams(2), 2)
    assert mode is R and nf_parts(form) == (ZERO, 3)
    assert isometric(form, lambda_power(cf.trace_form(cf.TraceParams(2, concrete=True)), 2))

    p2 = cf.TraceParams(2)
    form, _ = cf.ext_trace_closed(p2, 3)
    assert form == scale(NEG_ONE, cf.q_form(p2))
    assert form.dim == 4

    assert cf.ext_trace_closed(p2, 5)[0] == ZERO


def test_ext_trace_odd_odd_sign():
    p = cf.TraceParams(3)
    engine = lambda_power(cf.trace_form(p), 3)
    corrected, _ = cf.ext_trace_closed(p, 3)
    literal, _ = cf.ext_trace_closed(p, 3, literal_table=True)
    assert nf_parts(engine) == (DiagonalForm({ONE: 4}), 40)
    assert isometric(engine, corrected)
    # the printed summary-table entry
    assert nf_parts(literal) == (DiagonalForm({NEG_ONE: 4}), 40)
    assert not isometric(engine, literal)


@pytest.mark.parametrize("n", [3, 7])
def test_literal_table_fails_for_n_3_mod_4(n):
    p = cf.TraceParams(n)
    t = cf.trace_form(p)
    for k in (1, 3, 5, 7):
        literal, _ = cf.ext_trace_closed(p, k, literal_table=True)
        assert not isometric(lambda_power(t, k), literal)


def test_ext_two_branch_entry_n2():
    p = cf.TraceParams(2)
    t = cf.trace_form(p)
    for k in (0, 1, 2, 3, 4):
        form, mode = cf.ext_trace_closed(p, k)
        assert isometric(lambda_power(t, k), form, mode)
    # k = n^2/2 = 2 sits on the branch point: coefficient 0
    assert normalize(cf.ext_trace_closed(p, 2)[0]).residue == ZERO


def test_branch_point_agreement_n6():
    p = cf.TraceParams(6)
    form, mode = cf.ext_trace_closed(p, 18)
    assert normalize(form, mode).residue == ZERO


def test_non_integral_coefficient_raises():
    with pytest.raises(cf.ClosedFormError, match="not integral"):
        cf._integral(cf.Fraction(1, 2))


def test_registry_ids():
    assert set(cf.IDENTITIES) == {
        "S4", "S5", "N1", "N2", "L1", "L2", "L3", "R1", "GV", "P1", "P10", "P11", "P12", "LT",
    }


def test_closed_dimensions():
    for h in range(1, 8):
        for k in range(0, 12):
            assert cf.sym_hyp_closed(h, k).dim == cf.binomial(2 * h + k - 1, k)
            assert cf.ext_hyp_closed(h, k).dim == cf.binomial(2 * h, k)
    for n in range(1, 9):
        p = cf.TraceParams(n)
        for k in range(0, 9):
            assert cf.sym_trace_closed(p, k)[0].dim == cf.binomial(n * n + k - 1, k)
            assert cf.ext_trace_closed(p, k)[0].dim == cf.binomial(n * n, k)
