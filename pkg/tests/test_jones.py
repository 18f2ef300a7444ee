import mpmath as mp
import pytest

from logjones import habiro
from logjones.jones import (
    BraidWord,
    FeasibilityError,
    KNOT_CATALOG,
    LinkNotKnotError,
    braid_operator,
    build_Wm,
    colored_jones,
    colored_jones_numeric,
    colored_jones_zero_framed,
    framing_adjust,
    parse_braid,
    partial_trace,
    quantum_trace,
    rmatrix,
    rmatrix_inverse,
)
from logjones.qcalc import LaurentPoly, RootContext, brace, qint


def poly_mat_mul(a, b, d):
    out = [[LaurentPoly() for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for k in range(d):
            if a[i][k]:
                for j in range(d):
                    if b[k][j]:
                        out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


class TestBraidWord:
    def test_parse(self):
        b = parse_braid("3: 1 -2 1 -2")
        assert b.strands == 3 and b.word == (1, -2, 1, -2)
        assert parse_braid("4_1") == KNOT_CATALOG["4_1"]
        with pytest.raises(ValueError):
            parse_braid("nonsense")
        with pytest.raises(ValueError):
            BraidWord(2, (2,))

    def test_writhe_and_components(self):
        assert KNOT_CATALOG["3_1"].writhe == 3
        assert KNOT_CATALOG["4_1"].writhe == 0
        assert KNOT_CATALOG["3_1"].is_knot()
        assert not BraidWord(2, (1, 1)).is_knot()  # Hopf link, 2 components
        assert BraidWord(3, ()).closure_components() == 3


class TestWeightRep:
    def test_W1_trivial(self):
        w = build_Wm(1)
        assert w.dim == 1
        assert not w.matE[0][0] and not w.matF[0][0]
        assert w.matK[0][0] == LaurentPoly.const(1)

    def test_W2_literal(self):
        w = build_Wm(2)
        assert w.matE[0][1] == qint(1)
        assert w.matF[1][0] == qint(1)
        assert w.matK[0][0] == LaurentPoly.q_power(1)
        assert w.matK[1][1] == LaurentPoly.q_power(-1)
        assert w.weights == (1, -1)

    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_commutator_is_cartan(self, m):
        # (EF - FE) f_i = [m-1-2i] f_i as an exact matrix identity
        w = build_Wm(m)
        ef = poly_mat_mul(w.matE, w.matF, m)
        fe = poly_mat_mul(w.matF, w.matE, m)
        for i in range(m):
            for j in range(m):
                want = qint(m - 1 - 2 * i) if i == j else LaurentPoly()
                assert ef[i][j] - fe[i][j] == want

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_KEK_relations_exact(self, m):
        # K E K^{-1} = q^2 E since E raises the weight by 2, exactly
        w = build_Wm(m)
        q2 = LaurentPoly.q_power(2)
        for i in range(m):
            for j in range(m):
                if w.matE[i][j]:
                    assert w.weights[i] - w.weights[j] == 2
                    lhs = w.matE[i][j].shift(2 * (w.weights[i] - w.weights[j]))
                    assert lhs == w.matE[i][j] * LaurentPoly.q_power(2)
                if w.matF[i][j]:
                    assert w.weights[i] - w.weights[j] == -2

    def test_bad_m(self):
        with pytest.raises(ValueError):
            build_Wm(0)


class TestRMatrix:
    def test_W1_identity(self):
        w1 = build_Wm(1)
        r, den = rmatrix(w1, w1)
        assert den == LaurentPoly.const(1)
        assert r.entries == {(0, 0): LaurentPoly.const(1)}

    def test_W2_literal(self):
        # q^{1/2}, q^{-1/2} diagonal blocks and one off-diagonal q^{-1/2}{1}
        w2 = build_Wm(2)
        r, den = rmatrix(w2, w2)
        assert den == LaurentPoly.const(1)
        half = LaurentPoly.q_power(1, 2)
        mhalf = LaurentPoly.q_power(-1, 2)
        assert r.entries == {
            (0, 0): half,
            (1, 1): mhalf,
            (2, 2): mhalf,
            (3, 3): half,
            (1, 2): mhalf * brace(1),
        }

    @pytest.mark.parametrize("m", [2, 3])
    def test_inverse(self, m):
        w = build_Wm(m)
        r, dr = rmatrix(w, w)
        ri, dri = rmatrix_inverse(w, w)
        scale = dr * dri
        prod = r.compose(ri)
        assert prod.entries == {(i, i): scale for i in range(m * m)}

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_yang_baxter(self, m):
        w = build_Wm(m)
        o1, d1 = braid_operator(BraidWord(3, (1, 2, 1)), w)
        o2, d2 = braid_operator(BraidWord(3, (2, 1, 2)), w)
        assert d1 == d2
        assert o1.entries == o2.entries

    def test_far_commutation(self):
        w = build_Wm(2)
        o1, _ = braid_operator(BraidWord(4, (1, 3)), w)
        o2, _ = braid_operator(BraidWord(4, (3, 1)), w)
        assert o1.entries == o2.entries

    def test_braiding_inverse_pair(self):
        w = build_Wm(3)
        op, den = braid_operator(BraidWord(2, (1, -1)), w)
        assert op.entries == {(i, i): den for i in range(9)}


class TestColoredJones:
    def test_unknot(self):
        for m in (1, 2, 3, 6):
            assert colored_jones(KNOT_CATALOG["unknot"], m) == qint(m)

    def test_trivial_color_every_knot(self):
        for name, b in KNOT_CATALOG.items():
            assert colored_jones_zero_framed(b, 1) == LaurentPoly.const(1)

    def test_link_rejected(self):
        with pytest.raises(LinkNotKnotError):
            colored_jones(BraidWord(2, (1, 1)), 2)

    def test_framing_factor_of_raw_trace(self):
        # writhe-3 trace = q^{3(m^2-1)/2} times the 0-framed invariant
        b = KNOT_CATALOG["3_1"]
        for m in (2, 3):
            raw = colored_jones(b, m)
            adj = colored_jones_zero_framed(b, m)
            assert raw == adj.shift(3 * (m * m - 1))

    def test_framing_adjust_roundtrip(self):
        p = qint(5) + brace(2)
        assert framing_adjust(framing_adjust(p, 4, 3), -4, 3) == p

    def test_figure_eight_amphichiral(self):
        # the 0-framed invariant of 4_1 is palindromic (q <-> 1/q)
        for m in (2, 3, 4):
            v = colored_jones_zero_framed(KNOT_CATALOG["4_1"], m)
            assert v.is_palindromic()

    def test_figure_eight_m2_value(self):
        # [2] + {3}{2}{1}/{1} telescopes to q^5 + q^-5
        assert colored_jones_zero_framed(KNOT_CATALOG["4_1"], 2) == \
            LaurentPoly({10: 1, -10: 1})

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_markov_stabilization(self, m):
        a = colored_jones_zero_framed(BraidWord(2, (1, 1, 1)), m)
        b = colored_jones_zero_framed(BraidWord(3, (1, 1, 1, 2)), m)
        assert a == b

    def test_trefoil_matches_habiro_reconstruction(self):
        h = habiro.catalog_coeffs("3_1")
        for m in (2, 3, 5):
            assert colored_jones_zero_framed(KNOT_CATALOG["3_1"], m) == \
                habiro.reconstruct_Vm(h, m)

    def test_feasibility_cap(self):
        with pytest.raises(FeasibilityError):
            braid_operator(BraidWord(4, (1, 2, 3)), build_Wm(40))

    def test_numeric_path_matches_exact(self):
        ctx = RootContext(3)
        with ctx.workprec():
            q_half = mp.expj(mp.mpf("0.37")) * mp.mpf("0.93")
            for name in ("3_1", "4_1"):
                b = KNOT_CATALOG[name]
                exact = ctx.eval_at(colored_jones(b, 3), q_half)
                numeric = colored_jones_numeric(b, 3, q_half)
                assert abs(exact - numeric) < mp.mpf(10) ** -50


class TestPartialTrace:
    def test_identity_operator(self):
        w = build_Wm(3)
        n = 2
        ident, den = braid_operator(BraidWord(n, ()), w)
        assert den == LaurentPoly.const(1)
        traced = partial_trace(ident, w)
        for i in range(3):
            for j in range(3):
                assert traced[i][j] == (qint(3) if i == j else LaurentPoly())

    @pytest.mark.parametrize("name,m", [("3_1", 2), ("3_1", 3), ("4_1", 2)])
    def test_scalar_on_irreducible(self, name, m):
        # the partial trace of a braid operator on W_m is scalar, and the
        # scalar times [m] recovers the quantum trace
        b = KNOT_CATALOG[name]
        w = build_Wm(m)
        op, den = braid_operator(b, w)
        assert den == LaurentPoly.const(1)
        traced = partial_trace(op, w)
        scalar = traced[0][0]
        for i in range(m):
            for j in range(m):
                assert traced[i][j] == (scalar if i == j else LaurentPoly())
        assert scalar * qint(m) == quantum_trace(op, w)

    @pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
    def test_intertwiner_property(self, m, n):
        # partial traces of braid operators commute with E, F, K
        word = tuple(1 + (i % (n - 1)) for i in range(3)) if n > 1 else ()
        b = BraidWord(n, word)
        w = build_Wm(m)
        traced = partial_trace(braid_operator(b, w)[0], w)
        for mat in (w.matE, w.matF, w.matK):
            lhs = poly_mat_mul(traced, [list(r) for r in mat], m)
            rhs = poly_mat_mul([list(r) for r in mat], traced, m)
            for i in range(m):
                for j in range(m):
                    assert lhs[i][j] == rhs[i][j]
