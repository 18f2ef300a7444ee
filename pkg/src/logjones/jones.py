"""Colored Jones invariants of braid-closure knots.

Builds the m-dimensional highest weight representation, the universal
R-matrix action on tensor powers, the braid group representation and the
quantum/partial traces, all over exact Laurent polynomials.  The braiding
at a positive crossing is P (factor swap) composed after R; a negative
crossing uses the inverse braiding.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction

import mpmath as mp

from .qcalc import InexactDivisionError, LaurentPoly, brace, qint


class FeasibilityError(RuntimeError):
    """Requested exact computation exceeds the documented size bounds."""


class LinkNotKnotError(ValueError):
    """Braid closure has more than one component."""


# Tensor dimension cap for exact LaurentPoly braid operators.  400-dim
# 2-strand and 216-dim 3-strand words are routine; beyond ~1500 the exact
# path gets slow enough that the numeric-q route should be used instead.
EXACT_DIM_CAP = 1800


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A braid given by strand count and a word in signed Artin generators.

    word entries are +/-k for sigma_k^{+/-1}, 1 <= k < strands.  The
    writhe (sum of signs) is the framing of the closure.
    """

    strands: int
    word: tuple
    name: str = ""

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("strands must be >= 1")
        for g in self.word:
            if g == 0 or abs(g) >= self.strands:
                raise ValueError(f"generator {g} out of range for {self.strands} strands")

    @property
    def writhe(self) -> int:
        return sum(1 if g > 0 else -1 for g in self.word)

    def permutation(self):
        """Underlying permutation of strand endpoints (as a tuple image)."""
        perm = list(range(self.strands))
        for g in self.word:
            k = abs(g) - 1
            perm[k], perm[k + 1] = perm[k + 1], perm[k]
        return tuple(perm)

    def closure_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for i in range(self.strands):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
        return cycles

    def is_knot(self) -> bool:
        return self.closure_components() == 1


KNOT_CATALOG = {
    "unknot": BraidWord(1, (), name="unknot"),
    "3_1": BraidWord(2, (1, 1, 1), name="3_1"),
    "4_1": BraidWord(3, (1, -2, 1, -2), name="4_1"),
}


def parse_braid(text: str, name: str = "") -> BraidWord:
    """Parse 'n: i1 i2 ...' braid notation, e.g. '3: 1 -2 1 -2' for 4_1."""
    if text in KNOT_CATALOG:
        return KNOT_CATALOG[text]
    head, _, tail = text.partition(":")
    try:
        strands = int(head.strip())
        word = tuple(int(t) for t in tail.split())
    except ValueError as exc:
        raise ValueError(f"cannot parse braid {text!r}; expected 'n: i1 i2 ...'") from exc
    return BraidWord(strands, word, name=name or text)


@dataclasses.dataclass(frozen=True)
class WeightRep:
    """A weight representation by explicit E, F, K matrices over LaurentPoly.

    Matrices act on column vectors; mat[i][j] is the coefficient of basis
    vector i in the image of basis vector j.  K is diagonal with entries
    q^{weights[j]}.
    """

    dim: int
    matE: tuple
    matF: tuple
    matK: tuple
    weights: tuple


def _zeros(d):
    return [[LaurentPoly() for _ in range(d)] for _ in range(d)]


def _freeze(m):
    return tuple(tuple(row) for row in m)


def make_weight_rep(dim, matE, matF, weights) -> WeightRep:
    matK = _zeros(dim)
    for i, w in enumerate(weights):
        matK[i][i] = LaurentPoly.q_power(w)
    return WeightRep(dim, _freeze(matE), _freeze(matF), _freeze(matK), tuple(weights))


def build_Wm(m: int) -> WeightRep:
    """The irreducible W_m: E f_i = [i] f_{i-1}, F f_i = [m-1-i] f_{i+1},
    K f_i = q^{m-1-2i} f_i."""
    if m < 1:
        raise ValueError("m must be >= 1")
    E = _zeros(m)
    F = _zeros(m)
    for i in range(1, m):
        E[i - 1][i] = qint(i)
    for i in range(m - 1):
        F[i + 1][i] = qint(m - 1 - i)
    return make_weight_rep(m, E, F, [m - 1 - 2 * i for i in range(m)])


# -- sparse operators on tensor powers ---------------------------------


@dataclasses.dataclass
class TensorOperator:
    """Sparse operator on a tensor product, entries keyed by (row, col)
    flat indices in mixed radix over factor_dims."""

    factor_dims: tuple
    entries: dict

    @property
    def dim(self):
        d = 1
        for f in self.factor_dims:
            d *= f
        return d

    def __eq__(self, other):
        if not isinstance(other, TensorOperator):
            return NotImplemented
        return self.factor_dims == other.factor_dims and self.entries == other.entries

    def compose(self, other: "TensorOperator") -> "TensorOperator":
        """self . other (matrix product), sparse in both factors."""
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in by_row.get(c, ()):
                key = (r, c2)
                s = out.get(key)
                prod = v * v2
                out[key] = prod if s is None else s + prod
        return TensorOperator(self.factor_dims, {k: v for k, v in out.items() if v})

    def scale(self, p: LaurentPoly) -> "TensorOperator":
        return TensorOperator(self.factor_dims, {k: v * p for k, v in self.entries.items() if v * p})

    def add(self, other: "TensorOperator") -> "TensorOperator":
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k)
            t = v if s is None else s + v
            if t:
                out[k] = t
            else:
                out.pop(k, None)
        return TensorOperator(self.factor_dims, out)

def tensor_of(mats_a, mats_b, dims) -> TensorOperator:
    """Kronecker product of two dense single-factor matrices as a sparse
    two-factor operator."""
    d1, d2 = dims
    entries = {}
    for i1 in range(d1):
        for j1 in range(d1):
            a = mats_a[i1][j1]
            if not a:
                continue
            for i2 in range(d2):
                for j2 in range(d2):
                    b = mats_b[i2][j2]
                    if not b:
                        continue
                    entries[(i1 * d2 + i2, j1 * d2 + j2)] = a * b
    return TensorOperator((d1, d2), entries)


def _mat_mul(a, b, dim):
    """Dense product of two single-factor matrices."""
    new = _zeros(dim)
    for i in range(dim):
        row = a[i]
        for k in range(dim):
            x = row[k]
            if not x:
                continue
            brow = b[k]
            for j in range(dim):
                y = brow[j]
                if y:
                    new[i][j] = new[i][j] + x * y
    return new


def _mat_power(rep_mat, dim, n):
    """Dense n-th power of a single-factor matrix."""
    out = [[LaurentPoly.const(1) if i == j else LaurentPoly() for j in range(dim)] for i in range(dim)]
    for _ in range(n):
        out = _mat_mul(out, rep_mat, dim)
    return out


def nilpotency_order(mat, dim) -> int:
    """Smallest n with mat^n = 0; dim+1 if mat is not nilpotent."""
    power = [list(row) for row in mat]
    n = 1
    while n <= dim:
        if all(not power[i][j] for i in range(dim) for j in range(dim)):
            return n
        nxt = _zeros(dim)
        for i in range(dim):
            for k in range(dim):
                a = power[i][k]
                if not a:
                    continue
                for j in range(dim):
                    b = mat[k][j]
                    if b:
                        nxt[i][j] = nxt[i][j] + a * b
        power = nxt
        n += 1
    return dim + 1


def rmatrix_terms(V1: WeightRep, V2: WeightRep, cartan: bool = True):
    """Summands of R = q^{H(x)H/2} sum_n ({1}^{2n}/{n}!) q^{n(n-1)/2} E^n(x)F^n,
    truncated at the joint nilpotency order.

    Yields (n, term, den).  When every entry of the n-th summand divides
    exactly by {n}! the term is the divided polynomial operator and den is
    1; otherwise (some modified-representation pairs) the term is the raw
    numerator and den = {n}!, whose q -> xi limits exist by the
    specialization property.
    """
    n_max = min(nilpotency_order(V1.matE, V1.dim), nilpotency_order(V2.matF, V2.dim))
    one = LaurentPoly.const(1)
    brace1 = brace(1)
    fact = LaurentPoly.const(1)
    En = Fn = None
    for n in range(n_max):
        den = one
        if n == 0:
            body = TensorOperator((V1.dim, V2.dim),
                                  {(i, i): LaurentPoly.const(1) for i in range(V1.dim * V2.dim)})
        else:
            En = _mat_mul(En, V1.matE, V1.dim) if En is not None else [list(r) for r in V1.matE]
            Fn = _mat_mul(Fn, V2.matF, V2.dim) if Fn is not None else [list(r) for r in V2.matF]
            fact = fact * brace(n)
            scalar = (brace1 ** (2 * n)) * LaurentPoly.q_power(n * (n - 1), 2)
            raw = tensor_of(En, Fn, (V1.dim, V2.dim))
            try:
                body = TensorOperator(raw.factor_dims,
                                      {k: (v * scalar) / fact for k, v in raw.entries.items()})
            except InexactDivisionError:
                body = raw.scale(scalar)
                den = fact
        if cartan:
            entries = {}
            for (r, c), v in body.entries.items():
                i1, i2 = divmod(r, V2.dim)
                entries[(r, c)] = v.shift(V1.weights[i1] * V2.weights[i2])
            body = TensorOperator((V1.dim, V2.dim), entries)
        yield n, body, den


def _sum_terms_common_den(terms, dims):
    """Combine (n, term, den) summands over the least common {K}! denominator."""
    out = TensorOperator(dims, {})
    dens = [den for _, _, den in terms]
    if all(den == LaurentPoly.const(1) for den in dens):
        for _, term, _ in terms:
            out = out.add(term)
        return out, LaurentPoly.const(1)
    common = max(dens, key=lambda p: len(p.terms) + (p.degree2() or 0))
    for _, term, den in terms:
        factor = common / den  # {K}!/{n}! is a polynomial
        out = out.add(term if factor == LaurentPoly.const(1) else term.scale(factor))
    return out, common


def rmatrix(V1: WeightRep, V2: WeightRep):
    """The R-matrix action as (operator, scalar denominator)."""
    terms = list(rmatrix_terms(V1, V2))
    return _sum_terms_common_den(terms, (V1.dim, V2.dim))


def rmatrix_inverse(V1: WeightRep, V2: WeightRep):
    """R^{-1} = Theta^{-1} D^{-1} as (operator, scalar denominator).

    Theta_num = den*I + X with X nilpotent, so den^{L-1} Theta^{-1} is the
    polynomial sum of (-1)^k den^{L-1-k} X^k over k < L."""
    d2 = V2.dim
    dim = V1.dim * d2
    theta, den = _sum_terms_common_den(list(rmatrix_terms(V1, V2, cartan=False)),
                                       (V1.dim, d2))
    x = TensorOperator((V1.dim, d2), dict(theta.entries))
    for i in range(dim):
        v = x.entries.get((i, i), LaurentPoly()) - den
        if v:
            x.entries[(i, i)] = v
        else:
            x.entries.pop((i, i), None)
    powers = [TensorOperator((V1.dim, d2), {(i, i): LaurentPoly.const(1) for i in range(dim)})]
    power = powers[0]
    while x.entries:
        power = power.compose(x)
        if not power.entries:
            break
        powers.append(power)
    L = len(powers)
    inv = TensorOperator((V1.dim, d2), {})
    den_pow = [LaurentPoly.const(1)]
    for _ in range(L - 1):
        den_pow.append(den_pow[-1] * den)
    for k, pk in enumerate(powers):
        coeff = den_pow[L - 1 - k] * (1 if k % 2 == 0 else -1)
        inv = inv.add(pk.scale(coeff))
    # right-multiply by D^{-1}: scale columns by q^{-w1*w2/2}
    entries = {}
    for (r, c), v in inv.entries.items():
        j1, j2 = divmod(c, d2)
        entries[(r, c)] = v.shift(-V1.weights[j1] * V2.weights[j2])
    return TensorOperator((V1.dim, d2), entries), den_pow[-1]


def braiding(V: WeightRep, sign: int):
    """P o R (sign=+1) or its inverse (sign=-1) on V (x) V, with denominator."""
    d = V.dim
    if sign > 0:
        r, den = rmatrix(V, V)
        entries = {}
        for (row, c), v in r.entries.items():
            i, j = divmod(row, d)
            entries[(j * d + i, c)] = v
        return TensorOperator((d, d), entries), den
    rinv, den = rmatrix_inverse(V, V)
    # (P o R)^{-1} = R^{-1} o P: permute columns
    entries = {}
    for (row, c), v in rinv.entries.items():
        i, j = divmod(c, d)
        entries[(row, j * d + i)] = v
    return TensorOperator((d, d), entries), den


def braid_operator(b: BraidWord, V: WeightRep):
    """Representation of the braid word on V^{(x) strands}, returned as
    (operator, scalar denominator).  The denominator is 1 on irreducible
    colors; it only picks up {n}! factors on modified-representation pairs
    whose R-matrix entries are not individually polynomial."""
    n = b.strands
    d = V.dim
    total = d ** n
    if total > EXACT_DIM_CAP:
        raise FeasibilityError(f"tensor dimension {total} exceeds the exact-path bound {EXACT_DIM_CAP}")
    dims = (d,) * n
    cross = {}
    dens = {}
    den_total = LaurentPoly.const(1)
    op = TensorOperator(dims, {(i, i): LaurentPoly.const(1) for i in range(total)})
    for g in b.word:
        sign = 1 if g > 0 else -1
        if sign not in cross:
            local, den = braiding(V, sign)
            by_col = {}
            for (r, c), v in local.entries.items():
                by_col.setdefault(c, []).append((r, v))
            cross[sign] = by_col
            dens[sign] = den
        den_total = den_total * dens[sign]
        op = _apply_local(op, cross[sign], abs(g) - 1, d, n, dims)
    return op, den_total


def _apply_local(op: TensorOperator, local_by_col, pos, d, n, dims) -> TensorOperator:
    """Left-multiply op by (1 x ... x B x ... x 1) with B at factors pos, pos+1."""
    hi = d ** (n - pos - 2)  # stride of factor pos+1
    out = {}
    for (r, c), v in op.entries.items():
        rest, lowblock = divmod(r, hi * d * d)
        pair, low = divmod(lowblock, hi)
        for (r2, lv) in local_by_col.get(pair, ()):
            key = ((rest * d * d + r2) * hi + low, c)
            prod = lv * v
            s = out.get(key)
            out[key] = prod if s is None else s + prod
    return TensorOperator(op.factor_dims, {k: v for k, v in out.items() if v})


def quantum_trace(op: TensorOperator, V: WeightRep) -> LaurentPoly:
    """tr(K^{(x)n} . op)."""
    d = V.dim
    n = len(op.factor_dims)
    out = LaurentPoly()
    for (r, c), v in op.entries.items():
        if r != c:
            continue
        shift = 0
        idx = r
        for _ in range(n):
            idx, rem = divmod(idx, d)
            shift += V.weights[rem]
        out = out + v.shift(2 * shift)
    return out


def partial_trace(op: TensorOperator, V: WeightRep):
    """Partial quantum trace over the right n-1 factors: contracts
    (1 x K^{(x)(n-1)}) . op, returning a dense dim x dim matrix."""
    d = V.dim
    n = len(op.factor_dims)
    rest = d ** (n - 1)
    out = _zeros(d)
    for (r, c), v in op.entries.items():
        a, tr = divmod(r, rest)
        b_, tc = divmod(c, rest)
        if tr != tc:
            continue
        shift = 0
        idx = tr
        for _ in range(n - 1):
            idx, rem = divmod(idx, d)
            shift += V.weights[rem]
        out[a][b_] = out[a][b_] + v.shift(2 * shift)
    return out


def colored_jones(b: BraidWord, m: int) -> LaurentPoly:
    """V_m of the braid closure, carrying framing = writhe.

    Use framing_adjust to pass to the 0-framed invariant.  Raises
    LinkNotKnotError when the closure has more than one component.
    """
    if not b.is_knot():
        raise LinkNotKnotError(f"closure of {b} has {b.closure_components()} components")
    V = build_Wm(m)
    op, den = braid_operator(b, V)
    return quantum_trace(op, V) / den


def framing_adjust(p: LaurentPoly, w: int, m: int) -> LaurentPoly:
    """Convert a framing-w invariant to framing 0: multiply by q^{-(m^2-1)w/2}."""
    return p.shift(-(m * m - 1) * w)


def colored_jones_zero_framed(b: BraidWord, m: int) -> LaurentPoly:
    return framing_adjust(colored_jones(b, m), b.writhe, m)


# -- numeric-q sampling path (for sizes beyond the exact cap) -----------


def colored_jones_numeric(b: BraidWord, m: int, q_half):
    """Quantum trace evaluated at a numeric q given by its square root.

    Same algorithm as the exact path with mpmath entries; used to
    cross-check reconstructions at colors where exact polynomials are
    unnecessary.
    """
    if not b.is_knot():
        raise LinkNotKnotError(f"closure of {b} has {b.closure_components()} components")
    V = build_Wm(m)
    q = q_half * q_half
    d = V.dim
    n = b.strands

    def ev(p):
        return _eval_poly(p, q_half)

    local_cache = {}
    total = d ** n
    mat = {(i, i): mp.mpc(1) for i in range(total)}
    for g in b.word:
        sign = 1 if g > 0 else -1
        if sign not in local_cache:
            loc, den = braiding(V, sign)
            den_val = ev(den)
            if abs(den_val) < mp.mpf(10) ** -20:
                raise ValueError("sample point too close to a vanishing denominator")
            by_col = {}
            for (r, c), v in loc.entries.items():
                by_col.setdefault(c, []).append((r, ev(v) / den_val))
            local_cache[sign] = by_col
        pos = abs(g) - 1
        hi = d ** (n - pos - 2)
        out = {}
        for (r, c), v in mat.items():
            rest, lowblock = divmod(r, hi * d * d)
            pair, low = divmod(lowblock, hi)
            for (r2, lv) in local_cache[sign].get(pair, ()):
                key = ((rest * d * d + r2) * hi + low, c)
                out[key] = out.get(key, mp.mpc(0)) + lv * v
        mat = out
    tot = mp.mpc(0)
    for (r, c), v in mat.items():
        if r != c:
            continue
        shift = 0
        idx = r
        for _ in range(n):
            idx, rem = divmod(idx, d)
            shift += V.weights[rem]
        tot += v * q ** shift
    return tot


def _eval_poly(p: LaurentPoly, x):
    if not p.terms:
        return mp.mpc(0)
    exps = sorted(p.terms, reverse=True)
    head = p.terms[exps[0]]
    if isinstance(head, Fraction):
        head = mp.mpf(head.numerator) / head.denominator
    acc = mp.mpc(head)
    for prev, e in zip(exps, exps[1:]):
        c = p.terms[e]
        if isinstance(c, Fraction):
            c = mp.mpf(c.numerator) / c.denominator
        acc = acc * x ** (prev - e) + c
    return acc * x ** exps[-1]
