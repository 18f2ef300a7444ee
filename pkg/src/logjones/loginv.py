"""Logarithmic invariant coefficients b_s^+-, alpha_s, beta_s, gamma_s.

gamma_s is computed by three independent routes that must agree:

  QDERIV  - xi/(2N) d/dq (q - q^{-1})(V_s + V_{2N-s}) at q = xi,
  HABIRO  - the closed cotangent/tilde-bracket double sum in the
            cyclotomic coefficients a_i evaluated at xi,
  MDERIV  - N {1}/(pi i) d/dm V_m at m = s via the color derivative.

The radical coefficients b_s^+- come either from exact q-derivatives of
normalized invariants or from the closed Habiro-sum form, and the two
coordinate systems (idempotent/radical vs the good basis) are linked by an
exact linear change of basis.
"""

from __future__ import annotations

import dataclasses
import enum
import json

import mpmath as mp

from .qcalc import LaurentPoly, RootContext, brace, ddq, qint
from . import habiro, jones


class RouteDisagreement(RuntimeError):
    """Two supposedly equal routes differ beyond tolerance."""


class Route(enum.Enum):
    QDERIV = "qderiv"
    HABIRO = "habiro"
    MDERIV = "mderiv"


# -- exact colored Jones access -----------------------------------------


def _coeffs_for(knot, N: int) -> habiro.HabiroCoeffs:
    # 3N colors cover V_{2N+s} for the minus-sign radical route
    return habiro.coeffs_for(knot, 3 * N)


def exact_Vm(knot, m: int, framing: int = 0) -> LaurentPoly:
    """Exact V_m with the given framing, from catalog coefficients or a
    braid trace."""
    if isinstance(knot, habiro.HabiroCoeffs):
        v = habiro.reconstruct_Vm(knot, m)
    elif isinstance(knot, str) and knot in ("unknot", "3_1", "4_1"):
        v = habiro.reconstruct_Vm(habiro.catalog_coeffs(knot), m)
    else:
        braid = knot if isinstance(knot, jones.BraidWord) else jones.parse_braid(knot)
        v = jones.colored_jones_zero_framed(braid, m)
    if framing:
        v = v.shift((m * m - 1) * framing)
    return v


def exact_normalized_Vm(knot, m: int, framing: int = 0) -> LaurentPoly:
    """Exact V_m/[m]_q (a Laurent polynomial for knots), framed."""
    if isinstance(knot, habiro.HabiroCoeffs):
        v = habiro.reconstruct_normalized_Vm(knot, m)
    elif isinstance(knot, str) and knot in ("unknot", "3_1", "4_1"):
        v = habiro.reconstruct_normalized_Vm(habiro.catalog_coeffs(knot), m)
    else:
        v = exact_Vm(knot, m) / qint(m)
        if framing:
            v = v.shift((m * m - 1) * framing)
        return v
    if framing:
        v = v.shift((m * m - 1) * framing)
    return v


# -- tilde brackets ------------------------------------------------------


def tilde_brace(n: int, j: int, ctx: RootContext):
    """prod over k=0..j-1 of {n-k} at xi, with factors at multiples of N
    replaced by the sign (-1)^t where n-k = N t."""
    if j < 0:
        raise ValueError("j must be >= 0")
    with ctx.workprec():
        out = mp.mpc(1)
        for k in range(j):
            v = n - k
            if v % ctx.N == 0:
                if (v // ctx.N) % 2:
                    out = -out
            else:
                out *= ctx.brace_at(v)
        return out


def falling_brace_at(n: int, j: int, ctx: RootContext):
    """{n, j} at xi."""
    with ctx.workprec():
        out = mp.mpc(1)
        for k in range(j):
            out *= ctx.brace_at(n - k)
        return out


# -- radical coefficients ------------------------------------------------


def b_pm_via_derivative(knot, s: int, N: int, sign: int, ctx: RootContext = None,
                        framing: int = 0, normalized_route: bool = False):
    """b_s^+ = xi/(2N[s]) d/dq {1}_q (V_s/[s]_q - V_{2N-s}/[2N-s]_q) at xi,
    b_s^- = xi/(4N[s]) d/dq {1}_q (V_{2N+s}/[2N+s]_q - V_{2N-s}/[2N-s]_q).

    normalized_route=True builds the normalized invariants directly from
    the cyclotomic ladder instead of dividing V_m by [m]_q; both codings
    must agree.
    """
    ctx = ctx or RootContext(N)
    if not 1 <= s <= N - 1:
        raise ValueError("s must be in 1..N-1")
    h = _coeffs_for(knot, N) if not isinstance(knot, habiro.HabiroCoeffs) else knot

    if normalized_route:
        def vt(m):
            return exact_normalized_Vm(h, m, framing=framing)
    else:
        def vt(m):
            return exact_Vm(h, m, framing=framing) / qint(m)

    one = brace(1)
    if sign > 0:
        poly = one * (vt(s) - vt(2 * N - s))
        pref_den = 2 * N
    else:
        poly = one * (vt(2 * N + s) - vt(2 * N - s))
        pref_den = 4 * N
    with ctx.workprec():
        return ctx.xi / (pref_den * ctx.qint_at(s)) * ctx.eval(ddq(poly))


def b_pm_via_habiro(knot, s: int, N: int, ctx: RootContext = None):
    """The closed form of Prop-style Habiro sums (framing 0):

    b_s^+ = b_s^- = {1}^2/{s} ( sum_{i<su} a_i {s+i}!/({s}{s-i-1}!)
                                  sum_{k=s-i..s+i, k != s} {k}_+/{k}
                    + 2 sum_{i=su..sb-1} a_i ~{s+i,i} ~{s-1,i} ),

    with su = min(s, N-s), sb = max(s, N-s).  The statement display of the
    source proposition carries [s] in place of the inner {s}; the proof's
    final display (used here) is the one consistent with the q-derivative
    route, and the discrepancy is exercised in the tests.
    """
    ctx = ctx or RootContext(N)
    if not 1 <= s <= N - 1:
        raise ValueError("s must be in 1..N-1")
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    su, sb = min(s, N - s), max(s, N - s)
    with ctx.workprec():
        brs = ctx.brace_at(s)
        total = mp.mpc(0)
        for i in range(su):
            ai = h.coeff_at_xi(i, ctx)
            if not ai:
                continue
            pref = falling_brace_at(s + i, 2 * i + 1, ctx) / brs
            cot = mp.fsum(ctx.brace_plus(k) / ctx.brace_at(k)
                          for k in range(s - i, s + i + 1) if k != s)
            total += ai * pref * cot
        for i in range(su, sb):
            ai = h.coeff_at_xi(i, ctx)
            if not ai:
                continue
            total += 2 * ai * tilde_brace(s + i, i, ctx) * tilde_brace(s - 1, i, ctx)
        return ctx.brace_at(1) ** 2 / brs * total


# -- gamma ---------------------------------------------------------------


def gamma_s(knot, s: int, N: int, route: Route = Route.QDERIV,
            ctx: RootContext = None, framing: int = 0):
    """gamma_s^{(N)} for 1 <= s <= N-1 by the selected route."""
    ctx = ctx or RootContext(N)
    if not 1 <= s <= N - 1:
        raise ValueError("s outside 1..N-1; use gamma_boundary for s in {0, N}")
    route = Route(route)
    with ctx.workprec():
        phase = ctx.xi_pow((s * s - 1) * framing, 2) if framing else mp.mpf(1)
        if route is Route.QDERIV:
            h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
            poly = brace(1) * (exact_Vm(h, s) + exact_Vm(h, 2 * N - s))
            return phase * ctx.xi / (2 * N) * ctx.eval(ddq(poly))
        if route is Route.HABIRO:
            h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
            su, sb = min(s, N - s), max(s, N - s)
            total = mp.mpc(0)
            for i in range(su):
                ai = h.coeff_at_xi(i, ctx)
                if not ai:
                    continue
                pref = falling_brace_at(s + i, 2 * i + 1, ctx)
                cot = mp.fsum(ctx.brace_plus(k) / ctx.brace_at(k)
                              for k in range(s - i, s + i + 1))
                total += ai * pref * cot
            for i in range(su, sb):
                ai = h.coeff_at_xi(i, ctx)
                if not ai:
                    continue
                total += 2 * ai * tilde_brace(s + i, 2 * i + 1, ctx)
            return phase * total
        # MDERIV
        h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
        dm = habiro.ddm_Vm(h, s, ctx)
        return phase * N * ctx.brace_at(1) / (mp.pi * mp.mpc(0, 1)) * dm


def gamma_all_routes(knot, s: int, N: int, ctx: RootContext = None, framing: int = 0):
    ctx = ctx or RootContext(N)
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    return {route: gamma_s(h, s, N, route, ctx, framing) for route in Route}


def gamma_boundary(knot, which: int, N: int, ctx: RootContext = None, framing: int = 0):
    """gamma_0 = V_{2N}/[2N] at xi and gamma_N = -V_N/[N] at xi, both 0/0
    limits evaluated by l'Hopital and cross-checked against the
    q-derivative expressions."""
    ctx = ctx or RootContext(N)
    if which not in (0, N):
        raise ValueError("which must be 0 or N")
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    with ctx.workprec():
        if which == 0:
            vm = exact_Vm(h, 2 * N)
            val = ctx.lhopital_ratio(vm, qint(2 * N))
            alt = ctx.xi / (4 * N) * ctx.eval(ddq(brace(1) * vm))
            phase = ctx.xi_pow(-framing, 2) if framing else mp.mpf(1)
        else:
            vm = exact_Vm(h, N)
            val = -ctx.lhopital_ratio(vm, qint(N))
            alt = ctx.xi / (2 * N) * ctx.eval(ddq(brace(1) * vm))
            phase = ctx.xi_pow((N * N - 1) * framing, 2) if framing else mp.mpf(1)
        if abs(val - alt) > ctx.tol:
            raise RouteDisagreement(
                f"gamma_{which} l'Hopital {val} vs d/dq form {alt} differ beyond tolerance")
        return phase * val


def kashaev_invariant(knot, N: int, ctx: RootContext = None):
    """<L>_N as the normalized limit lim_{q->xi} V_N/[N] (= -gamma_N).

    The plain evaluation V_N(L) at xi is identically 0 because [N]
    vanishes at xi; use unnormalized_VN_at_xi to see that value.  The two
    normalization conventions are deliberately kept separate.
    """
    ctx = ctx or RootContext(N)
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    return ctx.lhopital_ratio(exact_Vm(h, N), qint(N))


def unnormalized_VN_at_xi(knot, N: int, ctx: RootContext = None):
    ctx = ctx or RootContext(N)
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    return ctx.eval(exact_Vm(h, N))


# -- alpha, beta ----------------------------------------------------------


def alpha_beta(knot, N: int, ctx: RootContext = None, framing: int = 0):
    """alpha_s = (-1)^{N+s} N {1} V_s(L^f) at xi;
    beta_s = -N f {1} V_s(L^f) at xi (so beta = 0 at framing 0)."""
    ctx = ctx or RootContext(N)
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    alpha = [None] * (N - 1)
    beta = [None] * (N - 1)
    with ctx.workprec():
        one = ctx.brace_at(1)
        for s in range(1, N):
            vs = ctx.eval(exact_Vm(h, s, framing=framing))
            alpha[s - 1] = (-1) ** (N + s) * N * one * vs
            beta[s - 1] = -N * framing * one * vs
    return alpha, beta


# -- basis change ----------------------------------------------------------


def basis_change(idem, rad_plus, rad_minus, N: int, ctx: RootContext = None):
    """(a_s, b_s^+, b_s^-) -> (alpha_s, beta_s, gamma_s):

    alpha_s = (-1)^{N+s} (xi^s - xi^{-s}) N a_s
    beta_s  = [s]^2 (b_s^+ - b_s^-)
    gamma_s = [s]^2 (s/N b_s^+ + (N-s)/N b_s^-) + (xi^s + xi^{-s}) a_s
    gamma_0 = a_0,  gamma_N = -a_N.
    """
    ctx = ctx or RootContext(N)
    if len(idem) != N + 1 or len(rad_plus) != N - 1 or len(rad_minus) != N - 1:
        raise ValueError("expected idem of length N+1 and radicals of length N-1")
    with ctx.workprec():
        alpha = []
        beta = []
        gamma = [mp.mpc(idem[0])]
        for s in range(1, N):
            a_s = mp.mpc(idem[s])
            bp, bm = mp.mpc(rad_plus[s - 1]), mp.mpc(rad_minus[s - 1])
            qs2 = ctx.qint_at(s) ** 2
            alpha.append((-1) ** (N + s) * ctx.brace_at(s) * N * a_s)
            beta.append(qs2 * (bp - bm))
            gamma.append(qs2 * (mp.mpf(s) / N * bp + mp.mpf(N - s) / N * bm)
                         + ctx.brace_plus(s) * a_s)
        gamma.append(-mp.mpc(idem[N]))
        return alpha, beta, gamma


def basis_change_inverse(alpha, beta, gamma, N: int, ctx: RootContext = None):
    """Invert basis_change exactly (no singularity for 1 <= s <= N-1)."""
    ctx = ctx or RootContext(N)
    if len(alpha) != N - 1 or len(beta) != N - 1 or len(gamma) != N + 1:
        raise ValueError("expected alpha/beta of length N-1 and gamma of length N+1")
    with ctx.workprec():
        idem = [mp.mpc(gamma[0])]
        rad_plus = []
        rad_minus = []
        for s in range(1, N):
            a_s = (-1) ** (N + s) * mp.mpc(alpha[s - 1]) / (N * ctx.brace_at(s))
            idem.append(a_s)
            qs2 = ctx.qint_at(s) ** 2
            g = mp.mpc(gamma[s]) - ctx.brace_plus(s) * a_s
            rad_plus.append((g + mp.mpf(N - s) / N * mp.mpc(beta[s - 1])) / qs2)
            rad_minus.append((g - mp.mpf(s) / N * mp.mpc(beta[s - 1])) / qs2)
        idem.append(-mp.mpc(gamma[N]))
        return idem, rad_plus, rad_minus


# -- assembled coefficient vectors ----------------------------------------


@dataclasses.dataclass
class CenterCoeffs:
    """All center-basis coefficient vectors of one framed knot at one N.

    idem holds a_0..a_N; the radical vectors and alpha/beta/gamma follow
    the good-basis change of coordinates exactly.
    """

    N: int
    knot: str
    framing: int
    idem: list
    rad_plus: list
    rad_minus: list
    alpha: list
    beta: list
    gamma: list

    def to_json(self, precision_digits: int = 60) -> str:
        def cstr(z):
            # no mp.mpc() conversion here: that would re-round at the
            # ambient precision and truncate the stored digits
            re = z.real if hasattr(z, "real") else z
            im = z.imag if hasattr(z, "imag") else mp.mpf(0)
            return {"re": mp.nstr(re, precision_digits),
                    "im": mp.nstr(im, precision_digits)}

        payload = {
            "N": self.N,
            "knot": self.knot,
            "framing": self.framing,
            "idem": [cstr(z) for z in self.idem],
            "b_plus": [cstr(z) for z in self.rad_plus],
            "b_minus": [cstr(z) for z in self.rad_minus],
            "alpha": [cstr(z) for z in self.alpha],
            "beta": [cstr(z) for z in self.beta],
            "gamma": [cstr(z) for z in self.gamma],
        }
        return json.dumps(payload, sort_keys=True)


def center_coeffs(knot, N: int, ctx: RootContext = None, framing: int = 0,
                  knot_label: str = "") -> CenterCoeffs:
    """Assemble the full CenterCoeffs of a knot from the derivative routes."""
    ctx = ctx or RootContext(N)
    h = knot if isinstance(knot, habiro.HabiroCoeffs) else _coeffs_for(knot, N)
    label = knot_label or (knot if isinstance(knot, str) else h.knot)
    with ctx.workprec():
        idem = [gamma_boundary(h, 0, N, ctx, framing)]
        for s in range(1, N):
            vts = ctx.eval(exact_normalized_Vm(h, s, framing=framing))
            idem.append(vts)
        idem.append(-gamma_boundary(h, N, N, ctx, framing))
        rad_plus = [b_pm_via_derivative(h, s, N, +1, ctx, framing) for s in range(1, N)]
        rad_minus = [b_pm_via_derivative(h, s, N, -1, ctx, framing) for s in range(1, N)]
        alpha, beta, gamma_mid = basis_change(idem, rad_plus, rad_minus, N, ctx)
        alpha_d, beta_d = alpha_beta(h, N, ctx, framing)
        for s in range(1, N):
            if abs(alpha[s - 1] - alpha_d[s - 1]) > ctx.tol or abs(beta[s - 1] - beta_d[s - 1]) > ctx.tol:
                raise RouteDisagreement(
                    f"alpha/beta via basis change vs direct formulas differ at s={s}")
    return CenterCoeffs(N, label, framing, idem, rad_plus, rad_minus, alpha, beta, gamma_mid)


def framed_corrections(base: CenterCoeffs, f: int, ctx: RootContext = None) -> CenterCoeffs:
    """Framed coefficients from framing-0 ones.

    b_s^+(L^f) = xi^{(s^2-1)f/2} b_s^+(L) + (s-N) f {1} V_s(L^f)/[s]^2 at xi
    b_s^-(L^f) = xi^{(s^2-1)f/2} b_s^-(L) +     s f {1} V_s(L^f)/[s]^2 at xi

    The correction terms carry the framed evaluation V_s(L^f) at xi; the
    source corollary prints the unframed V_s(L) there, which fails the
    direct framed-derivative cross-check (see tests), so the framed form
    is used.  a_s, alpha_s, gamma_s pick up the phase xi^{(s^2-1)f/2};
    a_0 and a_N use the boundary phases xi^{-f/2} and xi^{(N^2-1)f/2}.
    """
    ctx = ctx or RootContext(base.N)
    N = base.N
    if base.framing != 0:
        raise ValueError("framed_corrections starts from a framing-0 record")
    if f == 0:
        return CenterCoeffs(N, base.knot, 0, list(base.idem), list(base.rad_plus),
                            list(base.rad_minus), list(base.alpha), list(base.beta),
                            list(base.gamma))
    with ctx.workprec():
        one = ctx.brace_at(1)
        idem = [base.idem[0] * ctx.xi_pow(-f, 2)]
        rad_plus = []
        rad_minus = []
        for s in range(1, N):
            phase = ctx.xi_pow((s * s - 1) * f, 2)
            a_framed = base.idem[s] * phase
            idem.append(a_framed)
            vs_framed = a_framed * ctx.qint_at(s)  # V_s(L^f) at xi
            qs2 = ctx.qint_at(s) ** 2
            rad_plus.append(phase * base.rad_plus[s - 1] + (s - N) * f * one * vs_framed / qs2)
            rad_minus.append(phase * base.rad_minus[s - 1] + s * f * one * vs_framed / qs2)
        idem.append(base.idem[N] * ctx.xi_pow((N * N - 1) * f, 2))
        alpha, beta, gamma = basis_change(idem, rad_plus, rad_minus, N, ctx)
    return CenterCoeffs(N, base.knot, f, idem, rad_plus, rad_minus, alpha, beta, gamma)
