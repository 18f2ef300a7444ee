"""Figure-eight cone-manifold volumes and the large-N scan of the
logarithmic invariant.

The scan computes (2 pi / N) log |gamma_s| for s = 1..N-1 with the O(N)
cotangent/tilde-product kernel (the all-ones coefficient specialization)
and pairs each row with the hyperbolic volume reference curve: Vol(M_a)
for cone angles a < 2pi/3, the conjectural flat 0 on [2pi/3, 4pi/3], and
the mirror Vol(M_{2pi-a}) beyond.
"""

from __future__ import annotations

import dataclasses
import json
import math

import mpmath as mp

from .qcalc import RootContext



def lobachevsky(x, dps: int = 30):
    """Lobachevsky function L(x) = (1/2) sum_{n>=1} sin(2nx)/n^2.

    Evaluated through the closed Clausen form Im Li_2(e^{2ix})/2 of the
    defining series; odd and pi-periodic.  The quadrature form
    -int_0^x log|2 sin t| dt is kept as the independent test oracle.
    """
    with mp.workdps(dps):
        x = mp.mpf(x)
        # reduce to [0, pi): the series is pi-periodic
        red = x - mp.pi * mp.floor(x / mp.pi)
        val = mp.polylog(2, mp.expj(2 * red)).imag / 2
        return val


def lobachevsky_quadrature(x, dps: int = 30):
    """-int_0^x log|2 sin t| dt by adaptive quadrature (test oracle)."""
    with mp.workdps(dps):
        x = mp.mpf(x)
        if x == 0:
            return mp.mpf(0)
        return -mp.quad(lambda t: mp.log(abs(2 * mp.sin(t))), [0, x])


@dataclasses.dataclass(frozen=True)
class ConeVolumeParams:
    """Derived quantities of the cone angle: the (pi, 2pi) branch angle
    theta with cos(theta) = cos(alpha) - 1/2, and t = 1 + cos a - cos 2a
    whose arccosh is -dVol/da."""

    alpha: float
    theta: float
    t: float


def cone_params(alpha, dps: int = 30) -> ConeVolumeParams:
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        c = mp.cos(a) - mp.mpf(1) / 2
        if abs(c) > 1:
            raise ValueError(f"cos(alpha) - 1/2 = {c} outside [-1, 1]")
        theta = 2 * mp.pi - mp.acos(c)
        t = 1 + mp.cos(a) - mp.cos(2 * a)
        return ConeVolumeParams(a, theta, t)


def cone_volume(alpha, dps: int = 30):
    """Hyperbolic volume of the figure-eight cone manifold,
    -2 (L((a+theta)/2) - L((a-theta)/2)) with theta in (pi, 2pi).

    Valid on 0 <= alpha < 2pi/3 where the cone manifold is hyperbolic.
    """
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        if a < 0 or a >= 2 * mp.pi / 3:
            raise ValueError("alpha must lie in [0, 2pi/3) for the hyperbolic cone volume")
        p = cone_params(a, dps)
        return -2 * (lobachevsky((p.alpha + p.theta) / 2, dps)
                     - lobachevsky((p.alpha - p.theta) / 2, dps))


def cone_volume_derivative_reference(alpha, dps: int = 30):
    """-arccosh(1 + cos a - cos 2a), the known dVol/da."""
    with mp.workdps(dps):
        p = cone_params(alpha, dps)
        return -mp.acosh(p.t) if p.t >= 1 else mp.nan


def s_N_alpha(N: int, alpha) -> int:
    """floor(N a / 2 pi) clamped into [0, N]."""
    with mp.workdps(30):
        s = int(mp.floor(N * mp.mpf(alpha) / (2 * mp.pi)))
    return min(max(s, 0), N)


def gamma_fig8_fast(N: int, s: int, ctx: RootContext = None):
    """gamma_s^{(N)} of the figure-eight knot by the O(N) kernel:

    sum_{i<su} {s+i,2i+1} sum_{k=s-i..s+i} {k}_+/{k}
      + 2 sum_{i=su..sb-1} ~{s+i,2i+1}

    with running sine/cotangent products; all quantities are real in this
    form and every tilde term carries exactly one sign factor.
    """
    ctx = ctx or RootContext(N, precision_digits=33)
    if not 1 <= s <= N - 1:
        raise ValueError("s must be in 1..N-1")
    su, sb = min(s, N - s), max(s, N - s)
    with ctx.workprec():
        def sn(k):
            return 2 * mp.sinpi(mp.mpf(k) / N)

        def ct(k):
            return mp.cospi(mp.mpf(k) / N) / mp.sinpi(mp.mpf(k) / N)

        total = mp.mpf(0)
        prod = mp.mpf(1)
        cots = mp.mpf(0)
        for i in range(su):
            if i == 0:
                prod = sn(s)
                cots = ct(s)
            else:
                prod *= sn(s + i) * sn(s - i)
                cots += ct(s + i) + ct(s - i)
            total += (-1) ** i * prod * cots
        # tilde terms: window [s-i, s+i] holds exactly one multiple of N
        tp = mp.mpf(1)
        sign = 1
        nfac = 0
        for k in range(s - su, s + su + 1):
            if k % N == 0:
                sign = -sign if (k // N) % 2 else sign
            else:
                tp *= sn(k)
                nfac += 1
        for i in range(su, sb):
            if i > su:
                for k in (s + i, s - i):
                    if k % N == 0:
                        sign = -sign if (k // N) % 2 else sign
                    else:
                        tp *= sn(k)
                        nfac += 1
            assert (2 * i + 1 - nfac) == 1, "tilde window must hold exactly one multiple of N"
            # (2i)^{2i} from the braces of the 2i ordinary factors: i^{2i} = (-1)^i
            total += 2 * (-1) ** i * sign * tp
        return mp.mpc(total)


@dataclasses.dataclass
class ScanRow:
    s: int
    alpha: float
    log_gamma_scaled: float  # (2 pi / N) log |gamma_s|; -inf when gamma_s = 0
    vol_reference: float
    region: str
    zero_flag: bool


@dataclasses.dataclass
class ScanResult:
    N: int
    rows: list

    def to_csv(self) -> str:
        lines = ["N,s,alpha,log_gamma_scaled,vol_reference,region_label"]
        for r in self.rows:
            lg = "-inf" if r.zero_flag else mp.nstr(mp.mpf(r.log_gamma_scaled), 17)
            lines.append(f"{self.N},{r.s},{mp.nstr(mp.mpf(r.alpha), 17)},{lg},"
                         f"{mp.nstr(mp.mpf(r.vol_reference), 17)},{r.region}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {
            "N": self.N,
            "rows": [
                {"s": r.s, "alpha": mp.nstr(mp.mpf(r.alpha), 17),
                 "log_gamma_scaled": "-inf" if r.zero_flag else mp.nstr(mp.mpf(r.log_gamma_scaled), 17),
                 "vol_reference": mp.nstr(mp.mpf(r.vol_reference), 17),
                 "region_label": r.region}
                for r in self.rows
            ],
        }
        return json.dumps(payload, sort_keys=True)


def vol_reference(alpha, dps: int = 30):
    """Reference curve: Vol(M_a) below 2pi/3, 0 on the conjectural middle
    third, the mirror volume above 4pi/3."""
    with mp.workdps(dps):
        a = mp.mpf(alpha)
        if a < 2 * mp.pi / 3:
            return cone_volume(a, dps), "volume"
        if a <= 4 * mp.pi / 3:
            return mp.mpf(0), "conjectural-flat"
        return cone_volume(2 * mp.pi - a, dps), "volume-mirror"


def scan_precision(N: int) -> int:
    """Digits needed for the scan: single tilde products reach e^{~0.33 N}
    while whole-sum values in the plateau cancel down to O(N^3), so the
    working precision must scale with N."""
    return max(33, int(0.15 * N) + 35)


def asymptotic_scan(N: int, ctx: RootContext = None) -> ScanResult:
    """Rows (s, alpha=2 pi s/N, (2 pi/N) log|gamma_s|, reference) for
    s = 1..N-1.  gamma_s = 0 rows carry the -inf sentinel and a flag."""
    if N < 2:
        raise ValueError("N must be >= 2")
    ctx = ctx or RootContext(N, precision_digits=scan_precision(N))
    rows = []
    with ctx.workprec():
        two_pi = 2 * mp.pi
        for s in range(1, N):
            g = gamma_fig8_fast(N, s, ctx)
            alpha = two_pi * s / N
            # classify by the exact rational s/N so boundary rows like
            # s/N = 2/3 do not flip with the working precision
            if 3 * s < N:
                ref, region = cone_volume(alpha, ctx.dps), "volume"
            elif 3 * s <= 2 * N:
                ref, region = mp.mpf(0), "conjectural-flat"
            else:
                ref, region = cone_volume(two_pi * (N - s) / N, ctx.dps), "volume-mirror"
            mag = abs(g)
            if mag < ctx.tol:
                rows.append(ScanRow(s, float(alpha), float("-inf"), float(ref), region, True))
            else:
                val = two_pi / N * mp.log(mag)
                rows.append(ScanRow(s, float(alpha), float(val), float(ref), region, False))
    return ScanResult(N, rows)


def convergence_gaps(alpha, Ns=(100, 200, 400)):
    """|(2 pi/N) log|gamma_{s_N^a}| - Vol(M_a)| for each N; the volume
    conjecture predicts these shrink."""
    gaps = []
    for N in Ns:
        ctx = RootContext(N, precision_digits=scan_precision(N))
        s = s_N_alpha(N, alpha)
        with ctx.workprec():
            g = gamma_fig8_fast(N, s, ctx)
            val = 2 * mp.pi / N * mp.log(abs(g))
            gaps.append(float(abs(val - cone_volume(alpha, ctx.dps))))
    return gaps
