"""Ultimate-time (infinite-horizon) survival probabilities.

Method
------
Survival values obey one balance recurrence linking phi(u) to the values
one period pair earlier,

    phi(u) = sum_{k=1}^{u+4} phi(k) s_{u+4-k}
             - (x_{u+3} y_0 + x_{u+2} y_1) phi(1) - x_{u+2} y_0 phi(2),

plus one mass-balance constraint tying phi(0..3) to the net profit margin
4 - E[s]. Rearranged around the smallest positive s atom m*, the balance
recurrence computes phi(u) forward from phi(u - 4 + m*) and everything
below, so the whole function follows from a handful of initial values.

Those initial values are pinned down by a representation trick: every
phi(n) is a fixed linear combination

    phi(n) = c0_n phi(0) + c1_n phi(1) + c2_n phi(2) + d_n (4 - E[s])

whose coefficient sequences satisfy the same recurrence as phi and can be
generated explicitly. The coefficients blow up geometrically while phi
stays bounded, so differences phi(n + i) - phi(n) vanish at large n; the
resulting small linear system (3x3, 2x2, or scalar depending on the case)
is solved by Cramer's rule with the right-hand side set exactly to zero.
The coefficient growth wipes out double precision long before n reaches
useful values, so sequence generation and the solve run in extended
precision (mpmath), with the bit budget scaled to the expected growth
s_{m*}^{-n/(4-m*)}.

Two independent cross-checks live here too: ``boundary_oracle`` solves
the balance equations as one dense float64 linear system with phi pinned
to 1 far out, and ``no_net_profit_values`` produces the collapsed values
used when the margin is nonpositive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from mpmath import mp

from .errors import InvalidModelError, NumericalError, SingularSystemError
from .model import INCOME_PER_PAIR, CaseKind, CaseTag, ModelSpec, classify, net_profit_margin

DEFAULT_PRECISION_BITS = 256
SOLVE_AGREE_TOL = 1e-9
N_SOLVE_CAP = 2000


# ---- extended-precision model views ----


class _MpModel:
    """mpf views of the truncated atoms plus the partial sums the solvers use."""

    def __init__(self, model: ModelSpec):
        self.xs = [mp.mpf(float(v)) for v in model.x.probs]
        self.ys = [mp.mpf(float(v)) for v in model.y.probs]
        self.ss = [mp.mpf(float(v)) for v in model.s.probs]
        self.xcum = []
        acc = mp.mpf(0)
        for v in self.xs:
            acc += v
            self.xcum.append(acc)
        self.scum = []
        acc = mp.mpf(0)
        for v in self.ss:
            acc += v
            self.scum.append(acc)
        self.margin = mp.mpf(INCOME_PER_PAIR) - mp.fsum(
            u * v for u, v in enumerate(self.ss)
        )

    def x(self, i):
        return self.xs[i] if 0 <= i < len(self.xs) else mp.mpf(0)

    def y(self, i):
        return self.ys[i] if 0 <= i < len(self.ys) else mp.mpf(0)

    def s_at(self, i):
        return self.ss[i] if 0 <= i < len(self.ss) else mp.mpf(0)

    def s_cdf(self, u):
        if u < 0:
            return mp.mpf(0)
        return self.scum[min(u, len(self.scum) - 1)]

    def x_tail(self, u):
        if u < 0:
            return mp.mpf(1)
        return 1 - self.xcum[min(u, len(self.xcum) - 1)]


def _estimate_bits(model: ModelSpec, min_atom: int, n: int) -> int:
    """Bits needed to survive coefficient growth ~ s_{m*}^(-n/(4-m*))."""
    pivot = model.s.p(min_atom)
    per_index = math.log2(1.0 / pivot) / (4 - min_atom) if pivot < 1.0 else 0.0
    return int(math.ceil(n * per_index)) + 96


# ---- coefficient sequences ----


@dataclass(frozen=True)
class SequenceSet:
    """Representation coefficients phi(n) = sum_i ci_n phi(i) + d_n margin.

    Which of coeff_phi0/1/2 are present depends on the case: case A keeps
    all three, case B drops coeff_phi2, case C keeps a single one (phi(0)
    for scenarios s.1/s.2, phi(1) for s.3 where phi(0) = 0 identically).
    Entries are mpf computed at ``precision_bits``.
    """

    tag: CaseTag
    n_max: int
    coeff_phi0: list | None
    coeff_phi1: list | None
    coeff_phi2: list | None
    coeff_margin: list
    precision_bits: int


def _build_case_a(ar: _MpModel, n_max: int):
    s0 = ar.ss[0]
    one, zero = mp.mpf(1), mp.mpf(0)
    head1 = -(ar.s_cdf(2) + ar.x_tail(2) * ar.y(0) + ar.x_tail(1) * ar.y(1)) / s0
    head2 = -(ar.s_cdf(1) + ar.x_tail(1) * ar.y(0)) / s0
    a = [one, zero, zero, -1 / s0]
    b = [zero, one, zero, head1]
    g = [zero, zero, one, head2]
    d = [zero, zero, zero, 1 / s0]
    smax = len(ar.ss) - 1
    for n in range(4, n_max + 1):
        ca = cb = cg = cd = mp.mpf(0)
        for k in range(max(1, n - smax), n):
            w = ar.ss[n - k]
            ca += w * a[k]
            cb += w * b[k]
            cg += w * g[k]
            cd += w * d[k]
        a.append((a[n - 4] - ca) / s0)
        b.append((b[n - 4] - cb + ar.x(n - 1) * ar.y(0) + ar.x(n - 2) * ar.y(1)) / s0)
        g.append((g[n - 4] - cg + ar.x(n - 2) * ar.y(0)) / s0)
        d.append((d[n - 4] - cd) / s0)
    return a, b, g, d


def _build_case_b(ar: _MpModel, n_max: int):
    # Pivot of the head identity: s_1 + (1 - X(1)) y_0, which reduces to
    # y_0 + x_0 y_1 > 0 whenever s_0 = 0 < s_1.
    s1 = ar.ss[1]
    den = s1 + ar.x_tail(1) * ar.y(0)
    one, zero = mp.mpf(1), mp.mpf(0)
    a = [one, zero, -1 / den]
    b = [zero, one, -(ar.s_cdf(2) + ar.x_tail(2) * ar.y(0) + ar.x_tail(1) * ar.y(1)) / den]
    d = [zero, zero, 1 / den]
    smax = len(ar.ss) - 1
    y0, y1 = ar.y(0), ar.y(1)
    # Substituting the representation into the forward recurrence
    # phi(n) = (phi(n-3) + (x_n y_0 + x_{n-1} y_1) phi(1) + x_{n-1} y_0 phi(2)
    #           - sum_{k=1}^{n-1} s_{n+1-k} phi(k)) / s_1
    # carries each sequence's own lagged term (index n-3) and routes the
    # phi(2) coefficient through this sequence set's own n=2 entries.
    for n in range(3, n_max + 1):
        ca = cb = cd = mp.mpf(0)
        for k in range(max(1, n + 1 - smax), n):
            w = ar.ss[n + 1 - k]
            ca += w * a[k]
            cb += w * b[k]
            cd += w * d[k]
        lead = ar.x(n - 1) * y0
        a.append((a[n - 3] - ca + lead * a[2]) / s1)
        b.append((b[n - 3] - cb + ar.x(n) * y0 + ar.x(n - 1) * y1 + lead * b[2]) / s1)
        d.append((d[n - 3] - cd + lead * d[2]) / s1)
    return a, b, d


def _build_case_c12(ar: _MpModel, n_max: int):
    s2 = ar.ss[2]
    den = ar.x_tail(1) * ar.y(1) + s2
    a = [mp.mpf(1), -1 / den]
    d = [mp.mpf(0), 1 / den]
    smax = len(ar.ss) - 1
    y1 = ar.y(1)
    for n in range(2, n_max + 1):
        ca = cd = mp.mpf(0)
        for k in range(max(1, n + 2 - smax), n):
            w = ar.ss[n + 2 - k]
            ca += w * a[k]
            cd += w * d[k]
        a.append((a[n - 2] - ca + ar.x(n) * y1 * a[1]) / s2)
        d.append((d[n - 2] - cd + ar.x(n) * y1 * d[1]) / s2)
    return a, d


def _build_case_c3(ar: _MpModel, n_max: int):
    # Scenario s.3: phi(0) = 0 (the first claim is at least 2), so the
    # representation runs over phi(1) and the margin only. Index 0 entries
    # are stored as zeros for alignment.
    s2 = ar.ss[2]
    y0 = ar.y(0)
    zero = mp.mpf(0)
    a = [zero, mp.mpf(1), -(y0 + ar.y(1)) / y0]
    d = [zero, zero, 1 / y0]
    smax = len(ar.ss) - 1
    for n in range(3, n_max + 1):
        ca = cd = mp.mpf(0)
        for k in range(max(1, n + 2 - smax), n):
            w = ar.ss[n + 2 - k]
            ca += w * a[k]
            cd += w * d[k]
        a.append((a[n - 2] - ca + (ar.x(n + 1) - ar.x(n)) * y0) / s2)
        d.append((d[n - 2] - cd + ar.x(n)) / s2)
    return a, d


def build_sequences(
    model: ModelSpec,
    tag: CaseTag | None = None,
    n_max: int = 153,
    precision_bits: int | None = None,
) -> SequenceSet:
    """Generate the representation coefficients up to index n_max.

    The working precision starts at max(requested, growth estimate) and is
    raised and the build repeated if the realized magnitudes get within 64
    bits of the budget.
    """
    tag = tag or classify(model)
    if tag.kind == CaseKind.NO_NET_PROFIT:
        raise InvalidModelError("no coefficient sequences when the net profit condition fails")
    if tag.kind == CaseKind.D:
        raise InvalidModelError("case D solves in closed form; it has no coefficient sequences")
    if n_max < 4:
        raise InvalidModelError("n_max must be at least 4")

    bits = max(precision_bits or DEFAULT_PRECISION_BITS,
               _estimate_bits(model, tag.min_s_atom, n_max))
    for _ in range(4):
        with mp.workprec(bits):
            ar = _MpModel(model)
            if tag.kind == CaseKind.A:
                a, b, g, d = _build_case_a(ar, n_max)
                seqs = (a, b, g, d)
            elif tag.kind == CaseKind.B:
                a, b, d = _build_case_b(ar, n_max)
                g = None
                seqs = (a, b, d)
            elif tag.scenario in ("s.1", "s.2"):
                a, d = _build_case_c12(ar, n_max)
                b = g = None
                seqs = (a, d)
            else:
                c1, d = _build_case_c3(ar, n_max)
                a = g = None
                b = c1
                seqs = (c1, d)
        top_mag = max((mp.mag(v) for seq in seqs for v in seq if v != 0), default=0)
        if top_mag <= bits - 64:
            break
        bits = int(top_mag) + 160
    else:
        raise NumericalError("coefficient magnitudes kept outrunning the precision budget")

    return SequenceSet(
        tag=tag,
        n_max=n_max,
        coeff_phi0=a,
        coeff_phi1=b,
        coeff_phi2=g,
        coeff_margin=d,
        precision_bits=bits,
    )


# ---- initial-value solve ----


@dataclass(frozen=True)
class InitialValues:
    """Solved phi at the low indices each case needs to recurse forward.

    ``delta`` is the largest entrywise difference between the solves at
    the accepted index and one index lower, kept as an error estimate.
    """

    values: dict[int, float]
    n_solve: int
    determinant: float | None
    delta: float
    precision_bits: int
    values_mp: dict = field(repr=False, default_factory=dict)


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _cramer3(m, rhs, n):
    det = _det3(m)
    if det == 0:
        raise SingularSystemError(f"difference system is singular at n={n}", n=n, determinant=0.0)
    sol = []
    for j in range(3):
        mj = [row[:] for row in m]
        for i in range(3):
            mj[i][j] = rhs[i]
        sol.append(_det3(mj) / det)
    return sol, det


def _cramer2(m, rhs, n):
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        raise SingularSystemError(f"difference system is singular at n={n}", n=n, determinant=0.0)
    x0 = (rhs[0] * m[1][1] - m[0][1] * rhs[1]) / det
    x1 = (m[0][0] * rhs[1] - rhs[0] * m[1][0]) / det
    return [x0, x1], det


def _solve_at(seqs: SequenceSet, ar: _MpModel, n: int):
    """Solve the vanished-difference system at index n. Caller sets precision."""
    m = ar.margin
    tag = seqs.tag
    a, b, g, d = seqs.coeff_phi0, seqs.coeff_phi1, seqs.coeff_phi2, seqs.coeff_margin

    if tag.kind == CaseKind.A:
        mat = [[a[n + i] - a[n], b[n + i] - b[n], g[n + i] - g[n]] for i in (1, 2, 3)]
        rhs = [-(d[n + i] - d[n]) * m for i in (1, 2, 3)]
        (phi0, phi1, phi2), det = _cramer3(mat, rhs, n)
        return {0: phi0, 1: phi1, 2: phi2}, det

    if tag.kind == CaseKind.B:
        mat = [[a[n + i] - a[n], b[n + i] - b[n]] for i in (1, 2)]
        rhs = [-(d[n + i] - d[n]) * m for i in (1, 2)]
        (phi0, phi1), det = _cramer2(mat, rhs, n)
        return {0: phi0, 1: phi1}, det

    if tag.scenario in ("s.1", "s.2"):
        diff = a[n + 1] - a[n]
        if diff == 0:
            raise SingularSystemError(f"coefficient difference vanished at n={n}", n=n, determinant=0.0)
        phi0 = -(d[n + 1] - d[n]) * m / diff
        phi1 = a[1] * phi0 + d[1] * m
        return {0: phi0, 1: phi1}, diff

    # scenario s.3: phi(0) = 0; sequences multiply phi(1)
    diff = b[n + 1] - b[n]
    if diff == 0:
        raise SingularSystemError(f"coefficient difference vanished at n={n}", n=n, determinant=0.0)
    phi1 = -(d[n + 1] - d[n]) * m / diff
    phi2 = b[2] * phi1 + d[2] * m
    return {0: mp.mpf(0), 1: phi1, 2: phi2}, diff


def _complete_initials(ar: _MpModel, tag: CaseTag, vals: dict) -> dict:
    """Add the remaining initial index the forward recurrence needs."""
    m = ar.margin
    if tag.kind == CaseKind.A:
        # mass-balance constraint solved for phi(3)
        phi3 = (
            m
            - vals[0]
            - (ar.s_cdf(2) + ar.x_tail(2) * ar.y(0) + ar.x_tail(1) * ar.y(1)) * vals[1]
            - (ar.s_cdf(1) + ar.x_tail(1) * ar.y(0)) * vals[2]
        ) / ar.ss[0]
        return {**vals, 3: phi3}
    if tag.kind == CaseKind.B:
        phi2 = (
            m
            - vals[0]
            - (ar.s_cdf(2) + ar.x_tail(2) * ar.y(0) + ar.x_tail(1) * ar.y(1)) * vals[1]
        ) / (ar.ss[1] + ar.x_tail(1) * ar.y(0))
        return {**vals, 2: phi2}
    return dict(vals)


def _solve_case_d(model: ModelSpec, tag: CaseTag, precision_bits: int | None) -> InitialValues:
    bits = max(precision_bits or DEFAULT_PRECISION_BITS, 128)
    with mp.workprec(bits):
        ar = _MpModel(model)
        m = ar.margin
        scen = tag.scenario
        if scen == "v.1":
            vals = {0: mp.mpf(0), 1: m / ar.y(1)}
        elif scen in ("v.2", "v.4"):
            # The recurrence at u = 0 and u = 1 gives
            # phi(1) (s_3 - x_3 y_0 - x_2 y_1) = phi(0); with y_0 = y_1 = 0
            # in these scenarios the pivot reduces to x_1 y_2 + x_0 y_3.
            den = ar.x(1) * ar.y(2) + ar.x(0) * ar.y(3)
            phi0 = m / (1 + ar.x_tail(1) * ar.y(1) / den)
            vals = {0: phi0, 1: phi0 / den}
        else:  # v.3: the first claim is at least 3, so phi(0) = phi(1) = 0
            vals = {0: mp.mpf(0), 1: mp.mpf(0), 2: m / ar.y(0)}
    return InitialValues(
        values={k: float(v) for k, v in vals.items()},
        n_solve=0,
        determinant=None,
        delta=0.0,
        precision_bits=bits,
        values_mp=vals,
    )


def solve_initials(
    model: ModelSpec,
    tag: CaseTag | None = None,
    n_solve: int = 150,
    precision_bits: int | None = None,
) -> InitialValues:
    """Solve for the low-index phi values, with the adaptive index check.

    The system is solved at n_solve and n_solve - 1; if the two solutions
    disagree beyond SOLVE_AGREE_TOL the index doubles, up to N_SOLVE_CAP,
    after which a NumericalError is raised rather than returning a value
    of unknown accuracy.
    """
    tag = tag or classify(model)
    if tag.kind == CaseKind.NO_NET_PROFIT:
        raise InvalidModelError("survival values with no net profit come from no_net_profit_values")
    if tag.kind == CaseKind.D:
        return _solve_case_d(model, tag, precision_bits)
    if n_solve < 8:
        raise InvalidModelError("n_solve must be at least 8")

    n = min(n_solve, N_SOLVE_CAP)
    while True:
        seqs = build_sequences(model, tag, n_max=n + 3, precision_bits=precision_bits)
        with mp.workprec(seqs.precision_bits):
            ar = _MpModel(model)
            vals, det = _solve_at(seqs, ar, n)
            vals_lo, _ = _solve_at(seqs, ar, n - 1)
            delta = max(abs(float(vals[k] - vals_lo[k])) for k in vals)
            if delta <= SOLVE_AGREE_TOL:
                full = _complete_initials(ar, tag, vals)
                return InitialValues(
                    values={k: float(v) for k, v in full.items()},
                    n_solve=n,
                    determinant=float(det),
                    delta=delta,
                    precision_bits=seqs.precision_bits,
                    values_mp=full,
                )
        if n >= N_SOLVE_CAP:
            raise NumericalError(
                f"initial values did not stabilize by n={n} (last delta {delta:.3e}); "
                "the margin may be too close to zero for this method"
            )
        n = min(2 * n, N_SOLVE_CAP)


# ---- forward extension ----


def extend_ultimate(
    model: ModelSpec,
    initials: InitialValues | dict,
    u_max: int,
    precision_bits: int | None = None,
) -> np.ndarray:
    """Extend solved initial values to phi(0..u_max) by the forward recurrence.

    Rearranged around the smallest positive s atom m*:

        s_{m*} phi(u) = phi(u - 4 + m*)
                        + (x_{u+m*-1} y_0 + x_{u+m*-2} y_1) phi(1)
                        + x_{u+m*-2} y_0 phi(2)
                        - sum_{k=1}^{u-1} s_{u+m*-k} phi(k)

    Values are computed in extended precision (the recurrence amplifies
    roundoff geometrically) and emitted as float64.
    """
    if isinstance(initials, InitialValues):
        given = dict(initials.values_mp) or {k: mp.mpf(v) for k, v in initials.values.items()}
    else:
        given = {k: mp.mpf(v) for k, v in initials.items()}
    if u_max < 0:
        raise InvalidModelError("u_max must be >= 0")
    top = max(given)
    if sorted(given) != list(range(top + 1)):
        raise InvalidModelError("initial values must cover a contiguous range 0..j")

    s = model.s
    min_atom = next((u for u in range(4) if s.p(u) > 0.0), None)
    if min_atom is None:
        raise InvalidModelError("model has no s atom below 4")
    if top < 3 - min_atom:
        raise InvalidModelError(f"need initial values up to index {3 - min_atom}")

    bits = max(precision_bits or DEFAULT_PRECISION_BITS,
               _estimate_bits(model, min_atom, u_max))
    with mp.workprec(bits):
        ar = _MpModel(model)
        pivot = ar.ss[min_atom]
        smax = len(ar.ss) - 1
        phi = [given.get(i, mp.mpf(0)) for i in range(min(top, u_max) + 1)]
        for u in range(top + 1, u_max + 1):
            acc = phi[u - 4 + min_atom]
            acc += (ar.x(u + min_atom - 1) * ar.y(0) + ar.x(u + min_atom - 2) * ar.y(1)) * phi[1]
            c2 = ar.x(u + min_atom - 2) * ar.y(0)
            if u == 2:
                # scenarios that extend from u = 2 all have y_0 = 0
                if c2 != 0:
                    raise NumericalError("phi(2) required as an initial value for this model")
            else:
                acc += c2 * phi[2]
            tail = mp.mpf(0)
            for k in range(max(1, u + min_atom - smax), u):
                tail += ar.ss[u + min_atom - k] * phi[k]
            phi.append((acc - tail) / pivot)
        return np.array([float(v) for v in phi[: u_max + 1]])


# ---- residual checks, oracles, collapsed values ----


@dataclass(frozen=True)
class Residuals:
    master: float
    constraint: float


def residuals(model: ModelSpec, phi) -> Residuals:
    """Worst violation of the balance recurrence and of the constraint.

    Evaluated in plain float64 on the emitted values; this is an internal
    consistency check, independent of how phi was produced.
    """
    phi = np.asarray(phi, dtype=np.float64)
    if phi.ndim != 1 or len(phi) < 8:
        raise InvalidModelError("need phi(0..L) with L >= 7 to evaluate residuals")
    s, x, y = model.s, model.x, model.y
    y0, y1 = y.p(0), y.p(1)

    worst = 0.0
    for u in range(len(phi) - 4):
        terms = [phi[k] * s.p(u + 4 - k) for k in range(1, u + 5)]
        rhs = (
            math.fsum(terms)
            - (x.p(u + 3) * y0 + x.p(u + 2) * y1) * phi[1]
            - x.p(u + 2) * y0 * phi[2]
        )
        worst = max(worst, abs(phi[u] - rhs))

    lhs = math.fsum(
        [
            phi[0],
            (x.tail(2) * y0 + x.tail(1) * y1) * phi[1],
            x.tail(1) * y0 * phi[2],
            phi[1] * s.cdf(2),
            phi[2] * s.cdf(1),
            phi[3] * s.cdf(0),
        ]
    )
    constraint = abs(lhs - net_profit_margin(model))
    return Residuals(master=worst, constraint=constraint)


def boundary_oracle(model: ModelSpec, u_max: int, u_big: int = 400) -> np.ndarray:
    """Independent route: pin phi(u) = 1 for u >= u_big and solve the
    balance equations plus the constraint as one float64 linear system.

    Valid when the net profit condition certainly holds, since then
    phi(u) -> 1 and the truncation error decays geometrically in u_big.
    """
    if model.mean_s_upper >= INCOME_PER_PAIR:
        raise InvalidModelError("boundary oracle requires a certain net profit margin")
    if u_big < 8:
        raise InvalidModelError("u_big must be at least 8")
    if u_max < 0:
        raise InvalidModelError("u_max must be >= 0")

    s, x, y = model.s, model.x, model.y
    y0, y1 = y.p(0), y.p(1)
    smax = s.support_max
    n = u_big
    mat = np.zeros((n, n))
    rhs = np.zeros(n)

    mat[0, 0] = 1.0
    mat[0, 1] = x.tail(2) * y0 + x.tail(1) * y1 + s.cdf(2)
    mat[0, 2] = x.tail(1) * y0 + s.cdf(1)
    mat[0, 3] = s.cdf(0)
    rhs[0] = net_profit_margin(model)

    for u in range(n - 1):
        r = u + 1
        mat[r, u] -= 1.0
        for k in range(max(1, u + 4 - smax), u + 5):
            c = s.p(u + 4 - k)
            if c == 0.0:
                continue
            if k < n:
                mat[r, k] += c
            else:
                rhs[r] -= c
        mat[r, 1] -= x.p(u + 3) * y0 + x.p(u + 2) * y1
        mat[r, 2] -= x.p(u + 2) * y0

    try:
        phi = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"boundary system is singular (u_big={u_big})") from exc

    if u_max < n:
        return phi[: u_max + 1].copy()
    return np.concatenate([phi, np.ones(u_max - n + 1)])


def no_net_profit_values(model: ModelSpec, tag: CaseTag | None = None, u_max: int = 0) -> np.ndarray:
    """Collapsed survival values when the margin is nonpositive: all zero,
    except the five exact point-mass boundary patterns which are sharp
    indicators 1{u >= step}."""
    tag = tag or classify(model)
    if tag.kind != CaseKind.NO_NET_PROFIT:
        raise InvalidModelError("model satisfies the net profit condition")
    out = np.zeros(u_max + 1)
    if tag.degenerate_step is not None and tag.degenerate_step <= u_max:
        out[tag.degenerate_step :] = 1.0
    return out


# ---- top-level convenience ----


@dataclass(frozen=True)
class UltimateResult:
    """phi(0..u_max) with the solve diagnostics attached.

    Values are raw solver output (not clamped); presentation layers clamp
    to [0, 1] at rendering time.
    """

    phi: np.ndarray
    case: CaseTag
    initials: dict[int, float]
    margin: float
    n_solve: int
    precision_bits: int | None
    determinant: float | None
    initials_delta: float
    residual_master: float
    residual_constraint: float


def survival_ultimate(
    model: ModelSpec,
    u_max: int,
    n_solve: int = 150,
    precision_bits: int | None = None,
) -> UltimateResult:
    """Classify, solve, extend, and cross-check in one call."""
    tag = classify(model)
    work_len = max(u_max, 7)

    if tag.kind == CaseKind.NO_NET_PROFIT:
        phi = no_net_profit_values(model, tag, work_len)
        res = residuals(model, phi)
        return UltimateResult(
            phi=phi[: u_max + 1].copy(),
            case=tag,
            initials={i: float(phi[i]) for i in range(4)},
            margin=net_profit_margin(model),
            n_solve=0,
            precision_bits=None,
            determinant=None,
            initials_delta=0.0,
            residual_master=res.master,
            residual_constraint=res.constraint,
        )

    # never extend past the solve index: committed error grows along the
    # dominant coefficient mode once u approaches n_solve
    init = solve_initials(model, tag, n_solve=max(n_solve, u_max + 8), precision_bits=precision_bits)
    phi = extend_ultimate(model, init, work_len, precision_bits=precision_bits)
    res = residuals(model, phi)
    return UltimateResult(
        phi=phi[: u_max + 1].copy(),
        case=tag,
        initials=dict(init.values),
        margin=net_profit_margin(model),
        n_solve=init.n_solve,
        precision_bits=init.precision_bits,
        determinant=init.determinant,
        initials_delta=init.delta,
        residual_master=res.master,
        residual_constraint=res.constraint,
    )
