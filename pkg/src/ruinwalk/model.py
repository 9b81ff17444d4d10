"""Model assembly and case classification.

A model is a pair of independent integer claim distributions: odd periods
draw from ``x``, even periods from ``y``, and the insurer collects a
premium of 2 per period. Everything downstream dispatches on where the
first positive atom of the period-pair claim sum ``s = x (+) y`` sits:

* case A: s_0 > 0        (solve for phi(0..2), then phi(3), then recurse)
* case B: s_0 = 0 < s_1  (solve for phi(0..1), then phi(2))
* case C: s_0 = s_1 = 0 < s_2, three scenarios by which atoms vanish
* case D: s_0 = s_1 = s_2 = 0 < s_3, four scenarios, closed forms

The net profit condition is E[s] < 4 (premium income per pair). When it
fails, survival probabilities collapse to 0 except for five degenerate
point-mass patterns with E[s] = 4 exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .errors import InvalidModelError, PrecisionError
from .pmf import Pmf, convolve

PREMIUM_PER_PERIOD = 2
INCOME_PER_PAIR = 2 * PREMIUM_PER_PERIOD


@dataclass(frozen=True)
class ModelSpec:
    """Two alternating claim distributions and the (fixed) premium rate."""

    x: Pmf
    y: Pmf
    premium: int = PREMIUM_PER_PERIOD

    def __post_init__(self):
        if self.premium != PREMIUM_PER_PERIOD:
            raise InvalidModelError(
                f"this model is specific to premium rate {PREMIUM_PER_PERIOD}"
            )

    @cached_property
    def s(self) -> Pmf:
        """Distribution of one period pair's total claim, x + y."""
        return convolve(self.x, self.y)

    @cached_property
    def mean_s(self) -> float:
        """Retained mean of s (truncated, not renormalized)."""
        return self.s.mean_retained

    @property
    def mean_s_upper(self) -> float:
        return self.mean_s + self.s.tail_mean_bound

    @cached_property
    def s_dist(self) -> "SDist":
        return SDist(self.s, self.mean_s)


@dataclass(frozen=True)
class SDist:
    s: Pmf
    mean_s: float


def net_profit_margin(model: ModelSpec) -> float:
    """Income minus expected claims per period pair, 4 - E[s] (retained)."""
    return INCOME_PER_PAIR - model.mean_s


class CaseKind(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    NO_NET_PROFIT = "no-net-profit"


@dataclass(frozen=True)
class CaseTag:
    """Dispatch result: which solver applies and with which scenario.

    ``degenerate_step`` is set only for the boundary point-mass patterns
    (x and y both deterministic, claim pair summing to 4): survival is the
    exact indicator phi(u) = 1{u >= degenerate_step}.
    """

    kind: CaseKind
    scenario: str | None = None
    min_s_atom: int | None = None
    degenerate_step: int | None = None


def _scenario_c(x: Pmf, y: Pmf) -> str:
    if x.p(0) == 0.0 and y.p(0) == 0.0:
        if not (x.p(1) > 0 and y.p(1) > 0):
            raise InvalidModelError("inconsistent case C atoms")
        return "s.1"
    if x.p(0) > 0:
        # s_0 = s_1 = 0 forces y_0 = y_1 = 0, so s_2 = x_0 y_2.
        if not (y.p(0) == 0 and y.p(1) == 0 and y.p(2) > 0):
            raise InvalidModelError("inconsistent case C atoms")
        return "s.2"
    # x_0 = 0 < y_0 forces x_1 = 0, so s_2 = x_2 y_0.
    if not (y.p(0) > 0 and x.p(1) == 0 and x.p(2) > 0):
        raise InvalidModelError("inconsistent case C atoms")
    return "s.3"


def _scenario_d(x: Pmf, y: Pmf) -> str:
    if x.p(0) > 0:
        if not (y.p(0) == 0 and y.p(1) == 0 and y.p(2) == 0 and y.p(3) > 0):
            raise InvalidModelError("inconsistent case D atoms")
        return "v.4"
    if y.p(0) > 0:
        if not (x.p(1) == 0 and x.p(2) == 0 and x.p(3) > 0):
            raise InvalidModelError("inconsistent case D atoms")
        return "v.3"
    if x.p(1) > 0:
        if not (y.p(1) == 0 and y.p(2) > 0):
            raise InvalidModelError("inconsistent case D atoms")
        return "v.2"
    if not (y.p(1) > 0 and x.p(2) > 0):
        raise InvalidModelError("inconsistent case D atoms")
    return "v.1"


def _degenerate_pattern(model: ModelSpec) -> int | None:
    """Detect the exact point-mass boundary x_{4-j} = y_j = 1.

    Returns the survival threshold max(1, 3 - j), or None. The surplus
    path is periodic there: after full pairs it returns to u, and mid-pair
    it dips to u - 2 + j, so survival is a sharp indicator in u.
    """
    if model.s.p(4) != 1.0:
        return None
    for j in range(5):
        if model.y.p(j) == 1.0 and model.x.p(4 - j) == 1.0:
            return max(1, 3 - j)
    return None


def classify(model: ModelSpec) -> CaseTag:
    """Assign the solver case, with the net-profit check taking precedence.

    The truncated mean only bounds E[s] from below; the upper bound adds
    the carried tail-mean bound. If 4 falls inside that interval we refuse
    rather than guess.
    """
    es_lower = model.mean_s
    es_upper = model.mean_s_upper

    if es_lower >= INCOME_PER_PAIR:
        return CaseTag(
            kind=CaseKind.NO_NET_PROFIT,
            degenerate_step=_degenerate_pattern(model),
        )
    if es_upper >= INCOME_PER_PAIR:
        raise PrecisionError(
            "E[s] is within the truncation bound of 4; lower tail_tol to decide"
        )

    s = model.s
    min_atom = next((u for u in range(4) if s.p(u) > 0.0), None)
    if min_atom is None:
        # s_0..s_3 all zero forces min(x+y) >= 4 hence E[s] >= 4, impossible here.
        raise InvalidModelError("no s atom below 4 despite E[s] < 4; model is inconsistent")

    if min_atom == 0:
        return CaseTag(CaseKind.A, min_s_atom=0)
    if min_atom == 1:
        return CaseTag(CaseKind.B, min_s_atom=1)
    if min_atom == 2:
        return CaseTag(CaseKind.C, scenario=_scenario_c(model.x, model.y), min_s_atom=2)
    return CaseTag(CaseKind.D, scenario=_scenario_d(model.x, model.y), min_s_atom=3)
