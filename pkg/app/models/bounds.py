"""
Closed-form incidence and biclique bounds.

Values are exact Fractions when every power involved is rational for the
given inputs and floats otherwise. They are reported, never fed back into
geometric decisions. All logarithms are base 2 with a floor of 1.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Tuple

from app.errors import InvalidArgumentError
from app.models.numeric import Number, RationalLike, floored_log2, power, to_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundValue:
    name: str
    value: Number
    constant: Fraction


@dataclass(frozen=True)
class Formula:
    name: str
    requires: Tuple[str, ...]
    dims: Tuple[int, ...]
    compute: Callable[..., Number]
    description: str


def _density(m: int, n: int, i: int) -> Fraction:
    return Fraction(i, m * n)


def _kst_free(m, n, d, **_):
    return power(m * n, Fraction(d, d + 1)) + m + n


def _as_lower(m, n, i, d, **_):
    return power(_density(m, n, i), d - 1) * (m * n)


def _as_upper(m, n, i, d, **_):
    return power(_density(m, n, i), Fraction(d + 1, 2)) * (m * n)


def _et(m, n, d, **_):
    return power(m * n, Fraction(d, d + 1)) + m * power(n, 1 - Fraction(1, d - 1))


def _et_dual(m, n, d, **_):
    return power(m * n, Fraction(d, d + 1)) + n * power(m, 1 - Fraction(1, d - 1))


def _rich(count: int, k: Fraction, d: int) -> Number:
    c = Fraction(count)
    return c ** (d + 1) / k ** (d + 2) + c ** (d - 1) / k ** (d - 1)


def _rich_count(m, k, d, **_):
    return _rich(m, k, d)


def _rich_count_dual(n, k, d, **_):
    return _rich(n, k, d)


def _thm4d(m, n, i, **_):
    return power(_density(m, n, i), Fraction(5, 2)) * (m * n) / floored_log2(m * n) ** 4


def _thm5d(m, n, i, **_):
    return power(_density(m, n, i), 3) * (m * n) / floored_log2(m * n) ** 10


ALL_DIMS = (2, 3, 4, 5)

FORMULAS: Dict[str, Formula] = {
    f.name: f for f in (
        Formula("kst_free", ("m", "n", "d"), ALL_DIMS, _kst_free,
                "K_{r,s}-free incidence bound (mn)^{d/(d+1)} + m + n"),
        Formula("as_lower", ("m", "n", "I", "d"), ALL_DIMS, _as_lower,
                "biclique lower bound (I/mn)^{d-1} mn"),
        Formula("as_upper", ("m", "n", "I", "d"), ALL_DIMS, _as_upper,
                "biclique upper bound (I/mn)^{(d+1)/2} mn"),
        Formula("et", ("m", "n", "d"), ALL_DIMS, _et,
                "incidences with nondegenerate hyperplanes (mn)^{d/(d+1)} + m n^{1-1/(d-1)}"),
        Formula("et_dual", ("m", "n", "d"), ALL_DIMS, _et_dual,
                "incidences with nondegenerate points (mn)^{d/(d+1)} + n m^{1-1/(d-1)}"),
        Formula("rich_count", ("m", "k", "d"), ALL_DIMS, _rich_count,
                "k-rich nondegenerate hyperplanes m^{d+1}/k^{d+2} + m^{d-1}/k^{d-1}"),
        Formula("rich_count_dual", ("n", "k", "d"), ALL_DIMS, _rich_count_dual,
                "k-rich nondegenerate points n^{d+1}/k^{d+2} + n^{d-1}/k^{d-1}"),
        Formula("thm4d", ("m", "n", "I"), (4,), _thm4d,
                "four-dimensional biclique guarantee (I/mn)^{5/2} mn (log mn)^{-4}"),
        Formula("thm5d", ("m", "n", "I"), (5,), _thm5d,
                "five-dimensional biclique guarantee (I/mn)^3 mn (log mn)^{-10}"),
    )
}

REPORT_BOUNDS = ("thm4d", "thm5d", "as_lower", "as_upper", "et")


def evaluate(name: str, m: Optional[int] = None, n: Optional[int] = None, I: Optional[int] = None,
             k: Optional[RationalLike] = None, d: Optional[int] = None,
             constant: RationalLike = 1) -> BoundValue:
    """Evaluate one named bound times its constant."""
    formula = FORMULAS.get(name)
    if formula is None:
        raise InvalidArgumentError(f"unknown bound {name!r}; known: {', '.join(FORMULAS)}")
    args = {"m": m, "n": n, "I": I, "k": k, "d": d}
    missing = [a for a in formula.requires if args[a] is None]
    if missing:
        raise InvalidArgumentError(f"bound {name} needs {', '.join(missing)}")
    if d is not None and d not in formula.dims:
        raise InvalidArgumentError(f"bound {name} is stated for d in {formula.dims}, got {d}")
    for a in ("m", "n"):
        if a in formula.requires and args[a] < 1:
            raise InvalidArgumentError(f"bound {name} needs {a} >= 1, got {args[a]}")
    if "I" in formula.requires and I < 0:
        raise InvalidArgumentError(f"incidence count must be nonnegative, got {I}")
    if "k" in formula.requires:
        k = to_rational(k)
        if k <= 0:
            raise InvalidArgumentError(f"bound {name} needs k > 0, got {k}")
    constant = to_rational(constant)
    if constant < 0:
        raise InvalidArgumentError(f"constants must be nonnegative, got {constant}")
    value = formula.compute(m=m, n=n, i=I, k=k, d=d if d is not None else formula.dims[0])
    return BoundValue(name, constant * value, constant)


def evaluate_all(m: int, n: int, I: int, d: int, k: Optional[RationalLike] = None,
                 constants: Optional[Mapping[str, RationalLike]] = None,
                 names=tuple(FORMULAS)) -> Dict[str, BoundValue]:
    """Every applicable bound; formulas that do not apply to the inputs are left out."""
    constants = constants or {}
    out: Dict[str, BoundValue] = {}
    for name in names:
        formula = FORMULAS[name]
        if d not in formula.dims or m < 1 or n < 1:
            continue
        if "k" in formula.requires and (k is None or to_rational(k) <= 0):
            continue
        out[name] = evaluate(name, m=m, n=n, I=I, k=k, d=d, constant=constants.get(name, 1))
    return out


def ratio(observed: Number, bound: BoundValue) -> Optional[float]:
    """observed / bound, or None when the bound is zero."""
    if bound.value == 0:
        return None
    return float(observed) / float(bound.value)


def equivalence_ratio(m: int, n: int, d: int) -> float:
    """
    Compare the two forms of the nondegenerate hyperplane bound: with
    I = et(m, n), the count of (I/n)-rich nondegenerate hyperplanes over n.
    An order-of-magnitude diagnostic, not a tolerance.
    """
    i = evaluate("et", m=m, n=n, d=d).value
    k = Fraction(i) / n if isinstance(i, Fraction) else Fraction(i / n)
    rich = evaluate("rich_count", m=m, k=k, d=d).value
    value = float(rich) / n
    logger.debug(f"equivalence ratio at m={m}, n={n}, d={d}: {value}")
    return value
