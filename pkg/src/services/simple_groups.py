from math import gcd
from typing import Dict, FrozenSet, Iterable

from sympy import factorint, isprime

from src.models.group import SimpleFactorLabel
from src.utils.errors import OrderOutOfRange

# Non-abelian simple groups of order below 20160, keyed by order.
# Orders 60, 168 and 360 each carry two names for the same group.
NONABELIAN_SIMPLE_ORDERS: Dict[int, FrozenSet[str]] = {
    60: frozenset({"Alt(5)", "PSL(2,4)", "PSL(2,5)"}),
    168: frozenset({"PSL(2,7)", "PSL(3,2)"}),
    360: frozenset({"Alt(6)", "PSL(2,9)"}),
    504: frozenset({"PSL(2,8)"}),
    660: frozenset({"PSL(2,11)"}),
    1092: frozenset({"PSL(2,13)"}),
    2448: frozenset({"PSL(2,17)"}),
    2520: frozenset({"Alt(7)"}),
    3420: frozenset({"PSL(2,19)"}),
    4080: frozenset({"PSL(2,16)"}),
    5616: frozenset({"PSL(3,3)"}),
    6048: frozenset({"Other(PSU(3,3))"}),
    6072: frozenset({"PSL(2,23)"}),
    7800: frozenset({"PSL(2,25)"}),
    7920: frozenset({"Other(M11)"}),
    9828: frozenset({"PSL(2,27)"}),
    12180: frozenset({"PSL(2,29)"}),
    14880: frozenset({"PSL(2,31)"}),
}

CLASSIFICATION_BOUND = 20160

# Labels known without a table lookup, used by the structural Aut profile.
_STRUCTURAL_ALIASES: Dict[str, FrozenSet[str]] = {
    "PSL(4,2)": frozenset({"PSL(4,2)", "Alt(8)"}),
}


def cyclic_label(p: int) -> SimpleFactorLabel:
    return SimpleFactorLabel(order=p, names=frozenset({f"Cyclic({p})"}))


def label_for_order(order: int) -> SimpleFactorLabel:
    """Label of the unique (up to isomorphism) simple group of this order."""
    if isprime(order):
        return cyclic_label(order)
    if order >= CLASSIFICATION_BOUND:
        raise OrderOutOfRange(f"simple group of order {order} is outside the classification table")
    names = NONABELIAN_SIMPLE_ORDERS.get(order)
    if names is None:
        raise OrderOutOfRange(f"no simple group has order {order}")
    return SimpleFactorLabel(order=order, names=names)


def psl_order(d: int, p: int) -> int:
    q = p
    gl = 1
    for k in range(d):
        gl *= q**d - q**k
    sl = gl // (q - 1)
    center = gcd(d, q - 1)
    return sl // center


def psl_label(d: int, p: int) -> SimpleFactorLabel:
    """Label of PSL(d, p) for d >= 2, where it is simple (excludes (2,2) and (2,3))."""
    name = f"PSL({d},{p})"
    order = psl_order(d, p)
    names = NONABELIAN_SIMPLE_ORDERS.get(order)
    if names is not None and name in names:
        return SimpleFactorLabel(order=order, names=names)
    return SimpleFactorLabel(order=order, names=_STRUCTURAL_ALIASES.get(name, frozenset({name})))


def cyclic_labels_for(order: int) -> Iterable[SimpleFactorLabel]:
    """Composition factors of a solvable group of the given order."""
    for p, e in sorted(factorint(order).items()):
        for _ in range(e):
            yield cyclic_label(int(p))
