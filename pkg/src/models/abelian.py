from dataclasses import dataclass
from typing import Iterable, List, Tuple

from sympy import isprime

from src.utils.errors import MalformedInput


@dataclass(frozen=True)
class AbelianDecomposition:
    """Direct sum of cyclic prime-power groups Z_{p^e}, sorted by (p, e)."""

    factors: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "AbelianDecomposition":
        factors = []
        for p, e in pairs:
            p, e = int(p), int(e)
            if not isprime(p) or e < 1:
                raise MalformedInput(f"invalid cyclic factor Z_{p}^{e}")
            factors.append((p, e))
        return cls(tuple(sorted(factors)))

    @property
    def moduli(self) -> Tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)

    @property
    def order(self) -> int:
        result = 1
        for m in self.moduli:
            result *= m
        return result

    @property
    def primes(self) -> List[int]:
        return sorted({p for p, _ in self.factors})

    def positions(self, p: int) -> List[int]:
        return [i for i, (q, _) in enumerate(self.factors) if q == p]

    def exponents(self, p: int) -> Tuple[int, ...]:
        return tuple(e for q, e in self.factors if q == p)

    def blocks(self, p: int) -> List[Tuple[int, int]]:
        """(exponent, multiplicity) for the p-part, exponents ascending."""
        result: List[Tuple[int, int]] = []
        for e in self.exponents(p):
            if result and result[-1][0] == e:
                result[-1] = (e, result[-1][1] + 1)
            else:
                result.append((e, 1))
        return result

    @property
    def label(self) -> str:
        if not self.factors:
            return "1"
        return "x".join(f"Z{m}" for m in self.moduli)


@dataclass(frozen=True)
class HRMatrix:
    """Endomorphism of the p-part with ascending exponents e_1 <= ... <= e_n.

    Entry (i, j) lives in Z_{p^e_i} and must be divisible by
    p^(e_i - e_j) whenever e_i > e_j.
    """

    p: int
    exponents: Tuple[int, ...]
    entries: Tuple[Tuple[int, ...], ...]

    @classmethod
    def build(cls, p: int, exponents: Iterable[int], entries) -> "HRMatrix":
        exponents = tuple(int(e) for e in exponents)
        if list(exponents) != sorted(exponents):
            raise MalformedInput("exponents must be ascending")
        n = len(exponents)
        rows = [list(row) for row in entries]
        if len(rows) != n or any(len(row) != n for row in rows):
            raise MalformedInput(f"matrix must be {n}x{n}")
        normalized = []
        for i, row in enumerate(rows):
            modulus = p ** exponents[i]
            out = []
            for j, value in enumerate(row):
                value = int(value) % modulus
                gap = exponents[i] - exponents[j]
                if gap > 0 and value % (p**gap) != 0:
                    raise MalformedInput(f"entry ({i},{j}) = {value} is not divisible by {p}^{gap}")
                out.append(value)
            normalized.append(tuple(out))
        return cls(p, exponents, tuple(normalized))

    @property
    def size(self) -> int:
        return len(self.exponents)

    def apply(self, coords: Iterable[int]) -> Tuple[int, ...]:
        coords = list(coords)
        return tuple(
            sum(self.entries[i][j] * coords[j] for j in range(self.size)) % self.p ** self.exponents[i]
            for i in range(self.size)
        )

    def __matmul__(self, other: "HRMatrix") -> "HRMatrix":
        n = self.size
        entries = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        return HRMatrix.build(self.p, self.exponents, entries)
