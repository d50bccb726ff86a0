"""
Markov numbers and their generalization m(q, p) to every lattice point 0 <= p <= q.

Coprime interior points are read off the Markov tree, which is descended in step with
the Farey (Stern-Brocot) tree. Non-coprime points come from the scaled recurrence
f_n = 3 f_1 f_{n-1} - f_{n-2}; the two boundary rays are even-index Fibonacci and
Pell numbers. An independent Cohn-matrix trace is available to cross-check the tree.
"""
import threading
from math import gcd, isqrt
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import mpmath
import numpy as np

from .errors import DomainError, MarkovEquationError, OracleError
from .utils.logging import get_logger

logger = get_logger()

Fraction2 = Tuple[int, int]


class LatticePoint(NamedTuple):
    x: int
    y: int

    def in_region(self) -> bool:
        return self.x > self.y >= 1

    def shifted(self, dx: int, dy: int) -> 'LatticePoint':
        return LatticePoint(self.x + dx, self.y + dy)


def fibonacci(n: int) -> int:
    if n < 0:
        raise DomainError(f"fibonacci index must be nonnegative, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def pell(n: int) -> int:
    """P_0 = 0, P_1 = 1, P_n = 2 P_{n-1} + P_{n-2} (so P_2 = 2)."""
    if n < 0:
        raise DomainError(f"pell index must be nonnegative, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, 2 * b + a
    return a


class MarkovTriple:
    """
    A node of the Markov tree together with the Farey interval it labels.

    The mediant entry is the Markov number of the mediant fraction of the interval.
    Construction fails loudly if the Markov equation does not hold.
    """
    __slots__ = ('left', 'right', 'mediant', 'left_fraction', 'right_fraction')

    def __init__(self, left: int, right: int, mediant: int,
                 left_fraction: Fraction2, right_fraction: Fraction2):
        if left * left + right * right + mediant * mediant != 3 * left * right * mediant:
            raise MarkovEquationError(
                f"({left}, {right}, {mediant}) on {left_fraction}..{right_fraction} "
                f"violates x^2 + y^2 + z^2 = 3xyz")
        self.left = left
        self.right = right
        self.mediant = mediant
        self.left_fraction = left_fraction
        self.right_fraction = right_fraction

    @property
    def fraction(self) -> Fraction2:
        """Mediant fraction (numerator, denominator)."""
        return (self.left_fraction[0] + self.right_fraction[0],
                self.left_fraction[1] + self.right_fraction[1])

    def left_child(self) -> 'MarkovTriple':
        x, y, z = self.left, self.right, self.mediant
        return MarkovTriple(x, z, 3 * x * z - y, self.left_fraction, self.fraction)

    def right_child(self) -> 'MarkovTriple':
        x, y, z = self.left, self.right, self.mediant
        return MarkovTriple(z, y, 3 * y * z - x, self.fraction, self.right_fraction)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.left, self.right, self.mediant)

    def __eq__(self, other):
        if not isinstance(other, MarkovTriple):
            return NotImplemented
        return (self.as_tuple() == other.as_tuple()
                and self.left_fraction == other.left_fraction
                and self.right_fraction == other.right_fraction)

    def __repr__(self):
        p, q = self.fraction
        return f"MarkovTriple({self.left}, {self.right}, {self.mediant} @ {p}/{q})"


ROOT_TRIPLE = MarkovTriple(1, 2, 5, (0, 1), (1, 1))


def _require_coprime_interior(q: int, p: int) -> None:
    if not 0 < p < q:
        raise DomainError(f"expected 0 < p < q, got (q, p) = ({q}, {p})")
    if gcd(q, p) != 1:
        raise DomainError(f"expected coprime (q, p), got ({q}, {p})")


def markov_triple_at(q: int, p: int,
                     visit: Optional[Callable[[MarkovTriple], None]] = None) -> MarkovTriple:
    """Descend from the root interval [0/1, 1/1] until the mediant fraction is p/q."""
    _require_coprime_interior(q, p)
    triple = ROOT_TRIPLE
    while True:
        if visit is not None:
            visit(triple)
        num, den = triple.fraction
        if num == p and den == q:
            return triple
        if p * den < num * q:
            triple = triple.left_child()
        else:
            triple = triple.right_child()


def markov_coprime(q: int, p: int) -> int:
    """Markov number of a coprime pair, with the seeds m(1,0) = 1 and m(1,1) = 2."""
    if (q, p) == (1, 0):
        return 1
    if (q, p) == (1, 1):
        return 2
    return markov_triple_at(q, p).mediant


def _scaled_term(f1: int, n: int) -> int:
    prev, cur = 0, f1
    if n == 0:
        return 0
    for _ in range(n - 1):
        prev, cur = cur, 3 * f1 * cur - prev
    return cur


class MarkovCache:
    """
    Optional (q, p) -> m(q, p) store, kept as decimal strings.

    The on-disk format is one "q,p,value" line per entry. Reads and inserts take a
    lock so one cache can be shared between threads.
    """

    def __init__(self, path: Optional[Path] = None):
        self.path = Path(path) if path else None
        self._values: Dict[Tuple[int, int], str] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            self.load(self.path)

    def get(self, q: int, p: int) -> Optional[int]:
        with self._lock:
            text = self._values.get((q, p))
        return int(text) if text is not None else None

    def put(self, q: int, p: int, value: int) -> None:
        with self._lock:
            self._values.setdefault((q, p), str(value))

    def __len__(self):
        with self._lock:
            return len(self._values)

    def load(self, path: Path) -> None:
        loaded = 0
        with open(path, 'r') as f:
            for line_no, line in enumerate(f, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    q, p, value = (int(part) for part in line.split(','))
                except ValueError:
                    logger.warning(f"Skipping malformed cache line {line_no} in {path}: {line!r}")
                    continue
                self.put(q, p, value)
                loaded += 1
        logger.debug(f"Loaded {loaded} cached Markov values from {path}")

    def save(self, path: Optional[Path] = None) -> None:
        target = Path(path) if path else self.path
        if target is None:
            raise DomainError("no cache path given")
        with self._lock:
            items = sorted(self._values.items())
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, 'w') as f:
            for (q, p), value in items:
                f.write(f"{q},{p},{value}\n")


def generalized_markov(q: int, p: int, cache: Optional[MarkovCache] = None) -> int:
    if q < 0 or p < 0:
        raise DomainError(f"indices must be nonnegative, got ({q}, {p})")
    if p > q:
        raise DomainError(f"expected p <= q, got ({q}, {p})")
    if cache is not None:
        hit = cache.get(q, p)
        if hit is not None:
            return hit
    if p == 0:
        value = fibonacci(2 * q)
    elif p == q:
        value = pell(2 * q)
    else:
        g = gcd(q, p)
        value = _scaled_term(markov_triple_at(q // g, p // g).mediant, g)
    if cache is not None:
        cache.put(q, p, value)
    return value


class ScaledSequence(NamedTuple):
    base: LatticePoint
    values: List[int]

    @property
    def f1(self) -> int:
        return self.values[1]

    def satisfies_recurrence(self) -> bool:
        if self.values[0] != 0:
            return False
        f1 = self.values[1] if len(self.values) > 1 else 0
        return all(self.values[n] == 3 * f1 * self.values[n - 1] - self.values[n - 2]
                   for n in range(2, len(self.values)))


def scaled_sequence(q: int, p: int, nmax: int) -> ScaledSequence:
    """f_0 .. f_nmax along the ray through the primitive point (q, p)."""
    if q < 1 or p < 0 or p > q or gcd(q, p) != 1 or (p == q and q != 1):
        raise DomainError(f"scaled_sequence needs a primitive base point, got ({q}, {p})")
    if nmax < 1:
        raise DomainError(f"nmax must be positive, got {nmax}")
    f1 = markov_coprime(q, p)
    values = [0, f1]
    for _ in range(nmax - 1):
        values.append(3 * f1 * values[-1] - values[-2])
    return ScaledSequence(LatticePoint(q, p), values)


class GrowthConstant(NamedTuple):
    """alpha = (3 f1 + sqrt(9 f1^2 - 4)) / 2, the growth rate of a scaled sequence."""
    f1: int
    alpha: object
    digits: int
    scaled: int

    @property
    def discriminant(self) -> int:
        return 9 * self.f1 * self.f1 - 4

    def decimal(self) -> str:
        text = str(self.scaled)
        return f"{text[:-self.digits]}.{text[-self.digits:]}"

    def term(self, n: int):
        """Closed form f_1 (alpha^n - alpha^-n) / sqrt(9 f1^2 - 4)."""
        with mpmath.mp.workdps(self.digits + 10):
            alpha = self.alpha
            return self.f1 * (alpha ** n - alpha ** (-n)) / mpmath.sqrt(self.discriminant)


def growth_alpha(f1: int, digits: int) -> GrowthConstant:
    if f1 < 1:
        raise DomainError(f"f1 must be positive, got {f1}")
    if digits < 1:
        raise DomainError(f"digits must be positive, got {digits}")
    scale = 10 ** digits
    # 9 f1^2 - 4 is never a square for f1 >= 1, so the floor below is exact truncation
    scaled = (3 * f1 * scale + isqrt((9 * f1 * f1 - 4) * scale * scale)) // 2
    with mpmath.mp.workdps(digits + 10):
        alpha = (3 * f1 + mpmath.sqrt(9 * f1 * f1 - 4)) / 2
    return GrowthConstant(f1, alpha, digits, scaled)


COHN_MATRICES = {
    'a': np.array([[2, 1], [1, 1]], dtype=object),
    'b': np.array([[5, 2], [2, 1]], dtype=object),
}


def christoffel_word(q: int, p: int) -> str:
    """Lower Christoffel word of length q with p letters b."""
    return ''.join('b' if (i * p) // q > ((i - 1) * p) // q else 'a' for i in range(1, q + 1))


def cohn_trace_oracle(q: int, p: int) -> int:
    _require_coprime_interior(q, p)
    product = np.array([[1, 0], [0, 1]], dtype=object)
    for letter in christoffel_word(q, p):
        product = product.dot(COHN_MATRICES[letter])
    trace = int(product[0, 0]) + int(product[1, 1])
    value, remainder = divmod(trace, 3)
    if remainder:
        raise OracleError(f"Cohn trace {trace} for ({q}, {p}) is not divisible by 3")
    return value
