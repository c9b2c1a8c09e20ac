"""
Toy formal-system layer: propositions, reversible Gödel numbers, the
diagonal sentence template and the registry that maps Gödel numbers to
basis indices of the system register.

Encoding is positional in base 14, most significant token first, with the
token ids below (no token has id 0, so decoding is unambiguous)::

    0=1  S=2  ==3  ~=4  E=5  x=6  w=7  (=8  )=9  p=10  U=11  proves=12  ,=13

The self-referential fixed point of the diagonal sentence is *not*
derived. A sentence built for ``w`` is registered under the number ``w``
by fiat; :func:`is_true_fixed_point` reports whether that assignment
happens to coincide with the sentence's actual code (it essentially never
does).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import GodelCodecError, RegistryFullError

__all__ = [
    "TOKEN_IDS",
    "BASE",
    "Proposition",
    "encode",
    "decode",
    "numeral",
    "diagonal_sentence",
    "is_true_fixed_point",
    "NumberRegistry",
    "register_number",
]

TOKEN_IDS: dict[str, int] = {
    "0": 1,
    "S": 2,
    "=": 3,
    "~": 4,
    "E": 5,
    "x": 6,
    "w": 7,
    "(": 8,
    ")": 9,
    "p": 10,
    "U": 11,
    "proves": 12,
    ",": 13,
}
TOKENS_BY_ID = {v: k for k, v in TOKEN_IDS.items()}
BASE = len(TOKEN_IDS) + 1


@dataclass(frozen=True)
class Proposition:
    """A non-empty token sequence over the fixed alphabet."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        toks = tuple(self.tokens)
        object.__setattr__(self, "tokens", toks)
        if not toks:
            raise GodelCodecError("empty proposition")
        for t in toks:
            if t not in TOKEN_IDS:
                raise GodelCodecError(f"unknown token {t!r}")

    @classmethod
    def parse(cls, text: str) -> "Proposition":
        """Split space-separated text into tokens."""
        return cls(tuple(text.split()))

    def __str__(self):
        return " ".join(self.tokens)

    def __len__(self):
        return len(self.tokens)


def _as_proposition(p) -> Proposition:
    if isinstance(p, Proposition):
        return p
    if isinstance(p, str):
        return Proposition.parse(p)
    return Proposition(tuple(p))


def encode(p) -> int:
    """Gödel number of a proposition (a :class:`Proposition`, token list or text).

    >>> encode("p ( w )")
    29115
    """
    n = 0
    for t in _as_proposition(p).tokens:
        n = n * BASE + TOKEN_IDS[t]
    return n


def decode(n: int) -> Proposition:
    """Inverse of :func:`encode`; raises on ``n < 1`` or on a zero digit."""
    n = int(n)
    if n < 1:
        raise GodelCodecError(f"Gödel numbers are >= 1, got {n}")
    ids = []
    while n:
        n, digit = divmod(n, BASE)
        if digit == 0:
            raise GodelCodecError("zero digit: no token has id 0")
        ids.append(digit)
    return Proposition(tuple(TOKENS_BY_ID[i] for i in reversed(ids)))


def numeral(n: int) -> tuple[str, ...]:
    """Successor-chain numeral ``S ... S 0`` with ``n`` copies of ``S``."""
    if n < 0:
        raise GodelCodecError(f"numerals are natural numbers, got {n}")
    return ("S",) * n + ("0",)


def diagonal_sentence(w: int, registry: "NumberRegistry | None" = None) -> Proposition:
    """``~ E x ( U ( x ) proves p ( w̄ , w̄ ) )`` with ``w̄`` the numeral of ``w``.

    When a registry is given, ``w`` itself is registered as the sentence's
    Gödel number (the modeled fixed point).
    """
    w = int(w)
    bar = numeral(w)
    tokens = ("~", "E", "x", "(", "U", "(", "x", ")", "proves", "p", "(") + bar + (",",) + bar + (")", ")")
    if registry is not None:
        registry.register(w)
    return Proposition(tokens)


def is_true_fixed_point(w: int) -> bool:
    return encode(diagonal_sentence(w)) == w


class NumberRegistry:
    """Injective map from Gödel numbers to basis indices ``0..capacity-1``.

    Indices are handed out in registration order. Registering a number that
    is already present returns its existing index.
    """

    def __init__(self, capacity: int, numbers: Iterable[int] = ()):
        if capacity < 1:
            raise ValueError(f"capacity must be positive, got {capacity}")
        self.capacity = int(capacity)
        self._numbers: list[int] = []
        self._index: dict[int, int] = {}
        for n in numbers:
            self.register(n)

    def register(self, n: int) -> int:
        n = int(n)
        if n < 1:
            raise GodelCodecError(f"Gödel numbers are >= 1, got {n}")
        if n in self._index:
            return self._index[n]
        if len(self._numbers) >= self.capacity:
            raise RegistryFullError(f"registry full ({self.capacity} entries); cannot add {n}")
        self._index[n] = len(self._numbers)
        self._numbers.append(n)
        return self._index[n]

    def index_of(self, n: int) -> int:
        return self._index[int(n)]

    def number_at(self, index: int) -> int:
        return self._numbers[index]

    @property
    def numbers(self) -> tuple[int, ...]:
        return tuple(self._numbers)

    def entries(self) -> list[tuple[int, int]]:
        return [(n, i) for i, n in enumerate(self._numbers)]

    def __len__(self):
        return len(self._numbers)

    def __contains__(self, n):
        return int(n) in self._index

    def __repr__(self):
        return f"NumberRegistry(capacity={self.capacity}, numbers={self._numbers})"


def register_number(n: int, registry: NumberRegistry) -> int:
    return registry.register(n)
