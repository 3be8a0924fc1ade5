"""Free-group words, integral group-ring elements and Fox derivatives.

Words are stored in run-length form: a tuple of ``(generator, exponent)``
pairs with no zero exponents and no two adjacent pairs on the same
generator.  Every constructor reduces, so equal group elements compare and
hash equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

Letter = tuple[int, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, exp in letters:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged != 0:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    """Reduced element of a free group on generators ``0, 1, 2, ...``."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce((int(g), int(e)) for g, e in self.letters))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> "Word":
        return cls(((index, exponent),))

    @classmethod
    def from_string(cls, text: str, names: Sequence[str] = "abcd") -> "Word":
        """Parse words like ``"b a^-1 B A"``; upper case is the inverse letter."""
        letters = []
        for token in text.replace("*", " ").split():
            base, _, power = token.partition("^")
            exp = int(power) if power else 1
            if base in names:
                letters.append((names.index(base), exp))
            elif base.lower() in names:
                letters.append((names.index(base.lower()), -exp))
            else:
                raise ValueError(f"unknown generator {base!r} in {text!r}")
        return cls(tuple(letters))

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word.identity()
        base = self if n > 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def syllables(self) -> Iterator[Letter]:
        """Yield unit letters ``(g, +-1)`` one at a time, left to right."""
        for gen, exp in self.letters:
            step = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, step

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sum(self, weights: Sequence[int]) -> int:
        """Image under the homomorphism sending generator ``i`` to ``t^weights[i]``."""
        return sum(weights[g] * e for g, e in self.letters)

    def format(self, names: Sequence[str] = "abcd") -> str:
        if not self.letters:
            return "1"
        return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in self.letters)

    def __repr__(self) -> str:
        return f"Word({self.format()})"


class GroupRingElement:
    """Finite integer combination of words, an element of Z[F]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, int] | None = None):
        clean = {}
        for word, coeff in (terms or {}).items():
            if coeff:
                clean[word] = clean.get(word, 0) + int(coeff)
        self._terms = {w: c for w, c in clean.items() if c != 0}

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({Word.identity(): 1})

    @classmethod
    def of(cls, word: Word, coeff: int = 1) -> "GroupRingElement":
        return cls({word: coeff})

    @property
    def terms(self) -> dict[Word, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            other = GroupRingElement.of(other)
        elif isinstance(other, int):
            other = GroupRingElement({Word.identity(): other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    @staticmethod
    def _coerce(x) -> "GroupRingElement":
        if isinstance(x, GroupRingElement):
            return x
        if isinstance(x, Word):
            return GroupRingElement.of(x)
        if isinstance(x, int):
            return GroupRingElement({Word.identity(): x})
        raise TypeError(f"cannot coerce {type(x).__name__} into the group ring")

    def __add__(self, other) -> "GroupRingElement":
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> "GroupRingElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "GroupRingElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self._terms.items()})
        other = self._coerce(other)
        out: dict[Word, int] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 * w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def __rmul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return self * other
        return self._coerce(other) * self

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def format(self, names: Sequence[str] = "abcd") -> str:
        if not self._terms:
            return "0"
        parts = []
        for word, c in sorted(self._terms.items(), key=lambda wc: (len(wc[0]), wc[0].letters)):
            body = word.format(names)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"GroupRingElement({self.format()})"


def word_multiply(u: Word, v: Word) -> Word:
    return u * v


def word_power(u: Word, n: int) -> Word:
    return u**n


def fox_derivative(word: Word, j: int) -> GroupRingElement:
    """Fox free derivative of ``word`` with respect to generator ``j``.

    Walks the word left to right using d(uv) = du + u dv together with
    d(a_j) = 1 and d(a_j^-1) = -a_j^-1, so a syllable a_j^e with prefix P
    contributes P(1 + a_j + ... + a_j^(e-1)) for e > 0 and
    -P(a_j^-1 + ... + a_j^e) for e < 0.
    """
    out: dict[Word, int] = {}
    prefix = Word.identity()
    for gen, exp in word.letters:
        if gen == j:
            if exp > 0:
                powers, sign = range(0, exp), 1
            else:
                powers, sign = range(-1, exp - 1, -1), -1
            for k in powers:
                term = prefix * Word.generator(j, k)
                out[term] = out.get(term, 0) + sign
        prefix = prefix * Word.generator(gen, exp)
    return GroupRingElement(out)


@dataclass(frozen=True)
class KnotPresentation:
    """Deficiency-one presentation with its abelianization to <t>.

    ``abelianization[i]`` is the exponent e_i with generator i mapped to t^e_i.
    """

    names: tuple[str, ...]
    relators: tuple[Word, ...]
    abelianization: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        ell = len(self.names)
        if len(self.relators) != ell - 1:
            raise ValueError(f"need {ell - 1} relators for {ell} generators, got {len(self.relators)}")
        if len(self.abelianization) != ell:
            raise ValueError("one abelianization exponent per generator required")
        for r in self.relators:
            if any(g >= ell for g in r.generators()):
                raise ValueError(f"relator {r} uses an unknown generator")
            if r.exponent_sum(self.abelianization) != 0:
                raise ValueError(f"relator {r.format(self.names)} does not abelianize to 1")

    @property
    def generator_count(self) -> int:
        return len(self.names)

    def word(self, text: str) -> Word:
        return Word.from_string(text, self.names)

    def degree(self, word: Word) -> int:
        return word.exponent_sum(self.abelianization)


def presentation_torus(p: int, q: int) -> KnotPresentation:
    """<c, d | c^p d^-q> with c -> t^q and d -> t^p."""
    if p < 2 or q < 2 or gcd(p, q) != 1:
        raise ValueError(f"(p, q) = ({p}, {q}) does not define a torus knot; need p, q >= 2 and coprime")
    relator = Word(((0, p), (1, -q)))
    return KnotPresentation(("c", "d"), (relator,), (q, p), label=f"T({p},{q})")


def twist_word() -> Word:
    """w = b a^-1 b^-1 a on generators a=0, b=1."""
    return Word(((1, 1), (0, -1), (1, -1), (0, 1)))


def presentation_twist(n: int) -> KnotPresentation:
    """<a, b | w^n a w^-n b^-1>, the twist knot J(2, 2n)."""
    if n == 0:
        raise ValueError("n = 0 gives the unknot")
    w = twist_word()
    relator = w**n * Word.generator(0) * w**-n * Word.generator(1, -1)
    return KnotPresentation(("a", "b"), (relator,), (1, 1), label=f"J(2,{2 * n})")
