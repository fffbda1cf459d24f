"""Reduced words in the rank-2 free group and maps of its Cayley tree.

Words are tuples of nonzero integers: +1/-1 for the first generator and
its inverse, +2/-2 for the second.  Serialization uses the alphabet
{a, A, b, B} with capitals denoting inverses; the identity prints as "1".
Everything here is exact integer combinatorics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

MAX_WORD_LENGTH = 64

_CHAR_OF = {1: "a", -1: "A", 2: "b", -2: "B"}
_LETTER_OF = {c: v for v, c in _CHAR_OF.items()}

# Canonical letter order used by all ball enumerations.
ALPHABET = (1, -1, 2, -2)


class WordLengthError(ValueError):
    """A word operation would exceed the configured maximum length."""


@dataclass(frozen=True)
class Word:
    """Reduced word over {a, a^-1, b, b^-1}."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for x in self.letters:
            if x not in _CHAR_OF:
                raise ValueError(f"invalid letter {x!r}")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise ValueError(f"word {self.letters} is not reduced")
        if len(self.letters) > MAX_WORD_LENGTH:
            raise WordLengthError(
                f"word length {len(self.letters)} exceeds {MAX_WORD_LENGTH}"
            )

    @classmethod
    def from_string(cls, text: str) -> "Word":
        if text == "1" or text == "":
            return cls(())
        try:
            return cls(tuple(_LETTER_OF[c] for c in text))
        except KeyError as exc:
            raise ValueError(f"invalid word character {exc.args[0]!r}") from None

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(_CHAR_OF[x] for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return word_concat(self, other)

    def inverse(self) -> "Word":
        return Word(tuple(-x for x in reversed(self.letters)))


IDENTITY = Word(())
A = Word((1,))
B = Word((2,))


def word_concat(u: Word, v: Word) -> Word:
    """Concatenation with free reduction at the seam."""
    left = list(u.letters)
    for x in v.letters:
        if left and left[-1] == -x:
            left.pop()
        else:
            left.append(x)
    if len(left) > MAX_WORD_LENGTH:
        raise WordLengthError(f"concatenation has length {len(left)} > {MAX_WORD_LENGTH}")
    return Word(tuple(left))


def tree_dist(u: Word, v: Word) -> int:
    """Cayley-tree distance |u| + |v| - 2 lcp(u, v).

    Equals the length of the reduction of u^-1 v: the common prefix is
    exactly what cancels.
    """
    a, b = u.letters, v.letters
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return len(a) + len(b) - 2 * k


def ball(radius: int) -> list[Word]:
    """All reduced words of length <= radius, in length-lexicographic order."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    words = [()]
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for letters in frontier:
            for x in ALPHABET:
                if letters and letters[-1] == -x:
                    continue
                nxt.append(letters + (x,))
        words.extend(nxt)
        frontier = nxt
    return [Word(t) for t in words]


def shell(radius: int) -> list[Word]:
    """Reduced words of length exactly radius, in enumeration order."""
    return [w for w in ball(radius) if len(w) == radius]


def ball_size(radius: int) -> int:
    """2 (3^r - 1) + 1 vertices in the radius-r ball."""
    return 2 * (3**radius - 1) + 1


def gamma(w: Word) -> Word:
    """Exponent-flipping vertex map of the Cayley tree.

    Words starting with a power of the first generator are fixed; all
    other words (including the identity) have every letter inverted in
    place.  An involution; preserves word length and tree edges (the
    latter is checked by edge_audit, exhaustively in the test suite).
    """
    if w.letters and abs(w.letters[0]) == 1:
        return w
    return Word(tuple(-x for x in w.letters))


@dataclass(frozen=True)
class TreeMap:
    """Vertex map of the Cayley tree built from translations and gamma.

    kind: "left" (left translation by ``word``), "gamma", "gamma_inverse",
    or "compose" with ``parts`` evaluated right to left.
    """

    kind: str
    word: Word | None = None
    parts: tuple["TreeMap", ...] = ()

    def __post_init__(self):
        if self.kind not in ("left", "gamma", "gamma_inverse", "compose"):
            raise ValueError(f"unknown tree map kind {self.kind!r}")
        if self.kind == "left" and self.word is None:
            raise ValueError("left translation needs a word")

    def __str__(self) -> str:
        if self.kind == "left":
            return f"L[{self.word}]"
        if self.kind == "compose":
            return "(" + " . ".join(str(p) for p in self.parts) + ")"
        return self.kind

    def __call__(self, w: Word) -> Word:
        return apply(self, w)


def left_translation(x: Word) -> TreeMap:
    return TreeMap("left", word=x)


def gamma_map() -> TreeMap:
    return TreeMap("gamma")


def gamma_inverse_map() -> TreeMap:
    """The inverse of gamma, realized as gamma itself.

    Valid because gamma is an involution; _check_gamma_involution runs at
    import time as the gate for this identification.
    """
    return TreeMap("gamma_inverse")


def compose(*maps: TreeMap) -> TreeMap:
    return TreeMap("compose", parts=tuple(maps))


def conjugated_by_gamma(x: Word) -> TreeMap:
    """gamma^-1 . (left translation by x) . gamma."""
    return compose(gamma_inverse_map(), left_translation(x), gamma_map())


def apply(m: TreeMap, w: Word) -> Word:
    """Evaluate a tree map on a vertex; compositions apply right to left."""
    if m.kind == "left":
        return word_concat(m.word, w)
    if m.kind in ("gamma", "gamma_inverse"):
        return gamma(w)
    out = w
    for part in reversed(m.parts):
        out = apply(part, out)
    return out


def _check_gamma_involution(radius: int = 4) -> None:
    for w in ball(radius):
        if gamma(gamma(w)) != w:
            raise AssertionError(f"gamma is not an involution at {w}")


_check_gamma_involution()


@dataclass(frozen=True)
class EdgeAuditResult:
    ok: bool
    counterexample: tuple[Word, Word] | None
    edges_checked: int


def edge_audit(m: TreeMap | Callable[[Word], Word], radius: int) -> EdgeAuditResult:
    """Check that a vertex map sends every edge of the radius ball to an edge.

    Accepts a TreeMap or any callable Word -> Word.  Returns the first
    offending edge, if any; the radius-r ball carries 2 (3^r - 1) edges.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    fn = m if callable(m) and not isinstance(m, TreeMap) else (lambda w: apply(m, w))
    images: dict[Word, Word] = {}

    def image(w: Word) -> Word:
        got = images.get(w)
        if got is None:
            got = fn(w)
            images[w] = got
        return got

    checked = 0
    for w in ball(radius):
        if len(w) == radius:
            continue
        for x in ALPHABET:
            if w.letters and w.letters[-1] == -x:
                continue
            child = Word(w.letters + (x,))
            checked += 1
            if tree_dist(image(w), image(child)) != 1:
                return EdgeAuditResult(False, (w, child), checked)
    return EdgeAuditResult(True, None, checked)


@dataclass(frozen=True)
class HomomorphyProbeResult:
    fails: bool
    witness_y: Word | None


def homomorphy_probe(x1: Word, y_radius: int) -> HomomorphyProbeResult:
    """Search for y with gamma(x1 y) != gamma(x1) gamma(y).

    Words y are tried in enumeration order; a length-1 witness (the
    second generator when x1 starts with a power of the first, and vice
    versa) always exists for x1 != identity.
    """
    if len(x1) == 0:
        raise ValueError("the identity trivially satisfies the product rule")
    gx1 = gamma(x1)
    for y in ball(y_radius):
        if len(y) == 0:
            continue
        if gamma(word_concat(x1, y)) != word_concat(gx1, gamma(y)):
            return HomomorphyProbeResult(True, y)
    return HomomorphyProbeResult(False, None)


@dataclass(frozen=True)
class IntersectionProbeResult:
    survivors: list[Word]
    x_radius: int
    test_radius: int


def conjugate_intersection_probe(x_radius: int, test_radius: int) -> IntersectionProbeResult:
    """Which left translations agree with their gamma conjugate on a ball.

    For each x1 != identity in the x_radius ball, tests whether
    gamma . L[x1] . gamma^-1 agrees with L[gamma(x1)] on every vertex of
    the test_radius ball.  Survivors should be empty for test_radius >= 1;
    at test_radius 0 every vertex survives since agreement at the identity
    holds by construction.
    """
    if x_radius < 1 or test_radius < 0:
        raise ValueError("x_radius must be >= 1 and test_radius >= 0")
    test_ball = ball(test_radius)
    survivors = []
    for x1 in ball(x_radius):
        if len(x1) == 0:
            continue
        gx1 = gamma(x1)
        if all(
            gamma(word_concat(x1, gamma(w))) == word_concat(gx1, w) for w in test_ball
        ):
            survivors.append(x1)
    return IntersectionProbeResult(survivors, x_radius, test_radius)
