"""Letters, walks, strings and bands.

A walk stores its letters in application order: ``letters[0]`` is w_1, the
rightmost letter of the written word.  Text syntax is space separated tokens,
leftmost first, with a trailing ``-`` for an inverse letter (``"h- i"`` is the
walk h̄ i) and ``1_x`` for the trivial walk at x.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from gentle_ext.presentation import GentlePresentation


@dataclass(frozen=True)
class Letter:
    arrow: str
    inverse: bool = False

    def source(self, p: GentlePresentation) -> str:
        a = p.arrow(self.arrow)
        return a.target if self.inverse else a.source

    def target(self, p: GentlePresentation) -> str:
        a = p.arrow(self.arrow)
        return a.source if self.inverse else a.target

    def inverted(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def __str__(self) -> str:
        return self.arrow + ("-" if self.inverse else "")


@dataclass(frozen=True)
class Walk:
    """A walk starting at ``start``; trivial when ``letters`` is empty."""

    start: str
    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def end(self, p: GentlePresentation) -> str:
        return self.letters[-1].target(p) if self.letters else self.start

    def slots(self, p: GentlePresentation) -> list[str]:
        """Vertices x_0, ..., x_l visited by the walk."""
        out = [self.start]
        for letter in self.letters:
            out.append(letter.target(p))
        return out

    def inverse(self, p: GentlePresentation) -> "Walk":
        return Walk(self.end(p), tuple(x.inverted() for x in reversed(self.letters)))

    def rotate(self, p: GentlePresentation, k: int) -> "Walk":
        """Cyclic rotation so that w_{k+1} becomes the first letter."""
        n = len(self.letters)
        k %= n
        letters = self.letters[k:] + self.letters[:k]
        return Walk(letters[0].source(p), letters)

    def __str__(self) -> str:
        if not self.letters:
            return f"1_{self.start}"
        return " ".join(str(x) for x in reversed(self.letters))


@dataclass(frozen=True)
class StringWord:
    walk: Walk

    is_band = False

    def __str__(self) -> str:
        return str(self.walk)


@dataclass(frozen=True)
class BandWord:
    walk: Walk

    is_band = True

    def __str__(self) -> str:
        return str(self.walk)


Word = StringWord | BandWord


def parse_walk(text: str, p: GentlePresentation) -> Walk:
    """Parse walk text.  Raises ValueError on unknown tokens only."""
    tokens = text.split()
    if len(tokens) == 1 and tokens[0].startswith("1_"):
        x = tokens[0][2:]
        if x not in p.vertices:
            raise ValueError(f"unknown vertex {x!r}")
        return Walk(x)
    if not tokens:
        raise ValueError("empty walk")
    letters = []
    for tok in reversed(tokens):
        inverse = tok.endswith("-")
        name = tok[:-1] if inverse else tok
        if not p.has_arrow(name):
            raise ValueError(f"unknown arrow token {tok!r}")
        letters.append(Letter(name, inverse))
    return Walk(letters[0].source(p), tuple(letters))


def letters_compatible(p: GentlePresentation, first: Letter, second: Letter) -> bool:
    """Whether ``second first`` (apply ``first`` then ``second``) is allowed in a string."""
    if first.target(p) != second.source(p):
        return False
    if first.arrow == second.arrow and first.inverse != second.inverse:
        return False
    if first.inverse != second.inverse:
        return True
    if not first.inverse:
        return not p.is_relation(second.arrow, first.arrow)
    return not p.is_relation(first.arrow, second.arrow)


def is_walk(p: GentlePresentation, w: Walk) -> bool:
    for x, y in zip(w.letters, w.letters[1:]):
        if x.target(p) != y.source(p):
            return False
        if x.arrow == y.arrow and x.inverse != y.inverse:
            return False
    return True


def is_string(p: GentlePresentation, w: Walk) -> bool:
    if w.letters and w.start != w.letters[0].source(p):
        return False
    return all(letters_compatible(p, x, y) for x, y in zip(w.letters, w.letters[1:]))


def _is_proper_power(letters: tuple) -> bool:
    n = len(letters)
    return any(n % d == 0 and letters == letters[:d] * (n // d) for d in range(1, n))


def is_band(p: GentlePresentation, w: Walk) -> bool:
    if w.is_trivial or not is_string(p, w):
        return False
    if w.end(p) != w.start:
        return False
    if not letters_compatible(p, w.letters[-1], w.letters[0]):
        return False
    return not _is_proper_power(w.letters)


def word_key(p: GentlePresentation, w: Walk) -> tuple:
    """Sort key in text order; an inverse letter sorts right after its direct letter."""
    rank = p.token_rank()
    if w.is_trivial:
        return ((rank[w.start], 0),)
    return tuple((rank[x.arrow], int(x.inverse)) for x in reversed(w.letters))


def string_orientations(p: GentlePresentation, w: Walk) -> list[Walk]:
    if w.is_trivial:
        return [w]
    return [w, w.inverse(p)]


def band_rotations(p: GentlePresentation, w: Walk) -> list[Walk]:
    """All rotations of w and of its inverse."""
    out = []
    for base in (w, w.inverse(p)):
        out.extend(base.rotate(p, k) for k in range(len(base)))
    return out


def canonical_form(p: GentlePresentation, w: Word) -> Word:
    if isinstance(w, BandWord):
        return BandWord(min(band_rotations(p, w.walk), key=lambda x: word_key(p, x)))
    return StringWord(min(string_orientations(p, w.walk), key=lambda x: word_key(p, x)))


def sort_key(p: GentlePresentation, w: Word) -> tuple:
    return (int(w.is_band), len(w.walk), word_key(p, w.walk))


def _all_letters(p: GentlePresentation) -> list[Letter]:
    return [Letter(a.name, inv) for a in p.arrows for inv in (False, True)]


def enumerate_strings(p: GentlePresentation, max_len: int) -> list[StringWord]:
    """All canonical strings of length at most ``max_len``."""
    found = {StringWord(Walk(x)) for x in p.vertices}
    frontier = deque()
    for letter in _all_letters(p):
        if max_len >= 1:
            walk = Walk(letter.source(p), (letter,))
            found.add(canonical_form(p, StringWord(walk)))
            frontier.append(walk)
    while frontier:
        walk = frontier.popleft()
        if len(walk) >= max_len:
            continue
        for letter in _all_letters(p):
            if letters_compatible(p, walk.letters[-1], letter):
                ext = Walk(walk.start, walk.letters + (letter,))
                found.add(canonical_form(p, StringWord(ext)))
                frontier.append(ext)
    return sorted(found, key=lambda w: sort_key(p, w))


def enumerate_bands(p: GentlePresentation, max_len: int) -> list[BandWord]:
    """All canonical bands of length at most ``max_len``."""
    found = set()
    frontier = deque(Walk(a.source(p), (a,)) for a in _all_letters(p))
    while frontier:
        walk = frontier.popleft()
        if is_band(p, walk):
            found.add(canonical_form(p, BandWord(walk)))
        if len(walk) >= max_len:
            continue
        for letter in _all_letters(p):
            if letters_compatible(p, walk.letters[-1], letter):
                frontier.append(Walk(walk.start, walk.letters + (letter,)))
    return sorted(found, key=lambda w: sort_key(p, w))


def dimension_vector(p: GentlePresentation, w: Word | Walk) -> dict[str, int]:
    """Occurrences of each vertex among the slots of M(w) or B(w)."""
    if isinstance(w, Walk):
        w = StringWord(w)
    slots = w.walk.slots(p)
    if w.is_band:
        slots = slots[:-1]
    counts = {x: 0 for x in p.vertices}
    for x in slots:
        counts[x] += 1
    return counts


def word_dimension(p: GentlePresentation, w: Word) -> int:
    return len(w.walk) if w.is_band else len(w.walk) + 1
