"""Homotopy letters, graded homotopy strings and antipaths.

A graded homotopy string stores its letters as σ_1, σ_2, ... (rightmost
first) together with the degree of the rightmost projective slot.  Slot i
sits between σ_i and σ_{i+1}; slot 0 is the source of σ_1.  Crossing a
direct letter lowers the degree by one, crossing an inverse letter raises it.
"""

from __future__ import annotations

from dataclasses import dataclass

from gentle_ext.presentation import GentlePresentation, Path
from gentle_ext.strings import Letter, Walk, letters_compatible


@dataclass(frozen=True)
class HomotopyLetter:
    """The path ``path`` read forwards, or backwards when ``inverse``."""

    path: Path
    inverse: bool = False

    @property
    def length(self) -> int:
        return len(self.path)

    @property
    def source(self) -> str:
        return self.path.target if self.inverse else self.path.source

    @property
    def target(self) -> str:
        return self.path.source if self.inverse else self.path.target

    def walk_letters(self) -> tuple[Letter, ...]:
        if self.inverse:
            return tuple(Letter(a, True) for a in reversed(self.path.arrows))
        return tuple(Letter(a, False) for a in self.path.arrows)

    def inverted(self) -> "HomotopyLetter":
        return HomotopyLetter(self.path, not self.inverse)

    @property
    def outer_arrows(self) -> tuple[str, str]:
        """(arrow at the source end, arrow at the target end) in walk order."""
        letters = self.walk_letters()
        return letters[0].arrow, letters[-1].arrow

    def __str__(self) -> str:
        return " ".join(str(x) for x in reversed(self.walk_letters()))

    def to_dict(self) -> dict:
        return {"path": list(self.path.arrows), "direction": "inverse" if self.inverse else "direct"}


def letter_from_walk(p: GentlePresentation, letters: tuple[Letter, ...]) -> HomotopyLetter:
    """Package a same-direction run of walk letters as one homotopy letter."""
    inverse = letters[0].inverse
    if any(x.inverse != inverse for x in letters):
        raise ValueError("mixed directions inside one homotopy letter")
    arrows = tuple(x.arrow for x in letters)
    if inverse:
        arrows = arrows[::-1]
    path = p.path(arrows)
    if path is None:
        raise ValueError("homotopy letter is a zero path")
    return HomotopyLetter(path, inverse)


def decompose_homotopy_letters(p: GentlePresentation, w: Walk, cyclic: bool = False) -> list[HomotopyLetter]:
    """Split a walk at orientation changes and relation crossings.

    With ``cyclic`` the walk is read as a band and must be rotated so that a
    boundary falls at the seam; the caller can use :func:`band_letter_rotation`.
    """
    if w.is_trivial:
        return []
    for x, y in zip(w.letters, w.letters[1:]):
        if x.target(p) != y.source(p):
            raise ValueError(f"letters {y} and {x} are not composable")
        if x.arrow == y.arrow and x.inverse != y.inverse:
            raise ValueError(f"walk contains the cancellation {y} {x}")
    runs: list[list[Letter]] = [[w.letters[0]]]
    for x, y in zip(w.letters, w.letters[1:]):
        if letters_compatible(p, x, y) and x.inverse == y.inverse:
            runs[-1].append(y)
        else:
            runs.append([y])
    if cyclic and len(runs) > 1:
        last, first = w.letters[-1], w.letters[0]
        if letters_compatible(p, last, first) and last.inverse == first.inverse:
            raise ValueError("band walk is not cut at a homotopy letter boundary")
    return [letter_from_walk(p, tuple(r)) for r in runs]


def band_letter_rotation(p: GentlePresentation, w: Walk) -> Walk:
    """Rotate a band walk so that its seam is a homotopy letter boundary."""
    for k in range(len(w)):
        r = w.rotate(p, k)
        if r.letters[-1].inverse != r.letters[0].inverse:
            return r
    raise ValueError("band without a change of orientation")


@dataclass(frozen=True)
class EventuallyPeriodicPath:
    """An antipath ``prefix`` followed by ``cycle`` repeated forever.

    Arrows are listed outwards from the seed.  An empty cycle means the
    antipath is finite.  ``inverse`` records whether the letters are inverse.
    """

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]
    inverse: bool = False

    @property
    def is_finite(self) -> bool:
        return not self.cycle

    def arrows(self, n: int | None = None) -> tuple[str, ...]:
        """The first ``n`` arrows (all of them when finite and ``n`` is None)."""
        if n is None:
            if self.cycle:
                raise ValueError("infinite antipath needs an explicit length")
            return self.prefix
        out = list(self.prefix[:n])
        while len(out) < n and self.cycle:
            out.extend(self.cycle)
        return tuple(out[:n])

    def __len__(self) -> int:
        if self.cycle:
            raise ValueError("infinite antipath")
        return len(self.prefix)


def antipath(p: GentlePresentation, seed: Letter) -> EventuallyPeriodicPath:
    """The maximal antipath whose letter next to the seed position is ``seed``.

    Both directions follow the chain x, y, ... with yx in I: a direct antipath
    extends to the left, an inverse one extends to the right.
    """
    chain = [seed.arrow]
    while (nxt := p.relation_successor(chain[-1])) is not None:
        if nxt in chain:
            k = chain.index(nxt)
            return EventuallyPeriodicPath(tuple(chain[:k]), tuple(chain[k:]), seed.inverse)
        chain.append(nxt)
    return EventuallyPeriodicPath(tuple(chain), (), seed.inverse)


@dataclass(frozen=True)
class GradedHomotopyString:
    """A string or band complex: letters σ_1, ..., σ_n plus the degree of slot 0."""

    letters: tuple[HomotopyLetter, ...]
    base_degree: int = 0
    is_band: bool = False
    start: str | None = None
    truncated_left: bool = False
    truncated_right: bool = False

    def __post_init__(self):
        if self.letters:
            object.__setattr__(self, "start", self.letters[0].source)
        elif self.start is None:
            raise ValueError("trivial homotopy string needs a vertex")
        if self.is_band:
            direct = sum(not x.inverse for x in self.letters)
            if 2 * direct != len(self.letters):
                raise ValueError("band degree mismatch: direct and inverse letter counts differ")

    def __len__(self) -> int:
        return len(self.letters)

    def slots(self) -> list[str]:
        """Vertices of the projectives, slot 0 first.  A band repeats slot 0 last."""
        return [self.start] + [x.target for x in self.letters]

    def degrees(self) -> list[int]:
        out = [self.base_degree]
        for x in self.letters:
            out.append(out[-1] + (1 if x.inverse else -1))
        return out

    def walk(self) -> Walk:
        letters = tuple(y for x in self.letters for y in x.walk_letters())
        return Walk(self.start, letters)

    @property
    def min_degree(self) -> int:
        return min(self.degrees())

    @property
    def max_degree(self) -> int:
        return max(self.degrees())

    def shift(self, k: int) -> "GradedHomotopyString":
        """Degrees moved down by k (the suspension Σ^k)."""
        return GradedHomotopyString(self.letters, self.base_degree - k, self.is_band, self.start,
                                    self.truncated_left, self.truncated_right)

    def inverse(self) -> "GradedHomotopyString":
        letters = tuple(x.inverted() for x in reversed(self.letters))
        end = self.slots()[-1]
        return GradedHomotopyString(letters, self.degrees()[-1], self.is_band, end,
                                    self.truncated_right, self.truncated_left)

    def diagram(self) -> str:
        """Degree row above the slots, which are joined by differentials (leftmost first)."""
        slots, degs = self.slots(), self.degrees()
        cells, marks = [], []
        for i in range(len(slots) - 1, -1, -1):
            cells.append(slots[i])
            marks.append(str(degs[i]))
            if i > 0:
                x = self.letters[i - 1]
                name = " ".join(reversed(x.path.arrows))
                arrow = f" -{name}-> " if not x.inverse else f" <-{name}- "
                cells.append(arrow)
                marks.append(" " * len(arrow))
        widths = [max(len(c), len(m)) for c, m in zip(cells, marks)]
        top = "".join(m.center(wd) for m, wd in zip(marks, widths))
        bottom = "".join(c.center(wd) for c, wd in zip(cells, widths))
        if self.truncated_left:
            top, bottom = "    " + top, "... " + bottom
        if self.truncated_right:
            top, bottom = top + "    ", bottom + " ..."
        return top.rstrip() + "\n" + bottom.rstrip()

    def to_dict(self) -> dict:
        return {
            "letters": [x.to_dict() for x in self.letters],
            "start": self.start,
            "base_degree": self.base_degree,
            "is_band": self.is_band,
            "truncated": {"left": self.truncated_left, "right": self.truncated_right},
        }

    def __str__(self) -> str:
        if not self.letters:
            return f"1_{self.start}"
        return " | ".join(str(x) for x in reversed(self.letters))


def homotopy_string_from_dict(p: GentlePresentation, data: dict) -> GradedHomotopyString:
    letters = []
    for item in data["letters"]:
        arrows = tuple(item["path"])
        path = p.path(arrows) if arrows else None
        if path is None:
            raise ValueError(f"letter {arrows} is zero or trivial")
        letters.append(HomotopyLetter(path, item.get("direction", "direct") == "inverse"))
    trunc = data.get("truncated", {})
    return grade(letters, data.get("base_degree", 0), data.get("is_band", False), data.get("start"),
                 trunc.get("left", False), trunc.get("right", False), p)


def grade(letters, base_degree: int, is_band: bool = False, start: str | None = None,
          truncated_left: bool = False, truncated_right: bool = False,
          p: GentlePresentation | None = None) -> GradedHomotopyString:
    """Assemble and validate a graded homotopy string."""
    letters = tuple(letters)
    for x, y in zip(letters, letters[1:]):
        if x.target != y.source:
            raise ValueError(f"homotopy letters {y} and {x} do not meet")
    if is_band and letters and letters[-1].target != letters[0].source:
        raise ValueError("homotopy band does not close up")
    if p is not None:
        pairs = list(zip(letters, letters[1:]))
        if is_band and len(letters) > 1:
            pairs.append((letters[-1], letters[0]))
        for x, y in pairs:
            if not junction_ok(p, x, y):
                raise ValueError(f"junction {y} | {x} is neither an orientation change nor a relation")
    return GradedHomotopyString(letters, base_degree, is_band, start, truncated_left, truncated_right)


def junction_ok(p: GentlePresentation, first: HomotopyLetter, second: HomotopyLetter) -> bool:
    """Boundary condition between consecutive letters (``first`` applied first)."""
    x, y = first.walk_letters()[-1], second.walk_letters()[0]
    if x.arrow == y.arrow and x.inverse != y.inverse:
        return False
    if first.inverse != second.inverse:
        return True
    return not letters_compatible(p, x, y)


def homotopy_string_from_walk(p: GentlePresentation, w: Walk, base_degree: int = 0) -> GradedHomotopyString:
    return grade(decompose_homotopy_letters(p, w), base_degree, start=w.start, p=p)
