"""Gentle presentations KQ/I and path arithmetic modulo I.

Paths compose right to left: the path ``ba`` applies ``a`` first.  A relation
is stored as the ordered pair ``(b, a)`` and means ``ba`` lies in I.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable


class PresentationError(ValueError):
    """Malformed presentation file."""


@dataclass(frozen=True)
class Violation:
    """One failed gentleness clause, with the vertex or arrow that witnesses it."""

    clause: int
    witness: str
    message: str

    def __str__(self) -> str:
        return f"clause ({self.clause}) at {self.witness}: {self.message}"


class GentlenessError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """A nonzero path; ``arrows[0]`` is applied first.

    The formal zero path is represented by ``None`` throughout the package.
    """

    source: str
    target: str
    arrows: tuple[str, ...] = ()

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls(vertex, vertex, ())

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        if not self.arrows:
            return f"1_{self.source}"
        return " ".join(reversed(self.arrows))


@dataclass(frozen=True)
class GentlePresentation:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[str, str]]
    _by_name: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_name", {a.name: a for a in self.arrows})

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise KeyError(f"unknown arrow {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def out_arrows(self, x: str) -> list[Arrow]:
        return [a for a in self.arrows if a.source == x]

    def in_arrows(self, x: str) -> list[Arrow]:
        return [a for a in self.arrows if a.target == x]

    def is_relation(self, b: str, a: str) -> bool:
        return (b, a) in self.relations

    def successor(self, a: str) -> str | None:
        """The arrow b with ba nonzero, if any."""
        t = self.arrow(a).target
        for b in self.out_arrows(t):
            if not self.is_relation(b.name, a):
                return b.name
        return None

    def relation_successor(self, a: str) -> str | None:
        """The arrow b with ba in I, if any."""
        for b, a2 in self.relations:
            if a2 == a:
                return b
        return None

    def predecessor(self, b: str) -> str | None:
        """The arrow a with ba nonzero, if any."""
        s = self.arrow(b).source
        for a in self.in_arrows(s):
            if not self.is_relation(b, a.name):
                return a.name
        return None

    def relation_predecessor(self, b: str) -> str | None:
        """The arrow a with ba in I, if any."""
        for b2, a in self.relations:
            if b2 == b:
                return a
        return None

    def path(self, arrows: Iterable[str]) -> Path | None:
        """Build the path applying ``arrows`` in order; None if zero."""
        arrows = tuple(arrows)
        if not arrows:
            raise ValueError("use Path.trivial for trivial paths")
        for prev, nxt in zip(arrows, arrows[1:]):
            if self.arrow(prev).target != self.arrow(nxt).source:
                raise ValueError(f"arrows {nxt} and {prev} are not composable")
            if self.is_relation(nxt, prev):
                return None
        return Path(self.arrow(arrows[0]).source, self.arrow(arrows[-1]).target, arrows)

    def maximal_path(self, first: str) -> Path:
        """The longest nonzero path whose first arrow is ``first``."""
        arrows = [first]
        while (b := self.successor(arrows[-1])) is not None:
            arrows.append(b)
        return Path(self.arrow(first).source, self.arrow(arrows[-1]).target, tuple(arrows))

    def nonzero_paths_from(self, x: str) -> list[Path]:
        """Basis of the indecomposable projective P(x): all nonzero paths starting at x."""
        out = [Path.trivial(x)]
        for a in self.out_arrows(x):
            full = self.maximal_path(a.name)
            for k in range(1, len(full) + 1):
                out.append(Path(x, self.arrow(full.arrows[k - 1]).target, full.arrows[:k]))
        return out

    def token_rank(self) -> dict[str, int]:
        """Total order on tokens: vertices first, then arrows, each in file order."""
        tokens = list(self.vertices) + [a.name for a in self.arrows]
        return {t: i for i, t in enumerate(tokens)}

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
            "relations": [list(r) for r in sorted(self.relations)],
        }

    def serialize(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def compose_modulo_I(p: GentlePresentation, left: Path | None, right: Path | None) -> Path | None:
    """The product ``left·right`` (apply ``right`` first); None is the zero path."""
    if left is None or right is None:
        return None
    if right.target != left.source:
        raise ValueError(f"cannot compose {left} after {right}: endpoints differ")
    if right.is_trivial:
        return left
    if left.is_trivial:
        return right
    if p.is_relation(left.arrows[0], right.arrows[-1]):
        return None
    return Path(right.source, left.target, right.arrows + left.arrows)


def check_gentle(vertices, arrows, relations) -> list[Violation]:
    out: list[Violation] = []
    by_name = {a.name: a for a in arrows}
    for x in vertices:
        n_out = sum(a.source == x for a in arrows)
        n_in = sum(a.target == x for a in arrows)
        if n_out > 2:
            out.append(Violation(1, f"vertex {x}", f"{n_out} arrows start here"))
        if n_in > 2:
            out.append(Violation(1, f"vertex {x}", f"{n_in} arrows end here"))
    for b, a in relations:
        if by_name[a].target != by_name[b].source:
            out.append(Violation(4, f"relation {b}{a}", "relation pair is not composable"))
    for a in arrows:
        after = [b for b in arrows if b.source == a.target]
        zero = [b for b in after if (b.name, a.name) in relations]
        nonzero = [b for b in after if (b.name, a.name) not in relations]
        if len(zero) > 1:
            out.append(Violation(2, f"arrow {a.name}", "two arrows b with ba in I"))
        if len(nonzero) > 1:
            out.append(Violation(2, f"arrow {a.name}", "two arrows b with ba not in I"))
        before = [c for c in arrows if c.target == a.source]
        zero = [c for c in before if (a.name, c.name) in relations]
        nonzero = [c for c in before if (a.name, c.name) not in relations]
        if len(zero) > 1:
            out.append(Violation(3, f"arrow {a.name}", "two arrows c with ac in I"))
        if len(nonzero) > 1:
            out.append(Violation(3, f"arrow {a.name}", "two arrows c with ac not in I"))
    if not out:
        cycle = _relation_free_cycle(arrows, relations)
        if cycle:
            out.append(Violation(4, f"cycle {' '.join(reversed(cycle))}",
                                 "oriented cycle without relations: algebra is infinite-dimensional"))
    return out


def _relation_free_cycle(arrows, relations) -> list[str] | None:
    # Under clauses (1)-(3) each arrow has at most one nonzero continuation,
    # so following continuations either stops or returns to a repeated arrow.
    succ = {}
    for a in arrows:
        for b in arrows:
            if b.source == a.target and (b.name, a.name) not in relations:
                succ[a.name] = b.name
    for a in arrows:
        seen = [a.name]
        while (nxt := succ.get(seen[-1])) is not None:
            if nxt in seen:
                return seen[seen.index(nxt):]
            seen.append(nxt)
    return None


def presentation_from_dict(data: dict) -> GentlePresentation:
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        arrows = tuple(Arrow(str(a["name"]), str(a["from"]), str(a["to"])) for a in data["arrows"])
        relations = frozenset((str(b), str(a)) for b, a in data.get("relations", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise PresentationError(f"malformed presentation: {exc}") from exc
    if len(set(vertices)) != len(vertices):
        raise PresentationError("duplicate vertex")
    names = [a.name for a in arrows]
    if len(set(names)) != len(names):
        raise PresentationError("duplicate arrow name")
    clash = set(names) & set(vertices)
    if clash:
        raise PresentationError(f"token used as both vertex and arrow: {sorted(clash)}")
    for a in arrows:
        if a.source not in vertices or a.target not in vertices:
            raise PresentationError(f"arrow {a.name} references an unknown vertex")
    for b, a in relations:
        if b not in names or a not in names:
            raise PresentationError(f"relation {b}{a} references an unknown arrow")
    violations = check_gentle(vertices, arrows, relations)
    if violations:
        raise GentlenessError(violations)
    return GentlePresentation(vertices, arrows, relations)


def load_presentation(text: str) -> GentlePresentation:
    """Parse and validate a JSON presentation."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise PresentationError("presentation must be a JSON object")
    return presentation_from_dict(data)


def load_fixture(name: str) -> GentlePresentation:
    """Load a bundled fixture such as ``"a2"`` or ``"paper-example"``."""
    text = resources.files("gentle_ext.fixtures").joinpath(f"{name}.json").read_text("utf-8")
    return load_presentation(text)
