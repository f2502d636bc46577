"""Cohomology of string and band complexes by local rules.

Every slot of a string complex sits in one of a handful of local shapes, and
each shape contributes a string (or band) module to the cohomology:

* a maximal alternating run of letters gives one two-term piece;
* an end slot in the higher degree of its letter gives a cokernel;
* an end slot in the lower degree gives a kernel;
* an isolated letter between two relation crossings gives its interior.

Rules for the mirror-image shapes are obtained by inverting the homotopy
string and reusing the same code.  A truncated end behaves as if the next
letter existed with the same orientation, so no end rule fires there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gentle_ext.homotopy import GradedHomotopyString, HomotopyLetter
from gentle_ext.presentation import GentlePresentation
from gentle_ext.strings import BandWord, Letter, StringWord, Walk, Word, canonical_form

RULES = ("MaxAlternating", "Combined", "Cokernel", "Kernel", "NontrivialLetter")


@dataclass(frozen=True)
class CohomologySummand:
    degree: int
    word: Word
    band_parameter: str | None = None

    def __str__(self) -> str:
        kind = "B" if self.word.is_band else "M"
        return f"H^{self.degree} ⊇ {kind}({self.word})"


@dataclass(frozen=True)
class RuleApplication:
    """``segment`` is the 1-based letter range (i, j) of σ the rule looked at."""

    rule: str
    segment: tuple[int, int]
    dual: bool
    output: CohomologySummand | None


@dataclass
class CohomologyResult:
    summands: dict[int, list[CohomologySummand]]
    trace: list[RuleApplication]
    floor: int | None = None
    unreliable: set[int] = field(default_factory=set)

    def words(self, d: int) -> list[Word]:
        return [s.word for s in self.summands.get(d, [])]

    def reliable_summands(self) -> dict[int, list[CohomologySummand]]:
        return {d: s for d, s in self.summands.items() if d not in self.unreliable}


def _other_arm(p: GentlePresentation, x: str, used: str | None) -> tuple[str, ...]:
    """Arrows of the maximal path leaving x by the arrow other than ``used``."""
    for a in p.out_arrows(x):
        if a.name != used:
            return p.maximal_path(a.name).arrows
    return ()


def _word(p: GentlePresentation, start: str, letters) -> StringWord:
    letters = tuple(letters)
    walk = Walk(letters[0].source(p) if letters else start, letters)
    return canonical_form(p, StringWord(walk))


class _Scanner:
    """Rule dispatch on a finite homotopy string with optionally open ends."""

    def __init__(self, p: GentlePresentation, sigma: GradedHomotopyString, left_open: bool, right_open: bool):
        self.p = p
        self.sigma = sigma
        self.letters = sigma.letters
        self.slots = sigma.slots()
        self.degs = sigma.degrees()
        self.left_open = left_open
        self.right_open = right_open
        self.n = len(self.letters)

    def runs(self) -> list[tuple[int, int]]:
        """Maximal alternating runs as 1-based (i, j)."""
        out, i = [], 1
        while i <= self.n:
            j = i
            while j < self.n and self.letters[j].inverse != self.letters[j - 1].inverse:
                j += 1
            out.append((i, j))
            i = j + 1
        return out

    def letter(self, i: int) -> HomotopyLetter:
        return self.letters[i - 1]

    def run_rule(self, i: int, j: int) -> RuleApplication:
        p, first, last = self.p, self.letter(i), self.letter(j)
        combined_right = i == 1 and not first.inverse and not self.right_open
        combined_left = j == self.n and last.inverse and not self.left_open
        letters: list[Letter] = []
        if combined_right:
            arm = _other_arm(p, self.slots[0], first.walk_letters()[0].arrow)
            letters.extend(Letter(a, True) for a in reversed(arm))
            letters.extend(first.walk_letters())
        else:
            letters.extend(first.walk_letters()[1:])
        for k in range(i + 1, j):
            letters.extend(self.letter(k).walk_letters())
        if combined_left:
            letters.extend(last.walk_letters())
            arm = _other_arm(p, self.slots[self.n], last.walk_letters()[-1].arrow)
            letters.extend(Letter(a) for a in arm)
        else:
            letters.extend(last.walk_letters()[:-1])
        start = self.slots[i - 1] if combined_right else first.walk_letters()[0].target(p)
        d = max(self.degs[i - 1], self.degs[i])
        rule = "Combined" if combined_left or combined_right else "MaxAlternating"
        dual = combined_left and not combined_right
        return RuleApplication(rule, (i, j), dual, CohomologySummand(d, _word(p, start, letters)))

    def primal_rules(self, isolated: set[int]) -> list[RuleApplication]:
        """Cokernel at the right end, kernel at the left end, interiors of direct isolated letters."""
        p, out = self.p, []
        if self.n and not self.right_open and 1 in isolated and not self.letter(1).inverse:
            a = self.letter(1).walk_letters()
            arm = _other_arm(p, self.slots[0], a[0].arrow)
            letters = [Letter(x, True) for x in reversed(arm)] + list(a[:-1])
            out.append(RuleApplication("Cokernel", (1, 1), False,
                                       CohomologySummand(self.degs[0], _word(p, self.slots[0], letters))))
        if self.n and not self.left_open and not self.letter(self.n).inverse:
            b_last = self.letter(self.n).walk_letters()[-1].arrow
            c = p.relation_successor(b_last)
            summand = None
            if c is not None:
                arm = p.maximal_path(c).arrows
                summand = CohomologySummand(self.degs[self.n],
                                            _word(p, p.arrow(c).target, [Letter(x) for x in arm[1:]]))
            out.append(RuleApplication("Kernel", (self.n, self.n), False, summand))
        for i in sorted(isolated):
            x = self.letter(i)
            if x.inverse or (i == 1 and not self.right_open):
                continue
            a = x.walk_letters()
            summand = None
            if len(a) > 1:
                summand = CohomologySummand(self.degs[i - 1], _word(p, a[0].target(p), a[1:-1]))
            out.append(RuleApplication("NontrivialLetter", (i, i), False, summand))
        return out


def _scan(p: GentlePresentation, sigma: GradedHomotopyString, left_open: bool, right_open: bool) -> list[RuleApplication]:
    scanner = _Scanner(p, sigma, left_open, right_open)
    trace, isolated = [], set()
    for i, j in scanner.runs():
        if i < j:
            trace.append(scanner.run_rule(i, j))
        else:
            isolated.add(i)
    trace.extend(scanner.primal_rules(isolated))
    mirror = _Scanner(p, sigma.inverse(), right_open, left_open)
    n = scanner.n
    for app in mirror.primal_rules({n + 1 - i for i in isolated}):
        i, j = app.segment
        trace.append(RuleApplication(app.rule, (n + 1 - j, n + 1 - i), True, app.output))
    return trace


def _stalk(p: GentlePresentation, sigma: GradedHomotopyString) -> list[RuleApplication]:
    x = sigma.start
    outs = [a.name for a in p.out_arrows(x)]
    letters = []
    if outs:
        letters.extend(Letter(a, True) for a in reversed(p.maximal_path(outs[0]).arrows))
    if len(outs) > 1:
        letters.extend(Letter(a) for a in p.maximal_path(outs[1]).arrows)
    summand = CohomologySummand(sigma.base_degree, _word(p, x, letters))
    return [RuleApplication("Cokernel", (0, 0), False, summand)]


def _band(p: GentlePresentation, sigma: GradedHomotopyString, band_parameter: str | None) -> list[RuleApplication]:
    letters, n = sigma.letters, len(sigma.letters)
    cut = next((k for k in range(n) if letters[k].inverse == letters[(k + 1) % n].inverse), None)
    if cut is None:
        walk = sigma.walk()
        word = canonical_form(p, BandWord(walk))
        summand = CohomologySummand(sigma.max_degree, word, band_parameter)
        return [RuleApplication("MaxAlternating", (1, n), False, summand)]
    # Cut the band between two same-direction letters and scan with both ends open.
    shift = cut + 1
    rotated = letters[shift:] + letters[:shift]
    linear = GradedHomotopyString(rotated, sigma.degrees()[shift], False)
    out = []
    for app in _scan(p, linear, True, True):
        i, j = app.segment
        seg = ((i - 1 + shift) % n + 1, (j - 1 + shift) % n + 1)
        out.append(RuleApplication(app.rule, seg, app.dual, app.output))
    return out


def cohomology(p: GentlePresentation, sigma: GradedHomotopyString, band_parameter: str | None = "λ") -> CohomologyResult:
    """All cohomology summands of the string or band complex of σ, with the rule trace."""
    if sigma.is_band:
        trace = _band(p, sigma, band_parameter)
    elif not sigma.letters:
        trace = _stalk(p, sigma)
    else:
        trace = _scan(p, sigma, sigma.truncated_left, sigma.truncated_right)
    summands: dict[int, list[CohomologySummand]] = {}
    for app in trace:
        if app.output is not None:
            summands.setdefault(app.output.degree, []).append(app.output)
    for d in summands:
        summands[d].sort(key=lambda s: (s.word.is_band, len(s.word.walk), str(s.word)))
    floor, unreliable = None, set()
    if sigma.truncated_left or sigma.truncated_right:
        degs = sigma.degrees()
        ends = ([degs[-1]] if sigma.truncated_left else []) + ([degs[0]] if sigma.truncated_right else [])
        floor = min(ends)
        unreliable = {d for d in summands if d <= floor + 1}
    return CohomologyResult(dict(sorted(summands.items())), trace, floor, unreliable)


def apply_rule(p: GentlePresentation, sigma: GradedHomotopyString, rule: str, segment: tuple[int, int],
               dual: bool | None = None) -> RuleApplication:
    """The single rule application of the given shape, or ValueError if σ has no such shape."""
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}")
    for app in cohomology(p, sigma).trace:
        if app.rule == rule and app.segment == tuple(segment) and (dual is None or app.dual == dual):
            return app
    raise ValueError(f"shape mismatch: no {rule} application on letters {segment}")


def summand_dimension_vector(p: GentlePresentation, s: CohomologySummand) -> dict[str, int]:
    from gentle_ext.strings import dimension_vector
    return dimension_vector(p, s.word)
