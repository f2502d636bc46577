"""Minimal projective resolutions π(w) of string and band modules."""

from __future__ import annotations

from dataclasses import dataclass

from gentle_ext.homotopy import (
    EventuallyPeriodicPath,
    GradedHomotopyString,
    antipath,
    band_letter_rotation,
    decompose_homotopy_letters,
    grade,
)
from gentle_ext.presentation import GentlePresentation
from gentle_ext.strings import BandWord, Letter, StringWord, Walk, Word, letters_compatible


@dataclass(frozen=True)
class ResolutionParts:
    """π(w) together with the pieces it was assembled from.

    ``module_range`` gives the walk-slot indices (within ``core.walk()``) of
    the first and last slot of the module part.  ``dir_arrow``/``inv_arrow``
    are the seed arrows b and a of the antipath parts (a as an arrow, used
    inversely).
    """

    core: GradedHomotopyString
    case_tag: int
    module_part: Walk
    module_range: tuple[int, int]
    dir_part: EventuallyPeriodicPath | None
    inv_part: EventuallyPeriodicPath | None
    dir_arrow: str | None
    inv_arrow: str | None
    removed_prefix: Walk | None
    removed_suffix: Walk | None


def boundary_arrows(p: GentlePresentation, w: Walk) -> tuple[str | None, str | None]:
    """Arrows b, a with b w ā a string (each looked up independently).

    For a trivial walk with two outgoing arrows, b is the first in file order
    and a the other one.  With a single outgoing arrow only b is returned.
    """
    if w.is_trivial:
        outs = [x.name for x in p.out_arrows(w.start)]
        if not outs:
            return None, None
        return outs[0], (outs[1] if len(outs) > 1 else None)
    b = None
    for x in p.out_arrows(w.end(p)):
        if letters_compatible(p, w.letters[-1], Letter(x.name)):
            b = x.name
    a = None
    for x in p.out_arrows(w.start):
        if letters_compatible(p, Letter(x.name, True), w.letters[0]):
            a = x.name
    return b, a


def _split_runs(w: Walk) -> tuple[int, int]:
    """Lengths of the leftmost direct run and the rightmost inverse run."""
    n = len(w)
    suffix = 0
    while suffix < n and not w.letters[n - 1 - suffix].inverse:
        suffix += 1
    prefix = 0
    while prefix < n and w.letters[prefix].inverse:
        prefix += 1
    return suffix, prefix


def project(p: GentlePresentation, w: Word, min_degree: int = -2) -> ResolutionParts:
    """The homotopy string (or band) of the minimal projective resolution of M(w)."""
    if min_degree > -1:
        raise ValueError("min_degree must be at most -1")
    if isinstance(w, BandWord):
        return _project_band(p, w.walk)
    walk = w.walk if isinstance(w, StringWord) else w
    b, a = boundary_arrows(p, walk)
    suffix_len, prefix_len = _split_runs(walk)
    n = len(walk)
    lo, hi = 0, n
    removed_prefix = removed_suffix = None
    if b is None and suffix_len:
        hi = n - suffix_len
        removed_suffix = Walk(walk.letters[hi].source(p), walk.letters[hi:])
    if a is None and prefix_len and lo < hi:
        lo = prefix_len
        removed_prefix = Walk(walk.start, walk.letters[:lo])
    if lo >= hi:
        module = Walk(walk.letters[lo].source(p) if lo < n else walk.end(p))
    else:
        module = Walk(walk.letters[lo].source(p), walk.letters[lo:hi])
    case_tag = {(True, True): 1, (False, True): 2, (True, False): 3, (False, False): 4}[(b is not None, a is not None)]

    depth = -min_degree + 2
    dir_part = antipath(p, Letter(b)) if b else None
    inv_part = antipath(p, Letter(a, True)) if a else None
    dir_letters = tuple(Letter(x) for x in _materialize(dir_part, depth))
    inv_letters = tuple(Letter(x, True) for x in reversed(_materialize(inv_part, depth)))
    letters = inv_letters + module.letters + dir_letters
    start = inv_letters[0].source(p) if inv_letters else module.start
    full = Walk(start, letters)
    hs = decompose_homotopy_letters(p, full)
    core = grade(hs, 0, start=start, p=p)
    core = core.shift(core.max_degree)
    module_range = (len(inv_letters), len(inv_letters) + len(module))
    core, cut_right = _truncate(core, min_degree)
    module_range = (module_range[0] - cut_right, module_range[1] - cut_right)
    return ResolutionParts(core, case_tag, module, module_range, dir_part, inv_part, b, a,
                           removed_prefix, removed_suffix)


def _materialize(part: EventuallyPeriodicPath | None, depth: int) -> tuple[str, ...]:
    if part is None:
        return ()
    return part.arrows()[:depth] if part.is_finite else part.arrows(depth)


def _truncate(core: GradedHomotopyString, min_degree: int) -> tuple[GradedHomotopyString, int]:
    """Drop end slots below ``min_degree``; also returns the walk letters cut on the right."""
    degs, slots = core.degrees(), core.slots()
    i, j = 0, len(core.letters)
    while degs[j] < min_degree:
        j -= 1
    while degs[i] < min_degree:
        i += 1
    cut_walk = sum(x.length for x in core.letters[:i])
    out = GradedHomotopyString(core.letters[i:j], degs[i], False, slots[i],
                               j < len(core.letters), i > 0)
    return out, cut_walk


def _project_band(p: GentlePresentation, walk: Walk) -> ResolutionParts:
    rotated = band_letter_rotation(p, walk)
    hs = decompose_homotopy_letters(p, rotated, cyclic=True)
    base = 0 if not hs[0].inverse else -1
    core = grade(hs, base, is_band=True, p=p)
    return ResolutionParts(core, 5, rotated, (0, len(rotated)), None, None, None, None, None, None)
