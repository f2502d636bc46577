"""Standard basis of Hom(Q_π(v), Σ Q_π(w)) and its classification into extensions.

Complexes are handled through their unfolded homotopy strings ("lines").
Slot i of a line is the i-th projective of the homotopy string, slot 0
first; a band is unfolded periodically so every integer is a slot.  A
component (i, j, f) of a map X → Y is the map P(x_i) → P(y_j) given by
the path f from y_j to x_i.

Chain-map conditions are checked on monomials: every composite that
appears must appear exactly twice, so that a choice of signs cancels it.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import lcm

from gentle_ext.extensions import ExtClass, ext_basis
from gentle_ext.homotopy import GradedHomotopyString
from gentle_ext.presentation import GentlePresentation, Path, compose_modulo_I
from gentle_ext.resolution import ResolutionParts, project
from gentle_ext.strings import Letter, Walk, Word

GRAPH = "GraphMap"
SINGLE = "SingletonSingle"
DOUBLE = "SingletonDouble"
QUASI = "QuasiGraphMap"
KINDS = (GRAPH, SINGLE, DOUBLE, QUASI)


class UnclassifiableError(RuntimeError):
    """A basis element matched no arrow or overlap class."""


class _Line:
    def __init__(self, sigma: GradedHomotopyString):
        self.sigma = sigma
        self.letters = sigma.letters
        self.n = len(sigma.letters)
        self.band = sigma.is_band
        self._slots = sigma.slots()
        self._degs = sigma.degrees()
        cum = [0]
        for x in self.letters:
            cum.append(cum[-1] + x.length)
        self._cum = cum
        self.open_low = sigma.truncated_right
        self.open_high = sigma.truncated_left

    def slot_range(self) -> range:
        return range(self.n) if self.band else range(self.n + 1)

    def has_slot(self, i: int) -> bool:
        return self.band or 0 <= i <= self.n

    def vertex(self, i: int) -> str:
        return self._slots[i % self.n] if self.band else self._slots[i]

    def degree(self, i: int) -> int:
        if self.band:
            q, r = divmod(i, self.n)
            return self._degs[r]
        return self._degs[i]

    def letter(self, k: int):
        """The letter between slots k-1 and k, or None."""
        if self.band:
            return self.letters[(k - 1) % self.n]
        return self.letters[k - 1] if 1 <= k <= self.n else None

    def walk_slot(self, i: int) -> int:
        if self.band:
            q, r = divmod(i, self.n)
            return q * self._cum[-1] + self._cum[r]
        return self._cum[i]

    def is_open(self, i: int, direction: int) -> bool:
        """Whether the line continues past slot i beyond the stored letters."""
        if self.band:
            return False
        return (direction > 0 and i == self.n and self.open_high) or (direction < 0 and i == 0 and self.open_low)

    def edges(self, i: int):
        """(other slot, path, outgoing) for the letters at slot i; outgoing means d: P(x_i) → P(other)."""
        for k, other in ((i, i - 1), (i + 1, i + 1)):
            x = self.letter(k)
            if x is None:
                continue
            # An inverse letter raises the degree from slot k-1 to slot k.
            low = k - 1 if x.inverse else k
            yield other, x.path, low == i

    def outgoing(self, i: int):
        return [(o, d) for o, d, out in self.edges(i) if out]

    def incoming(self, i: int):
        return [(o, d) for o, d, out in self.edges(i) if not out]

    def reduce(self, i: int) -> int:
        return i % self.n if self.band else i


@dataclass(frozen=True)
class Alignment:
    """ρ: X slots lo..hi matched with Y slots j_lo + eps·(i - lo).

    ``open_low``/``open_high`` mark sides where ρ runs on forever.
    """

    lo: int
    hi: int
    j_lo: int
    eps: int
    open_low: bool = False
    open_high: bool = False

    def y(self, i: int) -> int:
        return self.j_lo + self.eps * (i - self.lo)

    def pairs(self):
        return [(i, self.y(i)) for i in range(self.lo, self.hi + 1)]


@dataclass(frozen=True)
class HomBasisElement:
    """One standard basis element.

    For graph maps and singleton maps ``components`` are (σ slot, Στ slot,
    path) with σ = π(v).  For a quasi-graph map they describe the graph map
    π(w) → π(v) obtained by reading the diagram upside down, as (τ slot,
    σ slot, path).  ``sides`` records the σ and τ directions of the σ_R and
    τ_R letters of a singleton single.
    """

    kind: str
    components: tuple[tuple[int, int, Path], ...]
    support_degrees: frozenset[int]
    alignment: Alignment | None = None
    sides: tuple[int, int] | None = None

    def describe(self) -> str:
        comps = ", ".join(f"{i}→{j}:{f}" for i, j, f in self.components[:6])
        if len(self.components) > 6:
            comps += ", …"
        degs = ",".join(str(d) for d in sorted(self.support_degrees))
        extra = ""
        if self.alignment is not None:
            a = self.alignment
            extra = f" ρ=[{a.lo},{a.hi}]→{a.j_lo}{'+' if a.eps > 0 else '-'}"
            extra += "∞" * (a.open_low or a.open_high)
        return f"{self.kind} in degrees {{{degs}}}{extra}: {comps}"

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "support_degrees": sorted(self.support_degrees),
            "components": [[i, j, list(f.arrows) or [f.source]] for i, j, f in self.components],
        }
        if self.alignment is not None:
            a = self.alignment
            out["alignment"] = {"lo": a.lo, "hi": a.hi, "j_lo": a.j_lo, "orientation": a.eps,
                                "open": [a.open_low, a.open_high]}
        return out


def _depth(p: GentlePresentation) -> int:
    # Finite antipaths are at most |Q1| long, so deeper truncation ends stay aligned.
    return len(p.arrows) + 6


@lru_cache(maxsize=4096)
def _resolution(p: GentlePresentation, w: Word, min_degree: int) -> ResolutionParts:
    return project(p, w, min_degree)


def _paths(p: GentlePresentation, src: str, dst: str, nontrivial: bool) -> list[Path]:
    return [q for q in p.nonzero_paths_from(src) if q.target == dst and not (nontrivial and q.is_trivial)]


def _is_chain_map(p: GentlePresentation, X: _Line, Y: _Line, comps: dict[tuple[int, int], Path]) -> bool:
    terms: dict[tuple[int, int], list[Path]] = defaultdict(list)
    for (i, j), f in comps.items():
        for hi, d in Y.outgoing(j):
            c = compose_modulo_I(p, f, d)
            if c is not None:
                terms[(i, hi)].append(c)
        for lo, d in X.incoming(i):
            c = compose_modulo_I(p, d, f)
            if c is not None:
                terms[(lo, j)].append(c)
    return all(all(k % 2 == 0 for k in Counter(ts).values()) for ts in terms.values())


def _y_letter(Y: _Line, j: int, eps: int, up: bool):
    """The Y letter met from slot j moving along X upwards (``up``) or downwards, as seen from X."""
    if eps > 0:
        return Y.letter(j + 1) if up else Y.letter(j)
    x = Y.letter(j) if up else Y.letter(j + 1)
    return None if x is None else x.inverted()


def _extend(X: _Line, Y: _Line, i: int, j: int, eps: int) -> Alignment:
    cap = 4 * (X.n + 1) * (Y.n + 1) if X.band and Y.band else None
    bounds = []
    for up in (True, False):
        step = 1 if up else -1
        t, open_side = 0, False
        while True:
            xi, yj = i + step * t, j + step * eps * t
            if cap is not None and t > cap:
                open_side = True
                break
            x_open, y_open = X.is_open(xi, step), Y.is_open(yj, step * eps)
            if x_open and y_open:
                open_side = True
                break
            if x_open or y_open:
                # A truncated line continues downwards in degree; the other must too to stay aligned.
                line, slot, d = (Y, yj, step * eps) if x_open else (X, xi, step)
                if line.has_slot(slot + d) and line.letter(max(slot, slot + d)) is not None \
                        and line.degree(slot + d) < line.degree(slot):
                    raise RuntimeError("truncation too shallow for an antipath alignment")
                break
            xl = X.letter(xi + 1) if up else X.letter(xi)
            yl = _y_letter(Y, yj, eps, up)
            if xl is None or yl is None or xl != yl:
                break
            t += 1
        bounds.append((t, open_side))
    (t_hi, open_hi), (t_lo, open_lo) = bounds
    lo = i - t_lo
    return Alignment(lo, i + t_hi, j - eps * t_lo, eps, open_lo, open_hi)


def _alignment_key(X: _Line, Y: _Line, a: Alignment) -> tuple:
    if a.open_low and a.open_high and X.band and Y.band:
        period = lcm(X.n, Y.n)
        anchor = min((X.reduce(a.lo + t), Y.reduce(a.j_lo + a.eps * t)) for t in range(period))
        return anchor + (a.eps, None)
    return (X.reduce(a.lo), Y.reduce(a.j_lo), a.eps, a.hi - a.lo, a.open_low, a.open_high)


def alignments(X: _Line, Y: _Line) -> list[Alignment]:
    """Maximal common homotopy substrings of X and Y in the same degrees, in either orientation of Y."""
    seen, out = set(), []
    for i in X.slot_range():
        for j in Y.slot_range():
            if X.vertex(i) != Y.vertex(j) or X.degree(i) != Y.degree(j):
                continue
            for eps in (1, -1):
                a = _extend(X, Y, i, j, eps)
                key = _alignment_key(X, Y, a)
                if key not in seen:
                    seen.add(key)
                    out.append(a)
    return out


def _component_key(X: _Line, Y: _Line, comps: dict) -> frozenset:
    return frozenset((X.reduce(i), Y.reduce(j), f) for (i, j), f in comps.items())


def _graph_maps(p: GentlePresentation, X: _Line, Y: _Line, skip=None):
    """Graph maps X → Y: (alignment, components).  ``skip`` filters alignments."""
    out, seen = [], set()
    for a in alignments(X, Y):
        if a.open_low and a.open_high and X.band and Y.band:
            continue
        if skip is not None and skip(a):
            continue
        base = {(i, j): Path.trivial(X.vertex(i)) for i, j in a.pairs()}
        options = []
        for side in (-1, 1):
            if (a.open_low if side < 0 else a.open_high):
                options.append([None])
                continue
            xi = (a.lo if side < 0 else a.hi) + side
            yj = a.y(a.lo if side < 0 else a.hi) + side * a.eps
            opts = [None]
            if X.has_slot(xi) and Y.has_slot(yj) and X.degree(xi) == Y.degree(yj) \
                    and X.letter(max(xi, xi - side)) is not None and Y.letter(max(yj, yj - side * a.eps)) is not None:
                opts += [(xi, yj, f) for f in _paths(p, Y.vertex(yj), X.vertex(xi), False)]
            options.append(opts)
        found = None
        for choice in sorted(product(*options), key=lambda c: sum(x is not None for x in c)):
            comps = dict(base)
            for c in choice:
                if c is not None:
                    comps[(c[0], c[1])] = c[2]
            if _is_chain_map(p, X, Y, comps):
                found = comps
                break
        if found is None:
            continue
        key = _component_key(X, Y, found)
        if key in seen:
            continue
        seen.add(key)
        out.append((a, found))
    return out


def _ends_together(X: _Line, Y: _Line, a: Alignment) -> bool:
    """ρ reaches a common end of X and Y on some side."""
    for side, i, is_open in ((-1, a.lo, a.open_low), (1, a.hi, a.open_high)):
        if is_open:
            continue
        j = a.y(i)
        x_end = X.letter(i + 1 if side > 0 else i) is None
        y_end = _y_letter(Y, j, a.eps, side > 0) is None
        if x_end and y_end:
            return True
    return False


def _contains_at(letter_path: Path, f: Path, at_target: bool) -> bool:
    """``letter_path`` and f overlap as subletters anchored at the shared vertex."""
    la, fa = letter_path.arrows, f.arrows
    if at_target:
        return la[-len(fa):] == fa or fa[-len(la):] == la
    return la[:len(fa)] == fa or fa[:len(la)] == la


def _singleton_sides(X: _Line, Y: _Line, i: int, j: int, f: Path):
    """Each (σ side, τ side) of σ_R and τ_R when f at (i, j) has the singleton single shape."""
    def at(line, slot, side):
        k = slot + 1 if side > 0 else slot
        x = line.letter(k)
        if x is None:
            return None
        low = k - 1 if x.inverse else k
        return x.path, low == slot

    for ds, dt in product((-1, 1), repeat=2):
        s_r, s_l = at(X, i, ds), at(X, i, -ds)
        t_r, t_l = at(Y, j, dt), at(Y, j, -dt)
        ok = True
        if s_r is not None:
            path, out = s_r
            ok &= out and len(path) > len(f) and path.arrows[-len(f.arrows):] == f.arrows
        if t_r is not None:
            path, out = t_r
            ok &= (not out) and len(path) > len(f) and path.arrows[:len(f.arrows)] == f.arrows
        if s_l is not None and s_l[1]:
            ok &= not _contains_at(s_l[0], f, True)
        if t_l is not None and not t_l[1]:
            ok &= not _contains_at(t_l[0], f, False)
        if ok:
            yield ds, dt


def _singleton_side(X: _Line, Y: _Line, i: int, j: int, f: Path):
    return next(_singleton_sides(X, Y, i, j, f), None)


def _at_cut(line: _Line, i: int) -> bool:
    return line.is_open(i, 1) or line.is_open(i, -1)


def _singleton_singles(p: GentlePresentation, X: _Line, Y: _Line):
    out = []
    for i in X.slot_range():
        for j in Y.slot_range():
            if X.degree(i) != Y.degree(j) or _at_cut(X, i) or _at_cut(Y, j):
                continue
            for f in _paths(p, Y.vertex(j), X.vertex(i), True):
                if not _is_chain_map(p, X, Y, {(i, j): f}):
                    continue
                sides = _singleton_side(X, Y, i, j, f)
                if sides is not None:
                    out.append((i, j, f, sides))
    return out


def _singleton_doubles(p: GentlePresentation, X: _Line, Y: _Line):
    out = []
    for k in (range(1, X.n + 1)):
        xl = X.letter(k)
        x_low, x_high = (k - 1, k) if xl.inverse else (k, k - 1)
        for l in range(1, Y.n + 1):
            yl = Y.letter(l)
            y_low, y_high = (l - 1, l) if yl.inverse else (l, l - 1)
            if X.degree(x_low) != Y.degree(y_low):
                continue
            sa, ta = xl.path.arrows, yl.path.arrows
            for cut in range(1, len(sa)):
                mid, fl = sa[:cut], sa[cut:]
                if len(ta) <= len(mid) or ta[-len(mid):] != mid:
                    continue
                fr = ta[:-len(mid)]
                f_l = Path(Y.vertex(y_low), X.vertex(x_low), fl)
                f_r = Path(Y.vertex(y_high), X.vertex(x_high), fr)
                if compose_modulo_I(p, f_l, yl.path) is None:
                    continue
                comps = {(x_low, y_low): f_l, (x_high, y_high): f_r}
                if _is_chain_map(p, X, Y, comps):
                    out.append(comps)
    return out


def _lines(p: GentlePresentation, v: Word, w: Word, shift: int):
    depth = _depth(p)
    sv = _resolution(p, v, -depth)
    sw = _resolution(p, w, -depth + shift)
    return _Line(sv.core), _Line(sw.core.shift(shift)), sv, sw


def hom_basis(p: GentlePresentation, v: Word, w: Word) -> list[HomBasisElement]:
    """The standard basis of Hom(Q_π(v), Σ Q_π(w))."""
    X, Y, _, _ = _lines(p, v, w, 1)
    out = []
    for a, comps in _graph_maps(p, X, Y):
        degs = frozenset(X.degree(i) for i, _ in comps)
        out.append(HomBasisElement(GRAPH, _sorted(comps), degs, a))
    for i, j, f, sides in _singleton_singles(p, X, Y):
        out.append(HomBasisElement(SINGLE, ((i, j, f),), frozenset([X.degree(i)]), None, sides))
    for comps in _singleton_doubles(p, X, Y):
        out.append(HomBasisElement(DOUBLE, _sorted(comps), frozenset(X.degree(i) for i, _ in comps)))
    T, S, _, _ = _lines(p, w, v, 0)
    same_band = v.is_band and w.is_band

    def skip(a: Alignment) -> bool:
        return (a.open_low and a.open_high and same_band) or _ends_together(T, S, a)

    for a, comps in _graph_maps(p, T, S, skip):
        if (a.open_low or a.open_high):
            continue
        degs = frozenset(T.degree(i) for i, _ in a.pairs())
        out.append(HomBasisElement(QUASI, _sorted(comps), degs, a))
    return out


def _sorted(comps: dict) -> tuple:
    return tuple(sorted(((i, j, f) for (i, j), f in comps.items()), key=lambda c: (c[0], c[1], c[2].arrows)))


def _offset(parts: ResolutionParts) -> int:
    """Walk slot of the π walk sitting at slot 0 of the module's own walk."""
    removed = len(parts.removed_prefix) if parts.removed_prefix is not None else 0
    return parts.module_range[0] - removed


def _module_walk(word: Word, parts: ResolutionParts) -> Walk:
    return parts.module_part if word.is_band else word.walk


def _frame(p: GentlePresentation, base: Walk, band: bool, target: Walk) -> tuple[int, int]:
    """(a, ε) with slot k of ``target`` equal to slot a + εk of ``base``."""
    n = len(base)
    if not band:
        if target == base:
            return 0, 1
        if target == base.inverse(p):
            return n, -1
        raise ValueError("walk is not an orientation of the word")
    inv = base.inverse(p)
    for t in range(n):
        if base.rotate(p, t) == target:
            return t, 1
        if inv.rotate(p, t) == target:
            return n - t, -1
    raise ValueError("walk is not a rotation of the word")


class _Pairing:
    """Points (E_v, E_w) of module-walk slots, reduced modulo band periods."""

    def __init__(self, nv: int | None, nw: int | None):
        self.nv, self.nw = nv, nw

    def point(self, ev: int, ew: int) -> tuple[int, int]:
        return (ev % self.nv if self.nv else ev, ew % self.nw if self.nw else ew)

    def line(self, ev: int, ew: int, dv: int, dw: int, span: int) -> dict:
        """Points on the line mapped to their least distance |u| from (ev, ew)."""
        out = {}
        for u in sorted(range(-span, span + 1), key=abs):
            out.setdefault(self.point(ev + dv * u, ew + dw * u), abs(u))
        return out


def _overlap_matches(p, basis, v, w, vparts, wparts, points: set, orientation: int | None,
                     strict: bool = False):
    """Overlap classes whose aligned m lies on the given pairing of module slots."""
    ev_walk, ew_walk = _module_walk(v, vparts), _module_walk(w, wparts)
    pairing = _Pairing(len(ev_walk) if v.is_band else None, len(ew_walk) if w.is_band else None)
    out = []
    for cls in basis:
        if cls.kind != "overlap":
            continue
        o = cls.overlap
        av, sv_ = _frame(p, ev_walk, v.is_band, o.v_walk)
        aw, sw_ = _frame(p, ew_walk, w.is_band, o.w_walk)
        (vs, ve), (ws, _) = o.v_range, o.w_range
        length = ve - vs
        if orientation is None and length:
            continue
        if orientation is not None and sv_ * sw_ != orientation and (length or strict and o.v_walk.letters and o.w_walk.letters):
            continue
        pts = {pairing.point(av + sv_ * (vs + u), aw + sw_ * (ws + u)) for u in range(length + 1)}
        if pts <= points.keys() if isinstance(points, dict) else pts <= points:
            out.append((min(points[q] for q in pts), cls) if isinstance(points, dict) else cls)
    return out, pairing


def _arrow_matches(p, basis, arrow: str, v_inverted: bool | None, w_inverted: bool | None, v: Word, w: Word):
    out = []
    for cls in basis:
        if cls.kind != "arrow" or cls.arrow != arrow:
            continue
        _, vl, vstart, _, wl, wstart = cls.witness
        as_is_v = (vl, vstart) == (tuple(str(x) for x in v.walk.letters), v.walk.start)
        as_is_w = (wl, wstart) == (tuple(str(x) for x in w.walk.letters), w.walk.start)
        if v_inverted is not None and not v.walk.is_trivial and as_is_v == v_inverted:
            continue
        if w_inverted is not None and not w.walk.is_trivial and as_is_w == w_inverted:
            continue
        out.append(cls)
    return out


def _landing(walk: Walk, e: int, f: Path) -> set[int]:
    """End slots (0 or len) of ``walk`` reached from slot e by spelling f along direct letters."""
    out = set()
    for d in (1, -1):
        s = e
        for name in f.arrows:
            k = s if d > 0 else s - 1
            if not 0 <= k < len(walk) or walk.letters[k] != Letter(name, d < 0):
                break
            s += d
        else:
            if s in (0, len(walk)):
                out.add(s)
    return out


def _side(parts: ResolutionParts, line: _Line, slots) -> int:
    """-1 if some slot lies in the inverse antipath part, +1 for the direct part, 0 inside the module part."""
    lo, hi = parts.module_range
    for i in slots:
        ws = line.walk_slot(i)
        if ws < lo:
            return -1
        if ws > hi:
            return 1
    return 0


def _unique(found: list, f: HomBasisElement) -> ExtClass:
    if len(found) != 1:
        raise UnclassifiableError(f"{len(found)} candidate classes for {f.describe()}")
    return found[0]


def classify(p: GentlePresentation, f: HomBasisElement, v: Word, w: Word,
             basis: list[ExtClass] | None = None) -> ExtClass:
    """The arrow or overlap class of the extension Φ(f)."""
    if basis is None:
        basis = ext_basis(p, v, w)
    if f.kind == QUASI:
        T, S, wparts, vparts = _lines(p, w, v, 0)
        a = f.alignment
        i, j = a.lo, a.j_lo
        ev = S.walk_slot(j) - _offset(vparts)
        ew = T.walk_slot(i) - _offset(wparts)
        span = T.walk_slot(a.hi) - T.walk_slot(a.lo) + len(v.walk) + len(w.walk) + 2
        pairing = _Pairing(len(vparts.module_part) if v.is_band else None,
                           len(wparts.module_part) if w.is_band else None)
        found = {}
        # A trivial ρ fixes no orientation; the endpoint components decide, so try both.
        free = a.hi == a.lo and all(c[2].is_trivial for c in f.components)
        for eps in ((1, -1) if free else (a.eps,)):
            pts = pairing.line(ev, ew, eps, 1, span)
            for d, c in _overlap_matches(p, basis, v, w, vparts, wparts, pts, eps, strict=not free)[0]:
                found[c.witness] = min(d, found.get(c.witness, (d,))[0]), c
        # Periodic lines can meet several occurrences; the one nearest the anchor is the image.
        near = min((d for d, _ in found.values()), default=0)
        return _unique([c for d, c in found.values() if d == near], f)
    X, Y, vparts, wparts = _lines(p, v, w, 1)
    pairing = _Pairing(len(vparts.module_part) if v.is_band else None,
                       len(wparts.module_part) if w.is_band else None)
    if f.kind == GRAPH:
        slots = [c[0] for c in f.components if c[2].is_trivial]
        vside = _side(vparts, X, slots) if not v.is_band else 0
        if vside:
            arrow = vparts.dir_arrow if vside > 0 else vparts.inv_arrow
            wslots = [c[1] for c in f.components if c[2].is_trivial]
            wside = _side(wparts, Y, wslots) if not w.is_band else 0
            w_inv = None if not wside else wside > 0
            if w_inv is None and not w.is_band:
                ends = set().union(*(_landing(w.walk, Y.walk_slot(j) - _offset(wparts), Path.trivial(Y.vertex(j)))
                                     for j in wslots))
                w_inv = None if len(ends) != 1 else ends.pop() > 0
            found = _arrow_matches(p, basis, arrow, vside < 0, w_inv, v, w)
            return _unique(found, f)
        a = f.alignment
        if a.lo != a.hi:
            raise UnclassifiableError(f"graph map inside the module parts spans several slots: {f.describe()}")
        pt = pairing.point(X.walk_slot(a.lo) - _offset(vparts), Y.walk_slot(a.j_lo) - _offset(wparts))
        found, _ = _overlap_matches(p, basis, v, w, vparts, wparts, {pt}, None)
        return _unique(found, f)
    if f.kind == SINGLE:
        (i, j, path), = f.components
        ds, dt = f.sides
        k = i + 1 if ds > 0 else i
        if X.letter(k) is None:
            lk = i if ds > 0 else i + 1
            left = X.letter(lk)
            if left is None:
                raise UnclassifiableError(f"singleton single without σ_L or σ_R: {f.describe()}")
            arrows = left.path.arrows
            # σ_L runs into x inversely; its arrow at x is a_1.
            arrow = arrows[-1] if left.path.target == X.vertex(i) else arrows[0]
            # a_1 leaves v on the antipath side of x and enters w where f carries the top of P(y).
            vside = _side(vparts, X, [i])
            ends = _landing(w.walk, Y.walk_slot(j) - _offset(wparts), path)
            w_inv = None if len(ends) != 1 else ends.pop() > 0
            found = _arrow_matches(p, basis, arrow, None if not vside else vside < 0, w_inv, v, w)
            return _unique(found, f)
        n = len(path)
        found = []
        for ds, dt in _singleton_sides(X, Y, i, j, path):
            if X.letter(i + 1 if ds > 0 else i) is None:
                continue
            # σ_R spells f backwards from x while τ_R spells it forwards from y.
            ev = X.walk_slot(i) - _offset(vparts)
            ew = Y.walk_slot(j) - _offset(wparts)
            pts = {pairing.point(ev + ds * u, ew + dt * (n - u)) for u in range(n + 1)}
            found += _overlap_matches(p, basis, v, w, vparts, wparts, pts, -ds * dt)[0]
        return _unique(list({c.witness: c for c in found}.values()), f)
    raise UnclassifiableError(f"no extension for {f.kind}: {f.describe()}")
