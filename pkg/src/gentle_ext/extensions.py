"""Arrow and overlap extensions: a combinatorial basis of Ext¹(M(v), M(w)).

Words are handled in application order.  For a string, an occurrence of the
overlap m is a letter range [s, e) of one orientation of the word.  For a
band, an occurrence is a rotation r of one orientation read periodically,
with m = R[1:1+len(m)] where R[k] = r[k mod n], so the letters R[0] and
R[1+len(m)] flank m and always exist.  m may be longer than a period.
"""

from __future__ import annotations

from dataclasses import dataclass

from gentle_ext.presentation import GentlePresentation
from gentle_ext.strings import (
    BandWord,
    Letter,
    StringWord,
    Walk,
    Word,
    band_rotations,
    canonical_form,
    dimension_vector,
    is_band,
    is_string,
    letters_compatible,
    string_orientations,
)

NON_QUASI_SIMPLE = "non-quasi-simple middle term"


@dataclass(frozen=True)
class OverlapDatum:
    """m with its flanking arrows A, B (in v) and C, D (in w); None when absent.

    ``v_walk``/``w_walk`` are the chosen orientations (rotations for bands) and
    ``v_range``/``w_range`` the letter range of m inside them.
    """

    m: StringWord
    A: str | None
    B: str | None
    C: str | None
    D: str | None
    v_walk: Walk
    v_range: tuple[int, int]
    w_walk: Walk
    w_range: tuple[int, int]


@dataclass(frozen=True)
class ExtClass:
    kind: str  # "arrow" or "overlap"
    middle: tuple[Word, ...]
    witness: tuple
    arrow: str | None = None
    overlap: OverlapDatum | None = None
    parameter_note: str | None = None

    def describe(self) -> str:
        mids = " ⊕ ".join(("B" if u.is_band else "M") + f"({u})" for u in self.middle)
        if self.kind == "arrow":
            return f"arrow {self.arrow}: middle {mids}"
        o = self.overlap
        sides = " ".join(f"{k}={getattr(o, k) or '-'}" for k in "ABCD")
        note = f" [{self.parameter_note}]" if self.parameter_note else ""
        return f"overlap m={o.m} {sides}: middle {mids}{note}"


def _letters_key(letters) -> tuple:
    return tuple(str(x) for x in letters)


def _periodic(walk: Walk, i: int, j: int) -> tuple[Letter, ...]:
    n = len(walk)
    return tuple(walk.letters[k % n] for k in range(i, j))


def _occurrences(p: GentlePresentation, word: Word, in_v: bool, max_m: int):
    """Yield (walk, s, e, right_letter, left_letter, key) for candidate occurrences of m.

    In v the letter right of m must be direct and the one left of m inverse;
    in w it is the other way round.  Absent neighbours are None.
    """
    want_right_inverse = not in_v
    if word.is_band:
        seen = set()
        for r in band_rotations(p, word.walk):
            n = len(r)
            right = r.letters[0]
            if right.inverse != want_right_inverse:
                continue
            for l in range(0, max_m + 1):
                left = r.letters[(1 + l) % n]
                if left.inverse == want_right_inverse:
                    continue
                key = ("band", _letters_key(r.letters), l)
                if key in seen:
                    continue
                seen.add(key)
                yield r, 1, 1 + l, right, left, key
        return
    for walk in string_orientations(p, word.walk):
        n = len(walk)
        for s in range(n + 1):
            right = walk.letters[s - 1] if s > 0 else None
            if right is not None and right.inverse != want_right_inverse:
                continue
            for e in range(s, n + 1):
                left = walk.letters[e] if e < n else None
                if left is not None and left.inverse == want_right_inverse:
                    continue
                key = ("string", walk.start, _letters_key(walk.letters), s, e)
                yield walk, s, e, right, left, key


def _invert_key(p: GentlePresentation, key: tuple, walk: Walk, s: int, e: int) -> tuple:
    if key[0] == "band":
        inv = walk.inverse(p)
        n, l = len(walk), e - s
        # In the inverse, m̄ occupies positions n-e .. n-s; rotate so it starts at 1.
        start = (n - e - 1) % n
        rot = inv.rotate(p, start)
        return ("band", _letters_key(rot.letters), l)
    if walk.is_trivial:
        return key
    inv = walk.inverse(p)
    n = len(walk)
    return ("string", inv.start, _letters_key(inv.letters), n - e, n - s)


def _m_letters(word: Word, walk: Walk, s: int, e: int) -> tuple[Letter, ...]:
    return _periodic(walk, s, e) if word.is_band else walk.letters[s:e]


def _m_start(p: GentlePresentation, word: Word, walk: Walk, s: int) -> str:
    return walk.slots(p)[s % len(walk) if word.is_band else s]


def arrow_extensions(p: GentlePresentation, v: Word, w: Word) -> list[ExtClass]:
    """Classes u = w a v, one per orientation pair of v, w and arrow a."""
    if v.is_band or w.is_band:
        return []
    out = {}
    for vw in string_orientations(p, v.walk):
        for ww in string_orientations(p, w.walk):
            for a in p.arrows:
                if a.source != vw.end(p) or a.target != ww.start:
                    continue
                letter = Letter(a.name)
                if vw.letters and not letters_compatible(p, vw.letters[-1], letter):
                    continue
                if ww.letters and not letters_compatible(p, letter, ww.letters[0]):
                    continue
                u = Walk(vw.start, vw.letters + (letter,) + ww.letters)
                witness = ("arrow", _letters_key(vw.letters), vw.start, a.name, _letters_key(ww.letters), ww.start)
                out[witness] = ExtClass("arrow", (canonical_form(p, StringWord(u)),), witness, arrow=a.name)
    return [out[k] for k in sorted(out)]


def overlap_extensions(p: GentlePresentation, v: Word, w: Word,
                       diagnostics: list[str] | None = None) -> list[ExtClass]:
    """Overlap classes per the string/string and band cases."""
    out = {}
    if v.is_band and w.is_band and canonical_form(p, v) == canonical_form(p, w) and diagnostics is not None:
        # m = v would give the almost split sequence, whose middle term is not quasi-simple.
        diagnostics.append(NON_QUASI_SIMPLE)
    if v.is_band and w.is_band:
        same = canonical_form(p, v) == canonical_form(p, w)
        max_v = max_w = len(v.walk) - 2 if same else len(v.walk) + len(w.walk)
    else:
        max_v = max_w = len(w.walk if v.is_band else v.walk)
    w_occ = {}
    for ww, ws, we, C_letter, D_letter, wkey in _occurrences(p, w, False, max_w):
        m = (_m_start(p, w, ww, ws), _m_letters(w, ww, ws, we))
        w_occ.setdefault(m, []).append((ww, ws, we, C_letter, D_letter, wkey))
    for vw, vs, ve, A_letter, B_letter, vkey in _occurrences(p, v, True, max_v):
        m_start, m_letters = _m_start(p, v, vw, vs), _m_letters(v, vw, vs, ve)
        for ww, ws, we, C_letter, D_letter, wkey in w_occ.get((m_start, m_letters), ()):
            A = A_letter.arrow if A_letter else None
            B = B_letter.arrow if B_letter else None
            C = C_letter.arrow if C_letter else None
            D = D_letter.arrow if D_letter else None
            # Exclude when v and w both start at the start of m, or both end at its end.
            if (A is None and C is None) or (B is None and D is None):
                continue
            middle = _middle_terms(p, v, w, vw, vs, ve, ww, ws, we)
            if middle is None:
                continue
            pair = (vkey, wkey)
            inv_pair = (_invert_key(p, vkey, vw, vs, ve), _invert_key(p, wkey, ww, ws, we))
            witness = ("overlap",) + min(pair, inv_pair)
            if witness in out:
                continue
            m_walk = Walk(m_start, m_letters)
            datum = OverlapDatum(canonical_form(p, StringWord(m_walk)), A, B, C, D, vw, (vs, ve), ww, (ws, we))
            note = "±λμ⁻¹" if v.is_band and w.is_band else None
            if len(middle) > 1 and v.is_band and w.is_band:
                note = f"{NON_QUASI_SIMPLE}, ±λμ⁻¹"
                if diagnostics is not None:
                    diagnostics.append(NON_QUASI_SIMPLE)
            out[witness] = ExtClass("overlap", middle, witness, overlap=datum, parameter_note=note)
    return [out[k] for k in sorted(out)]


def _middle_terms(p, v, w, vw, vs, ve, ww, ws, we) -> tuple[Word, ...] | None:
    if not v.is_band and not w.is_band:
        m = vw.letters[vs:ve]
        u = vw.letters[:vs] + m + ww.letters[we:]
        u_start = vw.start if vs > 0 else ww.slots(p)[ws]
        u2 = ww.letters[:ws] + m + vw.letters[ve:]
        u2_start = ww.start if ws > 0 else vw.slots(p)[vs]
        words = []
        for letters, start in ((u, u_start), (u2, u2_start)):
            walk = Walk(start, letters)
            if not is_string(p, walk):
                return None
            words.append(canonical_form(p, StringWord(walk)))
        return tuple(words)
    # A band side contributes one full period starting at its left flank.
    if not v.is_band and w.is_band:
        l = ve - vs
        letters = vw.letters[:ve] + _periodic(ww, 1 + l, 1 + l + len(ww)) + vw.letters[ve:]
        walk = Walk(vw.start, letters)
        return (canonical_form(p, StringWord(walk)),) if is_string(p, walk) else None
    if v.is_band and not w.is_band:
        l = we - ws
        letters = ww.letters[:we] + _periodic(vw, 1 + l, 1 + l + len(vw)) + ww.letters[we:]
        walk = Walk(ww.start, letters)
        return (canonical_form(p, StringWord(walk)),) if is_string(p, walk) else None
    # One period of w from m, then one period of v from m, read cyclically.
    letters = _periodic(ww, 1, 1 + len(ww)) + _periodic(vw, 1, 1 + len(vw))
    walk = Walk(_m_start(p, w, ww, 1), letters)
    if is_band(p, walk):
        return (canonical_form(p, BandWord(walk)),)
    root = _power_root(p, walk)
    if root is None or canonical_form(p, v) == canonical_form(p, w):
        return None
    # u = r^k: the middle term is the band module of r with a k-dimensional parameter.
    return (canonical_form(p, BandWord(root)),) * (len(walk) // len(root))


def _power_root(p: GentlePresentation, walk: Walk) -> Walk | None:
    """The primitive band r with walk = r^k for some k > 1, if any."""
    n = len(walk)
    for d in range(1, n):
        if n % d == 0 and walk.letters == walk.letters[:d] * (n // d):
            root = Walk(walk.start, walk.letters[:d])
            return root if is_band(p, root) else None
    return None


def ext_basis(p: GentlePresentation, v: Word, w: Word, diagnostics: list[str] | None = None) -> list[ExtClass]:
    return arrow_extensions(p, v, w) + overlap_extensions(p, v, w, diagnostics)


def middle_dimension_ok(p: GentlePresentation, cls: ExtClass, v: Word, w: Word) -> bool:
    """dim(middle) = dim v + dim w as dimension vectors."""
    total = {x: 0 for x in p.vertices}
    for u in cls.middle:
        for x, c in dimension_vector(p, u).items():
            total[x] += c
    dv, dw = dimension_vector(p, v), dimension_vector(p, w)
    return all(total[x] == dv[x] + dw[x] for x in p.vertices)
