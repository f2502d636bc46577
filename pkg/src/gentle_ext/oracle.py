"""Linear-algebra ground truth over a prime field.

Modules are matrix representations; string and band complexes are built
slot by slot from the path bases of the indecomposable projectives.  Both
Ext¹ routes below avoid the combinatorial Ext code entirely: one uses the
truncated resolution π(v), the other the standard bimodule presentation
(vertices, arrows, relations) and needs no resolution at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gentle_ext.homotopy import GradedHomotopyString
from gentle_ext.presentation import GentlePresentation, Path, compose_modulo_I
from gentle_ext.resolution import project
from gentle_ext.strings import BandWord, StringWord, Word

DEFAULT_PRIME = 101


def rank_mod_p(mat: np.ndarray, prime: int) -> int:
    """Rank of an integer matrix over F_prime by Gaussian elimination."""
    m = np.array(mat, dtype=np.int64) % prime
    rows, cols = m.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(m[rank:, col])[0]
        if pivots.size == 0:
            continue
        piv = rank + pivots[0]
        if piv != rank:
            m[[rank, piv]] = m[[piv, rank]]
        inv = pow(int(m[rank, col]), prime - 2, prime)
        m[rank] = (m[rank] * inv) % prime
        others = np.nonzero(m[:, col])[0]
        others = others[others != rank]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, col], m[rank])) % prime
        rank += 1
    return rank


def _rank(mat: np.ndarray, prime: int) -> int:
    if mat.size == 0:
        return 0
    return rank_mod_p(mat, prime)


@dataclass
class Representation:
    prime: int
    dims: dict[str, int]
    action: dict[str, np.ndarray]

    def path_matrix(self, p: GentlePresentation, path: Path) -> np.ndarray:
        mat = np.eye(self.dims[path.source], dtype=np.int64)
        for a in path.arrows:
            mat = (self.action[a] @ mat) % self.prime
        return mat

    def check_relations(self, p: GentlePresentation) -> bool:
        for b, a in p.relations:
            if np.any((self.action[b] @ self.action[a]) % self.prime):
                return False
        return True


def module_rep(p: GentlePresentation, w: Word, prime: int = DEFAULT_PRIME, lam: int | None = None) -> Representation:
    """The walk representation of M(w), or of B(w, lam) with lam on the first direct letter."""
    walk = w.walk
    slots = walk.slots(p)
    if w.is_band:
        if lam is None or lam % prime == 0:
            raise ValueError("band modules need a nonzero parameter")
        slots = slots[:-1]
    index, dims = [], {x: 0 for x in p.vertices}
    for x in slots:
        index.append(dims[x])
        dims[x] += 1
    action = {a.name: np.zeros((dims[a.target], dims[a.source]), dtype=np.int64) for a in p.arrows}
    n = len(slots)
    twisted = False
    for i, letter in enumerate(walk.letters):
        lo, hi = i, (i + 1) % n if w.is_band else i + 1
        coeff = 1
        if w.is_band and not letter.inverse and not twisted:
            coeff, twisted = lam % prime, True
        if letter.inverse:
            src, tgt = hi, lo
        else:
            src, tgt = lo, hi
        action[letter.arrow][index[tgt], index[src]] = coeff
    return Representation(prime, dims, action)


def projective_rep(p: GentlePresentation, x: str, prime: int = DEFAULT_PRIME) -> Representation:
    basis = p.nonzero_paths_from(x)
    index, dims = {}, {v: 0 for v in p.vertices}
    for path in basis:
        index[path] = dims[path.target]
        dims[path.target] += 1
    action = {a.name: np.zeros((dims[a.target], dims[a.source]), dtype=np.int64) for a in p.arrows}
    for path in basis:
        for a in p.out_arrows(path.target):
            q = compose_modulo_I(p, Path(a.source, a.target, (a.name,)), path)
            if q is not None:
                action[a.name][index[q], index[path]] = 1
    return Representation(prime, dims, action)


def hom_dim(p: GentlePresentation, m: Representation, n: Representation) -> int:
    """Dimension of the space of intertwiners M → N."""
    offsets, total = {}, 0
    for x in p.vertices:
        offsets[x] = total
        total += n.dims[x] * m.dims[x]
    if total == 0:
        return 0
    rows = []
    for a in p.arrows:
        s, t = a.source, a.target
        # N(a) f_s - f_t M(a) = 0, unknowns f_x stored row-major (n_x × m_x).
        block = np.zeros((n.dims[t] * m.dims[s], total), dtype=np.int64)
        na, ma = n.action[a.name], m.action[a.name]
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                r = i * m.dims[s] + j
                for k in range(n.dims[s]):
                    block[r, offsets[s] + k * m.dims[s] + j] += na[i, k]
                for k in range(m.dims[t]):
                    block[r, offsets[t] + i * m.dims[t] + k] -= ma[k, j]
        rows.append(block)
    mat = np.vstack(rows) if rows else np.zeros((0, total), dtype=np.int64)
    return total - _rank(mat % m.prime, m.prime)


@dataclass
class MatrixComplex:
    """A string or band complex as vertex-graded matrices.

    ``terms[d]`` lists the slots (vertices) in degree d; ``blocks[d][x]`` is the
    matrix of the differential from degree d to d+1 restricted to the vertex x
    part (paths ending at x), in the path bases of the projectives.
    """

    prime: int
    terms: dict[int, list[str]]
    bases: dict[int, dict[str, list[tuple[int, Path]]]]
    blocks: dict[int, dict[str, np.ndarray]]

    def dim(self, d: int, x: str) -> int:
        return len(self.bases.get(d, {}).get(x, []))

    def square_is_zero(self) -> bool:
        for d, per_vertex in self.blocks.items():
            nxt = self.blocks.get(d + 1, {})
            for x, mat in per_vertex.items():
                if x in nxt and mat.size and nxt[x].size:
                    if np.any((nxt[x] @ mat) % self.prime):
                        return False
        return True

    def cohomology_dims(self, vertices) -> dict[int, dict[str, int]]:
        out = {}
        for d in sorted(self.terms):
            vec = {}
            for x in vertices:
                n = self.dim(d, x)
                if n == 0:
                    continue
                out_rank = _rank(self.blocks[d][x], self.prime) if x in self.blocks.get(d, {}) else 0
                in_rank = _rank(self.blocks[d - 1][x], self.prime) if x in self.blocks.get(d - 1, {}) else 0
                h = n - out_rank - in_rank
                if h:
                    vec[x] = h
            if vec:
                out[d] = vec
        return out


def letter_coefficients(sigma: GradedHomotopyString, prime: int, lam: int | None) -> list[int]:
    """Scalars on the differential components: -1 on direct letters, +1 on inverse ones.

    For a band, the first direct letter carries -lam⁻¹ so that the cokernel
    in degree 0 is B(w, lam) with lam on a direct arrow.
    """
    coeffs = [1 if x.inverse else prime - 1 for x in sigma.letters]
    if sigma.is_band and lam is not None:
        k = next(i for i, x in enumerate(sigma.letters) if not x.inverse)
        coeffs[k] = (-pow(lam, prime - 2, prime)) % prime
    return coeffs


def matrix_complex(p: GentlePresentation, sigma: GradedHomotopyString, prime: int = DEFAULT_PRIME,
                   lam: int | None = None) -> MatrixComplex:
    slots, degs = sigma.slots(), sigma.degrees()
    n_slots = len(slots) - 1 if sigma.is_band else len(slots)
    terms: dict[int, list[str]] = {}
    bases: dict[int, dict[str, list[tuple[int, Path]]]] = {}
    position: dict[tuple[int, Path], int] = {}
    for i in range(n_slots):
        d = degs[i]
        terms.setdefault(d, []).append(slots[i])
        for path in p.nonzero_paths_from(slots[i]):
            per = bases.setdefault(d, {}).setdefault(path.target, [])
            position[(i, path)] = len(per)
            per.append((i, path))
    blocks: dict[int, dict[str, np.ndarray]] = {}
    for d in terms:
        for x in p.vertices:
            if bases.get(d, {}).get(x) and bases.get(d + 1, {}).get(x):
                blocks.setdefault(d, {})[x] = np.zeros((len(bases[d + 1][x]), len(bases[d][x])), dtype=np.int64)
    coeffs = letter_coefficients(sigma, prime, lam)
    for k, letter in enumerate(sigma.letters):
        lo_i, hi_i = k, k + 1
        if sigma.is_band and hi_i == n_slots:
            hi_i = 0
        if degs[k + 1] > degs[k]:
            low, high = lo_i, hi_i
        else:
            low, high = hi_i, lo_i
        d = degs[k] if low == lo_i else degs[k + 1]
        q = letter.path
        for r in p.nonzero_paths_from(slots[low]):
            image = compose_modulo_I(p, r, q)
            if image is None:
                continue
            col = position[(low, r)]
            row = position[(high, image)]
            blocks[d][r.target][row, col] = (blocks[d][r.target][row, col] + coeffs[k]) % prime
    return MatrixComplex(prime, terms, bases, blocks)


def complex_dimension_vectors(p: GentlePresentation, sigma: GradedHomotopyString) -> dict[int, dict[str, int]]:
    """Dimension vector of each term Q^d as a module."""
    out: dict[int, dict[str, int]] = {}
    slots, degs = sigma.slots(), sigma.degrees()
    n_slots = len(slots) - 1 if sigma.is_band else len(slots)
    for i in range(n_slots):
        vec = out.setdefault(degs[i], {})
        for path in p.nonzero_paths_from(slots[i]):
            vec[path.target] = vec.get(path.target, 0) + 1
    return out


def ext1_dim(p: GentlePresentation, v: Word, w: Word, prime: int = DEFAULT_PRIME,
             lam: int = 1, mu: int = 2) -> int:
    """dim Ext¹(M(v), M(w)) from the resolution π(v) truncated at degree -2."""
    return ext1_breakdown(p, v, w, prime, lam, mu)["ext1"]


def ext1_breakdown(p: GentlePresentation, v: Word, w: Word, prime: int = DEFAULT_PRIME,
                   lam: int = 1, mu: int = 2) -> dict[str, int]:
    sigma = project(p, v, min_degree=-2).core
    n_rep = module_rep(p, w, prime, mu if w.is_band else None)
    slots, degs = sigma.slots(), sigma.degrees()
    n_slots = len(slots) - 1 if sigma.is_band else len(slots)
    by_degree: dict[int, list[int]] = {}
    for i in range(n_slots):
        by_degree.setdefault(degs[i], []).append(i)

    def offsets(d):
        out, total = {}, 0
        for i in by_degree.get(d, []):
            out[i] = total
            total += n_rep.dims[slots[i]]
        return out, total

    coeffs = letter_coefficients(sigma, prime, lam if v.is_band else None)

    def induced(d):
        # Hom(P^{d+1}, N) → Hom(P^d, N): a letter P(low) → P(high) by path q acts as N(q).
        src_off, src_dim = offsets(d + 1)
        tgt_off, tgt_dim = offsets(d)
        mat = np.zeros((tgt_dim, src_dim), dtype=np.int64)
        for k, letter in enumerate(sigma.letters):
            lo_i, hi_i = k, k + 1
            if sigma.is_band and hi_i == n_slots:
                hi_i = 0
            low, high = (lo_i, hi_i) if degs[k + 1] > degs[k] else (hi_i, lo_i)
            if degs[low] != d:
                continue
            block = n_rep.path_matrix(p, letter.path) * coeffs[k]
            r0, c0 = tgt_off[low], src_off[high]
            mat[r0:r0 + block.shape[0], c0:c0 + block.shape[1]] += block
        return mat % prime, src_dim, tgt_dim

    d_in, _, dim1 = induced(-1)     # Hom(P^0,N) → Hom(P^-1,N)
    d_out, _, _ = induced(-2)       # Hom(P^-1,N) → Hom(P^-2,N)
    rank_in = _rank(d_in, prime)
    rank_out = _rank(d_out, prime)
    kernel = dim1 - rank_out
    return {"hom_p_minus1": dim1, "rank_in": rank_in, "rank_out": rank_out, "kernel": kernel,
            "ext1": kernel - rank_in}


def ext1_dim_bimodule(p: GentlePresentation, m: Representation, n: Representation) -> int:
    """dim Ext¹(M, N) from the presentation vertices → arrows → relations.

    Cocycles are families (φ_a: M_{s(a)} → N_{e(a)}) with N(b)φ_a + φ_b M(a) = 0
    for each relation ba; coboundaries are φ_a = N(a)f_{s(a)} - f_{e(a)}M(a).
    """
    prime = m.prime
    arrow_off, total = {}, 0
    for a in p.arrows:
        arrow_off[a.name] = total
        total += n.dims[a.target] * m.dims[a.source]
    rows = []
    for b, a in sorted(p.relations):
        A, B = p.arrow(a), p.arrow(b)
        s, t = A.source, B.target
        block = np.zeros((n.dims[t] * m.dims[s], total), dtype=np.int64)
        nb, ma = n.action[b], m.action[a]
        mid = A.target
        for i in range(n.dims[t]):
            for j in range(m.dims[s]):
                r = i * m.dims[s] + j
                for k in range(n.dims[mid]):       # N(b) φ_a
                    block[r, arrow_off[a] + k * m.dims[s] + j] += nb[i, k]
                for k in range(m.dims[mid]):       # φ_b M(a)
                    block[r, arrow_off[b] + i * m.dims[mid] + k] += ma[k, j]
        rows.append(block)
    cocycles = total - (_rank(np.vstack(rows) % prime, prime) if rows and total else 0)
    vert_dim = sum(n.dims[x] * m.dims[x] for x in p.vertices)
    coboundaries = vert_dim - hom_dim(p, m, n)
    return cocycles - coboundaries


def ext1_dim_words(p: GentlePresentation, v: Word, w: Word, prime: int = DEFAULT_PRIME,
                   lam: int = 1, mu: int = 2) -> int:
    """Bimodule route for words, with the same parameter conventions as ext1_dim."""
    m = module_rep(p, v, prime, lam if v.is_band else None)
    n = module_rep(p, w, prime, mu if w.is_band else None)
    return ext1_dim_bimodule(p, m, n)


def is_projective_word(p: GentlePresentation, v: Word) -> bool:
    return not v.is_band and not project(p, v).core.letters
