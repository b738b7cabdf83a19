"""Linear algebra in zero-dimensional quotients k[x]/Q over prime fields.

Used as a fast path for colons Q : J with Q zero-dimensional.  R/Q is
identified with the span of the standard monomials of a reduced grevlex basis
of Q; multiplication maps are assembled FGLM-style from normal forms of the
border monomials, and Q : J is read off as the common kernel of the maps
"multiply by g" for g in J.  Matrix products run in float64, which is exact as
long as p^2 * dim < 2^53.
"""

from __future__ import annotations

import numpy as np

from .ideal import Ideal
from .poly import GREVLEX, Polynomial

_EXACT_LIMIT = float(1 << 53)
MAX_DIM = 4000
MAX_TABLE = 2_000_000


class ZeroDimUnsupported(ValueError):
    pass


def _matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return np.fmod(A @ B, p)


class Quotient:
    """k[x]/Q for a zero-dimensional ideal Q over F_p."""

    def __init__(self, Q: Ideal):
        F = Q.ring.field
        if F.kind != "prime":
            raise ZeroDimUnsupported("fast path needs a prime field")
        self.ring = ring = Q.ring
        self.p = F.p
        self.gb = Q.gb(GREVLEX)
        key = GREVLEX.key_function(ring.nvars)
        self.key = key
        lms = [max(g.coeffs, key=key) for g in self.gb]
        self.lm_index = {lm: i for i, lm in enumerate(lms)}
        self.lms = lms
        self.standard = self._standard_monomials(lms)
        D = len(self.standard)
        if D > MAX_DIM or F.p * F.p * max(D, 1) >= _EXACT_LIMIT:
            raise ZeroDimUnsupported(f"quotient of dimension {D} is too large for the fast path")
        self.dim = D
        self.index = {e: i for i, e in enumerate(self.standard)}
        self.steps = [ring.pack([1 if j == i else 0 for j in range(ring.nvars)])
                      for i in range(ring.nvars)]
        self._build_multiplication()
        self._table: dict[int, np.ndarray] = {}

    # -- construction ---------------------------------------------------------

    def _in_initial(self, e: int) -> bool:
        divides = self.ring.divides
        return any(divides(lm, e) for lm in self.lms)

    def _standard_monomials(self, lms: list[int]) -> list[int]:
        ring = self.ring
        if any(ring.mdeg(lm) == 0 for lm in lms):
            return []
        for i in range(ring.nvars):
            pure = [lm for lm in lms if ring.unpack(lm)[i] == ring.mdeg(lm)]
            if not pure:
                raise ZeroDimUnsupported("ideal is not zero-dimensional")
        seen = {0}
        frontier = [0]
        steps = [ring.pack([1 if j == i else 0 for j in range(ring.nvars)])
                 for i in range(ring.nvars)]
        while frontier:
            nxt = []
            for e in frontier:
                for s in steps:
                    u = e + s
                    if u not in seen and not self._in_initial(u):
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
            if len(seen) > MAX_DIM:
                raise ZeroDimUnsupported("quotient too large for the fast path")
        return sorted(seen, key=self.key)

    def _tail_vector(self, g: Polynomial, lm: int) -> np.ndarray:
        v = np.zeros(self.dim)
        p = self.p
        for e, c in g.coeffs.items():
            if e != lm:
                v[self.index[e]] = (-c) % p
        return v

    def _build_multiplication(self):
        D, p = self.dim, self.p
        n = self.ring.nvars
        self.mult = [np.zeros((D, D)) for _ in range(n)]
        border: dict[int, list[tuple[int, int]]] = {}
        for si, s in enumerate(self.standard):
            for j, step in enumerate(self.steps):
                u = s + step
                ui = self.index.get(u)
                if ui is not None:
                    self.mult[j][si, ui] = 1.0
                else:
                    border.setdefault(u, []).append((j, si))
        self.border_nf: dict[int, np.ndarray] = {}
        divides = self.ring.divides
        for u in sorted(border, key=self.key):
            gi = self.lm_index.get(u)
            if gi is not None:
                v = self._tail_vector(self.gb[gi], u)
            else:
                v = None
                for j, step in enumerate(self.steps):
                    if divides(step, u):
                        w = self.border_nf.get(u - step)
                        if w is not None:
                            v = np.fmod(w @ self.mult[j], p)
                            break
                if v is None:
                    raise AssertionError("border monomial without a border predecessor")
            self.border_nf[u] = v
            for j, si in border[u]:
                self.mult[j][si] = v

    # -- normal forms ------------------------------------------------------------

    def monomial_nf(self, e: int) -> np.ndarray:
        """Coordinates of NF(e) on the standard monomials."""
        if self.dim == 0:
            return np.zeros(0)
        ring = self.ring
        # walk down to a known monomial, then multiply back up
        path = []
        u = e
        while True:
            v = self._known_nf(u)
            if v is not None:
                break
            exps = ring.unpack(u)
            j = max(range(ring.nvars), key=lambda i: exps[i])
            path.append(j)
            u -= self.steps[j]
        for j in reversed(path):
            u += self.steps[j]
            v = np.fmod(v @ self.mult[j], self.p)
            if len(self._table) < MAX_TABLE:
                self._table[u] = v
        return v

    def _known_nf(self, e: int) -> np.ndarray | None:
        v = self._table.get(e)
        if v is not None:
            return v
        si = self.index.get(e)
        if si is not None:
            v = np.zeros(self.dim)
            v[si] = 1.0
            return v
        return self.border_nf.get(e)

    def multiplication_matrix(self, g: Polynomial) -> np.ndarray:
        """Rows: coordinates of NF(g * s) for each standard monomial s."""
        D, p = self.dim, self.p
        M = np.zeros((D, D))
        for e, c in g.coeffs.items():
            rows = np.stack([self.monomial_nf(s + e) for s in self.standard]) if D else M
            M = np.fmod(M + c * rows, p)
        return M

    # -- colon ---------------------------------------------------------------

    def colon(self, J: Ideal) -> Ideal:
        """Q : J, returned with its reduced grevlex basis cached."""
        p = self.p
        K = np.eye(self.dim)
        for g in J.generators:
            if K.shape[0] == 0:
                break
            A = _matmul(K, self.multiplication_matrix(g), p)
            N = left_kernel(A, p)
            K = _matmul(N, K, p)
        return self.ideal_from_subspace(K)

    def ideal_from_subspace(self, K: np.ndarray) -> Ideal:
        """The ideal Q + span(K), given as coordinate rows on the standard monomials."""
        ring, p = self.ring, self.p
        D = self.dim
        # pivot on the largest monomial first
        order = list(range(D - 1, -1, -1))
        R, pivots = rref(K[:, order] if D else K, p)
        pivot_mons = {self.standard[order[c]]: r for r, c in enumerate(pivots)}
        R_full = np.zeros_like(R)
        if D:
            R_full[:, order] = R
        lm_set = list(self.lms) + list(pivot_mons)
        divides = ring.divides
        minimal = [u for u in lm_set
                   if not any(v != u and divides(v, u) for v in lm_set)]
        minimal = sorted(set(minimal), key=self.key, reverse=True)
        pivot_cols = [self.index[u] for u in pivot_mons]
        basis = []
        for u in minimal:
            if u in pivot_mons:
                vec = R_full[pivot_mons[u]].copy()
                vec[self.index[u]] = 0.0
                coeffs = {u: 1}
                for i in np.nonzero(vec)[0]:
                    coeffs[self.standard[i]] = int(vec[i])
            else:
                v = self.monomial_nf(u).copy()
                if pivot_cols:
                    f = v[pivot_cols]
                    v = np.fmod(v - f @ R_full, p)
                    v = np.where(v < 0, v + p, v)
                coeffs = {u: 1}
                for i in np.nonzero(v)[0]:
                    coeffs[self.standard[i]] = int((-v[i]) % p)
            basis.append(Polynomial(ring, coeffs))
        out = Ideal(ring, basis)
        out._gb[GREVLEX] = basis
        return out


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; zero rows dropped."""
    A = np.fmod(M.copy(), p)
    A[A < 0] += p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = np.fmod(A[r] * inv, p)
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            A[nzr] = np.fmod(A[nzr] - np.outer(col[nzr], A[r]), p)
            A[nzr] = np.where(A[nzr] < 0, A[nzr] + p, A[nzr])
        pivots.append(c)
        r += 1
    return A[:r], pivots


def left_kernel(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of {v : v A = 0 mod p}."""
    d = A.shape[0]
    aug = np.hstack([A, np.eye(d)])
    R, pivots = rref(aug, p)
    w = A.shape[1]
    rank = sum(1 for c in pivots if c < w)
    # rows whose A-part vanished, plus the untouched directions
    kernel_rows = [R[i, w:] for i in range(rank, R.shape[0])]
    return np.array(kernel_rows).reshape(-1, d)


def zero_dim_colon(Q: Ideal, J: Ideal) -> Ideal:
    """Q : J for zero-dimensional Q over a prime field (raises ZeroDimUnsupported otherwise)."""
    return Quotient(Q).colon(J)
