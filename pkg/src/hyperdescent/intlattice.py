"""Integer row lattices in Hermite normal form, with the transform kept."""

from __future__ import annotations


class IntLattice:
    """Lattice spanned by integer generator rows.

    ``basis[i] = sum_j transform[i][j] * generators[j]`` and the basis is in
    row Hermite normal form (pivots positive, entries above a pivot reduced
    into ``[0, pivot)``).
    """

    def __init__(self, generators: list[list[int]]):
        self.dim = len(generators[0]) if generators else 0
        ng = len(generators)
        rows = [(list(g), [int(i == j) for j in range(ng)]) for i, g in enumerate(generators)]
        basis: list[tuple[list[int], list[int]]] = []
        pivots: list[int] = []
        for col in range(self.dim):
            active = [r for r in rows if r[0][col] != 0]
            if not active:
                continue
            rest = [r for r in rows if r[0][col] == 0]
            while len(active) > 1:
                active.sort(key=lambda r: abs(r[0][col]))
                piv = active[0]
                nxt = [piv]
                for vec, comb in active[1:]:
                    q = vec[col] // piv[0][col]
                    vec = [a - q * b for a, b in zip(vec, piv[0])]
                    comb = [a - q * b for a, b in zip(comb, piv[1])]
                    (nxt if vec[col] != 0 else rest).append((vec, comb))
                active = nxt
            vec, comb = active[0]
            if vec[col] < 0:
                vec, comb = [-a for a in vec], [-a for a in comb]
            basis.append((vec, comb))
            pivots.append(col)
            rows = rest
        # reduce entries above pivots
        for i in range(len(basis)):
            vi, ci = basis[i]
            p = pivots[i]
            for j in range(i):
                vj, cj = basis[j]
                q = vj[p] // vi[p]
                if q:
                    basis[j] = ([a - q * b for a, b in zip(vj, vi)], [a - q * b for a, b in zip(cj, ci)])
        self.basis = [b[0] for b in basis]
        self.transform = [b[1] for b in basis]
        self.pivots = pivots

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, v: list[int]) -> list[int] | None:
        """Coefficients c with v = sum c_i basis_i, or None if v is not in the lattice."""
        v = list(v)
        coeffs = []
        for row, p in zip(self.basis, self.pivots):
            if v[p] % row[p]:
                return None
            c = v[p] // row[p]
            coeffs.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coeffs
