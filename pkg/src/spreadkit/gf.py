"""Small finite fields GF(q), q <= 9, and their projective actions.

Field elements are integers 0..q-1 read as coefficient vectors in base p of
a polynomial in the generator ``z`` (a root of the stored modulus).
"""
from __future__ import annotations

from itertools import product

from .permcore import Permutation, raw_make

# modulus coefficients, constant term first; z is primitive for each
MODULI = {
    2: (1, 1),        # z + 1      (z = 1)
    3: (1, 1),        # z + 1      (z = 2)
    4: (1, 1, 1),     # z^2 + z + 1
    5: (3, 1),        # z + 3      (z = 2)
    7: (4, 1),        # z + 4      (z = 3)
    8: (1, 1, 0, 1),  # z^3 + z + 1
    9: (2, 2, 1),     # z^2 + 2z + 2
}


def _prime_power(q: int):
    for p in (2, 3, 5, 7):
        k, n = 0, q
        while n % p == 0:
            n //= p
            k += 1
        if n == 1 and k:
            return p, k
    raise ValueError("unsupported field size %d" % q)


class GF:
    def __init__(self, q: int):
        if q not in MODULI:
            raise ValueError("unsupported field size %d (need q <= 9)" % q)
        self.q = q
        self.p, self.k = _prime_power(q)
        p, k = self.p, self.k
        self.add = [[self._vec_to_int([(a + b) % p for a, b in zip(self._int_to_vec(x), self._int_to_vec(y))])
                     for y in range(q)] for x in range(q)]
        self.neg = [self._vec_to_int([(-a) % p for a in self._int_to_vec(x)]) for x in range(q)]
        # powers of the primitive element
        mod = MODULI[q]
        if k == 1:
            z = (-mod[0]) % p
            pows = [1]
            for _ in range(q - 2):
                pows.append(pows[-1] * z % p)
        else:
            pows = []
            cur = [1] + [0] * (k - 1)
            for _ in range(q - 1):
                pows.append(self._vec_to_int(cur))
                # multiply by z and reduce by the monic modulus
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [(c - top * m) % p for c, m in zip(cur, mod[:k])]
        if len(set(pows)) != q - 1 or 0 in pows:
            raise ValueError("modulus for GF(%d) is not primitive" % q)
        self.exp = pows
        self.log = {x: i for i, x in enumerate(pows)}
        self.mul = [[0 if x == 0 or y == 0 else pows[(self.log[x] + self.log[y]) % (q - 1)]
                     for y in range(q)] for x in range(q)]
        self.inv = [0] + [pows[(-self.log[x]) % (q - 1)] for x in range(1, q)]

    def _int_to_vec(self, x: int) -> list:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _vec_to_int(self, v) -> int:
        x = 0
        for c in reversed(v):
            x = x * self.p + c
        return x

    def from_code(self, code: int) -> int:
        """Catalog encoding: 0 is zero, ``c >= 1`` is ``z^(c-1)``."""
        if code == 0:
            return 0
        return self.exp[(code - 1) % (self.q - 1)]

    def to_code(self, x: int) -> int:
        return 0 if x == 0 else self.log[x] + 1

    def power(self, x: int, n: int) -> int:
        r = 1
        for _ in range(n):
            r = self.mul[r][x]
        return r

    # vectors and matrices
    def vec_mat(self, v, A) -> tuple:
        n = len(A[0])
        out = [0] * n
        add, mul = self.add, self.mul
        for i, vi in enumerate(v):
            if vi:
                row = A[i]
                for j in range(n):
                    if row[j]:
                        out[j] = add[out[j]][mul[vi][row[j]]]
        return tuple(out)

    def mat_mul(self, A, B) -> list:
        return [list(self.vec_mat(row, B)) for row in A]

    def det(self, A) -> int:
        M = [list(r) for r in A]
        n = len(M)
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if M[r][c]), None)
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                d = self.neg[d]
            d = self.mul[d][M[c][c]]
            ic = self.inv[M[c][c]]
            for r in range(c + 1, n):
                if M[r][c]:
                    f = self.mul[M[r][c]][ic]
                    M[r] = [self.add[a][self.neg[self.mul[f][b]]] for a, b in zip(M[r], M[c])]
        return d

    def normalize(self, v) -> tuple:
        """Scale so that the first nonzero coordinate is 1."""
        for x in v:
            if x:
                ix = self.inv[x]
                return tuple(self.mul[ix][y] for y in v)
        raise ValueError("zero vector has no projective point")

    def projective_points(self, n: int) -> list:
        """Normalized nonzero vectors of length ``n`` in lexicographic order."""
        pts = []
        for v in product(range(self.q), repeat=n):
            if any(v) and v[next(i for i, x in enumerate(v) if x)] == 1:
                pts.append(v)
        return pts


def projective_action(field: GF, mats: list, points: list | None = None) -> tuple:
    """Permutations induced on normalized points (right action ``v -> v*A``)."""
    n = len(mats[0])
    if points is None:
        points = field.projective_points(n)
    where = {v: i for i, v in enumerate(points)}
    perms = []
    for A in mats:
        imgs = [where[field.normalize(field.vec_mat(v, A))] for v in points]
        perms.append(Permutation.from_raw(raw_make(imgs, len(points))))
    return points, perms
