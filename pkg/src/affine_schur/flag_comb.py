"""Periodic flag symbols, periodic matrices, and their statistics.

A flag symbol p is a function Z -> Z with p(j + D) = p(j) + n, stored by its
window (p(1), ..., p(D)).  A periodic matrix s is an N-valued Z x Z matrix
with s_{i+n, j+n} = s_{ij} and total mass D over any fundamental strip; it is
stored on the strip with row index in [1, n].
"""

from __future__ import annotations

from dataclasses import dataclass

from . import affine_weyl
from .affine_weyl import AffinePermutation


@dataclass(frozen=True)
class FlagSymbol:
    n: int
    D: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.D:
            raise ValueError("window length must equal D")
        if self.n < 1 or self.D < 1:
            raise ValueError("n and D must be positive")

    def __call__(self, j: int) -> int:
        q, r = divmod(j - 1, self.D)
        return self.values[r] + q * self.n

    def weight(self) -> tuple:
        """The n-tuple of value multiplicities (entries sum to D)."""
        wt = [0] * self.n
        for v in self.values:
            wt[(v - 1) % self.n] += 1
        return tuple(wt)

    def preimage(self, value: int) -> list:
        """All positions j in Z with p(j) = value (sorted, finite)."""
        out = []
        for j, vj in enumerate(self.values, start=1):
            diff = value - vj
            if diff % self.n == 0:
                out.append(j + (diff // self.n) * self.D)
        out.sort()
        return out

    def is_dominant(self) -> bool:
        vals = self.values
        return (1 <= vals[0] and vals[-1] <= self.n
                and all(a <= b for a, b in zip(vals, vals[1:])))

    def dominant_rep(self) -> "FlagSymbol":
        """The unique dominant symbol in the orbit (sorted residue values)."""
        vals = sorted(((v - 1) % self.n) + 1 for v in self.values)
        return FlagSymbol(self.n, self.D, tuple(vals))

    def act(self, w: AffinePermutation) -> "FlagSymbol":
        """Right action (p)w with (p)w (k) = p(w(k))."""
        if w.rank != self.D:
            raise ValueError("rank mismatch")
        return FlagSymbol(self.n, self.D,
                          tuple(self(w(k)) for k in range(1, self.D + 1)))

    def with_value(self, position: int, value: int) -> "FlagSymbol":
        """Replace the value at the given position (periodic: changes the
        whole position class mod D)."""
        q, r = divmod(position - 1, self.D)
        vals = list(self.values)
        vals[r] = value - q * self.n
        return FlagSymbol(self.n, self.D, tuple(vals))

    def min_coset_rep(self) -> AffinePermutation:
        """Minimal w with (lambda)w = p, lambda the dominant representative."""
        lam = self.dominant_rep()
        return affine_weyl.min_coset_rep(self.n, lam.values, self.values)

    def __repr__(self):
        return f"FlagSymbol(n={self.n}, D={self.D}, {list(self.values)})"

    def to_text(self) -> str:
        return f"n={self.n};D={self.D};[{','.join(str(v) for v in self.values)}]"

    @staticmethod
    def from_text(text: str) -> "FlagSymbol":
        parts = text.split(";")
        if len(parts) != 3 or not parts[0].startswith("n=") or not parts[1].startswith("D="):
            raise ValueError(f"bad flag symbol text {text!r}")
        body = parts[2]
        return FlagSymbol(int(parts[0][2:]), int(parts[1][2:]),
                          tuple(int(x) for x in body.strip("[]").split(",")))

    def to_json(self) -> dict:
        return {"n": self.n, "D": self.D, "values": list(self.values)}

    @staticmethod
    def from_json(obj: dict) -> "FlagSymbol":
        return FlagSymbol(obj["n"], obj["D"], tuple(obj["values"]))


def dominant_from_weight(n: int, D: int, weight) -> FlagSymbol:
    """Inverse of FlagSymbol.weight on dominant symbols."""
    if len(weight) != n or sum(weight) != D or any(m < 0 for m in weight):
        raise ValueError("weight must be a nonnegative n-tuple summing to D")
    vals = []
    for i, m in enumerate(weight, start=1):
        vals.extend([i] * m)
    return FlagSymbol(n, D, tuple(vals))


def all_dominant(n: int, D: int) -> list:
    """All dominant symbols in C_D (one per weight)."""
    out = []

    def rec(i, remaining, prefix):
        if i == n:
            if remaining == 0:
                out.append(dominant_from_weight(n, D, tuple(prefix)))
            return
        for m in range(remaining + 1) if i < n - 1 else [remaining]:
            rec(i + 1, remaining - m, prefix + [m])

    rec(0, D, [])
    return out


def x_stat(p: FlagSymbol) -> int:
    """#{(k, l) | p(k) in [1, n], k < l, p(k) >= p(l)}."""
    n, D = p.n, p.D
    total = 0
    for j in range(1, D + 1):
        # the unique shift placing p at position class j into [1, n]
        m = -((p.values[j - 1] - 1) // n)
        k = j + m * D
        pk = p(k)
        for j2 in range(1, D + 1):
            v2 = p.values[j2 - 1]
            # l = j2 + m2*D, need l > k and p(l) = v2 + m2*n <= pk
            lo = (k - j2) // D + 1
            hi = (pk - v2) // n
            if hi >= lo:
                total += hi - lo + 1
    return total


@dataclass(frozen=True)
class PeriodicMatrix:
    n: int
    D: int
    entries: tuple  # sorted tuple of ((i, j), value), i in [1, n], value > 0

    @staticmethod
    def make(n: int, D: int, entries) -> "PeriodicMatrix":
        """Build from any {(i, j): value} mapping; rows are normalized to [1, n]."""
        norm = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for (i, j), val in items:
            if val < 0:
                raise ValueError("matrix entries must be nonnegative")
            if val == 0:
                continue
            m = -((i - 1) // n)
            key = (i + m * n, j + m * n)
            norm[key] = norm.get(key, 0) + val
        mat = PeriodicMatrix(n, D, tuple(sorted(norm.items())))
        if mat.total() != D:
            raise ValueError(f"total mass {mat.total()} != D={D}")
        return mat

    def lookup(self, i: int, j: int) -> int:
        m = -((i - 1) // self.n)
        return dict(self.entries).get((i + m * self.n, j + m * self.n), 0)

    def entry_dict(self) -> dict:
        return dict(self.entries)

    def total(self) -> int:
        return sum(v for _, v in self.entries)

    def row_weight(self) -> tuple:
        wt = [0] * self.n
        for (i, _), val in self.entries:
            wt[i - 1] += val
        return tuple(wt)

    def col_weight(self) -> tuple:
        wt = [0] * self.n
        for (_, j), val in self.entries:
            wt[(j - 1) % self.n] += val
        return tuple(wt)

    def transpose(self) -> "PeriodicMatrix":
        return PeriodicMatrix.make(self.n, self.D,
                                   {(j, i): v for (i, j), v in self.entries})

    def __repr__(self):
        cells = ", ".join(f"({i},{j})->{v}" for (i, j), v in self.entries)
        return f"PeriodicMatrix(n={self.n}, D={self.D}, {{{cells}}})"

    def to_json(self) -> dict:
        return {"n": self.n, "D": self.D,
                "entries": [[i, j, v] for (i, j), v in self.entries]}

    @staticmethod
    def from_json(obj: dict) -> "PeriodicMatrix":
        return PeriodicMatrix.make(obj["n"], obj["D"],
                                   {(i, j): v for i, j, v in obj["entries"]})


def y_stat(s: PeriodicMatrix) -> int:
    """Sum of s_ij s_kl over {(i, j, k, l) | i >= k, j < l, i in [1, n]}."""
    n = s.n
    total = 0
    for (i, j), a in s.entries:  # i in [1, n]
        for (k0, l0), b in s.entries:
            # (k, l) = (k0 + m*n, l0 + m*n); need k <= i and l > j
            hi = (i - k0) // n
            lo = (j - l0) // n + 1
            if hi >= lo:
                total += a * b * (hi - lo + 1)
    return total


def matrix_of_pair(p: FlagSymbol, q: FlagSymbol) -> PeriodicMatrix:
    """The relative-position matrix: s_ij = #{k | p(k) = i, q(k) = j}."""
    if (p.n, p.D) != (q.n, q.D):
        raise ValueError("rank mismatch")
    counts = {}
    for i in range(1, p.n + 1):
        for k in p.preimage(i):
            key = (i, q(k))
            counts[key] = counts.get(key, 0) + 1
    return PeriodicMatrix.make(p.n, p.D, counts)


def delta_matrix(lam: FlagSymbol) -> PeriodicMatrix:
    """The diagonal matrix of a dominant symbol: entry (i, i) = weight_i."""
    wt = lam.weight()
    return PeriodicMatrix.make(lam.n, lam.D,
                               {(i, i): m for i, m in enumerate(wt, start=1) if m})


def generator_matrices(lam: FlagSymbol, i: int):
    """The pair (e-matrix, f-matrix) attached to a dominant symbol and a
    residue i in [0, n-1]:  delta(lam) - E_{ii} + E_{i,i+1} and its transpose.

    Returns (None, None) when the subtraction would go negative.
    """
    n, D = lam.n, lam.D
    if not 0 <= i < n:
        raise ValueError(f"residue {i} out of range [0, {n - 1}]")
    if not lam.is_dominant():
        raise ValueError("expected a dominant symbol")
    row = i if i != 0 else n  # literal row index in [1, n]
    wt = lam.weight()
    if wt[row - 1] < 1:
        return None, None
    cells = {(k, k): m for k, m in enumerate(wt, start=1) if m}
    cells[(row, row)] = cells.get((row, row), 0) - 1
    cells[(row, row + 1)] = cells.get((row, row + 1), 0) + 1
    e_mat = PeriodicMatrix.make(n, D, cells)
    return e_mat, e_mat.transpose()


def is_aperiodic(s: PeriodicMatrix) -> bool:
    """True iff every nonzero diagonal offset has a vanishing entry."""
    offsets = {j - i for (i, j), _ in s.entries if j != i}
    for off in offsets:
        if all(s.lookup(i, i + off) > 0 for i in range(1, s.n + 1)):
            return False
    return True


def order_hint(t: PeriodicMatrix, s: PeriodicMatrix) -> str:
    """Diagnostic for the closure order: 'equal', 'definitely-not-leq', or
    'consistent' (the diagonal condition t_ii >= s_ii is only necessary)."""
    if (t.n, t.D) != (s.n, s.D):
        raise ValueError("shape mismatch")
    if t.row_weight() != s.row_weight() or t.col_weight() != s.col_weight():
        raise ValueError("row/column weights differ")
    if t == s:
        return "equal"
    if any(t.lookup(i, i) < s.lookup(i, i) for i in range(1, t.n + 1)):
        return "definitely-not-leq"
    return "consistent"


def symbol_of_matrix(s: PeriodicMatrix, mu: FlagSymbol) -> FlagSymbol:
    """A flag symbol p with matrix_of_pair(p, mu) = s, built canonically.

    mu must be dominant with weight equal to the column weight of s.
    """
    if not mu.is_dominant() or mu.weight() != s.col_weight():
        raise ValueError("mu must be dominant with the column weight of s")
    n, D = s.n, s.D
    window = [None] * D
    for j0 in range(1, n + 1):
        block = mu.preimage(j0)  # consecutive positions in [1, D] with mu-value j0
        # literal rows of column j0: stored entry (i, j) contributes at row
        # i + m*n where j + m*n = j0
        rows = []
        for (i, j), cnt in s.entries:
            if (j0 - j) % n == 0:
                m = (j0 - j) // n
                rows.extend([i + m * n] * cnt)
        rows.sort()
        if len(rows) != len(block):
            raise AssertionError("column mass does not fill the block")
        for k, val in zip(block, rows):
            window[k - 1] = val
    return FlagSymbol(n, D, tuple(window))


def double_coset_min_rep(s: PeriodicMatrix, lam: FlagSymbol, mu: FlagSymbol) -> AffinePermutation:
    """The minimal element of the double coset S_lam w S_mu attached to s,
    certified by matrix_of_pair((lam)w, mu) = s."""
    p = symbol_of_matrix(s, mu)
    if p.dominant_rep() != lam:
        raise ValueError("s is not in the (lam, mu) block")
    w = p.min_coset_rep()
    rep = affine_weyl.min_double_coset_rep(s.D, lam.values, w, mu.values)
    return rep


def enumerate_flag_symbols(n: int, D: int, lo: int, hi: int) -> list:
    """All flag symbols with window values in [lo, hi]."""
    out = []
    window = [0] * D

    def rec(j):
        if j == D:
            out.append(FlagSymbol(n, D, tuple(window)))
            return
        for v in range(lo, hi + 1):
            window[j] = v
            rec(j + 1)

    rec(0)
    return out
