"""The extended affine symmetric group of type GL_D.

Elements are bijections w: Z -> Z with w(i + D) = w(i) + D, stored by the
window (w(1), ..., w(D)).  The group splits as <rho> x Coxeter part, where
rho is the length-zero rotation i -> i + 1 and the Coxeter part is generated
by the simple reflections s_0, ..., s_{D-1} (indices mod D).

Products compose inside-first on the right, so that the right action on
flag symbols, (p)w (k) = p(w(k)), satisfies ((p)w)w' = (p)(ww').
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class AffinePermutation:
    rank: int
    window: tuple

    def __post_init__(self):
        D = self.rank
        if len(self.window) != D:
            raise ValueError("window length must equal rank")
        if len({w % D for w in self.window}) != D:
            raise ValueError("window entries must be distinct mod D")

    def __call__(self, k: int) -> int:
        q, r = divmod(k - 1, self.rank)
        return self.window[r] + q * self.rank

    def __mul__(self, other: "AffinePermutation") -> "AffinePermutation":
        """(self * other)(k) = self(other(k)):  other acts first."""
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        return AffinePermutation(self.rank,
                                 tuple(self(other(k)) for k in range(1, self.rank + 1)))

    def inverse(self) -> "AffinePermutation":
        D = self.rank
        inv = [0] * D
        for j, wj in enumerate(self.window, start=1):
            q, r = divmod(wj - 1, D)
            inv[r] = j - q * D
        return AffinePermutation(D, tuple(inv))

    def is_identity(self) -> bool:
        return all(w == i for i, w in enumerate(self.window, start=1))

    # -- length and descents -----------------------------------------------

    def length(self) -> int:
        """Number of inversions (i, j), i in [1, D], i < j, w(i) > w(j)."""
        D, total = self.rank, 0
        for i in range(1, D + 1):
            wi = self(i)
            for j0 in range(1, D + 1):
                wj0 = self.window[j0 - 1]
                # j = j0 + m*D with j > i and w(j) = wj0 + m*D < wi
                lo = (i - j0) // D + 1          # smallest m with j0 + m*D > i
                hi = -((wj0 - wi) // D) - 1      # largest m with wj0 + m*D < wi
                if hi >= lo:
                    total += hi - lo + 1
        return total

    def has_right_descent(self, i: int) -> bool:
        """True iff length(w s_i) < length(w), i a residue mod D."""
        i = i % self.rank
        if i == 0:
            return self(0) > self(1)
        return self(i) > self(i + 1)

    def right_descents(self):
        return [i for i in range(self.rank) if self.has_right_descent(i)]

    def rotation_power(self):
        """k if self == rho^k, else None."""
        k = self.window[0] - 1
        if all(w == j + k for j, w in enumerate(self.window, start=1)):
            return k
        return None

    def reduced_word(self):
        """Factor w = rho^k s_{i_1} ... s_{i_l} with l = length(w).

        Returns (k, [i_1, ..., i_l]).
        """
        w, word = self, []
        while True:
            k = w.rotation_power()
            if k is not None:
                word.reverse()
                return k, word
            for i in range(self.rank):
                if w.has_right_descent(i):
                    word.append(i)
                    w = w * simple(self.rank, i)
                    break
            else:  # pragma: no cover - impossible for valid elements
                raise AssertionError("non-rotation element without descent")

    def __repr__(self):
        return f"AffinePermutation(D={self.rank}, {list(self.window)})"

    def to_text(self) -> str:
        return f"D={self.rank};[{','.join(str(w) for w in self.window)}]"

    @staticmethod
    def from_text(text: str) -> "AffinePermutation":
        head, _, body = text.partition(";")
        if not head.startswith("D=") or not body.startswith("[") or not body.endswith("]"):
            raise ValueError(f"bad permutation text {text!r}")
        D = int(head[2:])
        window = tuple(int(x) for x in body[1:-1].split(","))
        return AffinePermutation(D, window)


def identity(D: int) -> AffinePermutation:
    return AffinePermutation(D, tuple(range(1, D + 1)))


@lru_cache(maxsize=None)
def simple(D: int, i: int) -> AffinePermutation:
    """The simple reflection s_i swapping the residue classes of i and i+1."""
    i = i % D
    win = list(range(1, D + 1))
    if i == 0:
        win[0], win[D - 1] = 0, D + 1
        if D == 1:
            raise ValueError("no simple reflections for D=1")
    else:
        win[i - 1], win[i] = i + 1, i
    return AffinePermutation(D, tuple(win))


def rotation(D: int, k: int = 1) -> AffinePermutation:
    """rho^k, where rho(i) = i + 1; a length-zero element."""
    return AffinePermutation(D, tuple(range(1 + k, D + 1 + k)))


def translation(D: int, mu) -> AffinePermutation:
    """The translation element with window (1 + D*mu_1, ..., D + D*mu_D)."""
    if len(mu) != D:
        raise ValueError("translation vector length must equal rank")
    return AffinePermutation(D, tuple(j + D * m for j, m in enumerate(mu, start=1)))


def from_word(D: int, rot: int, word) -> AffinePermutation:
    w = rotation(D, rot)
    for i in word:
        w = w * simple(D, i)
    return w


# ---------------------------------------------------------------------------
# Bruhat order (diagnostic only; the canonical solver does not use it)


class IncomparableRotationClasses(Exception):
    """Raised when comparing elements in different cosets of <rho>."""


def bruhat_leq(x: AffinePermutation, y: AffinePermutation) -> bool:
    if x.rank != y.rank:
        raise ValueError("rank mismatch")
    kx, wx = x.reduced_word()
    ky, wy = y.reduced_word()
    if kx != ky:
        raise IncomparableRotationClasses(x, y)
    # compare the Coxeter parts rho^-k x and rho^-k y
    u = from_word(x.rank, 0, wx)
    return _coxeter_leq(u, tuple(wy), x.rank)


def _coxeter_leq(x: AffinePermutation, word_y: tuple, D: int) -> bool:
    if x.length() > len(word_y):
        return False
    if not word_y:
        return x.is_identity()
    j = word_y[-1]
    y_short = word_y[:-1]
    if x.has_right_descent(j):
        return _coxeter_leq(x * simple(D, j), y_short, D)
    # standard lifting: x <= y iff x <= ys_j when xs_j > x
    return _coxeter_leq(x, y_short, D)


# ---------------------------------------------------------------------------
# Young subgroups and coset representatives.
#
# A dominant symbol is a weakly increasing window (l_1 <= ... <= l_D) with
# values in [1, n]; its Young subgroup is generated by the finite simple
# reflections inside blocks of equal values.


def young_generators(dominant_window) -> list:
    return [i for i in range(1, len(dominant_window))
            if dominant_window[i - 1] == dominant_window[i]]


def young_subgroup_elements(D: int, dominant_window) -> list:
    """All elements of S_lambda (finite), by BFS over the block generators."""
    gens = [simple(D, i) for i in young_generators(dominant_window)]
    seen = {identity(D)}
    frontier = [identity(D)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                u = w * g
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda w: (w.length(), w.window))


def min_coset_rep(n: int, dominant_window, target_window) -> AffinePermutation:
    """The minimal-length w with (lambda)w = p, for p in the orbit of lambda.

    lambda is dominant, so its periodic extension is weakly increasing on Z
    and each value class is an interval of positions.
    """
    D = len(dominant_window)
    if len(target_window) != D:
        raise ValueError("rank mismatch")
    # base-value blocks of lambda (positions in [1, D] sharing a value)
    blocks = {}
    for j, val in enumerate(dominant_window, start=1):
        blocks.setdefault(val, []).append(j)
    window = [None] * D
    for base, block in blocks.items():
        # window positions k demanding a value base + m*n, pulled back by m*D;
        # assigning them to the block in increasing order makes w^{-1}
        # increasing on the block, which characterizes the minimal coset rep
        pulled = []
        for k, val in enumerate(target_window, start=1):
            if (val - base) % n == 0:
                m = (val - base) // n
                pulled.append((k - m * D, k, m))
        if len(pulled) != len(block):
            raise ValueError("target is not in the orbit of the dominant symbol")
        pulled.sort()
        for j, (_, k, m) in zip(block, pulled):
            window[k - 1] = j + m * D
    return AffinePermutation(D, tuple(window))


def min_double_coset_rep(D: int, lam_window, w: AffinePermutation, mu_window) -> AffinePermutation:
    """The unique minimal-length element of S_lambda w S_mu."""
    left = young_generators(lam_window)
    right = young_generators(mu_window)
    changed = True
    while changed:
        changed = False
        for i in left:
            u = simple(D, i) * w
            if u.length() < w.length():
                w, changed = u, True
        for j in right:
            u = w * simple(D, j)
            if u.length() < w.length():
                w, changed = u, True
    return w


def double_coset_elements(D: int, lam_window, rep: AffinePermutation, mu_window) -> list:
    """All elements of S_lambda rep S_mu, without duplicates."""
    left = [simple(D, i) for i in young_generators(lam_window)]
    right = [simple(D, j) for j in young_generators(mu_window)]
    seen = {rep}
    frontier = [rep]
    while frontier:
        nxt = []
        for w in frontier:
            for g in left:
                u = g * w
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
            for g in right:
                u = w * g
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda w: (w.length(), w.window))
