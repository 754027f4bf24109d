"""Kashiwara operators on the flag module, two ways.

The combinatorial rule comes from the bracketing partition (unpaired
positions J plus matched pairs K_1..K_t of the i/(i+1)-valued positions);
the oracle recomputes the same operators from the sl_2-string decomposition
of a basis vector.  Their agreement is a core test.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import tmodule
from .flag_comb import FlagSymbol
from .laurent import LaurentScalar, RationalScalar, quantum_binomial, quantum_factorial
from .tmodule import ModuleVector, apply_e, apply_f, apply_divided


@dataclass(frozen=True)
class BracketingPartition:
    residue: int
    unpaired: tuple   # J, sorted positions
    pairs: tuple      # ((k, l), ...) with k < l, sorted by k

    def epsilon(self) -> int:
        """Number of unpaired (i+1)-values: the l of the chain structure."""
        return self._split

    # filled in by bracket(); kept explicit to avoid recomputing p
    _split: int = 0


def bracket(p: FlagSymbol, i: int) -> BracketingPartition:
    """The unique partition (J, K_1..K_t) of p^{-1}({i, i+1}).

    Stack matching: scanning positions left to right, a value i opens a
    bracket and a value i+1 closes the most recent open one; unmatched
    positions form J.  The result satisfies the three partition conditions.
    """
    tmodule._check_residue(p.n, i)
    positions = sorted(p.preimage(i) + p.preimage(i + 1))
    stack = []
    pairs = []
    unpaired_hi = []  # unmatched i+1 positions (all precede unmatched i's)
    for k in positions:
        if p(k) == i:
            stack.append(k)
        else:
            if stack:
                pairs.append((stack.pop(), k))
            else:
                unpaired_hi.append(k)
    J = tuple(unpaired_hi + stack)
    return BracketingPartition(i, J, tuple(sorted(pairs)),
                               _split=len(unpaired_hi))


def kashiwara_f(b: FlagSymbol, i: int):
    """f~_i: flip the leftmost unpaired i-value to i+1; None at string end."""
    part = bracket(b, i)
    lows = [k for k in part.unpaired if b(k) == i]
    if not lows:
        return None
    return b.with_value(min(lows), i + 1)


def kashiwara_e(b: FlagSymbol, i: int):
    """e~_i: flip the rightmost unpaired (i+1)-value to i; None at string end."""
    part = bracket(b, i)
    highs = [k for k in part.unpaired if b(k) == i + 1]
    if not highs:
        return None
    return b.with_value(max(highs), i)


def epsilon(b: FlagSymbol, i: int) -> int:
    return bracket(b, i)._split


def phi(b: FlagSymbol, i: int) -> int:
    part = bracket(b, i)
    return len(part.unpaired) - part._split


# ---------------------------------------------------------------------------
# The sl_2-string oracle


def _iweight(terms: dict, i: int) -> int:
    p = next(iter(terms))
    return len(p.preimage(i)) - len(p.preimage(i + 1))


def _r_apply(i: int, terms: dict, which: str) -> dict:
    """Chevalley operators on a rational-coefficient vector {symbol: scalar}."""
    out = {}
    for p, c in terms.items():
        if which == "e":
            main, other, delta, cmp = p.preimage(i + 1), p.preimage(i), -1, int.__gt__
        else:
            main, other, delta, cmp = p.preimage(i), p.preimage(i + 1), 1, int.__lt__
        for k in main:
            exp = (sum(1 for l in main if cmp(l, k)) - sum(1 for l in other if cmp(l, k)))
            q = p.with_value(k, p(k) + delta)
            add = c * RationalScalar.from_laurent(LaurentScalar.v(exp))
            s = out.get(q)
            out[q] = add if s is None else s + add
    return {q: c for q, c in out.items() if not c.is_zero()}


def _r_divided(i: int, k: int, terms: dict, which: str) -> dict:
    for _ in range(k):
        terms = _r_apply(i, terms, which)
    fact = RationalScalar.from_laurent(quantum_factorial(k))
    return {p: c / fact for p, c in terms.items()}


def string_decomposition(x: ModuleVector, i: int) -> list:
    """Write x = sum_k f_i^{(k)} u_k with e_i u_k = 0.

    Returns the list of (k, u_k) with u_k nonzero; the u_k have coefficients
    in the rational function field, as dicts {symbol: RationalScalar}.
    """
    terms = {p: RationalScalar.from_laurent(c) for p, c in x.terms.items()}
    out = []
    while terms:
        # largest K with e^{(K)} x != 0
        k = 0
        y = terms
        while True:
            y_next = _r_apply(i, y, "e")
            if not y_next:
                break
            y = y_next
            k += 1
        top = _r_divided(i, k, terms, "e")
        m_top = _iweight(top, i)
        binom = RationalScalar.from_laurent(quantum_binomial(m_top, k))
        u = {p: c / binom for p, c in top.items()}
        out.append((k, u))
        back = _r_divided(i, k, u, "f")
        for p, c in back.items():
            s = terms.get(p, RationalScalar.zero()) - c
            if s.is_zero():
                terms.pop(p, None)
            else:
                terms[p] = s
    out.reverse()
    return out


def kashiwara_oracle(b: FlagSymbol, i: int, which: str = "f"):
    """The Kashiwara operator via the string decomposition, reduced mod v L_D."""
    x = ModuleVector.basis(b)
    shift = 1 if which == "f" else -1
    out = {}
    for k, u in string_decomposition(x, i):
        if k + shift < 0:
            continue
        for p, c in _r_divided(i, k + shift, u, "f").items():
            s = out.get(p, RationalScalar.zero()) + c
            if s.is_zero():
                out.pop(p, None)
            else:
                out[p] = s
    # the crystal lattice is the span over rational functions regular at
    # v = 0; reduce by evaluating each coefficient at v = 0
    consts = {}
    for p, c in out.items():
        val = _value_at_zero(c)
        if val:
            consts[p] = val
    if not consts:
        return None
    if len(consts) == 1:
        (p, a), = consts.items()
        if a == 1:
            return p
    raise ArithmeticError(f"not a crystal class mod v: {consts}")


def _value_at_zero(c: RationalScalar):
    """Evaluate at v = 0; raises if the coefficient has a pole there."""
    from fractions import Fraction
    num, den = c.num, c.den
    if den.constant_term() == 0:
        raise ArithmeticError("denominator vanishes at v = 0")
    if num.is_zero():
        return Fraction(0)
    if num.min_exp < 0:
        raise ArithmeticError("oracle output left the crystal lattice")
    return Fraction(num.constant_term(), den.constant_term())


def _reduce_mod_v(x: ModuleVector):
    """Reduce mod v L_D; expect 0 or a single basis class with coefficient 1."""
    consts = {p: c.constant_term() for p, c in x.terms.items()
              if c.constant_term() != 0}
    if not consts:
        return None
    if len(consts) == 1:
        (p, a), = consts.items()
        if a == 1:
            return p
    raise ArithmeticError(f"not a crystal class mod v: {consts}")


# ---------------------------------------------------------------------------
# Uniqueness checker (brute force, for tests)


def all_bracketings(p: FlagSymbol, i: int) -> list:
    """Every partition of p^{-1}({i, i+1}) satisfying the three conditions."""
    positions = sorted(p.preimage(i) + p.preimage(i + 1))
    results = []

    def rec(remaining, J, pairs):
        if not remaining:
            Jt = tuple(sorted(J))
            if _valid_J(p, i, Jt, pairs):
                results.append((Jt, tuple(sorted(pairs))))
            return
        k, rest = remaining[0], remaining[1:]
        rec(rest, J + [k], pairs)
        if p(k) == i:
            for idx, l in enumerate(rest):
                if p(l) == i + 1:
                    rec(rest[:idx] + rest[idx + 1:], J, pairs + [(k, l)])

    rec(positions, [], [])
    return sorted(set(results))


def _valid_J(p, i, J, pairs) -> bool:
    for k, l in zip(J, J[1:]):
        if (p(k), p(l)) == (i, i + 1):
            return False
    for k, l in pairs:
        if any(k <= j <= l for j in J):
            return False
    return True


# ---------------------------------------------------------------------------
# Crystal graph


def crystal_graph(n: int, D: int, lo: int, hi: int, weight=None) -> dict:
    """Edges b ->_i f~_i(b) over all symbols with window values in [lo, hi].

    Returns {"vertices": [...], "edges": [(b, i, b')], "boundary": [...]}
    where boundary lists edges whose target leaves the window.
    """
    from . import flag_comb
    vertices = [p for p in flag_comb.enumerate_flag_symbols(n, D, lo, hi)
                if weight is None or p.weight() == tuple(weight)]
    vset = set(vertices)
    edges, boundary = [], []
    for b in vertices:
        for i in range(n):
            b2 = kashiwara_f(b, i)
            if b2 is None:
                continue
            if b2 in vset:
                edges.append((b, i, b2))
            else:
                boundary.append((b, i, b2))
    return {"vertices": vertices, "edges": edges, "boundary": boundary}


def graph_to_dot(graph: dict) -> str:
    lines = ["digraph crystal {"]
    for p in graph["vertices"]:
        lines.append(f'  "{list(p.values)}";')
    for b, i, b2 in graph["edges"]:
        lines.append(f'  "{list(b.values)}" -> "{list(b2.values)}" [label="{i}"];')
    for b, i, b2 in graph["boundary"]:
        lines.append(f'  "{list(b.values)}" -> "{list(b2.values)}" '
                     f'[label="{i}", style=dashed];')
    lines.append("}")
    return "\n".join(lines)


def graph_to_json(graph: dict) -> dict:
    return {
        "vertices": [list(p.values) for p in graph["vertices"]],
        "edges": [{"from": list(b.values), "residue": i, "to": list(b2.values)}
                  for b, i, b2 in graph["edges"]],
        "boundary": [{"from": list(b.values), "residue": i, "to": list(b2.values)}
                     for b, i, b2 in graph["boundary"]],
    }
