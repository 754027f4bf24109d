"""Canonical bases from bar involutions.

A generic solver for the standard triangularity lemma: given an antilinear
involution tau acting unitriangularly on a labeled standard basis, each label
x carries a unique tau-fixed element b_x = [x] + (coefficients in vZ[v]).
Specializations: b_p in the flag module and b_s in the Schur algebra (with
the twisted involution on double-coset sums).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from . import flag_comb, hecke, tmodule
from .flag_comb import FlagSymbol, PeriodicMatrix, x_stat, y_stat
from .laurent import LaurentScalar, ONE


@dataclass
class BarSystem:
    """Bar data over a label set, discovered lazily from a tau callback.

    tau_fn(label) returns the expansion of tau([label]) as {label: scalar};
    it must be unitriangular: the diagonal coefficient is exactly 1 and all
    other support labels are strictly lower in the derived order.
    """
    tau_fn: object
    sort_key: object
    max_labels: int = 10_000
    _tau_cache: dict = field(default_factory=dict)
    _below: dict = field(default_factory=dict)
    _canon: dict = field(default_factory=dict)

    def tau_expand(self, label) -> dict:
        out = self._tau_cache.get(label)
        if out is None:
            out = self.tau_fn(label)
            if out.get(label) != ONE:
                raise ArithmeticError(f"bar matrix not unitriangular at {label}")
            self._tau_cache[label] = out
        return out

    def closure(self, label) -> list:
        """All labels reachable from label through bar supports (inclusive)."""
        seen = {label}
        frontier = [label]
        while frontier:
            nxt = []
            for x in frontier:
                for y in self.tau_expand(x):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > self.max_labels:
                            raise RuntimeError(
                                f"support cone exceeded {self.max_labels} labels")
            frontier = nxt
        return sorted(seen, key=self.sort_key)

    def lower_labels(self, label) -> set:
        """Strictly lower labels (transitive bar-support order)."""
        out = self._below.get(label)
        if out is None:
            out = set()
            frontier = [y for y in self.tau_expand(label) if y != label]
            while frontier:
                x = frontier.pop()
                if x in out:
                    continue
                out.add(x)
                if x == label:
                    raise ArithmeticError(f"bar-support order has a cycle at {label}")
                frontier.extend(y for y in self.tau_expand(x) if y != x)
            if label in out:
                raise ArithmeticError(f"bar-support order has a cycle at {label}")
            self._below[label] = out
        return out

    def tau_vector(self, vec: dict) -> dict:
        """tau of a vector given in the standard basis (antilinear)."""
        out = {}
        for x, c in vec.items():
            cb = c.bar()
            for y, d in self.tau_expand(x).items():
                s = out.get(y, LaurentScalar.zero()) + cb * d
                if s.is_zero():
                    out.pop(y, None)
                else:
                    out[y] = s
        return out


@dataclass(frozen=True)
class CanonicalExpansion:
    leading: object
    terms: tuple  # ((label, scalar), ...) sorted by sort key

    def coeff(self, label) -> LaurentScalar:
        for x, c in self.terms:
            if x == label:
                return c
        return LaurentScalar.zero()

    def as_dict(self) -> dict:
        return dict(self.terms)


def solve_canonical(system: BarSystem, label) -> CanonicalExpansion:
    """The unique tau-fixed b = [label] + sum of vZ[v]-corrections."""
    system.lower_labels(label)  # forces acyclicity check
    canon_cache = system._canon

    def canon(x) -> dict:
        got = canon_cache.get(x)
        if got is not None:
            return got
        b = {x: ONE}
        while True:
            d = _sub(system.tau_vector(b), b)
            if not d:
                break
            lower = {y for y in d}
            y = _max_label(system, lower)
            gamma = d[y]
            if gamma.bar() != -gamma:
                raise ArithmeticError(f"discrepancy at {y} is not bar-antisymmetric")
            p = gamma.positive_part()
            if p - p.bar() != gamma:
                raise ArithmeticError(f"cannot split {gamma} as p - bar(p), p in vZ[v]")
            by = canon(y)
            for z, c in by.items():
                s = b.get(z, LaurentScalar.zero()) + p * c
                if s.is_zero():
                    b.pop(z, None)
                else:
                    b[z] = s
        canon_cache[x] = b
        return b

    b = canon(label)
    return CanonicalExpansion(label, tuple(sorted(b.items(),
                                                  key=lambda t: system.sort_key(t[0]))))


def _sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for x, c in b.items():
        s = out.get(x, LaurentScalar.zero()) - c
        if s.is_zero():
            out.pop(x, None)
        else:
            out[x] = s
    return out


def _max_label(system: BarSystem, labels: set):
    """A label of the set maximal for the bar-support order (deterministic)."""
    for y in sorted(labels, key=system.sort_key):
        if not any(y in system.lower_labels(z) for z in labels if z != y):
            return y
    raise ArithmeticError("no maximal label; order is cyclic")


# ---------------------------------------------------------------------------
# Specialization to the flag module


def _tau_tmodule_label(p: FlagSymbol) -> dict:
    return dict(tmodule.tau(tmodule.ModuleVector.basis(p)).terms)


def tmodule_system(n: int, D: int, max_labels: int = 10_000) -> BarSystem:
    return BarSystem(tau_fn=_tau_tmodule_label,
                     sort_key=lambda p: p.values,
                     max_labels=max_labels)


def canonical_tmodule(p: FlagSymbol, system: BarSystem = None) -> CanonicalExpansion:
    if system is None:
        system = tmodule_system(p.n, p.D)
    return solve_canonical(system, p)


def canonical_tmodule_vector(p: FlagSymbol, system: BarSystem = None) -> tmodule.ModuleVector:
    exp = canonical_tmodule(p, system)
    return tmodule.ModuleVector(p.n, p.D, dict(exp.terms))


# ---------------------------------------------------------------------------
# Specialization to the Schur algebra


def block_of(s: PeriodicMatrix):
    lam = flag_comb.dominant_from_weight(s.n, s.D, s.row_weight())
    mu = flag_comb.dominant_from_weight(s.n, s.D, s.col_weight())
    return lam, mu


def hecke_to_matrix_terms(lam: FlagSymbol, mu: FlagSymbol, h: hecke.HeckeElement) -> dict:
    """Re-collapse an element of H_{lam,mu} into the [t] basis."""
    D = lam.D
    remaining = dict(h.terms)
    out = {}
    while remaining:
        w = next(iter(remaining))
        t = flag_comb.matrix_of_pair(lam.act(w), mu)
        c = remaining[w]
        rep = flag_comb.double_coset_min_rep(t, lam, mu)
        for u in affine_weyl_double_coset(D, lam, rep, mu):
            c2 = remaining.pop(u, None)
            if c2 is None or c2 != c:
                raise ArithmeticError("coefficients not constant on the double coset")
        out[t] = c.shift(-y_stat(t))
    return out


def affine_weyl_double_coset(D, lam, rep, mu):
    from . import affine_weyl
    return affine_weyl.double_coset_elements(D, lam.values, rep, mu.values)


def _tau_schur_label(s: PeriodicMatrix) -> dict:
    """tau([s]) = v^{-2 x_mu} bar([s]) expanded in the [t] basis."""
    lam, mu = block_of(s)
    h = hecke.double_coset_sum(lam, mu, s).scale(LaurentScalar.v(y_stat(s)))
    barh = hecke.bar(h)
    terms = hecke_to_matrix_terms(lam, mu, barh)
    twist = LaurentScalar.v(-2 * x_stat(mu))
    return {t: twist * c for t, c in terms.items()}


def schur_system(n: int, D: int, max_labels: int = 10_000) -> BarSystem:
    return BarSystem(tau_fn=_tau_schur_label,
                     sort_key=lambda s: s.entries,
                     max_labels=max_labels)


def canonical_schur(s: PeriodicMatrix, system: BarSystem = None) -> CanonicalExpansion:
    if system is None:
        system = schur_system(s.n, s.D)
    return solve_canonical(system, s)


# ---------------------------------------------------------------------------
# KL-type coefficient extraction


def kl_coefficients(expansion: CanonicalExpansion, q_label, stat=None) -> list:
    """Decompose the coefficient of q_label as sum_i dim_i v^{-i + s_p - s_q}.

    stat maps a label to its dimension statistic (x_stat for symbols, y_stat
    for matrices); returns the nonzero (i, dim_i) pairs.
    """
    if stat is None:
        stat = x_stat if isinstance(expansion.leading, FlagSymbol) else y_stat
    d = stat(expansion.leading) - stat(q_label)
    c = expansion.coeff(q_label)
    return [(d - e, a) for e, a in sorted(c.items())]


def ic_consistent(expansion: CanonicalExpansion, stat=None) -> bool:
    """True iff every reported stalk dimension is a nonnegative integer."""
    for q, _ in expansion.terms:
        for _, dim in kl_coefficients(expansion, q, stat):
            if dim < 0:
                return False
    return True


# ---------------------------------------------------------------------------
# Export and cache


def expansion_to_json(exp: CanonicalExpansion) -> dict:
    if isinstance(exp.leading, FlagSymbol):
        enc = lambda p: list(p.values)
    else:
        enc = lambda s: [[i, j, v] for (i, j), v in s.entries]
    return {"leading": enc(exp.leading),
            "terms": [{"label": enc(x), "coeff": c.to_json()}
                      for x, c in exp.terms]}


def expansion_to_csv(expansions: list, stat=None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["leading", "term", "coeff", "kl_pairs"])
    for exp in expansions:
        for q, c in exp.terms:
            pairs = kl_coefficients(exp, q, stat)
            w.writerow([_label_str(exp.leading), _label_str(q),
                        json.dumps(c.to_json()), json.dumps(pairs)])
    return buf.getvalue()


def _label_str(x) -> str:
    if isinstance(x, FlagSymbol):
        return ",".join(str(v) for v in x.values)
    return ";".join(f"{i},{j},{v}" for (i, j), v in x.entries)


class CanonicalCache:
    """One JSON file per (n, D, lambda, mu) under a root directory."""

    def __init__(self, root):
        import pathlib
        self.root = pathlib.Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def _path(self, n, D, lam_wt, mu_wt):
        lam = "-".join(str(m) for m in lam_wt)
        mu = "-".join(str(m) for m in mu_wt) if mu_wt is not None else "T"
        return self.root / f"n{n}_D{D}_lam{lam}_mu{mu}.json"

    def load(self, n, D, lam_wt, mu_wt) -> dict:
        path = self._path(n, D, lam_wt, mu_wt)
        if not path.exists():
            return {}
        return json.loads(path.read_text())

    def store(self, n, D, lam_wt, mu_wt, key: str, payload: dict):
        path = self._path(n, D, lam_wt, mu_wt)
        data = json.loads(path.read_text()) if path.exists() else {}
        data[key] = payload
        path.write_text(json.dumps(data, sort_keys=True, indent=1))
