"""Transfer maps between affine q-Schur algebras of adjacent ranks.

The rank-lowering map S_{D+n} -> S_D is realized two independent ways: a
linear-solve route (write x as a combination of monomial images at rank D+n
and push the reduced monomials through rank D) and a comultiplication route
(split each monomial across a rank-n / rank-D tensor factor, collapse the
rank-n leg with the sign character, twist blockwise).  Executable checkers
for the leading-term lemma and the canonical-basis transfer theorem close
the loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iter_product

from . import canonical, flag_comb, schur
from .flag_comb import PeriodicMatrix, is_aperiodic, order_hint
from .laurent import (LaurentScalar, ONE, RationalScalar, divide_exact,
                      quantum_factorial)
from .schur import (SchurElement, UdotMonomial, phi_e, phi_f,
                    phi_idempotent, phi_monomial)


# Convention flags frozen by calibrate_flags(); the calibration test asserts
# these are the unique settings satisfying the composite-identity check.
# psi flag: ("offset", sign) scales [s] by v^{sign * offset_sum(s)};
# ("window", sign) is the blockwise window-sum reading; ("weight", 0) is the
# flat reading (trivial twist).
PSI_FLAG = ("offset", -1)
# value of the sign character on the length-zero rotation; calibration shows
# every monomial candidate survives (rotation terms cancel in the character
# on the image), so the simplest setting is frozen
EPS_RHO = ONE
PSI_CANDIDATES = (("offset", 1), ("offset", -1), ("window", 1),
                  ("window", -1), ("weight", 0))


# ---------------------------------------------------------------------------
# Weight bookkeeping on monomials


def _letter_right_weight(n: int, wt: tuple, kind: str, i: int, k: int):
    """Right weight of e_i^(k)/f_i^(k) given its left weight; None if it
    leaves N^n."""
    shift = schur._wshift(n, kind, i, k)  # left minus right
    out = tuple(a - b for a, b in zip(wt, shift))
    return None if any(m < 0 for m in out) else out


def resolve_weights(m: UdotMonomial):
    """The weight profile (gens, weights) of a monomial: weights[t] sits
    between gens[t-1] and gens[t].  None when an idempotent letter clashes
    or a weight leaves N^n (the monomial is zero)."""
    n = m.n
    anchors = [j for j, g in enumerate(m.letters) if g[0] == "a"]
    if not anchors:
        raise ValueError("monomial has no weight letter to anchor at")
    j = anchors[0]
    wt = m.letters[j][1]
    # walk left from the anchor to find the leftmost weight
    for g in reversed(m.letters[:j]):
        if g[0] == "a":
            if g[1] != wt:
                return None
        else:
            shift = schur._wshift(n, g[0], g[1], g[2])
            wt = tuple(a + b for a, b in zip(wt, shift))
            if any(x < 0 for x in wt):
                return None
    gens, weights = [], [wt]
    for g in m.letters:
        if g[0] == "a":
            if g[1] != wt:
                return None
        else:
            wt = _letter_right_weight(n, wt, g[0], g[1], g[2])
            if wt is None:
                return None
            gens.append(g)
            weights.append(wt)
    return gens, weights


def reduce_monomial(m: UdotMonomial):
    """Subtract (1, ..., 1) from every weight letter; None if some weight
    has a zero component."""
    letters = []
    for g in m.letters:
        if g[0] == "a":
            if any(x < 1 for x in g[1]):
                return None
            letters.append(("a", tuple(x - 1 for x in g[1])))
        else:
            letters.append(g)
    return UdotMonomial(m.n, letters)


def phi_twist(m: UdotMonomial):
    """The endomorphism sending a_lam to a_{lam - (1,..,1)}, e_i to v e_i
    and f_i to v^{-1} f_i; returns (reduced monomial or None, v-power)."""
    exp = sum(g[2] if g[0] == "e" else -g[2]
              for g in m.letters if g[0] != "a")
    return reduce_monomial(m), LaurentScalar.v(exp)


# ---------------------------------------------------------------------------
# The comultiplication route: tensor-leg evaluation of monomials


def delta_generator(kind: str, lam: tuple, i: int = None):
    """The comultiplication of a generator, as (coeff, left, right) monomial
    legs.  kind 'a': idempotent splits; 'e': a_lam e_i; 'f': f_i a_lam (lam
    is then the right weight)."""
    n = len(lam)
    legs = []
    if kind == "a":
        for w1, w2 in _all_splits(lam):
            legs.append((ONE,
                         UdotMonomial(n, (("a", w1),)),
                         UdotMonomial(n, (("a", w2),))))
        return legs
    r = i if i >= 1 else n
    if kind == "e":
        for w1, w2 in _all_splits(lam):
            legs.append((LaurentScalar.v(w1[r - 1]),
                         UdotMonomial(n, (("a", w1),)),
                         UdotMonomial(n, (("a", w2), ("e", i, 1)))))
            legs.append((LaurentScalar.v(-w2[r - 1]),
                         UdotMonomial(n, (("a", w1), ("e", i, 1))),
                         UdotMonomial(n, (("a", w2),))))
        return legs
    if kind == "f":
        i1 = r % n  # component of the residue below the moved one
        for w1, w2 in _all_splits(lam):
            legs.append((LaurentScalar.v(-w1[i1]),
                         UdotMonomial(n, (("a", w1),)),
                         UdotMonomial(n, (("f", i, 1), ("a", w2)))))
            legs.append((LaurentScalar.v(w2[i1]),
                         UdotMonomial(n, (("f", i, 1), ("a", w1))),
                         UdotMonomial(n, (("a", w2),))))
        return legs
    raise ValueError(f"unknown generator kind {kind!r}")


def _all_splits(wt: tuple):
    """All componentwise splits wt = w1 + w2 over N^n."""
    n = len(wt)
    out = []

    def rec(i, prefix):
        if i == n:
            w1 = tuple(prefix)
            out.append((w1, tuple(a - b for a, b in zip(wt, w1))))
            return
        for a in range(wt[i] + 1):
            rec(i + 1, prefix + [a])

    rec(0, [])
    return out


@lru_cache(maxsize=None)
def _basis_mul(s: PeriodicMatrix, g: SchurElement) -> SchurElement:
    return schur.schur_mul(SchurElement.basis(s), g)


def _mul_gen_right_cached(x: SchurElement, kind: str, i: int) -> SchurElement:
    """x * e_i or x * f_i, distributed over basis matrices with caching."""
    n, D = x.n, x.D
    out = {}
    for s, c in x.terms().items():
        wt = s.col_weight()
        if kind == "e":
            g = phi_e(n, D, i, wt)
        else:
            r = i if i >= 1 else n
            lam = _weight_bump(wt, r, n)
            if lam is None:
                continue
            g = phi_f(n, D, i, lam)
        if g.is_zero():
            continue
        for t, a in _basis_mul(s, g).terms().items():
            prev = out.get(t, LaurentScalar.zero()) + c * a
            if prev.is_zero():
                out.pop(t, None)
            else:
                out[t] = prev
    return SchurElement.from_terms(n, D, out)


def _weight_bump(nu: tuple, r: int, n: int):
    """nu + eps_r - eps_{r+1} (residue folded); None if negative."""
    lam = list(nu)
    lam[r - 1] += 1
    lam[r % n] -= 1
    if lam[r % n] < 0:
        return None
    return tuple(lam)


def _omega_step(n: int, D1: int, D2: int, terms: dict, kind: str, i: int) -> dict:
    r = i if i >= 1 else n
    out = {}

    def add(s1, s2, c):
        prev = out.get((s1, s2))
        s = c if prev is None else prev + c
        if s.is_zero():
            out.pop((s1, s2), None)
        else:
            out[(s1, s2)] = s

    for (s1, s2), c in terms.items():
        nu1, nu2 = s1.col_weight(), s2.col_weight()
        if kind == "e":
            legs = [(c.shift(nu1[r - 1]), None, phi_e(n, D2, i, nu2)),
                    (c.shift(-nu2[r - 1]), phi_e(n, D1, i, nu1), None)]
        else:
            i1 = r % n
            lam2 = _weight_bump(nu2, r, n)
            lam1 = _weight_bump(nu1, r, n)
            legs = [(c.shift(-nu1[i1]), None,
                     phi_f(n, D2, i, lam2) if lam2 else None),
                    (c.shift(nu2[i1]),
                     phi_f(n, D1, i, lam1) if lam1 else None, None)]
        for coeff, g1, g2 in legs:
            if (g1 is not None and g1.is_zero()) or (g2 is not None and g2.is_zero()):
                continue
            if g1 is None and g2 is None:
                continue
            x1 = {s1: ONE} if g1 is None else _basis_mul(s1, g1).terms()
            x2 = {s2: ONE} if g2 is None else _basis_mul(s2, g2).terms()
            for t1, c1 in x1.items():
                for t2, c2 in x2.items():
                    add(t1, t2, coeff * c1 * c2)
    return out


def omega_route(m: UdotMonomial, D1: int, D2: int) -> dict:
    """Evaluate the monomial across the rank split, as a tensor dict
    {(matrix at D1, matrix at D2): scalar}."""
    n = m.n
    res = resolve_weights(m)
    if res is None:
        return {}
    gens, weights = res
    if sum(weights[0]) != D1 + D2:
        return {}
    terms = {}
    for w1, w2 in _all_splits(weights[0]):
        if sum(w1) != D1:
            continue
        s1 = flag_comb.delta_matrix(flag_comb.dominant_from_weight(n, D1, w1))
        s2 = flag_comb.delta_matrix(flag_comb.dominant_from_weight(n, D2, w2))
        terms[(s1, s2)] = ONE
    divisor = ONE
    for kind, i, k in gens:
        divisor = divisor * quantum_factorial(k)
        for _ in range(k):
            terms = _omega_step(n, D1, D2, terms, kind, i)
        if not terms:
            return {}
    if not divisor.is_one():
        terms = {key: divide_exact(c, divisor) for key, c in terms.items()}
    return terms


@lru_cache(maxsize=None)
def _eps_of_basis(s: PeriodicMatrix, rho_value: LaurentScalar) -> LaurentScalar:
    return schur.epsilon_sign(SchurElement.basis(s), rho_value)


def epsilon_collapse(terms: dict, n: int, D2: int,
                     rho_value: LaurentScalar = EPS_RHO) -> SchurElement:
    """Apply the sign character to the rank-n tensor leg."""
    out = {}
    for (s1, s2), c in terms.items():
        e = _eps_of_basis(s1, rho_value)
        if e.is_zero():
            continue
        prev = out.get(s2, LaurentScalar.zero()) + c * e
        if prev.is_zero():
            out.pop(s2, None)
        else:
            out[s2] = prev
    return SchurElement.from_terms(n, D2, out)


def _apply_psi(x: SchurElement, psi_flag: tuple) -> SchurElement:
    mode, sign = psi_flag
    if mode == "weight":
        return x
    if mode == "window":
        return schur.psi_twist(x, sign)
    if mode == "offset":
        return schur.offset_twist(x, sign)
    raise ValueError(f"unknown psi mode {mode!r}")


def transfer_route_b(m: UdotMonomial, D: int, psi_flag: tuple = None,
                     rho_value: LaurentScalar = None) -> SchurElement:
    """The comultiplication route: psi o (epsilon x 1) o omega on a monomial
    anchored at total weight D + n."""
    if psi_flag is None:
        psi_flag = PSI_FLAG
    if rho_value is None:
        rho_value = EPS_RHO
    n = m.n
    tensor = omega_route(m, n, D)
    x = epsilon_collapse(tensor, n, D, rho_value)
    return _apply_psi(x, psi_flag)


# ---------------------------------------------------------------------------
# Calibration of the convention flags


def enumerate_monomials(n: int, total: int, max_len: int):
    """All words a_lam g_1 ... g_k (k <= max_len, single powers)."""
    gens = [(kind, i, 1) for kind in ("e", "f") for i in range(n)]
    for lam in _compositions(total, n):
        for length in range(max_len + 1):
            for word in iter_product(gens, repeat=length):
                yield UdotMonomial(n, (("a", lam),) + word)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in _compositions(total - a, parts - 1):
            yield (a,) + rest


def _phi_of_reduction(m: UdotMonomial, D: int) -> SchurElement:
    m2 = reduce_monomial(m)
    if m2 is None:
        return SchurElement.zero(m.n, D)
    return phi_monomial(m2, D)


def calibrate_flags(n: int = 2, Ds=(1, 2), max_len: int = 3):
    """All (psi_flag, rho_value) settings under which the comultiplication
    route reproduces the rank-lowered evaluation on every test monomial."""
    candidates = [(flag, LaurentScalar.monomial(a, e))
                  for flag in PSI_CANDIDATES
                  for a in (1, -1)
                  for e in range(-n, n + 1)]
    for D in Ds:
        for m in enumerate_monomials(n, D + n, max_len):
            tensor = omega_route(m, n, D)
            rhs = _phi_of_reduction(m, D)
            survivors = []
            for flag, rho in candidates:
                x = epsilon_collapse(tensor, n, D, rho)
                if _apply_psi(x, flag) == rhs:
                    survivors.append((flag, rho))
            candidates = survivors
            if not candidates:
                return []
    return candidates


# ---------------------------------------------------------------------------
# The linear-solve route


@dataclass
class MonomialSpan:
    """An incrementally grown spanning set of monomial images at rank D,
    with an exact elimination workspace over the rational function field."""
    n: int
    D: int
    max_labels: int = 100_000
    monomials: list = field(default_factory=list)
    images: list = field(default_factory=list)
    _rows: list = field(default_factory=list)   # (pivot, vec, combo)
    _frontier: dict = field(default_factory=dict)  # anchor -> search states
    _seen_images: set = field(default_factory=set)
    _grown: dict = field(default_factory=dict)  # anchor -> word length

    @property
    def word_len(self) -> int:
        return max(self._grown.values(), default=0)

    def _vec_of(self, x: SchurElement) -> dict:
        return {s: RationalScalar.from_laurent(c) for s, c in x.terms().items()}

    @staticmethod
    def _state_key(x: SchurElement):
        """Dedup key for search states: the image up to a global scalar
        (scalar multiples generate the same cone of descendants)."""
        items = sorted(x.terms().items(), key=lambda t: t[0].entries)
        c0 = RationalScalar.from_laurent(items[0][1])
        return tuple((s, RationalScalar.from_laurent(c) / c0) for s, c in items)

    def _reduce(self, vec: dict):
        combo = {}
        for idx, (pivot, rvec, rcombo) in enumerate(self._rows):
            c = vec.get(pivot)
            if c is None or c.is_zero():
                continue
            for s, a in rvec.items():
                r = vec.get(s, RationalScalar.zero()) - c * a
                if r.is_zero():
                    vec.pop(s, None)
                else:
                    vec[s] = r
            for j, a in rcombo.items():
                r = combo.get(j, RationalScalar.zero()) + c * a
                if r.is_zero():
                    combo.pop(j, None)
                else:
                    combo[j] = r
        return vec, combo

    def _insert(self, mono: UdotMonomial, image: SchurElement) -> bool:
        vec = self._vec_of(image)
        vec, combo = self._reduce(vec)
        if not vec:
            return False
        idx = len(self.monomials)
        self.monomials.append(mono)
        self.images.append(image)
        pivot = min(vec, key=lambda s: s.entries)
        inv = RationalScalar.one() / vec[pivot]
        vec = {s: inv * c for s, c in vec.items()}
        combo = {j: (RationalScalar.zero() - inv * c) for j, c in combo.items()}
        combo[idx] = inv
        self._rows.append((pivot, vec, combo))
        return True

    def grow(self, anchors, max_len: int):
        """Extend each anchor's breadth-first search to the given word
        length (incremental and idempotent per anchor)."""
        gens = [(kind, i) for kind in ("e", "f") for i in range(self.n)]
        for wt in anchors:
            wt = tuple(wt)
            if wt not in self._grown:
                if sum(wt) != self.D:
                    raise ValueError("anchor weight must sum to the rank")
                self._grown[wt] = 0
                mono = UdotMonomial(self.n, (("a", wt),))
                image = phi_idempotent(self.n, self.D, wt)
                key = self._state_key(image)
                self._frontier[wt] = {}
                if key not in self._seen_images:
                    self._seen_images.add(key)
                    self._frontier[wt][key] = (mono, image)
                    self._insert(mono, image)
            while self._grown[wt] < max_len:
                self._grown[wt] += 1
                nxt = {}
                for mono, image in self._frontier[wt].values():
                    for kind, i in gens:
                        child = _mul_gen_right_cached(image, kind, i)
                        if child.is_zero():
                            continue
                        key = self._state_key(child)
                        if key in self._seen_images:
                            continue
                        self._seen_images.add(key)
                        cmono = UdotMonomial(self.n,
                                             mono.letters + ((kind, i, 1),))
                        nxt[key] = (cmono, child)
                        self._insert(cmono, child)
                        if len(self._seen_images) > self.max_labels:
                            raise RuntimeError(
                                f"span search exceeded {self.max_labels} states")
                self._frontier[wt] = nxt

    def solve(self, x: SchurElement):
        """Exact coefficients {monomial: scalar} with x = sum of images, or
        None if x is outside the current span."""
        vec, combo = self._reduce(self._vec_of(x))
        if vec:
            return None
        return {self.monomials[j]: c for j, c in combo.items()}


def transfer_map(x: SchurElement, span: MonomialSpan,
                 grow_to: int = 8) -> SchurElement:
    """The rank-lowering map: solve x as a combination of monomial images at
    rank D + n and evaluate the weight-reduced combination at rank D."""
    n = x.n
    if span.D != x.D or span.n != n:
        raise ValueError("span rank mismatch")
    D = x.D - n
    if D < 1:
        raise ValueError("target rank must be positive")
    anchors = {lam.weight() for (lam, _mu) in x.blocks}
    combo = span.solve(x)
    grown = 0
    while combo is None and grown < grow_to:
        grown += 1
        span.grow(anchors, grown)
        combo = span.solve(x)
    if combo is None:
        residual, _ = span._reduce(span._vec_of(x))
        raise ValueError(f"element outside the monomial span up to word "
                         f"length {grown}; residual support "
                         f"{sorted(residual, key=lambda s: s.entries)}")
    out = {}
    for m, c in combo.items():
        img = _phi_of_reduction_cached(m, D)
        for s, a in img.terms().items():
            r = out.get(s, RationalScalar.zero()) + c * RationalScalar.from_laurent(a)
            if r.is_zero():
                out.pop(s, None)
            else:
                out[s] = r
    terms = {}
    for s, c in out.items():
        if not c.is_laurent():
            raise ArithmeticError(
                f"transfer produced a non-polynomial coefficient at {s}; "
                "the solve is preimage-dependent")
        terms[s] = c.as_laurent()
    return SchurElement.from_terms(n, D, terms)


@lru_cache(maxsize=None)
def _phi_of_reduction_cached(m: UdotMonomial, D: int) -> SchurElement:
    return _phi_of_reduction(m, D)


# ---------------------------------------------------------------------------
# Matrix helpers for the theorem checkers


def matrix_minus_identity(s: PeriodicMatrix):
    """The matrix t with t_ij = s_ij - delta_ij at rank D - n; None when a
    diagonal entry would go negative."""
    d = s.entry_dict()
    for i in range(1, s.n + 1):
        val = s.lookup(i, i)
        if val < 1:
            return None
        if val == 1:
            d.pop((i, i))
        else:
            d[(i, i)] = val - 1
    return PeriodicMatrix.make(s.n, s.D - s.n, d)


def band_matrices(n: int, D: int, band: int):
    """All periodic matrices with support within |j - i| <= band."""
    positions = [(i, j) for i in range(1, n + 1)
                 for j in range(i - band, i + band + 1)]
    out = []

    def rec(idx, remaining, cells):
        if idx == len(positions):
            if remaining == 0:
                out.append(PeriodicMatrix.make(n, D, dict(cells)))
            return
        lo = remaining if idx == len(positions) - 1 else 0
        for val in range(lo, remaining + 1):
            rec(idx + 1, remaining - val,
                cells + ([(positions[idx], val)] if val else []))

    rec(0, D, [])
    return out


def aperiodic_band_matrices(n: int, D: int, band: int):
    return [s for s in band_matrices(n, D, band) if is_aperiodic(s)]


# ---------------------------------------------------------------------------
# Theorem checkers


def check_leading_term(s: PeriodicMatrix, span: MonomialSpan) -> dict:
    """Leading-term check: the transfer of [s] (all diagonal entries >= 1)
    is c [t] plus lower terms, t = s minus the identity."""
    t = matrix_minus_identity(s)
    if t is None:
        return {"matrix": s, "ok": False,
                "reason": "a diagonal entry is below 1"}
    try:
        y = transfer_map(SchurElement.basis(s), span)
    except ValueError:
        # [s] need not lie in the image of the evaluation homomorphism
        # (its canonical correction terms can carry periodic labels), and
        # the transfer is only computable there
        return {"matrix": s, "ok": None, "reason": "outside the computable domain"}
    lead = y.coeff(t)
    lower_ok = True
    for u in y.terms():
        if u == t:
            continue
        if (u.row_weight() != t.row_weight()
                or u.col_weight() != t.col_weight()
                or order_hint(u, t) != "consistent"):
            lower_ok = False
    return {"matrix": s, "shift": t, "leading": lead,
            "lower_ok": lower_ok, "ok": (not lead.is_zero()) and lower_ok}


def check_canonical_transfer(s: PeriodicMatrix, span: MonomialSpan,
                    system_high: canonical.BarSystem = None,
                    system_low: canonical.BarSystem = None) -> dict:
    """Transfer of a canonical basis element b_s, s aperiodic: expect 0 when
    the identity-shift goes negative, b_t otherwise."""
    if not is_aperiodic(s):
        raise ValueError("expected an aperiodic matrix")
    n, Dhigh = s.n, s.D
    exp = canonical.canonical_schur(s, system_high)
    x = SchurElement.from_terms(n, Dhigh, exp.as_dict())
    y = transfer_map(x, span)
    t = matrix_minus_identity(s)
    # aperiodicity is preserved by the identity shift; lower standard terms
    # of the canonical expansion of b_t may still be periodic
    shift_aperiodic = t is None or is_aperiodic(t)
    if t is None:
        verdict = "matches-(a)" if y.is_zero() else "counterexample"
        expected = None
    else:
        exp_t = canonical.canonical_schur(t, system_low)
        expected = SchurElement.from_terms(n, Dhigh - n, exp_t.as_dict())
        verdict = "matches-(b)" if y == expected else "counterexample"
    return {"matrix": s, "shift": t, "output": y, "expected": expected,
            "verdict": verdict, "shift_aperiodic": shift_aperiodic}
