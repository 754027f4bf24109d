"""Command line surface.

Two entry points: `compute` evaluates a single quantity (statistics,
canonical expansions, crystal graphs, transfer verdicts) and `run-suite`
executes one of the verification suites (relations | crystal | canonical |
schur | transfer), writing a machine-readable report.  Exit code 0 iff
every case passes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict

from . import canonical, crystal, flag_comb, hecke, schur, tmodule, transfer
from . import affine_weyl
from .flag_comb import FlagSymbol, PeriodicMatrix, x_stat, y_stat
from .hecke import HeckeElement
from .laurent import LaurentScalar, ONE, quantum_integer
from .schur import SchurElement, UdotMonomial
from .tmodule import ModuleVector

CACHE_ENV = "AFFINE_SCHUR_CACHE"

SUITES = ("relations", "crystal", "canonical", "schur", "transfer")
FORMATS = ("json", "csv", "dot")


@dataclass
class RunConfig:
    n: int = 2
    D: int = 2
    window: int = 4          # symbol values confined to [1, window]
    band: int = 2            # column offset bound for matrix enumerations
    word_len: int = 4        # monomial / Hecke word length bound
    suite: str = "relations"
    fmt: str = "json"
    cache_dir: str = ""
    psi_flag: tuple = transfer.PSI_FLAG
    commutator: str = "upper"  # [mu_i - mu_{i+1}] acts on weight mu
    workers: int = 4
    seed: int = 0

    def validate(self):
        if self.n < 1 or self.D < 1 or self.window < 1 or self.band < 0:
            raise ValueError("bounds must be positive")
        if self.word_len < 0 or self.workers < 1:
            raise ValueError("bounds must be positive")
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if tuple(self.psi_flag) not in transfer.PSI_CANDIDATES:
            raise ValueError(f"unknown psi flag {self.psi_flag!r}")
        if self.commutator != "upper":
            raise ValueError("only the [mu_i - mu_{i+1}] convention is supported")

    def flags(self) -> dict:
        return {"psi_flag": list(self.psi_flag),
                "commutator": self.commutator,
                "eps_rho": transfer.EPS_RHO.to_json()}


def _qint(m: int) -> LaurentScalar:
    """[m] with the convention [-m] = -[m]."""
    return quantum_integer(m) if m >= 0 else -quantum_integer(-m)


def _case(case_id: str, ok: bool, detail: str = "") -> dict:
    return {"id": case_id, "status": "pass" if ok else "fail", "detail": detail}


# ---------------------------------------------------------------------------
# relations suite: Hecke presentation and the statistics identities


def _hecke_cases(cfg: RunConfig):
    D = cfg.D
    unit = HeckeElement.unit(D)
    vm2 = LaurentScalar.v(-2)
    t = lambda i: HeckeElement.t(affine_weyl.simple(D, i))
    x = lambda j: hecke.x_element(D, j)

    for i in range(1, D):
        yield _case(f"hecke/quadratic/T{i}",
                    hecke.mul(t(i), t(i)) ==
                    t(i).scale(vm2 - ONE) + unit.scale(vm2))
        yield _case(f"hecke/inverse/T{i}",
                    hecke.mul(t(i), hecke.inverse_of_Tw(affine_weyl.simple(D, i))) == unit
                    and hecke.mul(hecke.inverse_of_Tw(affine_weyl.simple(D, i)), t(i)) == unit)
    for i in range(1, D - 1):
        lhs = hecke.mul(hecke.mul(t(i), t(i + 1)), t(i))
        rhs = hecke.mul(hecke.mul(t(i + 1), t(i)), t(i + 1))
        yield _case(f"hecke/braid/T{i}.T{i+1}", lhs == rhs)
    for i in range(1, D):
        for j in range(i + 2, D):
            yield _case(f"hecke/commute/T{i}.T{j}",
                        hecke.mul(t(i), t(j)) == hecke.mul(t(j), t(i)))
    for j in range(1, D + 1):
        yield _case(f"hecke/x-inverse/X{j}",
                    hecke.mul(x(j), hecke.x_inverse(D, j)) == unit)
        for k in range(j + 1, D + 1):
            yield _case(f"hecke/x-commute/X{j}.X{k}",
                        hecke.mul(x(j), x(k)) == hecke.mul(x(k), x(j)))
    for i in range(1, D):
        lhs = hecke.mul(hecke.mul(t(i), x(i)), t(i))
        yield _case(f"hecke/twist/T{i}.X{i}.T{i}", lhs == x(i + 1).scale(vm2))
        for j in range(1, D + 1):
            if j in (i, i + 1):
                continue
            yield _case(f"hecke/x-past/T{i}.X{j}",
                        hecke.mul(t(i), x(j)) == hecke.mul(x(j), t(i)))

    # product words: letterwise left fold equals right fold up to word_len
    words = [()]
    count = 0
    for _ in range(cfg.word_len):
        words = [w + (i,) for w in words for i in range(1, D)]
        for w in words:
            left = unit
            for i in w:
                left = hecke.mul(left, t(i))
            right = unit
            for i in reversed(w):
                right = hecke.mul(t(i), right)
            if left != right:
                yield _case(f"hecke/word/{w}", False, "fold mismatch")
                return
            count += 1
    yield _case("hecke/word-folds", True, f"{count} words, length <= {cfg.word_len}")


def _module_cases(cfg: RunConfig):
    """The defining relations of the modified algebra under the module
    action, checked on every basis vector of the window."""
    n, D = cfg.n, cfg.D
    symbols = flag_comb.enumerate_flag_symbols(n, D, 1, cfg.window)

    bad = 0
    for p in symbols:
        x = ModuleVector.basis(p)
        if tmodule.apply_idempotent(p.weight(), x) != x:
            bad += 1
        other = tuple(m + (1 if k == 0 else -1 if k == 1 else 0)
                      for k, m in enumerate(p.weight()))
        if n > 1 and not tmodule.apply_idempotent(other, x).is_zero():
            bad += 1
    yield _case(f"module/idempotents/n{n}D{D}", bad == 0, f"{len(symbols)} vectors")

    bad = 0
    for p in symbols:
        x = ModuleVector.basis(p)
        for i in range(n):
            shift = tmodule.weight_of_e(n, i)
            up = tuple(m + s for m, s in zip(p.weight(), shift))
            y = tmodule.apply_e(i, x)
            if not y.is_zero() and set(y.weights()) != {up}:
                bad += 1
    yield _case(f"module/weight-shifts/n{n}D{D}", bad == 0, f"{len(symbols)} vectors")

    bad = 0
    forms = {}
    for p in symbols:
        x = ModuleVector.basis(p)
        wt = p.weight()
        for i in range(n):
            for j in range(n):
                diff = (tmodule.apply_e(i, tmodule.apply_f(j, x))
                        - tmodule.apply_f(j, tmodule.apply_e(i, x)))
                expect = ModuleVector.zero(n, D)
                if i == j:
                    m = wt[(i - 1) % n] - wt[i % n]
                    expect = x.scale(_qint(m))
                    forms.setdefault((i, wt), set()).add(m)
                if diff != expect:
                    bad += 1
    constant = all(len(v) == 1 for v in forms.values())
    yield _case(f"module/commutator/n{n}D{D}", bad == 0 and constant,
                f"scalar form [mu_i - mu_{{i+1}}] on {len(forms)} weight spaces")

    bad = 0
    for p in symbols:
        x = ModuleVector.basis(p)
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = 1 - _cartan(n, i, j)
                for kind in ("e", "f"):
                    acc = ModuleVector.zero(n, D)
                    for k in range(m + 1):
                        y = tmodule.apply_divided(i, m - k, x, kind)
                        y = tmodule.apply_divided(j, 1, y, kind)
                        y = tmodule.apply_divided(i, k, y, kind)
                        acc = acc + (y if k % 2 == 0
                                     else y.scale(LaurentScalar.const(-1)))
                    if not acc.is_zero():
                        bad += 1
    yield _case(f"module/serre/n{n}D{D}", bad == 0, f"{len(symbols)} vectors")


def _xdiff_cases(cfg: RunConfig):
    n, D = cfg.n, cfg.D
    symbols = flag_comb.enumerate_flag_symbols(n, D, 1, cfg.window)
    bad = 0
    total = 0
    for p in symbols:
        for k in range(1, D + 1):
            c = p(k)
            minus = p.with_value(k, c - 1)
            plus = p.with_value(k, c + 1)
            lhs_m = x_stat(p) - x_stat(minus)
            rhs_m = (sum(1 for l in p.preimage(c) if l > k)
                     - sum(1 for l in p.preimage(c - 1) if l < k))
            lhs_p = x_stat(p) - x_stat(plus)
            rhs_p = (sum(1 for l in p.preimage(c) if l < k)
                     - sum(1 for l in p.preimage(c + 1) if l > k))
            total += 2
            bad += (lhs_m != rhs_m) + (lhs_p != rhs_p)
    yield _case(f"stats/x-differences/n{n}D{D}", bad == 0,
                f"{total - bad}/{total} positions")


def _ystat_cases(cfg: RunConfig):
    n, D = cfg.n, cfg.D
    bad = []
    for lam in flag_comb.all_dominant(n, D):
        wt = lam.weight()
        if y_stat(flag_comb.delta_matrix(lam)) != 0:
            bad.append((lam, "diag"))
        for i in range(n):
            e_mat, f_mat = flag_comb.generator_matrices(lam, i)
            r_i = n if i == 0 else i          # value class of residue i
            r_next = i + 1                    # residue i+1 lands in [1, n]
            if e_mat is not None and y_stat(e_mat) != wt[r_i - 1] - 1:
                bad.append((lam, i, "e"))
            if f_mat is not None and y_stat(f_mat) != wt[r_next - 1]:
                bad.append((lam, i, "f"))
    yield _case(f"stats/y-generators/n{n}D{D}", not bad, f"violations: {bad}")


def suite_relations(cfg: RunConfig) -> list:
    cases = list(_hecke_cases(cfg))
    cases += list(_module_cases(cfg))
    cases += list(_xdiff_cases(cfg))
    cases += list(_ystat_cases(cfg))
    return cases


# ---------------------------------------------------------------------------
# crystal suite: axioms, oracle agreement, string relations


def _crystal_cases(cfg: RunConfig, i: int) -> list:
    n, D = cfg.n, cfg.D
    symbols = flag_comb.enumerate_flag_symbols(n, D, 1, cfg.window)
    cases = []

    def oracle_case(i):
        agree = 0
        total = 0
        for b in symbols:
            for which, rule in (("f", crystal.kashiwara_f), ("e", crystal.kashiwara_e)):
                total += 1
                if crystal.kashiwara_oracle(b, i, which) == rule(b, i):
                    agree += 1
        return _case(f"crystal/oracle/i{i}", agree == total, f"{agree}/{total}")

    def inverse_case(i):
        bad = 0
        for b in symbols:
            b2 = crystal.kashiwara_f(b, i)
            if b2 is not None and crystal.kashiwara_e(b2, i) != b:
                bad += 1
            b3 = crystal.kashiwara_e(b, i)
            if b3 is not None and crystal.kashiwara_f(b3, i) != b:
                bad += 1
        return _case(f"crystal/inverse/i{i}", bad == 0, f"{len(symbols)} symbols")

    def string_case(i):
        bad = 0
        for b in symbols:
            part = crystal.bracket(b, i)
            nJ, l = len(part.unpaired), part.epsilon()
            av = tmodule.angle_vector(b, i)
            down = crystal.kashiwara_e(b, i)
            expect_e = (ModuleVector.zero(n, D) if down is None
                        else tmodule.angle_vector(down, i).scale(_qint(nJ - l + 1)))
            up = crystal.kashiwara_f(b, i)
            expect_f = (ModuleVector.zero(n, D) if up is None
                        else tmodule.angle_vector(up, i).scale(_qint(l + 1)))
            if tmodule.apply_e(i, av) != expect_e or tmodule.apply_f(i, av) != expect_f:
                bad += 1
        return _case(f"crystal/strings/i{i}", bad == 0, f"{len(symbols)} chains")

    def uniqueness_case(i):
        bad = 0
        for b in symbols:
            part = crystal.bracket(b, i)
            expected = (part.unpaired, part.pairs)
            if crystal.all_bracketings(b, i) != [expected]:
                bad += 1
        return _case(f"crystal/bracketing-unique/i{i}", bad == 0,
                     f"{len(symbols)} symbols")

    cases.append(oracle_case(i))
    cases.append(inverse_case(i))
    cases.append(string_case(i))
    if D <= 3:  # brute-force partition enumeration
        cases.append(uniqueness_case(i))
    return cases


def suite_crystal(cfg: RunConfig) -> list:
    return [c for i in range(cfg.n) for c in _crystal_cases(cfg, i)]


# ---------------------------------------------------------------------------
# canonical suite: both triangular bases and their compatibility


def _expansion_checks(exp, stat) -> str:
    if exp.coeff(exp.leading) != ONE:
        return "leading coefficient is not 1"
    for q, c in exp.terms:
        if q != exp.leading and not c.in_v_times_z_of_v():
            return f"off-diagonal coefficient {c} outside vZ[v]"
        for _, dim in canonical.kl_coefficients(exp, q, stat):
            if dim < 0:
                return f"negative stalk dimension at {q}"
    return ""


def suite_canonical(cfg: RunConfig) -> list:
    n, D = cfg.n, cfg.D
    cases = []

    tsys = canonical.tmodule_system(n, D)
    for p in flag_comb.enumerate_flag_symbols(n, D, 1, cfg.window):
        exp = canonical.canonical_tmodule(p, tsys)
        err = _expansion_checks(exp, x_stat)
        vec = canonical.canonical_tmodule_vector(p, tsys)
        if not err and tmodule.tau(vec) != vec:
            err = "not tau-fixed"
        cases.append(_case(f"canonical/module/{p.values}", not err, err))

    ssys = canonical.schur_system(n, D)
    mats = transfer.band_matrices(n, D, cfg.band)
    sexp = {}
    for s in mats:
        exp = canonical.canonical_schur(s, ssys)
        sexp[s] = exp
        err = _expansion_checks(exp, y_stat)
        if not err:
            el = SchurElement.from_terms(n, D, exp.as_dict())
            if schur.tau_schur(el) != el:
                err = "not tau-fixed"
        cases.append(_case(f"canonical/algebra/{dict(s.entries)}", not err, err))

    # b_s([lambda]) is 0 or a canonical module basis vector (blockwise
    # v^{x_lambda} compatibility of the two bases)
    module_table = {}
    for s, exp in sexp.items():
        lam = flag_comb.dominant_from_weight(n, D, s.col_weight())
        el = SchurElement.from_terms(n, D, exp.as_dict())
        img = schur.act_on_module(el, ModuleVector.basis(lam))
        if img.is_zero():
            ok, note = True, "0"
        else:
            consts = {p for p, c in img.terms.items() if c.constant_term() != 0}
            if len(consts) != 1:
                ok, note = False, "image not congruent to a basis class mod v"
            else:
                p, = consts
                if p not in module_table:
                    module_table[p] = canonical.canonical_tmodule_vector(p, tsys)
                ok = img == module_table[p]
                note = f"b_{list(p.values)}" if ok else "image is not canonical"
        cases.append(_case(f"canonical/compat/{dict(s.entries)}", ok, note))
    return cases


# ---------------------------------------------------------------------------
# schur suite: the homomorphism annihilates the defining relations


def _weights(n: int, D: int) -> list:
    return [lam.weight() for lam in flag_comb.all_dominant(n, D)]


def _mono(n: int, letters) -> UdotMonomial:
    return UdotMonomial(n, letters)


def _cartan(n: int, i: int, j: int) -> int:
    if n == 2:
        return 2 if i == j else -2
    d = (i - j) % n
    if d == 0:
        return 2
    return -1 if d in (1, n - 1) else 0


def suite_schur(cfg: RunConfig) -> list:
    n, D = cfg.n, cfg.D
    cases = []
    zero = SchurElement.zero(n, D)

    def img(letters):
        return schur.phi_monomial(_mono(n, letters), D)

    # idempotents and weight shifts
    bad = []
    for mu in _weights(n, D):
        if img((("a", mu), ("a", mu))) != img((("a", mu),)):
            bad.append(("aa", mu))
        for nu in _weights(n, D):
            if nu != mu and not img((("a", nu), ("a", mu))).is_zero():
                bad.append(("orth", nu, mu))
    cases.append(_case("phi/idempotents", not bad, f"violations: {bad}"))

    bad = []
    for mu in _weights(n, D):
        for i in range(n):
            shift = tmodule.weight_of_e(n, i)
            up = tuple(m + s for m, s in zip(mu, shift))
            if any(m < 0 for m in up):
                continue
            if img((("a", up), ("e", i, 1), ("a", mu))) != img((("e", i, 1), ("a", mu))):
                bad.append(("e", i, mu))
            if img((("a", mu), ("f", i, 1), ("a", up))) != img((("f", i, 1), ("a", up))):
                bad.append(("f", i, mu))
    cases.append(_case("phi/weight-shifts", not bad, f"violations: {bad}"))

    # commutator [e_i, f_j] a_mu = delta_ij [mu_i - mu_{i+1}] a_mu
    bad = []
    for mu in _weights(n, D):
        for i in range(n):
            for j in range(n):
                lhs = (img((("e", i, 1), ("f", j, 1), ("a", mu)))
                       - img((("f", j, 1), ("e", i, 1), ("a", mu))))
                rhs = zero
                if i == j:
                    r = n if i == 0 else i
                    m = mu[r - 1] - mu[r % n]
                    rhs = img((("a", mu),)).scale(_qint(m))
                if lhs != rhs:
                    bad.append((i, j, mu))
    cases.append(_case("phi/commutator", not bad,
                       f"violations: {bad}; scalar form [mu_i - mu_{{i+1}}]"))

    # Serre relations (affine Cartan matrix of the cyclic quiver)
    bad = []
    for mu in _weights(n, D):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                m = 1 - _cartan(n, i, j)
                for kind in ("e", "f"):
                    acc = zero
                    for k in range(m + 1):
                        term = img(((kind, i, k), (kind, j, 1),
                                    (kind, i, m - k), ("a", mu)))
                        acc = acc + (term if k % 2 == 0
                                     else term.scale(LaurentScalar.const(-1)))
                    if not acc.is_zero():
                        bad.append((kind, i, j, mu))
    cases.append(_case("phi/serre", not bad, f"violations: {bad}"))

    # tau equivariance on generators and random monomials
    bad = []
    for mu in _weights(n, D):
        for letters in [(("a", mu),)] + [((g, i, 1), ("a", mu))
                                         for g in "ef" for i in range(n)]:
            x = img(letters)
            if schur.tau_schur(x) != x:
                bad.append(letters)
    rng = random.Random(cfg.seed)
    checked = 0
    while checked < 200:
        mu = rng.choice(_weights(n, D))
        length = rng.randint(0, cfg.word_len)
        letters = tuple((rng.choice("ef"), rng.randrange(n), 1)
                        for _ in range(length)) + (("a", mu),)
        x = img(letters)
        checked += 1
        if schur.tau_schur(x) != x:
            bad.append(letters)
    cases.append(_case("phi/tau-equivariance", not bad,
                       f"generators + {checked} random monomials; violations: {bad}"))

    # action through phi equals the direct module formulas
    bad = 0
    total = 0
    for m in transfer.enumerate_monomials(n, D, cfg.word_len):
        x = schur.phi_monomial(m, D)
        for lam in flag_comb.all_dominant(n, D):
            direct = ModuleVector.basis(lam)
            for g in reversed(m.letters):
                if g[0] == "a":
                    direct = tmodule.apply_idempotent(g[1], direct)
                else:
                    direct = tmodule.apply_divided(g[1], g[2], direct, g[0])
            via = (ModuleVector.zero(n, D) if x.is_zero()
                   else schur.act_on_module(x, ModuleVector.basis(lam)))
            total += 1
            if via != direct:
                bad += 1
    cases.append(_case("phi/action-consistency", bad == 0, f"{total - bad}/{total}"))
    return cases


# ---------------------------------------------------------------------------
# transfer suite


def suite_transfer(cfg: RunConfig) -> list:
    n = cfg.n
    cases = []

    flags = transfer.calibrate_flags(n=n, Ds=(1, 2), max_len=3)
    psis = sorted({f[0] for f in flags})
    cases.append(_case("transfer/calibration",
                       psis == [tuple(cfg.psi_flag)],
                       f"surviving psi flags {psis}, rho candidates "
                       f"{len({str(f[1]) for f in flags})}"))

    for D in (1, 2):
        bad = 0
        total = 0
        for m in transfer.enumerate_monomials(n, D + n, cfg.word_len):
            red = transfer.reduce_monomial(m)
            expected = (SchurElement.zero(n, D) if red is None
                        else schur.phi_monomial(red, D))
            total += 1
            if transfer.transfer_route_b(m, D) != expected:
                bad += 1
        cases.append(_case(f"transfer/composition/D{D}", bad == 0,
                           f"{total - bad}/{total} monomials, length <= {cfg.word_len}"))

    span = transfer.MonomialSpan(n, cfg.D + n)
    bad = 0
    total = 0
    for m in transfer.enumerate_monomials(n, cfg.D + n, 2):
        x = schur.phi_monomial(m, cfg.D + n)
        if x.is_zero():
            continue
        total += 1
        if transfer.transfer_map(x, span) != transfer.transfer_route_b(m, cfg.D):
            bad += 1
    cases.append(_case("transfer/dual-route", bad == 0, f"{total - bad}/{total}"))

    diag = [s for s in transfer.band_matrices(n, cfg.D + n, cfg.band)
            if all(s.lookup(i, i) >= 1 for i in range(1, n + 1))]
    bad = []
    skipped = 0
    for s in diag:
        r = transfer.check_leading_term(s, span)
        if r["ok"] is None:
            skipped += 1
        elif not r["ok"]:
            bad.append(dict(s.entries))
    cases.append(_case("transfer/leading-term", not bad,
                       f"{len(diag) - len(bad) - skipped}/{len(diag)} matrices ok, "
                       f"{skipped} outside the computable domain; failures {bad}"))

    sys_high = canonical.schur_system(n, cfg.D + n)
    sys_low = canonical.schur_system(n, cfg.D)
    mats = transfer.aperiodic_band_matrices(n, cfg.D + n, cfg.band)
    verdicts = {}
    bad = []
    for s in mats:
        r = transfer.check_canonical_transfer(s, span, sys_high, sys_low)
        verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
        if r["verdict"] == "counterexample" or not r["shift_aperiodic"]:
            bad.append(dict(s.entries))
    cases.append(_case("transfer/canonical-sweep", not bad,
                       f"{len(mats)} aperiodic matrices, verdicts {verdicts}"))
    return cases


# ---------------------------------------------------------------------------
# suite runner and report assembly


_SUITE_FN = {"relations": suite_relations, "crystal": suite_crystal,
             "canonical": suite_canonical, "schur": suite_schur,
             "transfer": suite_transfer}

# suites whose cases share mutable workspaces run single-threaded
_SEQUENTIAL = {"canonical", "transfer"}


def _suite_jobs(cfg: RunConfig) -> list:
    """Independent chunks of a suite, safe to run on separate workers."""
    if cfg.suite == "relations":
        return [lambda: list(_hecke_cases(cfg)),
                lambda: list(_module_cases(cfg)),
                lambda: list(_xdiff_cases(cfg)),
                lambda: list(_ystat_cases(cfg))]
    if cfg.suite == "crystal":
        return [(lambda i=i: _crystal_cases(cfg, i)) for i in range(cfg.n)]
    return [lambda: _SUITE_FN[cfg.suite](cfg)]


def run_suite(cfg: RunConfig) -> dict:
    cfg.validate()
    if cfg.suite in _SEQUENTIAL or cfg.workers == 1:
        cases = _SUITE_FN[cfg.suite](cfg)
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            cases = [c for chunk in pool.map(lambda job: job(), _suite_jobs(cfg))
                     for c in chunk]
    cases.sort(key=lambda c: c["id"])
    return {"suite": cfg.suite,
            "config": {"n": cfg.n, "D": cfg.D, "window": cfg.window,
                       "band": cfg.band, "word_len": cfg.word_len,
                       **cfg.flags()},
            "cases": cases}


def report_ok(report: dict) -> bool:
    return all(c["status"] == "pass" for c in report["cases"])


def report_to_text(report: dict, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["id", "status", "detail"])
        for c in report["cases"]:
            w.writerow([c["id"], c["status"], c["detail"]])
        return buf.getvalue()
    return json.dumps(report, sort_keys=True, indent=1)


# ---------------------------------------------------------------------------
# compute subcommand


def _parse_symbol(text: str) -> FlagSymbol:
    try:
        return FlagSymbol.from_text(text)
    except Exception as e:
        raise SystemExit(f"cannot parse flag symbol {text!r}: {e}")


def _parse_matrix(text: str) -> PeriodicMatrix:
    try:
        parts = text.split(";")
        n, D = int(parts[0][2:]), int(parts[1][2:])
        cells = json.loads(parts[2])
        return PeriodicMatrix.make(n, D, {(i, j): v for i, j, v in cells})
    except SystemExit:
        raise
    except Exception as e:
        raise SystemExit(f"cannot parse matrix {text!r} "
                         f"(expected n=..;D=..;[[i,j,v],...]): {e}")


def _cache(args) -> "canonical.CanonicalCache | None":
    root = args.cache or os.environ.get(CACHE_ENV, "")
    return canonical.CanonicalCache(root) if root else None


def _cached_expansion(cache, n, D, lam_wt, mu_wt, key, solve):
    if cache is None:
        return canonical.expansion_to_json(solve())
    stored = cache.load(n, D, lam_wt, mu_wt).get(key)
    if stored is not None:
        return stored
    payload = canonical.expansion_to_json(solve())
    cache.store(n, D, lam_wt, mu_wt, key, payload)
    return payload


def compute(args) -> int:
    out = sys.stdout
    if args.entity == "xstat":
        p = _parse_symbol(args.p)
        print(x_stat(p), file=out)
    elif args.entity == "ystat":
        s = _parse_matrix(args.s)
        print(y_stat(s), file=out)
    elif args.entity == "canonical-t":
        p = _parse_symbol(args.p)
        payload = _cached_expansion(
            _cache(args), p.n, p.D, p.weight(), None, p.to_text(),
            lambda: canonical.canonical_tmodule(p))
        print(json.dumps(payload, sort_keys=True, indent=1), file=out)
    elif args.entity == "canonical-s":
        s = _parse_matrix(args.s)
        lam, mu = canonical.block_of(s)
        key = json.dumps(s.to_json()["entries"])
        payload = _cached_expansion(
            _cache(args), s.n, s.D, lam.weight(), mu.weight(), key,
            lambda: canonical.canonical_schur(s))
        print(json.dumps(payload, sort_keys=True, indent=1), file=out)
    elif args.entity == "crystal-graph":
        graph = crystal.crystal_graph(args.n, args.D, 1, args.window)
        if args.format == "dot":
            print(crystal.graph_to_dot(graph), file=out)
        else:
            print(json.dumps(crystal.graph_to_json(graph), sort_keys=True,
                             indent=1), file=out)
    elif args.entity == "transfer":
        s = _parse_matrix(args.s)
        if s.D <= s.n:
            raise SystemExit("transfer lowers the rank by n; need D > n")
        span = transfer.MonomialSpan(s.n, s.D)
        r = transfer.check_canonical_transfer(s, span)
        print(json.dumps(
            {"matrix": s.to_json(),
             "verdict": r["verdict"],
             "shift": r["shift"].to_json() if r["shift"] is not None else None,
             "output": r["output"].to_json()},
            sort_keys=True, indent=1), file=out)
    else:
        raise SystemExit(f"unknown entity {args.entity!r}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="affine-schur",
        description="exact affine q-Schur computations and verification suites")
    sub = ap.add_subparsers(dest="command", required=True)

    rs = sub.add_parser("run-suite", help="run a verification suite")
    rs.add_argument("suite", choices=SUITES)
    rs.add_argument("--n", type=int, default=2)
    rs.add_argument("--D", type=int, default=2)
    rs.add_argument("--window", type=int, default=4)
    rs.add_argument("--band", type=int, default=2)
    rs.add_argument("--word-len", type=int, default=4)
    rs.add_argument("--format", choices=("json", "csv"), default="json")
    rs.add_argument("--workers", type=int, default=4)
    rs.add_argument("--seed", type=int, default=0)
    rs.add_argument("--psi", choices=("offset:-1", "offset:1", "window:-1",
                                      "window:1", "weight:0"),
                    default="offset:-1",
                    help="block twist convention of the transfer composition")
    rs.add_argument("--commutator", choices=("upper",), default="upper",
                    help="commutator scalar convention [mu_i - mu_{i+1}]")
    rs.add_argument("--cache", default="", help=f"cache root (or ${CACHE_ENV})")
    rs.add_argument("--out", default="", help="report path (default stdout)")

    cp = sub.add_parser("compute", help="compute a single quantity")
    cp.add_argument("entity", choices=("xstat", "ystat", "canonical-t",
                                       "canonical-s", "crystal-graph", "transfer"))
    cp.add_argument("--p", default="", help="flag symbol, n=..;D=..;[v1,...,vD]")
    cp.add_argument("--s", default="", help="matrix, n=..;D=..;[[i,j,v],...]")
    cp.add_argument("--n", type=int, default=2)
    cp.add_argument("--D", type=int, default=2)
    cp.add_argument("--window", type=int, default=4)
    cp.add_argument("--format", choices=("json", "dot"), default="json")
    cp.add_argument("--cache", default="", help=f"cache root (or ${CACHE_ENV})")
    return ap


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "compute":
        return compute(args)

    name, sign = args.psi.split(":")
    cfg = RunConfig(n=args.n, D=args.D, window=args.window, band=args.band,
                    word_len=args.word_len, suite=args.suite, fmt=args.format,
                    cache_dir=args.cache or os.environ.get(CACHE_ENV, ""),
                    psi_flag=(name, int(sign)), commutator=args.commutator,
                    workers=args.workers, seed=args.seed)
    try:
        cfg.validate()
    except ValueError as e:
        print(f"invalid config: {e}", file=sys.stderr)
        return 2
    report = run_suite(cfg)
    text = report_to_text(report, cfg.fmt)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text + "\n")
    return 0 if report_ok(report) else 1


if __name__ == "__main__":
    sys.exit(main())
