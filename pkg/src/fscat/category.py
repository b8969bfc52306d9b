"""Skeletal fusion category data model and axiom validation.

A category is specified by exact finite data: simple-object labels, the
fusion multiplicities N_{ab}^c, the F-symbol family [F^{abc}_d]_{ef} in the
multiplicity-free skeletal model, and optionally one nonzero pivotal
coefficient t(a) per simple.  All scalars live in one cyclotomic field
Q(zeta_N) fixed by the category's conductor.

Conventions used by the whole package:

* the unit object is strict, and every F-block with a unit among the first
  three labels is an identity matrix;
* [F^{abc}_d]_{ef} is the coefficient of the associator
  (a @ b) @ c -> a @ (b @ c) between fusion-channel bases, with e the
  channel of a @ b and f the channel of b @ c;
* coevaluation of a is normalized to coefficient 1 on the (a, dual a)
  channel of the unit; evaluation then carries 1/[F^{a,a*,a}_a]_{11}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cyclo import Cyc
from .linalg import mat_inv

ONE = Cyc.one()
ZERO = Cyc.zero()


class SpecError(ValueError):
    """Structurally malformed category data."""


class MultiplicityError(SpecError):
    """Fusion multiplicities above 1, which the F-symbol machinery rejects."""


class MissingPivotalError(ValueError):
    """An operation needed pivotal data that the category does not carry."""


class FusionRing:
    """Fusion ring on a finite label set; N may exceed 1 here.

    The F-symbol machinery downstream is multiplicity-free, but the ring
    itself supports general nonnegative multiplicities so that
    Frobenius-Perron data can be computed for any ring.
    """

    def __init__(self, labels, unit, dual, multiplicities):
        self.labels = tuple(labels)
        self.unit = unit
        self.dual = dict(dual)
        self.N = {k: int(v) for k, v in multiplicities.items() if v}
        self._index = {a: i for i, a in enumerate(self.labels)}
        self._channels = {}

    def index(self, a):
        return self._index[a]

    def n(self, a, b, c) -> int:
        return self.N.get((a, b, c), 0)

    def channels(self, a, b):
        """Labels c with N_{ab}^c > 0, in label order."""
        key = (a, b)
        got = self._channels.get(key)
        if got is None:
            got = tuple(c for c in self.labels if (a, b, c) in self.N)
            self._channels[key] = got
        return got

    def admissible_triples(self):
        return sorted(self.N, key=lambda k: tuple(self._index[x] for x in k))

    def is_multiplicity_free(self) -> bool:
        return all(v == 1 for v in self.N.values())

    def structural_errors(self):
        errs = []
        if self.unit not in self._index:
            errs.append(f"unit {self.unit!r} is not a listed label")
        if len(set(self.labels)) != len(self.labels):
            errs.append("duplicate labels")
        for a in self.labels:
            if a not in self.dual:
                errs.append(f"dual of {a!r} is not defined")
        for a, b in self.dual.items():
            if a not in self._index or b not in self._index:
                errs.append(f"dual entry {a!r} -> {b!r} uses unknown labels")
        for (a, b, c), v in self.N.items():
            if any(x not in self._index for x in (a, b, c)):
                errs.append(f"fusion entry {(a, b, c)} uses unknown labels")
            if v < 0:
                errs.append(f"negative multiplicity at {(a, b, c)}")
        return errs

    def ring_axiom_checks(self):
        """Exact checks of the fusion-ring axioms, as (name, ok, detail)."""
        out = []
        unit_ok, unit_bad = True, ""
        for a in self.labels:
            for b in self.labels:
                if self.n(self.unit, a, b) != (1 if a == b else 0) or \
                   self.n(a, self.unit, b) != (1 if a == b else 0):
                    unit_ok, unit_bad = False, f"unit row fails at ({a},{b})"
        out.append(("unit", unit_ok, unit_bad))

        dual_ok, dual_bad = True, ""
        for a in self.labels:
            if self.dual.get(self.dual.get(a)) != a:
                dual_ok, dual_bad = False, f"dual not involutive at {a}"
        for a in self.labels:
            for b in self.labels:
                want = 1 if b == self.dual.get(a) else 0
                if self.n(a, b, self.unit) != want:
                    dual_ok, dual_bad = False, f"N_({a},{b})^unit != {want}"
        if self.dual.get(self.unit) != self.unit:
            dual_ok, dual_bad = False, "dual(unit) != unit"
        out.append(("dual", dual_ok, dual_bad))

        assoc_ok, assoc_bad = True, ""
        for a in self.labels:
            for b in self.labels:
                for c in self.labels:
                    for d in self.labels:
                        lhs = sum(self.n(a, b, e) * self.n(e, c, d) for e in self.labels)
                        rhs = sum(self.n(b, c, f) * self.n(a, f, d) for f in self.labels)
                        if lhs != rhs:
                            assoc_ok = False
                            assoc_bad = f"associativity fails at ({a},{b},{c})->{d}"
        out.append(("associativity", assoc_ok, assoc_bad))
        return out


class FSymbolSet:
    """Sparse F-symbol table; omitted admissible entries default to 1."""

    def __init__(self, entries):
        self.entries = dict(entries)

    def get(self, key):
        return self.entries.get(key, ONE)


@dataclass(frozen=True)
class PivotalData:
    """The scalar by which the pivotal isomorphism acts on each simple."""

    t: dict

    def __call__(self, a):
        return self.t[a]


class ObjectExpr:
    """Formal direct sum of simples with nonnegative multiplicities."""

    def __init__(self, terms):
        self.terms = {a: int(m) for a, m in terms.items() if m}
        if not self.terms:
            raise ValueError("the zero object is rejected here")
        if any(m < 0 for m in terms.values()):
            raise ValueError("multiplicities must be nonnegative")

    @staticmethod
    def simple(a) -> "ObjectExpr":
        return ObjectExpr({a: 1})

    @staticmethod
    def parse(text: str, labels) -> "ObjectExpr":
        """Grammar: ``label``, ``k*label``, joined by ``+``; whitespace-free."""
        terms = {}
        for piece in text.replace(" ", "").split("+"):
            if not piece:
                raise ValueError(f"empty summand in object expression {text!r}")
            if "*" in piece:
                k, _, name = piece.partition("*")
                if not k.isdigit():
                    raise ValueError(f"bad multiplicity {k!r} in {text!r}")
                mult = int(k)
            else:
                mult, name = 1, piece
            if name not in labels:
                raise ValueError(f"unknown label {name!r} in object expression")
            terms[name] = terms.get(name, 0) + mult
        return ObjectExpr(terms)

    def support(self):
        return tuple(a for a in self.terms)

    def multiplicity(self, a) -> int:
        return self.terms.get(a, 0)

    def __str__(self):
        return "+".join(a if m == 1 else f"{m}*{a}"
                        for a, m in self.terms.items())

    def __repr__(self):
        return f"ObjectExpr({self.terms!r})"


class Category:
    """A skeletal pivotal fusion category given by exact finite data.

    Instances are immutable after construction; derived data (fusion-path
    bases, F-blocks, structural matrices) is memoized in ``_cache``, whose
    writers are idempotent, so concurrent readers are safe.
    """

    def __init__(self, name, ring, f_symbols, pivotal=None, conductor=1):
        self.name = name
        self.ring = ring
        self.F = f_symbols
        self.pivotal = pivotal
        self.conductor = int(conductor)
        self._cache = {}

    # -- basic views ----------------------------------------------------

    @property
    def labels(self):
        return self.ring.labels

    @property
    def unit(self):
        return self.ring.unit

    def dual(self, a):
        return self.ring.dual[a]

    def n(self, a, b, c):
        return self.ring.n(a, b, c)

    def channels(self, a, b):
        return self.ring.channels(a, b)

    def label_index(self, a):
        return self.ring.index(a)

    def require_pivotal(self) -> PivotalData:
        if self.pivotal is None:
            raise MissingPivotalError(f"category {self.name!r} has no pivotal data")
        return self.pivotal

    def t(self, a) -> Cyc:
        return self.require_pivotal().t[a]

    def cached(self, key, build):
        got = self._cache.get(key)
        if got is None:
            got = build()
            self._cache[key] = got
        return got

    def with_pivotal(self, pivotal, suffix=None) -> "Category":
        name = self.name if suffix is None else f"{self.name}{suffix}"
        return Category(name, self.ring, self.F, pivotal, self.conductor)

    # -- F-symbol access --------------------------------------------------

    def f_rowcols(self, a, b, c, d):
        """(e-list, f-list) of admissible channels for the block [F^{abc}_d]."""
        def build():
            es = tuple(e for e in self.channels(a, b) if self.n(e, c, d))
            fs = tuple(f for f in self.channels(b, c) if self.n(a, f, d))
            return es, fs
        return self.cached(("frc", a, b, c, d), build)

    def f_block(self, a, b, c, d):
        """The matrix [F^{abc}_d] over (e-list, f-list)."""
        def build():
            es, fs = self.f_rowcols(a, b, c, d)
            return [[self.F.get((a, b, c, d, e, f)) for f in fs] for e in es]
        return self.cached(("fblk", a, b, c, d), build)

    def f_inv_block(self, a, b, c, d):
        """Inverse block, rows indexed by the f-list, columns by the e-list."""
        def build():
            return mat_inv(self.f_block(a, b, c, d))
        return self.cached(("finv", a, b, c, d), build)

    def f_entry(self, a, b, c, d, e, f) -> Cyc:
        """[F^{abc}_d]_{ef}, or exact zero when the tuple is inadmissible."""
        es, fs = self.f_rowcols(a, b, c, d)
        if e not in es or f not in fs:
            return ZERO
        return self.F.get((a, b, c, d, e, f))

    def f_inv_entry(self, a, b, c, d, f, e) -> Cyc:
        es, fs = self.f_rowcols(a, b, c, d)
        if e not in es or f not in fs:
            return ZERO
        return self.f_inv_block(a, b, c, d)[fs.index(f)][es.index(e)]

    def ev_coefficient(self, a) -> Cyc:
        """Scalar on evaluation dual(a) (x) a -> unit fixed by the zig-zags."""
        def build():
            top = self.f_entry(a, self.dual(a), a, a, self.unit, self.unit)
            if not top:
                raise SpecError(
                    f"[F^({a},{self.dual(a)},{a})_{a}] vanishes at the unit "
                    "channel; duality cannot be normalized")
            return top.inverse()
        return self.cached(("ev", a), build)

    def __repr__(self):
        piv = "with pivotal" if self.pivotal is not None else "no pivotal"
        return f"Category({self.name!r}, {len(self.labels)} simples, {piv})"


# -- validation ----------------------------------------------------------


@dataclass
class CheckItem:
    group: str
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    category: str
    items: list = field(default_factory=list)
    structural_errors: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.structural_errors and all(i.ok for i in self.items)

    def first_failure(self):
        if self.structural_errors:
            return self.structural_errors[0]
        for i in self.items:
            if not i.ok:
                return f"{i.group}/{i.name}: {i.detail}"
        return None

    def lines(self):
        out = [f"category: {self.category}"]
        for err in self.structural_errors:
            out.append(f"STRUCTURAL {err}")
        for i in self.items:
            mark = "PASS" if i.ok else "FAIL"
            detail = f"  [{i.detail}]" if (i.detail and not i.ok) else ""
            out.append(f"{mark} {i.group}: {i.name}{detail}")
        out.append("valid" if self.valid else "INVALID")
        return out


def validate(category: Category) -> ValidationReport:
    """Exact validation of all axiom groups; see the spec file loader for
    the structural layer that runs before this on raw input."""
    report = ValidationReport(category=category.name)
    errs = list(category.ring.structural_errors())
    ring = category.ring

    if not ring.is_multiplicity_free():
        errs.append("fusion multiplicities above 1 are not supported by the "
                    "F-symbol machinery")
    for key in category.F.entries:
        if len(key) != 6:
            errs.append(f"malformed F key {key!r}")
            continue
        a, b, c, d, e, f = key
        if any(x not in ring._index for x in key):
            errs.append(f"F entry {key} uses unknown labels")
            continue
        if not (ring.n(a, b, e) and ring.n(e, c, d) and ring.n(b, c, f)
                and ring.n(a, f, d)):
            errs.append(f"F entry {key} is inadmissible for the fusion rules")
    for key, value in category.F.entries.items():
        if value.reduced_key()[0] and category.conductor % value.reduced_key()[0]:
            errs.append(f"F entry {key} does not lie in Q(zeta_{category.conductor})")
    if category.pivotal is not None:
        for a in ring.labels:
            if a not in category.pivotal.t:
                errs.append(f"pivotal coefficient missing for {a!r}")
    report.structural_errors = errs
    if errs:
        return report

    for name, ok, detail in ring.ring_axiom_checks():
        report.items.append(CheckItem("ring", name, ok, detail))

    # F-matrix sanity: unit normalization, invertibility, duality entries
    unit = ring.unit
    ok, detail = True, ""
    for (a, b, c, d) in _admissible_f_tuples(category):
        es, fs = category.f_rowcols(a, b, c, d)
        if unit in (a, b, c):
            blk = category.f_block(a, b, c, d)
            if len(es) != len(fs) or any(
                    blk[i][j] != (1 if i == j else 0)
                    for i in range(len(es)) for j in range(len(fs))):
                ok, detail = False, f"unit block [F^({a},{b},{c})_{d}] is not the identity"
    report.items.append(CheckItem("F", "unit normalization", ok, detail))

    ok, detail = True, ""
    for (a, b, c, d) in _admissible_f_tuples(category):
        es, fs = category.f_rowcols(a, b, c, d)
        if len(es) != len(fs):
            ok, detail = False, f"[F^({a},{b},{c})_{d}] is not square"
            continue
        try:
            category.f_inv_block(a, b, c, d)
        except ValueError:
            ok, detail = False, f"[F^({a},{b},{c})_{d}] is singular"
    report.items.append(CheckItem("F", "invertibility", ok, detail))

    ok, detail = True, ""
    for a in ring.labels:
        try:
            category.ev_coefficient(a)
        except SpecError as exc:
            ok, detail = False, str(exc)
    report.items.append(CheckItem("F", "duality normalization", ok, detail))

    bad = pentagon_failures(category, stop_after=1)
    report.items.append(CheckItem(
        "pentagon", "pentagon identity", not bad,
        f"first failing 5-tuple (a,b,c,d,e) = {bad[0]}" if bad else ""))

    if category.pivotal is not None:
        report.items.extend(_pivotal_checks(category))
    return report


def _admissible_f_tuples(category: Category):
    def build():
        ring = category.ring
        out = []
        for a in ring.labels:
            for b in ring.labels:
                chab = ring.channels(a, b)
                if not chab:
                    continue
                for c in ring.labels:
                    ds = sorted({d for e in chab for d in ring.channels(e, c)},
                                key=ring.index)
                    for d in ds:
                        out.append((a, b, c, d))
        return tuple(out)
    return category.cached(("ftuples",), build)


def pentagon_failures(category: Category, stop_after=None):
    """Admissible 5-tuples (a,b,c,d,e) where the pentagon identity fails.

    The identity checked, with all products exact:
        [F^{fcd}_e]_{gl} [F^{abl}_e]_{fk}
            = sum_h [F^{abc}_g]_{fh} [F^{ahd}_e]_{gk} [F^{bcd}_k]_{hl}
    over source labelings (f, g) and target labelings (l, k).
    """
    ring = category.ring
    fails = []
    for a in ring.labels:
        for b in ring.labels:
            if not ring.channels(a, b):
                continue
            for c in ring.labels:
                for d in ring.labels:
                    for e in ring.labels:
                        sources = [(f, g) for f in ring.channels(a, b)
                                   for g in ring.channels(f, c) if ring.n(g, d, e)]
                        if not sources:
                            continue
                        targets = [(l, k) for l in ring.channels(c, d)
                                   for k in ring.channels(b, l) if ring.n(a, k, e)]
                        bad = False
                        for f, g in sources:
                            for l, k in targets:
                                lhs = category.f_entry(f, c, d, e, g, l) * \
                                    category.f_entry(a, b, l, e, f, k)
                                rhs = ZERO
                                for h in ring.channels(b, c):
                                    rhs = rhs + (category.f_entry(a, b, c, g, f, h)
                                                 * category.f_entry(a, h, d, e, g, k)
                                                 * category.f_entry(b, c, d, k, h, l))
                                if lhs != rhs:
                                    bad = True
                                    break
                            if bad:
                                break
                        if bad:
                            fails.append((a, b, c, d, e))
                            if stop_after and len(fails) >= stop_after:
                                return fails
    return fails


def _pivotal_checks(category: Category):
    from .homcalc import double_dual_coefficient  # one convention source

    piv = category.pivotal
    unit = category.unit
    items = []

    ok = piv.t[unit] == 1
    items.append(CheckItem("pivotal", "t(unit) = 1", ok))

    ok, detail = True, ""
    for a in category.labels:
        if not piv.t[a]:
            ok, detail = False, f"t({a}) = 0"
    items.append(CheckItem("pivotal", "coefficients nonzero", ok, detail))

    ok, detail = True, ""
    for a in category.labels:
        if piv.t[category.dual(a)] * piv.t[a] != 1:
            ok, detail = False, f"t(dual {a}) != t({a})^-1"
    items.append(CheckItem("pivotal", "dual-inverse", ok, detail))

    ok, detail = True, ""
    for (a, b, c) in category.ring.admissible_triples():
        delta = double_dual_coefficient(category, a, b, c)
        if piv.t[a] * piv.t[b] * delta != piv.t[c]:
            ok, detail = False, f"monoidality fails on channel ({a},{b};{c})"
            break
    items.append(CheckItem("pivotal", "monoidality", ok, detail))
    return items


# -- Frobenius-Perron dimensions ------------------------------------------


def fp_dimension(category: Category, obj) -> float:
    """Largest nonnegative eigenvalue of the left-multiplication matrix.

    Power iteration from the all-ones vector on the shifted matrix rho + I
    (the shift removes periodicity, e.g. for invertible objects); relative
    tolerance 1e-12, iteration cap 10^5 with failure signaled explicitly.
    """
    if isinstance(obj, str):
        obj = ObjectExpr.simple(obj)
    ring = category.ring
    labels = ring.labels
    for a in obj.support():
        if a not in ring._index:
            raise ValueError(f"unknown label {a!r}")
    rho = [[sum(obj.multiplicity(a) * ring.n(a, vi, vj) for a in obj.support())
            for vj in labels] for vi in labels]
    vec = [1.0] * len(labels)
    prev = None
    stable = 0
    for _ in range(100_000):
        nxt = [sum(rho[i][j] * vec[j] for j in range(len(labels))) + vec[i]
               for i in range(len(labels))]
        est = max(abs(x) for x in nxt)  # vec is sup-normalized, so this is the quotient
        if est == 0.0:
            raise ArithmeticError("zero vector in power iteration")
        vec = [x / est for x in nxt]
        if prev is not None and abs(est - prev) <= 1e-13 * max(1.0, abs(est)):
            stable += 1
            if stable >= 4:
                return est - 1.0
        else:
            stable = 0
        prev = est
    raise ArithmeticError("power iteration did not converge within 10^5 steps")


# -- gauge transformation and reversal -------------------------------------


class GaugeError(ValueError):
    """Missing or zero gauge entries."""


def _gauge_value(u, ring, a, b, c) -> Cyc:
    if a == ring.unit or b == ring.unit:
        got = u.get((a, b, c))
        if got is not None and got != 1:
            raise GaugeError(f"gauge entry {(a, b, c)} must be 1 on unit channels")
        return ONE
    got = u.get((a, b, c))
    if got is None:
        raise GaugeError(f"gauge entry missing for channel {(a, b, c)}")
    got = Cyc._promote(got)
    if not got:
        raise GaugeError(f"gauge entry for channel {(a, b, c)} is zero")
    return got


def gauge_transform(category: Category, u) -> Category:
    """Rescale the fusion-channel bases by u and transport F and t.

    F-symbols pick up the standard four gauge factors.  The pivotal
    coefficients are transported so that the identity-on-labels functor with
    structure u preserves the pivotal structure; operationally the duality
    transformation of that functor is the ratio of evaluation normalizations
    times the gauge entry on the (dual a, a; unit) channel.
    """
    ring = category.ring
    entries = {}
    for (a, b, c, d) in _admissible_f_tuples(category):
        es, fs = category.f_rowcols(a, b, c, d)
        for e in es:
            for f in fs:
                val = category.F.get((a, b, c, d, e, f)) \
                    * _gauge_value(u, ring, a, b, e) \
                    * _gauge_value(u, ring, e, c, d) \
                    / (_gauge_value(u, ring, b, c, f) * _gauge_value(u, ring, a, f, d))
                if val != 1:
                    entries[(a, b, c, d, e, f)] = val
    conductor = category.conductor
    for val in entries.values():
        conductor = math.lcm(conductor, val.reduced_key()[0])
    out = Category(f"{category.name}~gauged", ring, FSymbolSet(entries),
                   None, conductor)
    if category.pivotal is not None:
        # operational transport: the pivotal coordinate rides along the
        # shift of the evaluation normalization, which is exactly the
        # duality transformation of the identity-on-labels functor
        t = {a: category.pivotal.t[a]
             * out.ev_coefficient(a) / category.ev_coefficient(a)
             for a in ring.labels}
        out = out.with_pivotal(PivotalData(t))
    return out


def reverse_category(category: Category) -> Category:
    """The same data with the tensor product taken in the reverse order.

    Fusion multiplicities transpose and each F-block becomes the inverse of
    the block with the outer labels swapped; pivotal coefficients carry over
    unchanged.
    """
    ring = category.ring
    n_rev = {(a, b, c): v for (b, a, c), v in ring.N.items()}
    rev_ring = FusionRing(ring.labels, ring.unit, ring.dual, n_rev)
    entries = {}
    for a in ring.labels:
        for b in ring.labels:
            if not rev_ring.channels(a, b):
                continue
            for c in ring.labels:
                ds = sorted({d for e in rev_ring.channels(a, b)
                             for d in rev_ring.channels(e, c)}, key=ring.index)
                for d in ds:
                    es = tuple(e for e in rev_ring.channels(a, b)
                               if rev_ring.n(e, c, d))
                    fs = tuple(f for f in rev_ring.channels(b, c)
                               if rev_ring.n(a, f, d))
                    inv = category.f_inv_block(c, b, a, d)
                    r_es, r_fs = category.f_rowcols(c, b, a, d)
                    # rows of inv are indexed by r_fs (= the reversed e-list),
                    # columns by r_es (= the reversed f-list)
                    assert r_fs == es and r_es == fs
                    for i, e in enumerate(es):
                        for j, f in enumerate(fs):
                            val = inv[i][j]
                            if val != 1:
                                entries[(a, b, c, d, e, f)] = val
    out = Category(f"{category.name}~rev", rev_ring, FSymbolSet(entries),
                   category.pivotal, category.conductor)
    return out
