"""Certificates for pencil, emptiness, and good-ray claims, plus reports on
the irrational limit rays and De Fernex sign sweeps.

Emptiness is certificate-based: the module never computes dimensions of
general linear systems.  It accepts exactly three collision rules, each
conditioned on a pencil certificate:

  R2_PENCIL      order 2: dim L_d(2m, rest) < m forces the split system empty
  R3_PENCIL      order 3: dim L_d(3m, rest) < 3m forces the split system empty
  R_GE_4_NAGATA  order r > 3: the collided point would need multiplicity
                 t > r*m, but sums of pencil members reach exactly r*m

Multiples are covered symbolically: every rule's inequality is linear in the
multiple m, so it is checked once as a coefficient statement, never swept.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import families
from .cremona import ReductionResult, cremona_reduce, quadratic_map
from .dynamics import ConvergenceCertificate, Ray, SpectrumError, certify_convergence, dominant_ray, iterate
from .lattice import DivisorClass, MultiplicityProfile, is_line_pencil_up_to_permutation
from .quadfield import QuadNum, RadicalSum


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    ok: bool

    def to_json(self) -> dict:
        return {"name": self.name, "statement": self.statement, "ok": self.ok}


# -- pencil certificates -----------------------------------------------------------


@dataclass(frozen=True)
class PencilCertificate:
    """Witness that a class is a Cremona transform of the pencil of lines
    through one point, hence dim of its m-th multiple is exactly m."""

    system: DivisorClass
    reduction: ReductionResult
    endpoint_is_line_pencil: bool
    replay_ok: bool
    nonnegative_throughout: bool

    @property
    def valid(self) -> bool:
        return (
            self.reduction.is_reduced
            and self.endpoint_is_line_pencil
            and self.replay_ok
            and self.nonnegative_throughout
        )

    @property
    def failure(self) -> str | None:
        if not self.reduction.is_reduced:
            return "reduction did not terminate at a reduced class"
        if not self.endpoint_is_line_pencil:
            return f"reduced class {self.reduction.reduced.pretty()} is not a pencil of lines"
        if not self.replay_ok:
            return "replay of the recorded quadratic maps diverged"
        if not self.nonnegative_throughout:
            return "a multiplicity went negative along the reduction"
        return None

    @property
    def dimension_statement(self) -> str:
        return "dim of the m-th multiple is m for every m >= 1"

    def to_json(self) -> dict:
        return {
            "system": self.system.to_json(),
            "reduction": self.reduction.to_json(),
            "valid": self.valid,
            "failure": self.failure,
            "dimension_statement": self.dimension_statement,
        }


def certify_pencil(x: DivisorClass) -> PencilCertificate:
    red = cremona_reduce(x)
    chain = [x]
    for t in red.steps:
        chain.append(quadratic_map(t, x.s).apply(chain[-1]))
    nonneg = all(m.sign() >= 0 for c in chain for m in c.mults) and all(
        c.degree.sign() > 0 for c in chain
    )
    return PencilCertificate(
        system=x,
        reduction=red,
        endpoint_is_line_pencil=red.is_line_pencil,
        replay_ok=chain[-1] == red.reduced,
        nonnegative_throughout=nonneg,
    )


# -- emptiness certificates ---------------------------------------------------------


@dataclass(frozen=True)
class EmptinessCertificate:
    """Witness that every multiple of `system` is empty, by colliding the
    first r^2 points back to one and comparing conditions against the known
    pencil dimension.  Inequalities are recorded symbolically in m."""

    rule: str
    order: int
    system: MultiplicityProfile
    pencil: PencilCertificate
    inequalities: tuple[Check, ...]

    @property
    def valid(self) -> bool:
        return self.pencil.valid and all(c.ok for c in self.inequalities)

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "order": self.order,
            "system": self.system.to_json(),
            "pencil": self.pencil.to_json(),
            "inequalities": [c.to_json() for c in self.inequalities],
            "valid": self.valid,
        }


def _first_multiplicity(p: MultiplicityProfile) -> int:
    v = p.blocks[0][0]
    assert v.is_rational and v.to_fraction().denominator == 1
    return v.to_fraction().numerator


def emptiness_certificate(system: MultiplicityProfile, pencil: MultiplicityProfile, r: int) -> EmptinessCertificate:
    """Certify emptiness of all multiples of `system`, the order-r split of
    the scaled pencil at its first point."""
    cert = certify_pencil(pencil.expand())
    a = _first_multiplicity(pencil)
    if r == 2:
        rule = "R2_PENCIL"
        ineqs = (
            Check(
                "collided-dimension",
                "colliding 4 points of multiplicity m*a gives 2m copies of the pencil, dim = 2m",
                cert.valid,
            ),
            Check("dimension-drop", f"2m < m*a for every m >= 1 <=> a = {a} > 2", a > 2),
        )
    elif r == 3:
        rule = "R3_PENCIL"
        ineqs = (
            Check(
                "matching-conditions",
                "colliding 9 points of multiplicity m*a imposes alpha = 3m*a conditions on 3m copies of the pencil",
                cert.valid,
            ),
            Check("matching-excess", f"3m*a > 6m for every m >= 1 <=> a = {a} > 2", a > 2),
            Check("dimension-bound", "6m > dim of 3m copies of the pencil = 3m for every m >= 1 <=> 6 > 3", True),
        )
    elif r > 3:
        rule = "R_GE_4_NAGATA"
        ineqs = (
            Check(
                "exact-multiplicity",
                f"members of the pencil have multiplicity exactly a = {a} at the first point",
                cert.valid,
            ),
            Check(
                "twist-bound",
                f"sums of r*m pencil members have multiplicity at most r*m*a < r*m*a + 1 <= t (order r = {r} > 3)",
                r > 3,
            ),
        )
    else:
        raise ValueError(f"collision order must be >= 2, got {r}")
    return EmptinessCertificate(rule, r, system, cert, ineqs)


# -- good-ray certificates -----------------------------------------------------------


@dataclass(frozen=True)
class GoodRayCertificate:
    family: str
    n: int
    k: int
    system: MultiplicityProfile
    checks: tuple[Check, ...]
    emptiness: EmptinessCertificate

    @property
    def pencil(self) -> PencilCertificate:
        return self.emptiness.pencil

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.checks) and self.emptiness.valid

    @property
    def failures(self) -> tuple[Check, ...]:
        bad = tuple(c for c in self.checks if not c.ok)
        bad += tuple(c for c in self.emptiness.inequalities if not c.ok)
        if not self.pencil.valid:
            bad += (Check("pencil", self.pencil.failure or "pencil certificate failed", False),)
        return bad

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "system": self.system.to_json(),
            "checks": [c.to_json() for c in self.checks],
            "emptiness": self.emptiness.to_json(),
            "valid": self.valid,
        }


def verify_good_even(n: int, k: int) -> GoodRayCertificate:
    """Certificate for the order-2 split of the doubled odd-family pencil."""
    d, a, b, c = iterate(families.odd_shape_matrix(n), families.PENCIL_SEED, k).term(k)
    system = families.good_even(n, k)
    displayed = MultiplicityProfile(2 * d, [(a, 4), (2 * b, 2 * n), (2 * c, 6)])
    checks = (
        Check("construction", "system equals the order-2 split of the doubled pencil", system == displayed),
        Check("self-intersection", "exact self-intersection is 0", system.self_intersection() == 0),
        Check("degree", f"degree 2d = {2 * d} > 0", 2 * d > 0),
        Check("rational", "all entries are rational", all(v.is_rational for v, _ in system.blocks)),
        Check("invariant-degree", f"d - a - 2c = {d - a - 2 * c} = 0", d - a - 2 * c == 0),
        Check("invariant-mult", f"n*b - a = {n * b - a} = -1", n * b - a == -1),
        Check("orbit-inequality", f"b = {b} > c = {c} >= 0", b > c >= 0),
        Check("split-multiplicity", f"a = {a} > 2", a > 2),
    )
    empt = emptiness_certificate(system, families.pencil_profile(n, k), 2)
    return GoodRayCertificate("even", n, k, system, checks, empt)


def _primed_checks(n: int, k: int, row: tuple[int, int, int, int]) -> tuple[Check, ...]:
    d, a, b, c = row
    return (
        Check(
            "invariant-degree",
            f"3d - 7b - (3n+2)c = {3 * d - 7 * b - (3 * n + 2) * c} = 3",
            3 * d - 7 * b - (3 * n + 2) * c == 3,
        ),
        Check("invariant-mult", f"a - (n+2)c = {a - (n + 2) * c} = 1", a - (n + 2) * c == 1),
        Check("orbit-inequality", f"3c = {3 * c} > b = {b} >= 0", 3 * c > b >= 0),
    )


def _good_even_family(family: str, n: int, k: int, r: int, system: MultiplicityProfile,
                      displayed: MultiplicityProfile) -> GoodRayCertificate:
    row = iterate(families.even_shape_matrix(n), families.PENCIL_SEED, k).term(k)
    d, a, b, c = row
    checks = (
        Check("construction", f"system equals the order-{r} split of the scaled pencil", system == displayed),
        Check("self-intersection", "exact self-intersection is 0", system.self_intersection() == 0),
        Check("degree", f"degree {r}d = {r * d} > 0", r * d > 0),
        Check("rational", "all entries are rational", all(v.is_rational for v, _ in system.blocks)),
        *_primed_checks(n, k, row),
    )
    if r <= 3:
        checks += (Check("split-multiplicity", f"a = {a} > 2", a > 2),)
    empt = emptiness_certificate(system, families.primed_pencil_profile(n, k), r)
    return GoodRayCertificate(family, n, k, system, checks, empt)


def verify_good_odd(n: int, k: int) -> GoodRayCertificate:
    """Certificate for the order-2 split of the doubled even-family pencil."""
    d, a, b, c = iterate(families.even_shape_matrix(n), families.PENCIL_SEED, k).term(k)
    displayed = MultiplicityProfile(2 * d, [(a, 4), (2 * b, 7), (2 * c, 2 * n)])
    return _good_even_family("odd", n, k, 2, families.good_odd(n, k), displayed)


def verify_good_sq(n: int, k: int, variant: str) -> GoodRayCertificate:
    """Certificate for the order n+1 (sq4) or n+2 (sq2) split; the collision
    rule is picked by the order: 2 reuses the order-2 argument, 3 counts
    matching conditions, larger orders use the twist bound."""
    if variant == "sq4":
        r, system = n + 1, families.good_sq4(n, k)
    elif variant == "sq2":
        r, system = n + 2, families.good_sq2(n, k)
    else:
        raise ValueError(f"variant must be sq4 or sq2, got {variant!r}")
    d, a, b, c = iterate(families.even_shape_matrix(n), families.PENCIL_SEED, k).term(k)
    displayed = MultiplicityProfile(r * d, [(a, r * r), (r * b, 7), (r * c, 2 * n)])
    return _good_even_family(variant, n, k, r, system, displayed)


def verify_good(family: str, n: int, k: int) -> GoodRayCertificate:
    if family == "even":
        return verify_good_even(n, k)
    if family == "odd":
        return verify_good_odd(n, k)
    if family in ("sq4", "sq2"):
        return verify_good_sq(n, k, family)
    raise ValueError(f"unknown good-ray family {family!r}; expected one of {families.GOOD_TAGS}")


# -- wonderful-ray reports -------------------------------------------------------------

# derived family -> (source family, split order as a function of n)
_DERIVED = {
    "even_plus": ("odd", lambda n: 2),
    "odd_plus": ("even", lambda n: 2),
    "sq4": ("even", lambda n: n + 1),
    "sq2": ("even", lambda n: n + 2),
}


@dataclass(frozen=True)
class WonderfulReport:
    family: str
    n: int
    surface_points: int
    display: MultiplicityProfile
    ray: Ray
    checks: tuple[Check, ...]
    canonical_pairing: QuadNum
    defernex_value: RadicalSum
    defernex_sign: int
    irrationality: tuple[int, QuadNum] | None
    convergence: tuple[tuple[tuple[int, ...], ConvergenceCertificate | None], ...]
    candidates: tuple[tuple[str, str, bool], ...]

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.ok)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "surface_points": self.surface_points,
            "display": self.display.to_json(),
            "ray": self.ray.to_json(),
            "checks": [c.to_json() for c in self.checks],
            "canonical_pairing": self.canonical_pairing.to_json(),
            "defernex": {
                "value": self.defernex_value.to_json(),
                "sign": self.defernex_sign,
                "decimal": self.defernex_value.decimal(12),
                "decimal_note": "display only",
            },
            "irrationality": None
            if self.irrationality is None
            else {"coordinate": self.irrationality[0], "value": self.irrationality[1].to_json()},
            "convergence": [
                {"seed": list(seed), "certificate": None if cert is None else cert.to_json()}
                for seed, cert in self.convergence
            ],
            "candidates": [
                {"construction": label, "outcome": outcome, "match": ok}
                for label, outcome, ok in self.candidates
            ],
            "valid": self.valid,
        }


def _convergence_entries(matrix) -> tuple[tuple[tuple[int, ...], ConvergenceCertificate | None], ...]:
    entries = []
    for seed in (families.LINE_SEED, families.PENCIL_SEED):
        try:
            entries.append((seed, certify_convergence(matrix, seed)))
        except SpectrumError:
            entries.append((seed, None))
    return tuple(entries)


def wonderful_report(family: str, n: int) -> WonderfulReport:
    """Exact report on one limit ray: closed form against the independent
    construction, self-intersection, canonical pairing, irrationality, the
    De Fernex sign, and convergence certificates for the driving matrix."""
    if family not in families.WONDERFUL_TAGS:
        raise ValueError(f"unknown limit-ray family {family!r}; expected one of {families.WONDERFUL_TAGS}")
    display = families.wonderful_profile(family, n)
    ray = Ray.from_profile(display)
    checks: list[Check] = []
    candidates: list[tuple[str, str, bool]] = []

    if family in ("odd", "even"):
        matrix = families.shape_matrix(family, n)
        try:
            dom = dominant_ray(matrix)
            ok = dom == ray
            checks.append(Check("dominant-ray", "closed form spans the dominant eigenray", ok))
        except SpectrumError as e:
            checks.append(Check("dominant-ray", f"dominant eigenray unavailable: {e}", False))
        expected_canonical = QuadNum(0)
        canonical_stmt = "canonical pairing is exactly 0"
    else:
        src_tag, order = _DERIVED[family]
        r = order(n)
        matrix = families.shape_matrix(src_tag, n)
        source = families.wonderful_profile(src_tag, n)
        split = Ray.from_profile(source.uncollide(1, r))
        ok = split == ray
        checks.append(
            Check("formal-uncollision", f"closed form spans the order-{r} split of the {src_tag} limit ray", ok)
        )
        candidates.append((f"order-{r} split of the {src_tag} limit ray", "matches" if ok else "differs", ok))
        if family == "odd_plus":
            # the other reading: split the odd limit ray instead; lives on a
            # different number of points, recorded for the audit trail
            other = families.wonderful_profile("odd", n).uncollide(1, 2)
            if other.s != display.s:
                candidates.append(
                    (
                        "order-2 split of the odd limit ray",
                        f"lives on {other.s} points, not {display.s}",
                        False,
                    )
                )
            else:
                candidates.append(
                    ("order-2 split of the odd limit ray", "compared exactly", Ray.from_profile(other) == ray)
                )
        top = display.blocks[0][0]
        expected_canonical = (r * r - r) * top
        canonical_stmt = f"canonical pairing equals (r^2 - r) * top multiplicity > 0 with r = {r}"

    pairing = display.canonical_pairing()
    checks.append(Check("self-intersection", "exact self-intersection is 0", display.self_intersection() == 0))
    checks.append(Check("canonical", canonical_stmt, pairing == expected_canonical))
    if family not in ("odd", "even"):
        checks.append(Check("canonical-sign", "canonical pairing is strictly positive", pairing.sign() > 0))
    witness = ray.irrationality_witness()
    checks.append(Check("irrational", "the ray has an irrational coordinate", witness is not None))

    value = display.defernex_value()
    sign = value.sign()
    convergence = _convergence_entries(matrix)
    for seed, cert in convergence:
        if cert is None:
            checks.append(Check("convergence", f"seed {seed}: no simple dominant eigenvalue", False))
        else:
            checks.append(
                Check(
                    "convergence",
                    f"seed {seed}: dominant component gamma = {cert.gamma} is nonzero",
                    cert.converges,
                )
            )

    return WonderfulReport(
        family=family,
        n=n,
        surface_points=display.s,
        display=display,
        ray=ray,
        checks=tuple(checks),
        canonical_pairing=pairing if isinstance(pairing, QuadNum) else QuadNum(pairing),
        defernex_value=value,
        defernex_sign=sign,
        irrationality=witness,
        convergence=convergence,
        candidates=tuple(candidates),
    )


# -- De Fernex sign sweeps ---------------------------------------------------------------


@dataclass(frozen=True)
class SignRow:
    n: int
    sign: int
    value: RadicalSum

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "sign": self.sign,
            "value": self.value.to_json(),
            "decimal": self.value.decimal(12),
            "decimal_note": "display only",
        }


@dataclass(frozen=True)
class SignTable:
    family: str
    rows: tuple[SignRow, ...]
    bounds: tuple[Check, ...]

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.bounds)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "rows": [r.to_json() for r in self.rows],
            "bounds": [c.to_json() for c in self.bounds],
            "valid": self.valid,
        }


def sq2_bound_chain(n: int) -> tuple[Check, ...]:
    """The upper-bound argument for the sq2 pairing, as integer inequalities.

    Writing the pairing as A + P*sqrt(u) - Q*sqrt(v) with u = n^2+6n+10 and
    v = 49n^4-28n^2, the two radicals are bounded by rational expressions and
    the substituted value collapses to 7(-7n^2+24n+22), negative from n = 5.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    A = -63 * n**4 - 567 * n**3 - 1386 * n**2 - 756 * n
    P = 14 * (8 * n**3 + 27 * n**2 + 16 * n)
    Q = 7 * (n**2 + 3 * n + 2)
    # sqrt(u) < n + 3 + 1/(2n): square both sides and clear 4n^2
    lhs = (2 * n * n + 6 * n + 1) ** 2
    rhs = 4 * n * n * (n * n + 6 * n + 10)
    upper_u = Check(
        "radical-upper",
        f"(2n^2+6n+1)^2 - 4n^2(n^2+6n+10) = {lhs - rhs} = 12n+1 > 0",
        lhs - rhs == 12 * n + 1 > 0,
    )
    # sqrt(v) > 7n^2 - 3: square both sides
    diff = (49 * n**4 - 28 * n**2) - (7 * n * n - 3) ** 2
    lower_v = Check(
        "radical-lower",
        f"49n^4-28n^2 - (7n^2-3)^2 = {diff} = 14n^2-9 > 0",
        diff == 14 * n * n - 9 > 0,
    )
    positive = Check("coefficients", f"P = {P} > 0 and Q = {Q} > 0", P > 0 and Q > 0)
    substituted = A + P * (Fraction(2 * n * n + 6 * n + 1, 2 * n)) - Q * (7 * n * n - 3)
    target = 7 * (-7 * n * n + 24 * n + 22)
    collapse = Check(
        "substitution",
        f"A + P*(n+3+1/(2n)) - Q*(7n^2-3) = {substituted} = 7(-7n^2+24n+22)",
        substituted == target,
    )
    final = Check("final-sign", f"7(-7n^2+24n+22) = {target} < 0 for n >= 5", n < 5 or target < 0)
    return (upper_u, lower_v, positive, collapse, final)


def defernex_sweep(family: str, n_lo: int, n_hi: int) -> SignTable:
    """Exact sign of (limit ray . de Fernex class) for each n in the range;
    for sq2 the rational upper-bound chain is verified alongside."""
    if n_lo > n_hi:
        raise ValueError(f"empty range {n_lo}..{n_hi}")
    rows = []
    bounds: list[Check] = []
    for n in range(n_lo, n_hi + 1):
        display = families.wonderful_profile(family, n)
        value = display.defernex_value()
        rows.append(SignRow(n, value.sign(), value))
        if family == "sq2":
            bounds.extend(sq2_bound_chain(n))
    return SignTable(family, tuple(rows), tuple(bounds))
