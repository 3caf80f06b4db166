"""Registered verification suites.

A suite is a named set of checks. Checks may depend on other checks of the same suite;
they run in dependency order and a check whose dependency did not pass is skipped::

    with define_suite("my-suite", requires=requires(generic=True)) as suite:

        @suite.check("relations")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            ...

        suite.check("braid", braid_check, after=["relations"])

A check returns ``True``/``False``, a mapping of labelled booleans, or an :class:`Outcome`
carrying a witness. Raising :class:`~qgroups.errors.CheckSkipped`,
:class:`~qgroups.errors.DegreeBoundExceeded` or :class:`~qgroups.errors.UnsupportedType`
marks the check skipped; any other library error fails it.
"""

from __future__ import annotations

import enum
import json
import logging
import time
from collections.abc import Mapping
from dataclasses import asdict, dataclass, field
from functools import cached_property, partial
from graphlib import CycleError, TopologicalSorter
from itertools import combinations, product
from typing import TYPE_CHECKING, Annotated, Any, Callable, Iterable, TypeAlias

from typing_extensions import Doc, Self

from .config import RunConfig
from .coxeter import RootSystem, build_root_system
from .errors import CheckSkipped, CyclicChecks, DegreeBoundExceeded, QGroupsError, UnknownSuite, UnsupportedType
from .random import random, random_word, reseed

if TYPE_CHECKING:
    from .rmatrix import QuasiRMatrices
    from .skewcenter import SkewCenter
    from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement

logger = logging.getLogger(__name__)

WITNESS_TERMS = 40
STRAIGHTEN_SAMPLES = 200
IDEAL_SAMPLES = 20
HOPF_SAMPLES = 50
MULTINOMIAL_DEPTH = 5


class Status(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True, slots=True)
class Outcome:
    ok: bool
    witness: str | None = None


CheckValue: TypeAlias = "bool | Mapping[str, bool] | Outcome"
CheckFn: TypeAlias = "Callable[[SuiteContext], CheckValue]"
Requirement: TypeAlias = Callable[[RunConfig], "str | None"]
"""Returns the reason a suite does not apply, or None."""


class SuiteContext:
    """What a check sees: the run configuration and lazily built algebra objects."""

    def __init__(self, config: RunConfig) -> None:
        self.config = config

    @cached_property
    def system(self) -> RootSystem:
        return build_root_system(self.config.cartan)

    @cached_property
    def algebra(self) -> QuantumAlgebra:
        from .uqcore import QuantumAlgebra

        return QuantumAlgebra.from_config(self.config)

    @cached_property
    def center(self) -> SkewCenter:
        from .skewcenter import SkewCenter

        return SkewCenter(self.algebra)

    @cached_property
    def rmatrix(self) -> QuasiRMatrices:
        from .rmatrix import QuasiRMatrices

        return QuasiRMatrices(self.algebra)


@dataclass(kw_only=True, slots=True)
class Check:
    name: str
    fn: CheckFn
    after: tuple[str, ...] = ()


@dataclass(kw_only=True)
class Suite:
    name: str
    description: str = ""
    requires: Requirement | None = None
    checks: dict[str, Check] = field(default_factory=dict)

    @cached_property
    def order(self) -> tuple[str, ...]:
        graph: TopologicalSorter[str] = TopologicalSorter()
        for check in self.checks.values():
            graph.add(check.name, *check.after)
        try:
            order = tuple(graph.static_order())
        except CycleError as error:
            deps = {check.name: set(check.after) for check in self.checks.values()}
            raise CyclicChecks(dependencies=deps) from error
        missing = [name for name in order if name not in self.checks]
        if missing:
            raise UnknownSuite(f"suite {self.name} depends on undefined checks {missing}")
        return order


class SuiteDSL:
    def __init__(self, suite: Suite) -> None:
        self.suite = suite

    def check(
        self,
        name: str,
        fn: CheckFn | None = None,
        /,
        *,
        after: Annotated[Iterable[str], Doc("checks of the same suite that must pass first")] = (),
    ) -> Any:
        """Register ``fn`` as a check, or return a decorator doing so."""

        def inner(callback: CheckFn, /) -> CheckFn:
            self.suite.checks[name] = Check(name=name, fn=callback, after=tuple(after))
            self.suite.__dict__.pop("order", None)
            return callback

        if fn is not None:
            inner(fn)
            return None
        return inner

    def __enter__(self) -> Self:
        return self

    def __exit__(self, *args: Any) -> None:
        pass


@dataclass(kw_only=True, slots=True)
class CheckReport:
    suite: str
    name: str
    status: Status
    witness: str | None = None
    wall_time: float = 0.0


@dataclass(kw_only=True, slots=True)
class Report:
    context: dict[str, Any]
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(check.status is Status.FAIL for check in self.checks)

    def as_dict(self) -> dict[str, Any]:
        data = asdict(self)
        for check in data["checks"]:
            check["status"] = check["status"].value
        return data

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [", ".join(f"{key}={value}" for key, value in self.context.items())]
        for check in self.checks:
            line = f"{check.status.value:7} {check.suite} :: {check.name} ({check.wall_time:.2f}s)"
            if check.witness:
                line += f"\n        {check.witness}"
            lines.append(line)
        counts = {status: sum(c.status is status for c in self.checks) for status in Status}
        lines.append(", ".join(f"{n} {status.value}" for status, n in counts.items()))
        return "\n".join(lines)


@dataclass
class Registry:
    suites: dict[str, Suite] = field(default_factory=dict)
    builtin: frozenset[str] = frozenset()

    def define_suite(
        self,
        name: str,
        /,
        *,
        description: str = "",
        requires: Annotated[Requirement | None, Doc("skips every check when it returns a reason")] = None,
    ) -> SuiteDSL:
        suite = self.suites.get(name)
        if suite is None:
            suite = self.suites[name] = Suite(name=name, description=description, requires=requires)
        elif requires is not None:
            suite.requires = requires
        return SuiteDSL(suite)

    def get_suite(self, name: str) -> Suite:
        try:
            return self.suites[name]
        except KeyError:
            raise UnknownSuite(f"unknown suite {name!r}; known: {', '.join(sorted(self.suites))}") from None

    def seal(self) -> None:
        """Record the current suites as built in, so :meth:`clear_local` keeps them."""
        self.builtin = frozenset(self.suites)

    def clear_local(self) -> None:
        for name in list(self.suites):
            if name not in self.builtin:
                del self.suites[name]

    def run(self, config: RunConfig) -> Report:
        """Run the suites named in ``config`` (all of them when it names none)."""
        config.validate()
        names = config.suites or sorted(self.suites)
        suites = [self.get_suite(name) for name in names]
        for suite in suites:
            logger.debug("suite %s runs %s", suite.name, suite.order)
        if config.seed is not None:
            reseed(config.seed)
        ctx = SuiteContext(config)
        report = Report(
            context={
                "type": config.type_label,
                "ell": config.ell,
                "degree_bound": config.degree_bound,
                "seed": config.seed,
                "suites": names,
            }
        )
        for suite in suites:
            report.checks.extend(self._run_suite(suite, ctx))
        return report

    def _run_suite(self, suite: Suite, ctx: SuiteContext) -> list[CheckReport]:
        reason = suite.requires(ctx.config) if suite.requires else None
        if reason is not None:
            logger.info("suite %s skipped: %s", suite.name, reason)
            return [
                CheckReport(suite=suite.name, name=name, status=Status.SKIPPED, witness=reason) for name in suite.order
            ]
        logger.info("suite %s: %d checks", suite.name, len(suite.checks))
        results: dict[str, CheckReport] = {}
        for name in suite.order:
            check = suite.checks[name]
            blocked = [dep for dep in check.after if results[dep].status is not Status.PASS]
            if blocked:
                results[name] = CheckReport(
                    suite=suite.name,
                    name=name,
                    status=Status.SKIPPED,
                    witness=f"dependency {blocked[0]} did not pass",
                )
                continue
            results[name] = _run_check(suite.name, check, ctx)
            logger.info("%s :: %s %s", suite.name, name, results[name].status.value)
        return list(results.values())


def _run_check(suite: str, check: Check, ctx: SuiteContext) -> CheckReport:
    start = time.perf_counter()
    try:
        status, detail = _interpret(check.fn(ctx))
    except (CheckSkipped, DegreeBoundExceeded, UnsupportedType) as error:
        status, detail = Status.SKIPPED, str(error)
    except QGroupsError as error:
        status, detail = Status.FAIL, f"{type(error).__name__}: {error}"
    return CheckReport(
        suite=suite,
        name=check.name,
        status=status,
        witness=detail,
        wall_time=round(time.perf_counter() - start, 3),
    )


def _interpret(value: CheckValue) -> tuple[Status, str | None]:
    match value:
        case Outcome(ok, detail):
            return (Status.PASS if ok else Status.FAIL), (None if ok else detail)
        case bool():
            return (Status.PASS, None) if value else (Status.FAIL, None)
        case Mapping():
            if not value:
                return Status.SKIPPED, "nothing to check"
            failed = [label for label, ok in value.items() if not ok]
            if failed:
                return Status.FAIL, "failed: " + "; ".join(failed)
            return Status.PASS, None
    raise TypeError(f"checks return bool, a mapping or an Outcome, not {type(value).__name__}")


def witness(x: AlgebraElement | TensorElement) -> str:
    """Text of ``x`` capped at :data:`WITNESS_TERMS` terms."""
    algebra = x.algebra
    text = (
        algebra.format_tensor(x, limit=WITNESS_TERMS)  # type: ignore[arg-type]
        if hasattr(x, "legs")
        else algebra.format(x, limit=WITNESS_TERMS)  # type: ignore[arg-type]
    )
    if len(x.terms) > WITNESS_TERMS:
        text += f" + … ({len(x.terms) - WITNESS_TERMS} more terms)"
    return text


def requires(
    *,
    generic: Annotated[bool | None, Doc("True for generic q only, False for roots of unity only")] = None,
    types: Iterable[str] | None = None,
    families: Iterable[str] | None = None,
    min_rank: int | None = None,
    max_rank: int | None = None,
) -> Requirement:
    allowed_types = None if types is None else frozenset(types)
    allowed_families = None if families is None else frozenset(families)

    def check(config: RunConfig) -> str | None:
        cartan = config.cartan
        if generic is True and config.ell:
            return "needs generic q"
        if generic is False and not config.ell:
            return "needs a root of unity"
        if allowed_types is not None and cartan.type_label not in allowed_types:
            return f"applies to {', '.join(sorted(allowed_types))}"
        if allowed_families is not None and cartan.family not in allowed_families:
            return f"applies to types {', '.join(sorted(allowed_families))}"
        if min_rank is not None and cartan.rank < min_rank:
            return f"needs rank ≥ {min_rank}"
        if max_rank is not None and cartan.rank > max_rank:
            return f"needs rank ≤ {max_rank}"
        return None

    return check


# built-in suites


def _alternating(i: int, j: int, m: int) -> tuple[int, ...]:
    return tuple(i if k % 2 == 0 else j for k in range(m))


def _weights_up_to(rank: int, height: int) -> list[tuple[int, ...]]:
    return sorted(
        (nu for nu in product(range(height + 1), repeat=rank) if 0 < sum(nu) <= height),
        key=lambda nu: (sum(nu), nu),
    )


def _multiply_legs(algebra: QuantumAlgebra, t: TensorElement) -> AlgebraElement:
    total = algebra.zero
    for (a, b), c in t.terms.items():
        total = total + algebra.term(a) * algebra.term(b) * c
    return total


def _prefixes(word: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [word[:k] for k in range(1, len(word) + 1)]


def _coassociative(algebra: QuantumAlgebra, x: AlgebraElement) -> bool:
    delta = algebra.coproduct(x)
    return algebra.tensor_equal(algebra.coproduct_leg(delta, 0), algebra.coproduct_leg(delta, 1))


def _counital(algebra: QuantumAlgebra, x: AlgebraElement) -> bool:
    contracted = algebra.zero
    for (a, b), c in algebra.coproduct(x).terms.items():
        contracted = contracted + algebra.term(b) * (algebra.counit(algebra.term(a)) * c)
    return algebra.equal(contracted, x)


def _antipodal(algebra: QuantumAlgebra, x: AlgebraElement) -> tuple[bool, bool]:
    delta = algebra.coproduct(x)
    unit = algebra.coerce(algebra.counit(x))
    left = _multiply_legs(algebra, algebra.map_leg(delta, 0, algebra.antipode))
    right = _multiply_legs(algebra, algebra.map_leg(delta, 1, algebra.antipode))
    return algebra.equal(left, unit), algebra.equal(right, unit)


def _random_element(algebra: QuantumAlgebra, degree: int) -> AlgebraElement:
    """Integer combination of up to three products of at most ``degree`` generators."""
    letters = [x for _, x in algebra.generators()] + [algebra.K(i, -1) for i in range(1, algebra.rank + 1)]
    total = algebra.zero
    for _ in range(random.randint(1, 3)):
        factor = algebra.one
        for _ in range(random.randint(0, degree)):
            factor = factor * random.choice(letters)
        total = total + factor * random.randint(1, 5)
    return total


def _random_monomial(algebra: QuantumAlgebra, degree: int) -> tuple[str, AlgebraElement]:
    """A product of generators, homogeneous for all three gradings."""
    names, letters = zip(*algebra.generators())
    picks = [random.randrange(len(letters)) for _ in range(random.randint(1, degree))]
    value = algebra.one
    for p in picks:
        value = value * letters[p]
    return " ".join(names[p] for p in picks), value


def _catalog_maps(system: RootSystem) -> list[tuple[str, Any]]:
    from .coxeter import PhiSymmetricMap

    identity = PhiSymmetricMap.identity(system.rank)
    return [("id", identity), ("s1", PhiSymmetricMap.from_weyl(system.reflection(1)))]


def _catalog_characters(rank: int) -> list[tuple[str, Any]]:
    from .uqcore import LatticeCharacter

    mixed = LatticeCharacter(tuple((-1) ** i for i in range(rank)), tuple(range(1, rank + 1)))
    return [("1", LatticeCharacter.trivial(rank)), ("χ", mixed)]


def _unit_vectors(n: int) -> list[tuple[int, ...]]:
    return [tuple(int(k == position) for k in range(n)) for position in range(n)]


def _height(center: SkewCenter, w: tuple[int, ...], psi: tuple[int, ...]) -> int:
    """Letter count of the realized X^ψ_{w▸}."""
    return sum(abs(c) for c in center.monomial_weight(center.x_monomial(w, psi)))


def _coxeter_suite(registry: Registry) -> None:
    with registry.define_suite(
        "coxeter-orders",
        description="maximal reduced words, convex orders and braid moves",
        requires=requires(max_rank=4),
    ) as suite:

        @suite.check("maximal words")
        def _(ctx: SuiteContext) -> Outcome:
            words = ctx.system.maximal_words()
            ok = bool(words) and all(ctx.system.is_maximal(z) for z in words)
            return Outcome(ok, f"{len(words)} maximal words")

        @suite.check("convex orders", after=["maximal words"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            system = ctx.system
            return {str(z): system.is_convex(system.convex_order(z)) for z in system.maximal_words()}

        @suite.check("z† reverses the order", after=["convex orders"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            system = ctx.system
            return {
                str(z): system.convex_order(system.dagger(z)) == system.convex_order(z)[::-1]
                for z in system.maximal_words()
            }

        @suite.check("braid moves connect maximal words", after=["maximal words"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            system = ctx.system
            first, *rest = system.maximal_words()
            return {str(z): system.matsumoto_path(first, z) is not None for z in rest}


def _qring_suite(registry: Registry) -> None:
    with registry.define_suite(
        "qring-identities", description="multinomial coefficients and the c′ sum over ℚ(q)"
    ) as suite:

        @suite.check("multinomial recursion")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .qring import a_nstk, a_nstk_recursive

            return {
                f"a({n},{s},{t},{k})": a_nstk(n, s, t, k) == a_nstk_recursive(n, s, t, k)
                for n in range(MULTINOMIAL_DEPTH)
                for s in range(n + 1)
                for t in range(min(s, n - s) + 1)
                for k in range(n - s - t + 1)
            }

        @suite.check("c′ sum")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .qring import c_prime_sum

            report: dict[str, bool] = {}
            for n in range(2 * MULTINOMIAL_DEPTH):
                left, right = c_prime_sum(n)
                report[str(n)] = left == right
            return report


def _uqcore_suites(registry: Registry) -> None:
    with registry.define_suite("uq-hopf", description="Hopf algebra axioms on generators and random elements") as suite:

        @suite.check("coassociativity")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            return {name: _coassociative(algebra, x) for name, x in algebra.generators()}

        @suite.check("counit")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            return {name: _counital(algebra, x) for name, x in algebra.generators()}

        @suite.check("antipode", after=["counit"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            report = {}
            for name, x in algebra.generators():
                report[f"m(S⊗id)Δ {name}"], report[f"m(id⊗S)Δ {name}"] = _antipodal(algebra, x)
            return report

        @suite.check("random elements", after=["coassociativity", "antipode"])
        def _(ctx: SuiteContext) -> Outcome:
            algebra = ctx.algebra
            degree = min(3, ctx.config.degree_bound)
            for _ in range(HOPF_SAMPLES):
                x = _random_element(algebra, degree)
                if not _coassociative(algebra, x):
                    return Outcome(False, f"(Δ⊗id)Δ ≠ (id⊗Δ)Δ on {witness(x)}")
                if not _counital(algebra, x):
                    return Outcome(False, f"counit fails on {witness(x)}")
                if not all(_antipodal(algebra, x)):
                    return Outcome(False, f"antipode fails on {witness(x)}")
            return Outcome(True, f"{HOPF_SAMPLES} elements")

        @suite.check("Δ gradings")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            report = {}
            for _ in range(HOPF_SAMPLES):
                name, x = _random_monomial(algebra, min(3, ctx.config.degree_bound))
                grades = {(w, p) for w, p, _ in algebra.grade(x).values()}
                ok = len(grades) == 1
                weight, parity = next(iter(grades))
                for (a, b), c in algebra.coproduct(x).terms.items():
                    if not c:
                        continue
                    wa, _, _ = algebra.grade(algebra.term(a))[a]
                    wb, pb, _ = algebra.grade(algebra.term(b))[b]
                    ok = ok and tuple(u + v for u, v in zip(wa, wb)) == weight and pb == parity
                report[name] = ok
            return report

        @suite.check("Δ respects relations", after=["coassociativity"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            delta = algebra.coproduct
            report = {}
            for i, j in product(range(1, algebra.rank + 1), repeat=2):
                e, f, k = algebra.E(i), algebra.F(j), algebra.K(i)
                report[f"[E{i}, F{j}]"] = algebra.tensor_equal(
                    delta(e) * delta(f) - delta(f) * delta(e), delta(e * f - f * e)
                )
                report[f"K{i} E{j} K{i}⁻¹"] = algebra.tensor_equal(
                    delta(k) * delta(algebra.E(j)) * delta(algebra.K(i, -1)),
                    delta(k * algebra.E(j) * algebra.K(i, -1)),
                )
            return report

        @suite.check("S is an anti-homomorphism")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            S = algebra.antipode
            report = {}
            for (a, x), (b, y) in product(list(algebra.generators()), repeat=2):
                report[f"S({a} {b})"] = algebra.equal(S(x * y), S(y) * S(x))
            return report

    with registry.define_suite("uq-braid", description="Lusztig automorphisms on generators") as suite:

        @suite.check("inverse")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            return {
                f"Γ{i}⁻¹Γ{i} {name}": algebra.equal(algebra.gamma(i, algebra.gamma(i, x), inverse=True), x)
                for i in range(1, algebra.rank + 1)
                for name, x in algebra.generators()
            }

        @suite.check("𝔘Γ𝔘 = Γ⁻¹", after=["inverse"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            return {
                f"T{i} {name}": algebra.equal(algebra.t_action(i, x), algebra.gamma(i, x, inverse=True))
                for i in range(1, algebra.rank + 1)
                for name, x in algebra.generators()
            }

        @suite.check("braid relations", after=["inverse"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            report = {}
            for i, j in combinations(range(1, algebra.rank + 1), 2):
                m = algebra.cartan.m(i, j)
                left, right = _alternating(i, j, m), _alternating(j, i, m)
                for name, x in algebra.generators():
                    report[f"{left} = {right} on {name}"] = algebra.equal(
                        algebra.gamma_word(left, x), algebra.gamma_word(right, x)
                    )
            return report

    with registry.define_suite(
        "uq-garside",
        description="Γ along the longest element as a composite of involutions",
        requires=requires(generic=True),
    ) as suite:

        @suite.check("Γ_∂")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            longest = ctx.system.reduced_word(ctx.system.longest)
            return {
                name: algebra.equal(algebra.gamma_word(longest, x), algebra.garside(x))
                for name, x in algebra.generators()
            }

    with registry.define_suite(
        "uq-catalog",
        description="commutation relations among Che transformations, involutions, S and Γ_s",
        requires=requires(types=["A1", "A2", "B2", "C2"]),
    ) as suite:

        @suite.check("Che and involutions")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .uqcore import LatticeCharacter

            algebra, system = ctx.algebra, ctx.system
            che, inv = algebra.che, algebra.involution
            report = {}
            for (h_name, h), (u_name, u) in product(_catalog_maps(system), _catalog_characters(system.rank)):
                varpi = LatticeCharacter.varpi(system, h)
                flipped = (u * varpi).inverse()
                for name, x in algebra.generators():
                    image = che(h, u, x)
                    label = f"Ψ[{h_name}, {u_name}] {name}"
                    report[f"Ω {label}"] = algebra.equal(inv("omega", image), che(h, u, inv("omega", x)))
                    report[f"𝔘 {label}"] = algebra.equal(inv("u", image), che(h.scaled(-1), u * varpi, inv("u", x)))
                    report[f"Π {label}"] = algebra.equal(inv("pi", image), che(h, flipped, inv("pi", x)))
                    report[f"Υ {label}"] = algebra.equal(inv("upsilon", image), che(h, flipped, inv("upsilon", x)))
            return report

        @suite.check("antipode factorization")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coxeter import PhiSymmetricMap
            from .uqcore import LatticeCharacter

            algebra, system = ctx.algebra, ctx.system
            identity = PhiSymmetricMap.identity(system.rank)
            iota, varpi = LatticeCharacter.iota(system.rank), LatticeCharacter.varpi(system, identity)
            S, che = algebra.antipode, algebra.che
            report = {}
            for name, x in algebra.generators():
                report[f"S = 𝔘Ψ_ι {name}"] = algebra.equal(S(x), algebra.involution("u", che(identity, iota, x)))
                report[f"S = Ψ_ιϖ⁻ⁱᵈ𝔘 {name}"] = algebra.equal(
                    S(x), che(identity.scaled(-1), iota * varpi, algebra.involution("u", x))
                )
                report[f"S² = Ψ_ϖ {name}"] = algebra.equal(S(S(x)), che(identity.scaled(0), varpi, x))
            return report

        @suite.check("Γ_s and Che")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coxeter import PhiSymmetricMap, WeylElement
            from .uqcore import LatticeCharacter

            algebra, system = ctx.algebra, ctx.system
            report = {}
            for s in system.elements:
                word, s_inv = system.reduced_word(s), system.inverse(s)
                for (h_name, h), (u_name, u) in product(_catalog_maps(system), _catalog_characters(system.rank)):
                    h_s = PhiSymmetricMap((s * WeylElement(h.matrix) * s_inv).matrix)
                    u_s = u.pushforward(system, s) * LatticeCharacter.vartheta(system, s, h)
                    for name, x in algebra.generators():
                        report[f"Γ{word} Ψ[{h_name}, {u_name}] {name}"] = algebra.equal(
                            algebra.gamma_word(word, algebra.che(h, u, x)),
                            algebra.che(h_s, u_s, algebra.gamma_word(word, x)),
                        )
            return report

        @suite.check("Γ_s and S")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coxeter import PhiSymmetricMap
            from .uqcore import LatticeCharacter

            algebra, system = ctx.algebra, ctx.system
            zero = PhiSymmetricMap.identity(system.rank).scaled(0)
            S, gamma_word = algebra.antipode, algebra.gamma_word
            report = {}
            for s in system.elements:
                word = system.reduced_word(s)
                kappa = LatticeCharacter.kappa(system, s)
                for name, x in algebra.generators():
                    twisted = algebra.che(zero, kappa, x)
                    report[f"SΓ{word}⁻¹ {name}"] = algebra.equal(
                        S(gamma_word(word, x, inverse=True)), gamma_word(word[::-1], S(twisted))
                    )
                    report[f"Γ{word}⁻¹S {name}"] = algebra.equal(
                        gamma_word(word, S(twisted), inverse=True), S(gamma_word(word[::-1], x))
                    )
            return report

        @suite.check("Γ_s and Υ")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coxeter import PhiSymmetricMap
            from .uqcore import LatticeCharacter

            algebra, system = ctx.algebra, ctx.system
            zero = PhiSymmetricMap.identity(system.rank).scaled(0)
            upsilon = partial(algebra.involution, "upsilon")
            report = {}
            for s in system.elements:
                word = system.reduced_word(s)
                kappa = LatticeCharacter.kappa(system, s)
                kappa_inv = LatticeCharacter.kappa(system, system.inverse(s))
                for name, x in algebra.generators():
                    left = algebra.gamma_word(word, upsilon(x))
                    report[f"Γ{word}Υ = ΥΓ{word}Ψ {name}"] = algebra.equal(
                        left, upsilon(algebra.gamma_word(word, algebra.che(zero, kappa_inv, x)))
                    )
                    report[f"Γ{word}Υ = ΨΥΓ{word} {name}"] = algebra.equal(
                        left, algebra.che(zero, kappa, upsilon(algebra.gamma_word(word, x)))
                    )
            return report


def _pbw_suites(registry: Registry) -> None:
    with registry.define_suite("pbw-basis", description="PBW monomials against slice dimensions") as suite:

        @suite.check("sizes")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .slices import kostant_partition_count

            algebra = ctx.algebra
            z = algebra.pbw.canonical_word()
            report = {}
            for nu in _weights_up_to(algebra.rank, min(ctx.config.degree_bound, 4)):
                size = len(algebra.pbw.basis(z, nu))
                report[str(nu)] = size == kostant_partition_count(algebra.system, nu) == algebra.oracle.dimension(nu)
            return report

        @suite.check("independence", after=["sizes"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            algebra = ctx.algebra
            pbw = algebra.pbw
            z = pbw.canonical_word()
            report = {}
            for nu in _weights_up_to(algebra.rank, min(ctx.config.degree_bound, 4)):
                monomials = [pbw.expand(m) for m in pbw.basis(z, nu)]
                report[str(nu)] = algebra.oracle.rank(monomials) == len(monomials)
            return report

    with registry.define_suite("pbw-straighten", description="straightening against the slice oracle") as suite:

        @suite.check("random products")
        def _(ctx: SuiteContext) -> Outcome:
            algebra = ctx.algebra
            pbw = algebra.pbw
            z = pbw.straightening_word()
            longest = min(5, ctx.config.degree_bound)
            for _ in range(STRAIGHTEN_SAMPLES):
                word = random_word(algebra.rank, random.randint(2, longest))
                x = algebra.E_word(word)
                if pbw.straighten(x, z) != pbw.coordinates(x, z):
                    return Outcome(False, f"E{word}: {witness(x)}")
            return Outcome(True)

    with registry.define_suite(
        "pbw-rank2",
        description="rank-2 reordering identities and the 𝔘-expansion",
        requires=requires(min_rank=2, max_rank=2),
    ) as suite:

        @suite.check("B₂ identities")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .pbw import Rank2

            if ctx.config.type_label not in ("B2", "C2"):
                raise CheckSkipped("the reordering identities are stated for B₂")
            algebra = ctx.algebra
            library = Rank2(algebra.pbw)
            report = {}
            for which in ("gamma_delta", "one_tau", "one_nu"):
                for k, kp in product(range(1, 3), repeat=2):
                    lhs, rhs = library.b2_relation(which, k, kp)
                    report[f"{which} ({k},{kp})"] = algebra.equal(lhs, rhs)
            return report

        @suite.check("𝔘-expansion")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .pbw import Rank2

            ring = ctx.algebra.ring
            library = Rank2(ctx.algebra.pbw)
            report = {}
            for position in range(len(library.roots)):
                ks = tuple(int(p == position) for p in range(len(library.roots)))
                back: dict[tuple[int, ...], Any] = {}
                for target, c in library.u_expansion(ks).items():
                    for source, d in library.u_expansion(target).items():
                        back[source] = back.get(source, ring.zero) + c * d
                twice = {k: v for k, v in back.items() if v}
                report[f"𝔘𝔘 E{library.z_ij[: position + 1]}"] = twice == {ks: ring.one}
            return report


def _skewcenter_suites(registry: Registry) -> None:
    with registry.define_suite(
        "a-coproducts",
        description="closed coproducts of primitive powers in type A",
        requires=requires(generic=False, families=["A"]),
    ) as suite:

        @suite.check("Δ X(i,j)")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            return {
                f"X({i},{j})": center.verify_coproduct(center.type_a_generator(i, j))
                for i, j in combinations(range(1, ctx.algebra.rank + 2), 2)
            }

    with registry.define_suite(
        "b2-coproducts",
        description="closed coproducts and antipodes of primitive powers in B₂",
        requires=requires(generic=False, types=["B2", "C2"]),
    ) as suite:

        @suite.check("coproducts")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            return {f"X{w}": center.verify_coproduct(center.X(w)) for w in ((1,), (2,), (1, 2), (1, 2, 1))}

        @suite.check("antipodes")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            return {f"X{w}": center.verify_antipode(center.X(w)) for w in ((1, 2), (1, 2, 1))}

    with registry.define_suite(
        "skew-classify",
        description="centrality and commutativity decisions against sign and brute-force tests",
        requires=requires(generic=False),
    ) as suite:

        @suite.check("literal = signs")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .skewcenter import decision_table

            rows = decision_table(ctx.config.type_label, [ctx.config.ell])
            return {str(row["variant"]): bool(row["agrees"]) for row in rows}

        @suite.check("brute force", after=["literal = signs"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .skewcenter import classify_central, classify_commutative

            center, system = ctx.center, ctx.system
            report = {}
            for w in _prefixes(ctx.algebra.pbw.canonical_word()):
                s = system.element(w)
                report[f"central {w}"] = center.central_brute(w) == classify_central(system, center.ctx, s)
                report[f"commutative {w}"] = center.commutative_brute(w) == classify_commutative(
                    system, center.ctx, s
                )
            return report

    with registry.define_suite(
        "skew-rank2",
        description="rank-2 re-expressions, word independence, ideal recursion and quotient dimensions",
        requires=requires(generic=False, types=["A2", "B2", "C2"]),
    ) as suite:

        @suite.check("re-expression")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            report = {}
            for which in ("ji", "b"):
                report.update({f"{which} {k}": v for k, v in center.verify_reexpression(which).items()})
            return report

        @suite.check("word independence", after=["re-expression"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            words = ctx.system.maximal_words()
            return {f"{z} ⊇ {other}": center.word_independent(z, other) for z in words for other in words if z != other}

        @suite.check("ideal recursion")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            z = ctx.algebra.pbw.canonical_word()
            report = {}
            for k in range(1, len(z)):
                report.update(center.verify_ideal_recursion(z[:k], z[k:]))
            return report

        @suite.check("Artin action on 𝒵")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .skewcenter import monomial

            center, algebra = ctx.center, ctx.algebra
            simple = [center.X((i,)) for i in (1, 2)] + [center.Y((i,)) for i in (1, 2)] + [center.L(i) for i in (1, 2)]
            report = {}
            for i, p, inverse in product((1, 2), simple, (False, True)):
                image = center.artin_on_Z(i, {monomial((p, 1)): algebra.ring.one}, inverse)
                expected = algebra.gamma(i, center.element(p), inverse)
                report[f"Γ{i}{'⁻¹' if inverse else ''}({p})"] = algebra.equal(center.realize(image), expected)
            return report

        @suite.check("quotient dimensions")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            report = {}
            for w in _prefixes(ctx.algebra.pbw.canonical_word()):
                for nu in _weights_up_to(2, min(ctx.config.degree_bound, 6)):
                    dimension, count = center.quotient_dimension(w, nu)
                    report[f"{w} {nu}"] = dimension == count
            return report

        @suite.check("two-generator quotient")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            if ctx.config.type_label != "A2":
                raise CheckSkipped("the two-generator quotient is checked in A₂")
            survivors = ctx.center.simple_quotient_survivors(ctx.config.degree_bound // 2)
            return {f"E(12)^{j}": alive for j, alive in enumerate(survivors, start=1)}

    with registry.define_suite(
        "skew-monomials",
        description="products of primitive power monomials, PBW shifts and the 𝒢-action",
        requires=requires(generic=False),
    ) as suite:

        @suite.check("monomial relations")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            z = ctx.algebra.pbw.canonical_word()
            report = {}
            for psi, phi in product(_unit_vectors(len(z)), repeat=2):
                height = _height(center, z, psi) + _height(center, z, phi)
                if height > ctx.config.degree_bound:
                    continue
                for k, v in center.verify_monomial_relations(z, psi, phi).items():
                    report[f"{psi} {phi} {k}"] = v
            if not report:
                raise CheckSkipped("no pair of generators fits the degree bound")
            return report

        @suite.check("κ shift")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            z = ctx.algebra.pbw.canonical_word()
            roots = ctx.system.inversion_sequence(z)
            report = {}
            for psi, rho in product(_unit_vectors(len(z)), repeat=2):
                rho_height = sum(sum(b) * r for b, r in zip(roots, rho))
                if _height(center, z, psi) + rho_height > ctx.config.degree_bound:
                    continue
                for k, v in center.verify_kappa_shift(z, psi, rho).items():
                    report[f"{psi} {rho} {k}"] = v
            if not report:
                raise CheckSkipped("no generator fits the degree bound")
            return report

        @suite.check("𝒢 commutation")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            center = ctx.center
            z = ctx.algebra.pbw.canonical_word()
            fitting = [
                w
                for w in _prefixes(z)
                if max(_height(center, w, psi) for psi in _unit_vectors(len(w))) < ctx.config.degree_bound
            ]
            if not fitting:
                raise CheckSkipped("no generator fits the degree bound")
            return center.verify_g_commutation(fitting[-1])


def _coordrings_suites(registry: Registry) -> None:
    with registry.define_suite("ast-hopf", description="Hopf structure of the AST family") as suite:

        @suite.check("bialgebra")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coordrings import ASTAlgebra, antisymmetric_table, t_n_ring

            report: dict[str, bool] = {}
            for label, algebra in (("symmetric", t_n_ring(3)), ("antisymmetric", ASTAlgebra(3, antisymmetric_table))):
                report.update({f"{label} {k}": v for k, v in algebra.verify_bialgebra().items()})
            return report

        @suite.check("antipode", after=["bialgebra"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coordrings import ASTAlgebra, antisymmetric_table, t_n_ring

            report: dict[str, bool] = {}
            for label, algebra in (("symmetric", t_n_ring(3)), ("antisymmetric", ASTAlgebra(3, antisymmetric_table))):
                report.update({f"{label} {k}": v for k, v in algebra.verify_antipode().items()})
                report.update({f"{label} {k}": v for k, v in algebra.cosolvable_filtration().items()})
            return report

    with registry.define_suite(
        "ast-identification",
        description="𝒵^{≥0} as a coordinate ring",
        requires=requires(generic=False),
    ) as suite:

        @suite.check("corelations")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coordrings import iso_verify_A, iso_verify_B2

            cartan = ctx.config.cartan
            if cartan.family == "A" and cartan.rank >= 1:
                return iso_verify_A(cartan.rank + 1, ctx.config.ell)
            if cartan.type_label == "B2":
                return iso_verify_B2(ctx.config.ell)
            raise CheckSkipped(f"no coordinate ring identification for {cartan.type_label}")

    so5 = registry.define_suite(
        "so5", description="SO₅ group law, Bruhat ideals and the M family", requires=requires(types=["B2"])
    )
    with so5 as suite:

        @suite.check("embedding")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coordrings import so5_embedding_checks, weyl_representative_checks

            return {**so5_embedding_checks(), **weyl_representative_checks()}

        @suite.check("M family normal forms")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coordrings import m_family_sweep

            return m_family_sweep(HOPF_SAMPLES)

        @suite.check("Bruhat ideals", after=["embedding"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            from .coordrings import so5_bruhat_from_embedding

            system = ctx.system
            report: dict[str, bool] = {}
            for s in system.elements:
                word = system.reduced_word(s)
                if word:
                    report.update({f"{word} {k}": v for k, v in so5_bruhat_from_embedding(word).items()})
            return report


def _rmatrix_suites(registry: Registry) -> None:
    from .rmatrix import CASES

    roots_only = requires(generic=False)

    with registry.define_suite(
        "rmx-build", description="assembly of truncated quasi-R-matrices", requires=roots_only
    ) as suite:

        @suite.check("products")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for w in _prefixes(rmx.pbw.canonical_word()):
                report.update({f"{w} {k}": v for k, v in rmx.verify_build(w).items()})
            return report

        @suite.check("duality", after=["products"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for w in _prefixes(rmx.pbw.canonical_word()):
                report.update({f"{w} {k}": v for k, v in rmx.verify_duality(w).items()})
            return report

    with registry.define_suite(
        "rmx-inverse", description="𝒫̄𝒫 against the closed remainder", requires=roots_only
    ) as suite:

        @suite.check("inverse")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for i in range(1, rmx.algebra.rank + 1):
                report.update({f"({i},) {k}": v for k, v in rmx.verify_inverse((i,)).items()})
            return report

        @suite.check("partial products", after=["inverse"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for w in _prefixes(rmx.pbw.canonical_word())[1:]:
                report.update({f"{w} {k}": v for k, v in rmx.verify_inverse(w).items()})
            return report

    for a, case in CASES.items():

        def pairs(config: RunConfig, a: int = a) -> list[tuple[int, int]]:
            A = config.cartan.A
            n = config.cartan.rank
            return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if A[i - 1][j - 1] == a]

        def applies(config: RunConfig, pairs: Callable[[RunConfig], list[tuple[int, int]]] = pairs) -> str | None:
            return None if pairs(config) else "no pair of simple roots in this case"

        with registry.define_suite(
            f"rmx-intertwine-{case}",
            description=f"intertwining identities for pairs with Cartan entry {a}",
            requires=applies,
        ) as suite:

            def identities(ctx: SuiteContext, pairs: Callable[[RunConfig], list[tuple[int, int]]] = pairs) -> dict:
                report: dict[str, bool] = {}
                for i, j in pairs(ctx.config):
                    report.update({f"({i},{j}) {k}": v for k, v in ctx.rmatrix.appendix_identities(i, j).items()})
                return report

            suite.check("identities", identities)

    with registry.define_suite("rmx-tanisaki", description="the Tanisaki twist and the pairing") as suite:

        @suite.check("pairing identity")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            return ctx.rmatrix.verify_tanisaki(bound=2)

        @suite.check("truncated coproduct", after=["pairing identity"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            if not ctx.config.ell or ctx.config.cartan.rank > 2:
                raise CheckSkipped("needs a root of unity and rank ≤ 2")
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for w in [(i,) for i in range(1, rmx.algebra.rank + 1)] + [rmx.pbw.canonical_word()]:
                report.update({f"{w} {k}": v for k, v in rmx.verify_tanisaki_truncated(w).items()})
            return report

    with registry.define_suite(
        "rmx-restricted", description="the restricted quotient", requires=roots_only
    ) as suite:

        @suite.check("dimension")
        def _(ctx: SuiteContext) -> Outcome:
            rmx = ctx.rmatrix
            expected = 1
            for root in rmx.system.positive:
                expected *= rmx.ell_bar(root)
            actual = rmx.restricted_dimension()
            return Outcome(actual == expected, f"{actual} ≠ {expected}")

        @suite.check("bi-ideal", after=["dimension"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for w in _prefixes(rmx.pbw.canonical_word()):
                report.update({f"{w} {k}": v for k, v in rmx.verify_bi_ideal(w).items()})
            return report

        @suite.check("conjugated coproduct", after=["dimension"])
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            report: dict[str, bool] = {}
            for name, x in rmx.algebra.generators():
                report.update({f"{name} {k}": v for k, v in rmx.verify_restricted(x).items()})
            return report

    with registry.define_suite(
        "rmx-uniqueness", description="word independence and symmetries", requires=roots_only
    ) as suite:

        @suite.check("symmetries")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            return ctx.rmatrix.verify_uniqueness()

        @suite.check("ideal lattice")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            return rmx.verify_ideal_lattice(rmx.pbw.canonical_word()[:1], samples=IDEAL_SAMPLES)

        @suite.check("leg bookkeeping")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            return ctx.rmatrix.verify_leg_bookkeeping()

    with registry.define_suite(
        "rmx-generic", description="truncations of the generic quasi-R-matrix", requires=requires(generic=True)
    ) as suite:

        @suite.check("intertwining")
        def _(ctx: SuiteContext) -> dict[str, bool]:
            rmx = ctx.rmatrix
            algebra = rmx.algebra
            report: dict[str, bool] = {}
            for i in range(1, algebra.rank + 1):
                for name, x in algebra.generators():
                    checks = rmx.generic_partial_check((i,), x, 2)
                    report.update({f"({i},) {name} {k}": v for k, v in checks.items()})
            return report


def register_builtin_suites(registry: Registry) -> Registry:
    _coxeter_suite(registry)
    _qring_suite(registry)
    _uqcore_suites(registry)
    _pbw_suites(registry)
    _skewcenter_suites(registry)
    _coordrings_suites(registry)
    _rmatrix_suites(registry)
    registry.seal()
    return registry


__all__ = [
    "Check",
    "CheckReport",
    "Outcome",
    "Registry",
    "Report",
    "Status",
    "Suite",
    "SuiteContext",
    "SuiteDSL",
    "register_builtin_suites",
    "requires",
    "witness",
]
