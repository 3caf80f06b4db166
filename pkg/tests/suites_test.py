from __future__ import annotations

import json

import pytest
from pytest_subtests import SubTests

from qgroups import REGISTRY, define_suite, run_suites
from qgroups.config import RunConfig
from qgroups.errors import CheckSkipped, CyclicChecks, InvalidRootOfUnity, UnknownSuite
from qgroups.random import random
from qgroups.suites import Outcome, Registry, Status, SuiteContext, requires, witness
from qgroups.uqcore import QuantumAlgebra


def statuses(config: RunConfig) -> dict[str, Status]:
    return {check.name: check.status for check in run_suites(config).checks}


def test_check_results() -> None:
    with define_suite("local") as suite:
        suite.check("plain", lambda ctx: True)
        suite.check("labelled", lambda ctx: {"one": True, "two": False, "three": False})
        suite.check("outcome", lambda ctx: Outcome(False, "E1 - E1"))

        @suite.check("skipped")
        def _(ctx: SuiteContext) -> bool:
            raise CheckSkipped("not here")

    report = run_suites(RunConfig(type_label="A1", suites=["local"]))
    by_name = {check.name: check for check in report.checks}
    assert by_name["plain"].status is Status.PASS
    assert by_name["plain"].witness is None
    assert by_name["labelled"].status is Status.FAIL
    assert by_name["labelled"].witness == "failed: two; three"
    assert by_name["outcome"].witness == "E1 - E1"
    assert by_name["skipped"].status is Status.SKIPPED
    assert by_name["skipped"].witness == "not here"
    assert report.failed


def test_dependencies() -> None:
    with define_suite("local") as suite:
        suite.check("last", lambda ctx: True, after=["middle"])
        suite.check("middle", lambda ctx: False, after=["first"])
        suite.check("first", lambda ctx: True)
        suite.check("independent", lambda ctx: True)

    config = RunConfig(type_label="A1", suites=["local"])
    names = [check.name for check in run_suites(config).checks]
    assert names.index("first") < names.index("middle") < names.index("last")
    assert statuses(config) == {
        "first": Status.PASS,
        "middle": Status.FAIL,
        "last": Status.SKIPPED,
        "independent": Status.PASS,
    }


def test_cycles() -> None:
    registry = Registry()
    with registry.define_suite("cyclic") as suite:
        suite.check("a", lambda ctx: True, after=["b"])
        suite.check("b", lambda ctx: True, after=["a"])

    with pytest.raises(CyclicChecks) as excinfo:
        registry.run(RunConfig(type_label="A1", suites=["cyclic"]))
    assert excinfo.value.dependencies == {"a": {"b"}, "b": {"a"}}


def test_unknown_names() -> None:
    with pytest.raises(UnknownSuite):
        run_suites(RunConfig(type_label="A1", suites=["no-such-suite"]))

    ran = []
    with define_suite("local") as suite:
        suite.check("first", lambda ctx: ran.append(1) or True)
    with pytest.raises(UnknownSuite):
        run_suites(RunConfig(type_label="A1", suites=["local", "no-such-suite"]))
    assert not ran

    registry = Registry()
    with registry.define_suite("dangling") as suite:
        suite.check("a", lambda ctx: True, after=["missing"])
    with pytest.raises(UnknownSuite):
        registry.run(RunConfig(type_label="A1", suites=["dangling"]))


def test_invalid_config() -> None:
    with pytest.raises(InvalidRootOfUnity):
        run_suites(RunConfig(type_label="B2", ell=4, suites=["coxeter-orders"]))


def test_requirements(subtests: SubTests) -> None:
    with define_suite("local", requires=requires(generic=False, families=["B"])) as suite:
        suite.check("only", lambda ctx: True)

    for label, ell, expected in (("A2", 0, Status.SKIPPED), ("B2", 0, Status.SKIPPED), ("B2", 5, Status.PASS)):
        with subtests.test(f"{label} ℓ={ell}"):
            assert statuses(RunConfig(type_label=label, ell=ell, suites=["local"])) == {"only": expected}


def test_requires_messages() -> None:
    config = RunConfig(type_label="A3")
    assert requires(generic=False)(config) == "needs a root of unity"
    assert requires(types=["B2", "C2"])(config) == "applies to B2, C2"
    assert requires(max_rank=2)(config) == "needs rank ≤ 2"
    assert requires(generic=True, families=["A"], min_rank=2)(config) is None


def test_clear_local() -> None:
    with define_suite("local") as suite:
        suite.check("only", lambda ctx: True)
    assert "local" in REGISTRY.suites
    REGISTRY.clear_local()
    assert "local" not in REGISTRY.suites
    assert "coxeter-orders" in REGISTRY.suites


def test_seeded_reports_are_deterministic() -> None:
    with define_suite("local") as suite:
        suite.check("draw", lambda ctx: Outcome(False, str(random.random())))

    config = RunConfig(type_label="A1", suites=["local"], seed=7)

    def payload() -> dict:
        data = json.loads(run_suites(config).to_json())
        for check in data["checks"]:
            del check["wall_time"]
        return data

    first = payload()
    assert first == payload()
    assert first["context"] == {"type": "A1", "ell": 0, "degree_bound": 8, "seed": 7, "suites": ["local"]}
    assert first["checks"][0]["status"] == "fail"


def test_text_report() -> None:
    with define_suite("local") as suite:
        suite.check("plain", lambda ctx: True)
        suite.check("broken", lambda ctx: Outcome(False, "E1"))

    text = run_suites(RunConfig(type_label="A1", suites=["local"])).to_text()
    assert "pass    local :: plain" in text
    assert "fail    local :: broken" in text
    assert text.endswith("1 pass, 1 fail, 0 skipped")


def test_witness_is_capped(a1: QuantumAlgebra) -> None:
    small = a1.E(1) + a1.F(1)
    assert witness(small) == a1.format(small)

    large = a1.zero
    for k in range(45):
        large = large + a1.E(1, k)
    text = witness(large)
    assert text.endswith("(5 more terms)")
    assert witness(a1.coproduct(a1.E(1))) == a1.format_tensor(a1.coproduct(a1.E(1)))


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_coxeter_suite(label: str, subtests: SubTests) -> None:
    for check in run_suites(RunConfig(type_label=label, suites=["coxeter-orders"])).checks:
        with subtests.test(check.name):
            assert check.status is Status.PASS


def test_hopf_suite_rank_one(subtests: SubTests) -> None:
    for check in run_suites(RunConfig(type_label="A1", suites=["uq-hopf"])).checks:
        with subtests.test(check.name):
            assert check.status is Status.PASS, check.witness


def test_inverse_suite_rank_one() -> None:
    assert statuses(RunConfig(type_label="A1", ell=3, suites=["rmx-inverse"])) == {
        "inverse": Status.PASS,
        "partial products": Status.SKIPPED,
    }


def test_rank_two_root_of_unity_checks_at_raised_bound(subtests: SubTests) -> None:
    config = RunConfig(
        type_label="A2",
        ell=3,
        degree_bound=20,
        suites=["rmx-tanisaki", "skew-classify", "rmx-inverse", "rmx-restricted"],
    )
    report = run_suites(config)
    names = {f"{check.suite} :: {check.name}" for check in report.checks}
    assert {
        "rmx-tanisaki :: truncated coproduct",
        "skew-classify :: brute force",
        "rmx-inverse :: partial products",
        "rmx-restricted :: conjugated coproduct",
    } <= names
    for check in report.checks:
        with subtests.test(f"{check.suite} :: {check.name}"):
            assert check.status is Status.PASS, check.witness


def test_qring_identities_suite() -> None:
    assert statuses(RunConfig(type_label="A1", suites=["qring-identities"])) == {
        "multinomial recursion": Status.PASS,
        "c′ sum": Status.PASS,
    }


def test_inapplicable_builtin_suites() -> None:
    report = run_suites(RunConfig(type_label="A2", ell=3, suites=["b2-coproducts", "rmx-intertwine-double"]))
    assert {check.status for check in report.checks} == {Status.SKIPPED}
    assert not report.failed


@pytest.mark.parametrize("label", ["B2", "G2"])
def test_generator_suites(label: str, subtests: SubTests) -> None:
    report = run_suites(RunConfig(type_label=label, suites=["uq-braid", "uq-garside", "uq-hopf"]))
    assert report.checks
    for check in report.checks:
        with subtests.test(f"{check.suite} :: {check.name}"):
            assert check.status is Status.PASS, check.witness


@pytest.mark.parametrize("label", ["A2", "B2"])
def test_catalog_suite(label: str, subtests: SubTests) -> None:
    report = run_suites(RunConfig(type_label=label, suites=["uq-catalog"]))
    assert len(report.checks) == 5
    for check in report.checks:
        with subtests.test(check.name):
            assert check.status is Status.PASS, check.witness


def test_rank2_pbw_suite(subtests: SubTests) -> None:
    assert statuses(RunConfig(type_label="B2", suites=["pbw-rank2"])) == {
        "B₂ identities": Status.PASS,
        "𝔘-expansion": Status.PASS,
    }
    assert statuses(RunConfig(type_label="A2", suites=["pbw-rank2"]))["B₂ identities"] is Status.SKIPPED
    assert statuses(RunConfig(type_label="A3", suites=["pbw-rank2"])) == {
        "B₂ identities": Status.SKIPPED,
        "𝔘-expansion": Status.SKIPPED,
    }
