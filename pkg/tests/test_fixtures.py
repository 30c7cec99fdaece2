"""Built-in fixtures: loading, evaluation, and expected-verdict fidelity."""

import pytest

from transitclust import fixtures as fm


def test_names_stable():
    names = fm.fixture_names()
    assert len(names) == 19
    assert names == tuple(sorted(names))


def test_load_round_trip():
    fx = fm.load_fixture("triangle")
    assert fx.kind == "transit"
    assert fx.transit.groundset.labels == ("a", "b", "c")
    assert fx.expected["wp"] is True


def test_system_fixture_has_both_views():
    fx = fm.load_fixture("path-system")
    assert fx.system.has_all_singletons()
    # canonical transit function of a system fixture is available too
    assert fx.transit.groundset == fx.system.groundset


def test_unknown_fixture():
    with pytest.raises(FileNotFoundError):
        fm.load_fixture("no-such-fixture")


def test_all_expected_match():
    failures = []
    for fixture, results, ok in fm.run_all():
        if not ok:
            for key, (exp, act) in results.items():
                if exp != act:
                    failures.append((fixture.name, key, exp, act))
    assert not failures, failures


def test_every_fixture_checks_something():
    for fx in fm.all_fixtures():
        assert fx.expected, fx.name
        assert fx.description
