# tests/test_verification.py

import random

import pytest

from homfin.services.verification_service import LEVELS, VerificationService, random_triples_associative


@pytest.fixture(scope="module")
def verifier():
    return VerificationService()


@pytest.mark.parametrize("name", ["koszul", "lemma3", "negative", "proposition1"])
def test_fast_fixture_passes(verifier, name):
    [result] = verifier.run_all_checks(level="fast", names=[name], seed=3)
    assert result.name == name
    assert result.success, result.message
    assert result.seconds >= 0


@pytest.mark.slow
@pytest.mark.parametrize("name", ["theorem4", "theorem1", "theorem2", "kuenneth", "invariants"])
def test_slow_fixture_passes(verifier, name):
    [result] = verifier.run_all_checks(level="fast", names=[name], seed=3)
    assert result.success, result.message


def test_fixture_that_raises_is_reported_as_failure(verifier, monkeypatch):
    def explode(params, rng):
        raise RuntimeError("boom")

    monkeypatch.setitem(verifier.fixtures, "koszul", explode)
    [result] = verifier.run_all_checks(names=["koszul"])
    assert not result.success
    assert "RuntimeError" in result.message


def test_random_triples_are_associative(cubic):
    assert random_triples_associative(cubic, 50, random.Random(5)) is None


def test_levels_share_their_keys():
    assert LEVELS["fast"].keys() == LEVELS["exhaustive"].keys()
    assert all(LEVELS["fast"][k] <= LEVELS["exhaustive"][k] for k in LEVELS["fast"])
