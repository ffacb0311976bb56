from __future__ import annotations

import pytest

from storyweave import ExplorationPolicy, Session, make_provider
from storyweave.content import CINDERELLA_PROBE_PART, CINDERELLA_SUMMARY
from storyweave.gateway import ProviderConfig


@pytest.fixture
def mock_provider():
    return make_provider("mock")


@pytest.fixture
def lenient_provider():
    return make_provider("mock", ProviderConfig(strict=False, seed=7))


def make_cinderella_session(policy=None, provider=None, lenient=False, seed=0):
    if provider is None:
        provider = make_provider(
            "mock", ProviderConfig(strict=not lenient, seed=seed)
        )
    session = Session.create(CINDERELLA_SUMMARY, policy=policy, provider=provider)
    start = CINDERELLA_SUMMARY.index(CINDERELLA_PROBE_PART)
    session.highlight(start, start + len(CINDERELLA_PROBE_PART))
    return session


@pytest.fixture
def cinderella_session():
    return make_cinderella_session()


@pytest.fixture
def baseline_session():
    return make_cinderella_session(policy=ExplorationPolicy.baseline())
