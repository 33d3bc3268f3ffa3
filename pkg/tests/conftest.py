import pytest

from mcsreason import parse_ontology

import helpers


@pytest.fixture(scope="session")
def monument():
    return parse_ontology(helpers.MONUMENT)


@pytest.fixture(scope="session")
def bioportal():
    return parse_ontology(helpers.BIOPORTAL)


@pytest.fixture(scope="session")
def departments():
    return parse_ontology(helpers.DEPARTMENTS)
