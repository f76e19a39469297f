"""Seeded corpora and the property suites run by ``ogspi check``."""

from .corpus import FIXTURE_SOURCES, fixture_terms, gen_corpus, gen_pairs, gen_redexes, gen_terms
from .suites import SUITES, Item, Report, UnknownSuite, run_suite, suite_params
