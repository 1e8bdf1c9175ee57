"""Toolkit for FrameNet-based multilingual grammar and lexicon extraction."""

__version__ = "0.1.0"

SCHEMA_VERSION = 1
