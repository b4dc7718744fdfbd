"""Bundled sample datasets.

The public converter survey spreadsheets are not redistributed; instead the
package ships a small hand-transcribed sample of representative published
designs (1997-2018, including the well-known 90 GS/s, 46 GS/s and 24 GS/s
parts) plus a handful of short-range multi-Gb/s transceivers.  Values are
approximate transcriptions suitable for exercising the analytics, not a
replacement for the full surveys.
"""

from __future__ import annotations

from importlib import resources

from .dataset import Dataset, ParseIssue, parse_converter_csv, parse_transceiver_csv

CONVERTER_SAMPLE = "converters_sample.csv"
TRANSCEIVER_SAMPLE = "transceivers_sample.csv"


def sample_converters_text() -> str:
    return resources.files(__package__).joinpath(f"data/{CONVERTER_SAMPLE}").read_text("utf-8")


def sample_transceivers_text() -> str:
    return resources.files(__package__).joinpath(f"data/{TRANSCEIVER_SAMPLE}").read_text("utf-8")


def load_sample_converters() -> tuple[Dataset, list[ParseIssue]]:
    return parse_converter_csv(sample_converters_text(), source=CONVERTER_SAMPLE)


def load_sample_transceivers() -> tuple[Dataset, list[ParseIssue]]:
    return parse_transceiver_csv(sample_transceivers_text(), source=TRANSCEIVER_SAMPLE)
