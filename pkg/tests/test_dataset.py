import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adcgap.dataset import (
    CONVERTER_COLUMNS,
    CsvFormatError,
    Dataset,
    SurveyRecord,
    UnknownFieldError,
    filter_records,
    parse_condition,
    parse_converter_csv,
    parse_transceiver_csv,
    to_converter_csv,
    to_transceiver_csv,
)

HEADER = ",".join(CONVERTER_COLUMNS)


def test_parse_example_row():
    text = HEADER + "\nxu17,2017,VLSIC,SAR,28,0.023,24e9,,4.0,0.03,\n"
    dataset, issues = parse_converter_csv(text)
    assert issues == []
    (r,) = dataset.records
    assert r.id == "xu17"
    assert r.year == 2017
    assert r.venue == "VLSIC"
    assert r.architecture == "sar"
    assert r.tech_node == 28.0
    assert r.power == 0.023
    assert r.sample_rate == 24e9
    assert r.sndr is None
    assert r.enob == 4.0
    assert r.area == 0.03
    assert r.notes is None


def test_empty_file_with_header():
    dataset, issues = parse_converter_csv(HEADER + "\n")
    assert dataset.records == ()
    assert issues == []


def test_negative_power_row_is_fatal():
    text = HEADER + "\nbad,2010,,,,-5e-3,1e9,40,,,\n"
    dataset, issues = parse_converter_csv(text)
    assert dataset.records == ()
    (issue,) = issues
    assert issue.severity == "fatal"
    assert issue.column == "power_w"
    assert "positive" in issue.message
    assert issue.row == 1


def test_missing_header_is_fatal():
    with pytest.raises(CsvFormatError):
        parse_converter_csv("")
    with pytest.raises(CsvFormatError, match="power_w"):
        parse_converter_csv("id,year\nfoo,2010\n")


def test_unknown_extra_column_is_warning():
    text = HEADER + ",extra\nr1,2010,,,,0.1,1e9,40,,,,surprise\n"
    dataset, issues = parse_converter_csv(text)
    assert len(dataset.records) == 1
    (issue,) = issues
    assert issue.severity == "warning"
    assert issue.column == "extra"
    assert issue.row == 0


def test_duplicate_id_excluded():
    text = HEADER + "\nr1,2010,,,,0.1,1e9,40,,,\nr1,2011,,,,0.2,2e9,41,,,\n"
    dataset, issues = parse_converter_csv(text)
    assert [r.year for r in dataset.records] == [2010]
    assert issues[0].severity == "fatal"
    assert "duplicate" in issues[0].message


def test_crlf_and_blank_lines_accepted():
    text = HEADER + "\r\nr1,2010,,,,0.1,1e9,40,,,\r\n\r\n"
    dataset, issues = parse_converter_csv(text)
    assert len(dataset.records) == 1
    assert issues == []


def test_year_bounds_and_bad_numbers():
    rows = [
        "r1,1969,,,,0.1,1e9,40,,,",      # year too small
        "r2,2101,,,,0.1,1e9,40,,,",      # year too large
        "r3,2010,,,,abc,1e9,40,,,",      # bad power
        "r4,2010,,,,0.1,1e9,40,,-2,",    # bad area
        "r5,2010,,,,0.1,,40,,,",         # missing sample rate
        "r6,2010,,,,0.1,inf,40,,,",      # non-finite
    ]
    dataset, issues = parse_converter_csv(HEADER + "\n" + "\n".join(rows) + "\n")
    assert dataset.records == ()
    assert len(issues) == len(rows)
    assert all(i.severity == "fatal" for i in issues)


def test_resolution_incomplete_row_kept_with_warning():
    text = HEADER + "\nr1,2014,,,,0.5,90e9,,,0.45,\n"
    dataset, issues = parse_converter_csv(text)
    (r,) = dataset.records
    assert not r.resolution_complete
    (issue,) = issues
    assert issue.severity == "warning"


def test_unrecognized_architecture_warns_but_keeps_value():
    text = HEADER + "\nr1,2010,,folded-flash,,0.1,1e9,40,,,\n"
    dataset, issues = parse_converter_csv(text)
    assert dataset.records[0].architecture == "folded-flash"
    assert issues[0].severity == "warning"
    assert issues[0].column == "architecture"


def test_parse_transceiver_examples():
    text = "id,year,bitrate_bps,power_w,area_mm2\nt1,2015,30e9,0.060,0.4\n"
    dataset, issues = parse_transceiver_csv(text)
    assert issues == []
    (t,) = dataset.transceivers
    assert (t.bitrate, t.power, t.area) == (30e9, 0.060, 0.4)

    empty, issues = parse_transceiver_csv("id,year,bitrate_bps,power_w,area_mm2\n")
    assert empty.transceivers == () and issues == []

    _, issues = parse_transceiver_csv(
        "id,year,bitrate_bps,power_w,area_mm2\nt2,2015,abc,0.06,0.4\n")
    assert issues[0].severity == "fatal"
    assert issues[0].column == "bitrate_bps"


# ---------------------------------------------------------------------------
# Round-trip
# ---------------------------------------------------------------------------

_text = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc")),
    min_size=1, max_size=12).map(str.strip).filter(bool)
_positive = st.floats(min_value=1e-9, max_value=1e12, allow_nan=False)


@st.composite
def survey_records(draw, index):
    return SurveyRecord(
        id=f"rec{index}",
        year=draw(st.integers(min_value=1970, max_value=2100)),
        venue=draw(st.none() | _text),
        architecture=draw(st.none() | st.sampled_from(["sar", "flash", "pipeline"])),
        tech_node=draw(st.none() | _positive),
        power=draw(_positive),
        sample_rate=draw(_positive),
        sndr=draw(st.none() | st.floats(min_value=-50, max_value=150, allow_nan=False)),
        enob=draw(st.none() | st.floats(min_value=0, max_value=24, allow_nan=False)),
        area=draw(st.none() | _positive),
        notes=draw(st.none() | _text),
    )


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_csv_round_trip_is_field_identical(data):
    n = data.draw(st.integers(min_value=1, max_value=6))
    records = tuple(data.draw(survey_records(i)) for i in range(n))
    dataset = Dataset(records=records)
    text = to_converter_csv(dataset)
    reparsed, issues = parse_converter_csv(text)
    assert all(i.severity == "warning" for i in issues)
    assert reparsed.records == records


def test_transceiver_round_trip():
    from adcgap.dataset import TransceiverRecord
    dataset = Dataset(transceivers=(
        TransceiverRecord("t1", 2015, 30e9, 0.06, 0.4),
        TransceiverRecord("t2", 2016, 1.2345678901234e9, 0.061, 0.25),
    ))
    reparsed, issues = parse_transceiver_csv(to_transceiver_csv(dataset))
    assert issues == []
    assert reparsed.transceivers == dataset.transceivers


# ---------------------------------------------------------------------------
# Filtering
# ---------------------------------------------------------------------------

def _mini_dataset():
    rows = [
        "a,2010,,,,0.1,1e9,40,,,",
        "b,2014,,,,0.2,2e9,,3.5,,",
        "c,2017,,,,0.3,3e9,50,,0.5,",
    ]
    dataset, _ = parse_converter_csv(HEADER + "\n" + "\n".join(rows) + "\n")
    return dataset


def test_filter_year_threshold():
    dataset = _mini_dataset()
    filtered = filter_records(dataset, ["year>=2014"])
    assert [r.id for r in filtered.records] == ["b", "c"]


def test_filter_enob_split():
    dataset = _mini_dataset()
    low = filter_records(dataset, ["enob<=4"])
    assert [r.id for r in low.records] == ["b"]


def test_filter_empty_conditions_is_identity():
    dataset = _mini_dataset()
    assert filter_records(dataset, []).records == dataset.records


def test_filter_unknown_field():
    with pytest.raises(UnknownFieldError, match="wattage"):
        filter_records(_mini_dataset(), ["wattage>=1"])


def test_filter_partition_invariant():
    dataset = _mini_dataset()
    for condition in ("enob<=4", "year>2013", "area>0.1", "architecture==sar"):
        kept = filter_records(dataset, [condition])
        dropped = filter_records(dataset, [condition], invert=True)
        ids = sorted(r.id for r in kept.records) + sorted(r.id for r in dropped.records)
        assert sorted(ids) == sorted(r.id for r in dataset.records)


def test_filter_string_condition():
    dataset = _mini_dataset()
    with pytest.raises(ValueError, match="== and !="):
        parse_condition("venue>=ISSCC")
    assert parse_condition("architecture==sar").value == "sar"


def test_filter_does_not_mutate_input():
    dataset = _mini_dataset()
    before = dataset.records
    filter_records(dataset, ["year>=2014"])
    assert dataset.records == before
