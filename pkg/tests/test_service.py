import pytest
from fastapi.testclient import TestClient

from adcgap.service import create_app
from adcgap.samples import sample_converters_text, sample_transceivers_text

HEADER = "id,year,venue,architecture,tech_nm,power_w,fs_hz,sndr_db,enob,area_mm2,notes"


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def converters_csv():
    return sample_converters_text()


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_ingest_round_trip(client, converters_csv):
    response = client.post("/ingest", json={
        "converter_csv": converters_csv,
        "transceiver_csv": sample_transceivers_text(),
    })
    assert response.status_code == 200
    body = response.json()
    assert len(body["converters"]) == 38
    assert len(body["transceivers"]) == 9
    assert {i["severity"] for i in body["issues"]} == {"warning"}
    assert set(body["artifacts"]) == {"converters.csv", "transceivers.csv", "issues.csv"}
    xu = next(r for r in body["converters"] if r["id"] == "xu17")
    assert xu["power_w"] == 0.023
    assert xu["enob"] == 4.0


def test_ingest_requires_some_payload(client):
    response = client.post("/ingest", json={})
    assert response.status_code == 400


def test_ingest_bad_header_is_400(client):
    response = client.post("/ingest", json={"converter_csv": "id,year\nr,2000\n"})
    assert response.status_code == 400
    assert "missing required columns" in response.json()["detail"]


def test_metrics_endpoint(client, converters_csv):
    response = client.post("/metrics", json={"converter_csv": converters_csv})
    assert response.status_code == 200
    body = response.json()
    xu = next(r for r in body["rows"] if r["id"] == "xu17")
    assert xu["bandwidth_hz"] == pytest.approx(12e9)
    assert xu["single_bit_energy_j"] == pytest.approx(1.9166666666666665e-12)
    assert xu["sampling_density_hz_mm2"] == pytest.approx(8e11)
    assert "metrics.csv" in body["artifacts"]


def test_budget_endpoint_defaults(client):
    response = client.post("/budget", json={})
    assert response.status_code == 200
    cascade = response.json()["cascade"]
    assert cascade["per_core_area_mm2"] == 4.5
    assert cascade["wireless_energy_per_bit_j"] == 3.5e-12
    assert cascade["converter_area_target_mm2"] == 0.075


def test_budget_endpoint_with_density(client, converters_csv):
    response = client.post("/budget", json={
        "converter_csv": converters_csv,
        "transceiver_csv": sample_transceivers_text(),
    })
    body = response.json()
    assert body["density"]["ratio"] == pytest.approx(5.76)
    assert "density.txt" in body["artifacts"]


def test_budget_endpoint_invalid_policy(client):
    response = client.post("/budget", json={"policy": {"noc_fraction": 1.5}})
    assert response.status_code == 400


def test_frontier_endpoint(client, converters_csv):
    response = client.post("/frontier", json={
        "converter_csv": converters_csv,
        "objectives": [{"metric": "ebit", "direction": "minimize"},
                       {"metric": "bandwidth", "direction": "maximize"}],
    })
    assert response.status_code == 200
    body = response.json()
    assert "xu17" in body["ids"]
    assert body["artifacts"]["frontier.csv"].startswith("id,year,")


def test_frontier_endpoint_unknown_metric(client, converters_csv):
    response = client.post("/frontier", json={
        "converter_csv": converters_csv,
        "objectives": [{"metric": "bogus", "direction": "minimize"}],
    })
    assert response.status_code == 400


def test_trend_endpoint_with_projection(client, converters_csv):
    response = client.post("/trend", json={
        "converter_csv": converters_csv,
        "metric": "ebit", "selector": "yearly_best", "threshold": 1e-13,
    })
    assert response.status_code == 200
    body = response.json()
    assert body["fit"]["kind"] == "doubling"
    assert body["fit"]["halving_time_years"] == pytest.approx(1.9016830190206724)
    assert body["projection"]["year"] == pytest.approx(2026.1, abs=0.05)
    assert body["projection"]["anchor_value"] == pytest.approx(1.9166666666666665e-12)


def test_trend_endpoint_insufficient_points(client):
    tiny = HEADER + "\nr1,2010,,,,0.1,1e9,40,,,\n"
    response = client.post("/trend", json={
        "converter_csv": tiny, "metric": "ebit", "selector": "yearly_best"})
    assert response.status_code == 400


def test_gap_endpoint(client, converters_csv):
    response = client.post("/gap", json={"converter_csv": converters_csv,
                                         "project": True})
    assert response.status_code == 200
    body = response.json()
    assert body["overall_passes"] == []
    assert body["nearest_miss"]["id"] == "xu17"
    assert body["counts"]["energy"]["passed"] == 0
    assert sum(body["counts"]["energy"].values()) == body["n_records"]
    (projection,) = body["projections"]
    assert projection["criterion"] == "energy"
    assert projection["year"] is not None
    assert set(body["artifacts"]) == {"gap.txt", "verdicts.csv"}


def test_gap_endpoint_custom_spec_overrides_preset(client, converters_csv):
    custom = {
        "name": "anything-goes", "min_bandwidth_hz": 1e-300,
        "min_nyquist_hz": 1e-300, "max_osr": 1e300, "min_enob_bits": 1e-300,
        "max_area_mm2": 1e300, "max_energy_per_bit_j": 1e300,
    }
    response = client.post("/gap", json={
        "converter_csv": converters_csv, "spec": custom})
    body = response.json()
    assert body["spec"]["name"] == "anything-goes"
    assert len(body["overall_passes"]) == 36      # all but the two unknown-resolution designs


def test_gap_endpoint_unknown_preset_is_404(client, converters_csv):
    response = client.post("/gap", json={
        "converter_csv": converters_csv, "spec_name": "table9"})
    assert response.status_code == 404


def test_plot_endpoint(client, converters_csv):
    response = client.post("/plot", json={
        "converter_csv": converters_csv,
        "x": "bandwidth", "y": "ebit",
        "x_scale": "log10", "y_scale": "log10",
        "split": "enob<=4", "requirement_box": "table2-adc",
        "jitter_overlays_s": [],
    })
    assert response.status_code == 200
    body = response.json()
    assert body["points"] == 38
    assert body["svg"].startswith("<?xml")
    assert body["series_csv"].splitlines()[0] == \
        "bandwidth,single_bit_energy,id,year,split"
    assert set(body["artifacts"]) == {"series.csv", "plot.svg"}


def test_plot_endpoint_yearly_best_envelope(client, converters_csv):
    response = client.post("/plot", json={
        "converter_csv": converters_csv,
        "x": "year", "y": "ebit", "y_scale": "log10",
        "selector": "yearly_best",
        "reference_trends": ["ebit-halving"],
    })
    assert response.status_code == 200
    body = response.json()
    assert body["points"] == 22          # one point per sample year
    assert body["series_csv"].splitlines()[0] == "year,single_bit_energy,id"
    assert "<polyline" in body["svg"]    # the tendency overlay

    bad = client.post("/plot", json={
        "converter_csv": converters_csv,
        "x": "bandwidth", "y": "ebit", "selector": "yearly_best"})
    assert bad.status_code == 400
    assert "x=year" in bad.json()["detail"]


def test_plot_endpoint_rejects_log_nonpositive(client):
    csv_text = HEADER + "\nr1,2010,,,,0.1,1e9,-40,,,\n" \
                        "r2,2011,,,,0.1,1e9,41,,,\nr3,2012,,,,0.1,1e9,42,,,\n"
    response = client.post("/plot", json={
        "converter_csv": csv_text, "x": "bandwidth", "y": "sndr",
        "y_scale": "log10"})
    assert response.status_code == 400
    assert "r1" in response.json()["detail"]


def test_presets_endpoints(client):
    listing = client.get("/presets").json()
    assert listing == {"requirements": ["table2-adc", "table2-adc-enob1"],
                       "scenarios": ["table1-scenario"]}
    table2 = client.get("/presets/table2-adc").json()
    assert table2["kind"] == "requirement"
    assert table2["requirement"]["max_energy_per_bit_j"] == 1e-12
    table1 = client.get("/presets/table1-scenario").json()
    assert table1["kind"] == "scenario"
    assert table1["scenario"]["bit_error_rate"]["low"] == 1e-15
    assert client.get("/presets/none-such").status_code == 404


def test_validation_error_is_422(client):
    response = client.post("/metrics", json={"osr": 1.0})
    assert response.status_code == 422
