import copy
import io
import json

import pytest

from hazmit.bundle import (
    STORM_EVENTS_COLUMNS,
    bundle_from_dict,
    bundle_to_dict,
    load_bundle,
    load_event_csv,
    provenance_note,
    save_bundle,
    shipped_bundle_path,
)
from hazmit.errors import BundleError, RecordError, SchemaError, ValidationError
from hazmit.model import CONSEQUENCE_KINDS
from hazmit.reports import canonical_bytes, sweep_document, write_report
from hazmit.solver import SolveRequest, solve_exact
from hazmit import reports


@pytest.fixture
def iowa_doc():
    with open(shipped_bundle_path(), "r", encoding="utf-8") as fh:
        return json.load(fh)


class TestLoadBundle:
    def test_shipped_bundle_shape(self, iowa_bundle):
        model = iowa_bundle.model
        assert len(model.hazards) == 16
        assert len(model.projects) == 52
        assert len(CONSEQUENCE_KINDS) == 6
        assert set(iowa_bundle.scenarios) == {
            "weak_effects", "split_grades", "close_top_grades",
            "thira_worst_case",
        }

    def test_bad_probability_names_hazard(self, iowa_doc):
        doc = copy.deepcopy(iowa_doc)
        doc["hazards"][2]["baseline_probability"] = 1.2
        hazard_id = doc["hazards"][2]["id"]
        with pytest.raises(ValidationError) as err:
            bundle_from_dict(doc)
        assert hazard_id in str(err.value)

    def test_unsupported_version(self, iowa_doc):
        doc = copy.deepcopy(iowa_doc)
        doc["format_version"] = 99
        with pytest.raises(BundleError):
            bundle_from_dict(doc)

    def test_malformed_document(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(BundleError):
            load_bundle(path)

    def test_missing_key(self, iowa_doc):
        doc = copy.deepcopy(iowa_doc)
        del doc["weights"]
        with pytest.raises(BundleError):
            bundle_from_dict(doc)

    def test_round_trip_structural_identity(self, iowa_bundle, tmp_path):
        path = tmp_path / "bundle.json"
        save_bundle(iowa_bundle, path)
        reloaded = load_bundle(path)
        assert reloaded == iowa_bundle
        assert bundle_to_dict(reloaded) == bundle_to_dict(iowa_bundle)

    def test_round_trip_via_stream(self, iowa_bundle):
        buffer = io.StringIO()
        save_bundle(iowa_bundle, buffer)
        buffer.seek(0)
        assert load_bundle(buffer) == iowa_bundle


class TestProvenance:
    def test_every_numeric_field_annotated(self, iowa_doc):
        # dropping a pattern must break coverage validation
        doc = copy.deepcopy(iowa_doc)
        del doc["provenance"]["projects.*.cost"]
        with pytest.raises(ValidationError) as err:
            bundle_from_dict(doc)
        assert "provenance" in str(err.value)

    def test_note_lookup(self, iowa_bundle):
        note = provenance_note(iowa_bundle, "projects.28.cost")
        assert note and "truncated" in note
        note = provenance_note(iowa_bundle, "hazards.flood.baseline_probability")
        assert note and "hazard risk table" in note
        assert provenance_note(iowa_bundle, "projects.20.applicability.extra") is None

    def test_mapping_marked_as_reconstruction(self, iowa_bundle):
        note = provenance_note(iowa_bundle, "projects.20.applicability")
        assert note and "reconstruction" in note

    def test_thira_marked_non_authoritative(self, iowa_bundle):
        note = provenance_note(
            iowa_bundle,
            "scenarios.thira_worst_case.consequence_override.0.value",
        )
        assert note and "non-authoritative" in note


class TestEventCsv:
    def test_three_row_fixture(self, tmp_path):
        path = tmp_path / "events.csv"
        path.write_text(
            "event_type,date,fatalities,injuries,property_damage,crop_damage\n"
            "Winter Storm,1991-01-02,1,6,250000,0\n"
            "Blizzard,01/15/1995,0,2,1000,500\n"
            "Ice Storm,2001-12-30,0,0,0,0\n",
            encoding="utf-8",
        )
        events = load_event_csv(path)
        assert len(events) == 3
        assert events[0].fatalities == 1
        assert events[0].injuries == 6
        assert events[1].date.month == 1 and events[1].date.year == 1995
        assert events[2].property_damage == 0.0

    def test_empty_cell_flagged_missing(self, tmp_path):
        path = tmp_path / "events.csv"
        path.write_text(
            "event_type,date,fatalities,injuries,property_damage,crop_damage\n"
            "Winter Storm,1991-01-02,1,6,,0\n",
            encoding="utf-8",
        )
        events = load_event_csv(path)
        assert events[0].property_damage is None
        assert events[0].has_missing

    def test_missing_column_schema_error(self, tmp_path):
        path = tmp_path / "events.csv"
        path.write_text("event_type,date\nX,1991-01-02\n", encoding="utf-8")
        with pytest.raises(SchemaError):
            load_event_csv(path)

    def test_bad_cell_record_error(self, tmp_path):
        path = tmp_path / "events.csv"
        path.write_text(
            "event_type,date,fatalities,injuries,property_damage,crop_damage\n"
            "Winter Storm,1991-01-02,one,6,0,0\n",
            encoding="utf-8",
        )
        with pytest.raises(RecordError) as err:
            load_event_csv(path)
        assert err.value.row == 2
        assert err.value.column == "fatalities"

    def test_negative_value_record_error(self, tmp_path):
        path = tmp_path / "events.csv"
        path.write_text(
            "event_type,date,fatalities,injuries,property_damage,crop_damage\n"
            "Winter Storm,1991-01-02,-1,6,0,0\n",
            encoding="utf-8",
        )
        with pytest.raises(RecordError):
            load_event_csv(path)

    def test_storm_column_mapping(self, tmp_path):
        path = tmp_path / "events.csv"
        path.write_text(
            "EVENT_TYPE,BEGIN_DATE,DEATHS_DIRECT,INJURIES_DIRECT,"
            "DAMAGE_PROPERTY,DAMAGE_CROPS\n"
            "Winter Storm,1991-01-02,0,6,100,200\n",
            encoding="utf-8",
        )
        events = load_event_csv(path, STORM_EVENTS_COLUMNS)
        assert events[0].injuries == 6


class TestReports:
    def test_machine_output_deterministic(self, iowa_model):
        result = solve_exact(iowa_model, SolveRequest(budget=200_000))
        request = SolveRequest(budget=200_000)
        doc1 = reports.solve_document(request, result)
        doc2 = reports.solve_document(request, solve_exact(iowa_model, request))
        assert write_report(doc1) == write_report(doc2)

    def test_empty_sweep_document(self):
        doc = sweep_document([])
        payload = write_report(doc)
        parsed = json.loads(payload)
        assert parsed["points"] == []

    def test_solve_report_echo(self, iowa_model):
        request = SolveRequest(budget=24_000)
        result = solve_exact(iowa_model, request)
        parsed = json.loads(write_report(reports.solve_document(request, result)))
        assert parsed["request"]["budget"] == 24_000
        assert parsed["result"]["spent"] == 24_000
        assert parsed["result"]["selected"] == [20]

    def test_dollar_formatting_six_significant_digits(self):
        payload = canonical_bytes({"x": reports.Dollars(7_510_138_436.99)})
        assert payload == b'{"x":7.51014e+09}\n'

    def test_table_format_readable(self, iowa_model):
        request = SolveRequest(budget=24_000)
        result = solve_exact(iowa_model, request)
        text = write_report(
            reports.solve_document(request, result), format="table"
        ).decode()
        assert "objective" in text
        assert "$" in text

    def test_machine_output_has_no_wall_time(self, iowa_model):
        request = SolveRequest(budget=24_000)
        result = solve_exact(iowa_model, request)
        parsed = json.loads(write_report(reports.solve_document(request, result)))
        assert "wall_time" not in json.dumps(parsed)
