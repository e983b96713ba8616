"""Command-line interface tests, run in process through main()."""

import json
import os
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

import corpus
from planrefine.cli import main
from planrefine.codec import emit_plan, parse_plan

GOLDEN = Path(__file__).parent / "golden"

IMPOSSIBLE_PLAN = {
    "walls": [
        {"start": [0, 0, 0], "end": [7, 0, 0]},
        {"start": [7, 0, 0], "end": [7, 7, 0]},
        {"start": [7, 7, 0], "end": [0, 7, 0]},
        {"start": [0, 7, 0], "end": [0, 0, 0]},
    ],
    "doors": [],
    "windows": [],
    "Furniture": {"Hall": [{"name": "Bed", "position": [3.5, 3.5, 0]}]},
}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for key in [k for k in os.environ if k.startswith("PLANREFINE_")]:
        monkeypatch.delenv(key)


@pytest.fixture()
def case_plan(fixtures_dir):
    return str(fixtures_dir / "case_study.json")


@pytest.fixture()
def brief_path(fixtures_dir):
    return str(fixtures_dir / "case_study_brief.json")


@pytest.fixture()
def response_path(fixtures_dir):
    return str(fixtures_dir / "llm_response_case_study.txt")


def run_cli(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def write_corpus_plan(tmp_path, name: str) -> str:
    plans = {n: p for n, p, _ in corpus.opening_cases()}
    plans.update({n: p for n, p, _ in corpus.connectivity_cases()})
    path = tmp_path / f"{name}.json"
    path.write_text(emit_plan(plans[name]))
    return str(path)


class TestValidate:
    def test_case_study_ok(self, capsys, case_plan):
        code, out = run_cli(capsys, "validate", case_plan)
        assert code == 0
        assert out == (
            "ok: 8 walls, 5 doors, 7 windows, 8 furniture items, "
            "rooms: Bedroom, Kitchen, LivingHall, OfficeRoom, room_1\n"
        )

    def test_structured_format(self, capsys, case_plan):
        code, out = run_cli(capsys, "validate", case_plan, "--format", "structured")
        assert code == 0
        payload = json.loads(out)
        assert payload["ok"] is True
        assert payload["walls"] == 8
        assert payload["rooms"] == [
            "Bedroom", "Kitchen", "LivingHall", "OfficeRoom", "room_1",
        ]

    def test_malformed_json_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ nope")
        code, out = run_cli(capsys, "validate", str(bad))
        assert code == 1
        assert out.startswith("error [")

    def test_missing_file_exits_1(self, capsys, tmp_path):
        code, out = run_cli(capsys, "validate", str(tmp_path / "absent.json"))
        assert code == 1
        assert out.startswith("error [")

    def test_structured_error_shape(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[1, 2]")
        code, out = run_cli(
            capsys, "validate", str(bad), "--format", "structured"
        )
        assert code == 1
        payload = json.loads(out)
        assert payload["ok"] is False
        assert payload["error"]["type"]

    def test_directory_batch(self, capsys, case_plan, tmp_path):
        shutil.copy(case_plan, tmp_path / "a.json")
        shutil.copy(case_plan, tmp_path / "b.json")
        code, out = run_cli(capsys, "validate", str(tmp_path))
        assert code == 0
        assert out.index(f"== {tmp_path / 'a.json'} ==") < out.index(
            f"== {tmp_path / 'b.json'} =="
        )
        assert out.count("ok: 8 walls") == 2

    def test_jobs_flag_preserves_output_order(self, capsys, case_plan, tmp_path):
        for name in ("a.json", "b.json", "c.json"):
            shutil.copy(case_plan, tmp_path / name)
        _, serial = run_cli(capsys, "validate", str(tmp_path))
        _, parallel = run_cli(capsys, "validate", str(tmp_path), "--jobs", "3")
        assert parallel == serial

    def test_batch_merges_worst_exit_code(self, capsys, case_plan, tmp_path):
        shutil.copy(case_plan, tmp_path / "a.json")
        (tmp_path / "b.json").write_text("{ nope")
        code, out = run_cli(capsys, "validate", str(tmp_path))
        assert code == 1
        assert "ok: 8 walls" in out
        assert "error [" in out


class TestRefine:
    def test_writes_plan_and_traces(self, capsys, case_plan, tmp_path):
        out_plan = tmp_path / "refined.json"
        out_traces = tmp_path / "traces.json"
        code, out = run_cli(
            capsys, "refine", case_plan,
            "-o", str(out_plan), "--trace-out", str(out_traces),
        )
        assert code == 0
        assert out == "refined: 8/8 items placed\n"
        refined = parse_plan(out_plan.read_text())
        assert len(refined.furniture) == 8
        traces = json.loads(out_traces.read_text())["traces"]
        assert len(traces) == 8
        assert all(t["outcome"] == "placed" for t in traces)
        assert {"item", "outcome", "final_center", "final_orientation", "steps"} <= set(
            traces[0]
        )

    def test_stdout_mode_emits_plan(self, capsys, case_plan):
        code, out = run_cli(capsys, "refine", case_plan)
        assert code == 0
        assert '"walls"' in out
        assert out.endswith("refined: 8/8 items placed\n")

    def test_reruns_byte_identical(self, capsys, case_plan, tmp_path):
        first = tmp_path / "one.json"
        second = tmp_path / "two.json"
        run_cli(capsys, "refine", case_plan, "-o", str(first))
        run_cli(capsys, "refine", case_plan, "-o", str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_overwrite_guard(self, capsys, case_plan, tmp_path):
        local = tmp_path / "plan.json"
        shutil.copy(case_plan, local)
        code, out = run_cli(capsys, "refine", str(local), "-o", str(local))
        assert code == 1
        assert "would overwrite" in out

    def test_unplaceable_item_exits_2(self, capsys, tmp_path):
        path = tmp_path / "tight.json"
        path.write_text(json.dumps(IMPOSSIBLE_PLAN))
        code, out = run_cli(capsys, "refine", str(path), "-o", str(tmp_path / "o.json"))
        assert code == 2
        assert "refined: 0/1 items placed" in out
        assert "failed: Hall/Bed#0" in out

    def test_verify_reports_each_item(self, capsys, case_plan, tmp_path):
        code, out = run_cli(
            capsys, "refine", case_plan,
            "-o", str(tmp_path / "o.json"), "--verify",
        )
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("verify: ")]
        assert len(lines) == 8
        assert all("feasible" in l for l in lines)
        assert not any("UNSOUND" in l for l in lines)

    def test_batch_writes_sibling_outputs(self, capsys, case_plan, tmp_path):
        shutil.copy(case_plan, tmp_path / "a.json")
        shutil.copy(case_plan, tmp_path / "b.json")
        code, _ = run_cli(capsys, "refine", str(tmp_path), "--jobs", "2")
        assert code == 0
        assert (tmp_path / "a.refined.json").exists()
        assert (tmp_path / "b.refined.json").exists()
        assert (
            (tmp_path / "a.refined.json").read_bytes()
            == (tmp_path / "b.refined.json").read_bytes()
        )


class TestCheck:
    def test_refined_case_study_passes(self, capsys, case_plan, tmp_path):
        refined = tmp_path / "refined.json"
        run_cli(capsys, "refine", case_plan, "-o", str(refined))
        code, out = run_cli(capsys, "check", str(refined))
        assert code == 0
        assert out == "all checks passed\n"

    def test_opening_error_exits_3(self, capsys, tmp_path):
        path = write_corpus_plan(tmp_path, "doors_identical_span")
        code, out = run_cli(capsys, "check", path)
        assert code == 3
        assert "ERROR OPENING_OVERLAP" in out
        assert "1 error(s), 0 warning(s)" in out

    def test_warning_only_exits_2(self, capsys, tmp_path):
        path = write_corpus_plan(tmp_path, "narrow_door_span")
        code, out = run_cli(capsys, "check", path)
        assert code == 2
        assert "WARNING PATH_NARROW" in out
        assert "0 error(s), 1 warning(s)" in out

    def test_structured_payload(self, capsys, tmp_path):
        path = write_corpus_plan(tmp_path, "doors_identical_span")
        code, out = run_cli(capsys, "check", path, "--format", "structured")
        assert code == 3
        payload = json.loads(out)
        assert payload["exit_code"] == 3
        assert payload["summary"]["errors"] == 1
        assert payload["findings"][0]["code"] == "OPENING_OVERLAP"

    def test_requirements_file_flag(self, capsys, case_plan, tmp_path):
        refined = tmp_path / "refined.json"
        run_cli(capsys, "refine", case_plan, "-o", str(refined))
        reqs = tmp_path / "reqs.json"
        reqs.write_text(json.dumps(
            {"LivingHall": {"required": ["Piano"], "min_area": 50}}
        ))
        code, out = run_cli(
            capsys, "check", str(refined), "--requirements", str(reqs)
        )
        assert code == 3
        assert "MISSING_FURNITURE" in out
        assert "Piano" in out


class TestRender:
    def test_writes_svg(self, capsys, case_plan, tmp_path):
        out_svg = tmp_path / "plan.svg"
        code, out = run_cli(capsys, "render", case_plan, "-o", str(out_svg))
        assert code == 0
        assert out == f"wrote {out_svg}\n"
        assert out_svg.read_text().startswith("<svg ")

    def test_stdout_mode(self, capsys, case_plan):
        code, out = run_cli(capsys, "render", case_plan)
        assert code == 0
        assert out.startswith("<svg ")

    def test_overwrite_guard(self, capsys, case_plan, tmp_path):
        local = tmp_path / "plan.json"
        shutil.copy(case_plan, local)
        code, out = run_cli(capsys, "render", str(local), "-o", str(local))
        assert code == 1
        assert "would overwrite" in out

    def test_bad_scale_exits_1(self, capsys, case_plan):
        code, out = run_cli(capsys, "render", case_plan, "--scale", "0")
        assert code == 1
        assert "scale must be positive" in out


class TestExport:
    def test_writes_script_files(self, capsys, case_plan, tmp_path):
        out_dir = tmp_path / "scripts"
        code, out = run_cli(capsys, "export", case_plan, str(out_dir))
        assert code == 0
        names = sorted(p.name for p in out_dir.iterdir())
        assert names == ["doors.py", "furniture.py", "walls.py", "windows.py"]
        assert out.count("wrote ") == 4
        assert (out_dir / "walls.py").read_text().count("Wall.Create(") == 8

    def test_refined_plan_exports_refined_centers(self, capsys, case_plan, tmp_path):
        refined = tmp_path / "refined.json"
        run_cli(capsys, "refine", case_plan, "-o", str(refined))
        out_dir = tmp_path / "scripts"
        code, _ = run_cli(capsys, "export", str(refined), str(out_dir))
        assert code == 0
        # LivingHall sofa lands flush with the south wall after refinement.
        assert "XYZ(20.0, 1.5, 0.0)" in (out_dir / "furniture.py").read_text()

    def test_orphan_opening_exits_1(self, capsys, tmp_path):
        path = write_corpus_plan(tmp_path, "orphan_door_midair")
        code, out = run_cli(capsys, "export", str(path), str(tmp_path / "scripts"))
        assert code == 1
        assert "error [UnsupportedElement]" in out


class TestPrompt:
    def test_layout_prompt_matches_golden(self, capsys, brief_path):
        code, out = run_cli(capsys, "prompt", brief_path)
        assert code == 0
        assert out == (GOLDEN / "case_study_prompt.txt").read_text()

    def test_output_file(self, capsys, brief_path, tmp_path):
        target = tmp_path / "prompt.txt"
        code, _ = run_cli(capsys, "prompt", brief_path, "-o", str(target))
        assert code == 0
        assert target.read_text().startswith("Generate a JSON object")

    def test_script_class(self, capsys):
        code, out = run_cli(capsys, "prompt", "--script-class", "walls")
        assert code == 0
        assert "Wall.Create(doc, line, wallType.Id, level.Id, 10, 0, False, False)" in out

    def test_missing_brief_exits_1(self, capsys):
        code, out = run_cli(capsys, "prompt")
        assert code == 1
        assert "a brief file is required" in out

    def test_empty_brief_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "brief.json"
        bad.write_text(json.dumps({"width": 10, "length": 10, "rooms": []}))
        code, out = run_cli(capsys, "prompt", str(bad))
        assert code == 1
        assert "error [EmptyBrief]" in out


PIPELINE_FILES = [
    "prompt.txt",
    "response.txt",
    "parsed.json",
    "refined.json",
    "traces.json",
    "report.txt",
    "plan.svg",
    "scripts/doors.py",
    "scripts/furniture.py",
    "scripts/walls.py",
    "scripts/windows.py",
]


class TestPipeline:
    def run_pipeline(self, capsys, brief_path, response_path, out_dir):
        return run_cli(
            capsys, "pipeline", brief_path, str(out_dir),
            "--transport", "file", "--transport-location", response_path,
        )

    def test_artifact_set(self, capsys, brief_path, response_path, tmp_path):
        out_dir = tmp_path / "run"
        code, out = self.run_pipeline(capsys, brief_path, response_path, out_dir)
        assert code == 0
        assert out == (
            "pipeline complete: 8/8 items placed, 0 check error(s), 0 warning(s)\n"
        )
        produced = sorted(
            str(p.relative_to(out_dir)) for p in out_dir.rglob("*") if p.is_file()
        )
        assert produced == sorted(PIPELINE_FILES)
        assert (out_dir / "report.txt").read_text() == "all checks passed\n"

    def test_reruns_byte_identical(self, capsys, brief_path, response_path, tmp_path):
        first, second = tmp_path / "one", tmp_path / "two"
        self.run_pipeline(capsys, brief_path, response_path, first)
        self.run_pipeline(capsys, brief_path, response_path, second)
        for name in PIPELINE_FILES:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name

    def test_halts_at_parse_on_non_json_response(self, capsys, brief_path, tmp_path):
        response = tmp_path / "response.txt"
        response.write_text("no structured content here")
        code, out = run_cli(
            capsys, "pipeline", brief_path, str(tmp_path / "run"),
            "--transport", "file", "--transport-location", str(response),
        )
        assert code == 1
        assert out.startswith("pipeline halted at parse: [NoJsonObjectFound]")

    def test_halts_at_fetch_without_location(self, capsys, brief_path, tmp_path):
        code, out = run_cli(capsys, "pipeline", brief_path, str(tmp_path / "run"))
        assert code == 1
        assert out.startswith("pipeline halted at fetch: ")
        assert "no transport location configured" in out

    def test_structured_format_writes_report_json(
        self, capsys, brief_path, response_path, tmp_path
    ):
        out_dir = tmp_path / "run"
        code, _ = run_cli(
            capsys, "pipeline", brief_path, str(out_dir),
            "--transport", "file", "--transport-location", response_path,
            "--format", "structured",
        )
        assert code == 0
        payload = json.loads((out_dir / "report.json").read_text())
        assert payload["summary"] == {"errors": 0, "warnings": 0}
        assert not (out_dir / "report.txt").exists()


class TestSettingsPrecedence:
    def test_config_file_applies(self, capsys, case_plan, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"format": "structured"}))
        code, out = run_cli(capsys, "validate", case_plan, "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_env_applies(self, capsys, case_plan, monkeypatch):
        monkeypatch.setenv("PLANREFINE_FORMAT", "structured")
        _, out = run_cli(capsys, "validate", case_plan)
        assert json.loads(out)["ok"] is True

    def test_env_beats_config(self, capsys, case_plan, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"format": "structured"}))
        monkeypatch.setenv("PLANREFINE_FORMAT", "text")
        _, out = run_cli(capsys, "validate", case_plan, "--config", str(cfg))
        assert out.startswith("ok: 8 walls")

    def test_flag_beats_env(self, capsys, case_plan, monkeypatch):
        monkeypatch.setenv("PLANREFINE_FORMAT", "text")
        _, out = run_cli(capsys, "validate", case_plan, "--format", "structured")
        assert json.loads(out)["ok"] is True

    def test_config_path_from_env(self, capsys, case_plan, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"format": "structured"}))
        monkeypatch.setenv("PLANREFINE_CONFIG", str(cfg))
        _, out = run_cli(capsys, "validate", case_plan)
        assert json.loads(out)["ok"] is True

    def test_env_values_cast(self, capsys, case_plan, tmp_path, monkeypatch):
        shutil.copy(case_plan, tmp_path / "a.json")
        shutil.copy(case_plan, tmp_path / "b.json")
        monkeypatch.setenv("PLANREFINE_JOBS", "2")
        code, out = run_cli(capsys, "validate", str(tmp_path))
        assert code == 0
        assert out.count("ok: 8 walls") == 2

    def test_non_object_config_rejected(self, capsys, case_plan, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1]")
        code, out = run_cli(capsys, "validate", case_plan, "--config", str(cfg))
        assert code == 1
        assert "config file must hold a JSON object" in out


class TestEntryPoints:
    def test_module_invocation(self, case_plan):
        proc = subprocess.run(
            [sys.executable, "-m", "planrefine", "validate", case_plan],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("ok: 8 walls")

    def test_console_script(self, case_plan):
        exe = shutil.which("planrefine")
        if exe is None:
            pytest.skip("console script not on PATH")
        proc = subprocess.run(
            [exe, "validate", case_plan], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("ok: 8 walls")
