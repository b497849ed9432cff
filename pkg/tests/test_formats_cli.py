"""Text formats and the command-line interface."""

import json
import os
import subprocess
import sys

import pytest

from coxforge.cli import main
from coxforge.errors import FormatError
from coxforge.formats import (
    parse_blowup_job,
    parse_fan,
    parse_matrix,
    parse_presentation,
    serialize_blowup_job,
    serialize_fan,
    serialize_matrix,
    serialize_presentation,
)
from coxforge.galefan import fan_from_presentation

EXAMPLES = os.path.join(os.path.dirname(__file__), os.pardir, "examples")
EXAMPLE_PRESENTATIONS = [
    "f2.cox", "F.cox", "F3.cox", "elliptic.cox", "calT.cox", "calTv.cox"
]


def example(name):
    return os.path.join(EXAMPLES, name)


def read_example(name):
    with open(example(name)) as fh:
        return fh.read()


class TestFormats:
    @pytest.mark.parametrize("name", EXAMPLE_PRESENTATIONS)
    def test_presentation_round_trip(self, name):
        p = parse_presentation(read_example(name))
        assert parse_presentation(serialize_presentation(p)) == p

    def test_matrix_round_trip(self):
        m = parse_matrix("2 3\n1 2 3\n4 5 6\n")
        assert m.entries == ((1, 2, 3), (4, 5, 6))
        assert parse_matrix(serialize_matrix(m)) == m

    def test_fan_round_trip(self):
        fan = fan_from_presentation(parse_presentation(read_example("F3.cox")))
        assert parse_fan(serialize_fan(fan)) == fan

    def test_comments_and_blank_lines_ignored(self):
        m = parse_matrix("# heading\n\n1 2\n# middle\n3 4\n", )
        assert m is not None

    @pytest.mark.parametrize(
        "bad",
        [
            "",
            "2 3\n1 2 3\n",  # missing row
            "1 2\n1 2 3\n",  # wrong width
            "x 2\n1 2\n",  # bad header
        ],
    )
    def test_matrix_errors(self, bad):
        with pytest.raises(FormatError):
            parse_matrix(bad)

    @pytest.mark.parametrize(
        "bad",
        [
            "rank 2\nvars x y\n1 0\n0 1\n",  # no irrelevant line
            "rank 2\nvars x y\n1 0\n0 1\nirrelevant (x,q)",  # unknown name
            "rank 1\nvars x\n1\nirrelevant (x)\nstacky maybe",  # bad flag
            "vars x\n1\nirrelevant (x)\n",  # missing rank
        ],
    )
    def test_presentation_errors(self, bad):
        with pytest.raises(FormatError):
            parse_presentation(bad)

    def test_error_reports_line_number(self):
        with pytest.raises(FormatError, match="line 3"):
            parse_matrix("2 2\n1 2\nx y\n")


class TestBlowupJobFormat:
    @pytest.mark.parametrize("name", ["kawamata.job", "kawamata-solve.job"])
    def test_round_trip(self, name):
        job = parse_blowup_job(read_example(name))
        assert parse_blowup_job(serialize_blowup_job(job)) == job

    def test_solve_job_fields(self):
        job = parse_blowup_job(read_example("kawamata-solve.job"))
        assert job.spec.is_pattern
        assert str(job.target) == "1/3"
        assert job.bound == 1000

    def test_order_and_bound_keys(self):
        job = parse_blowup_job(
            "center 1 2\nk 2\nfiber 1 2 3 1 1\nb 4 2 3 1 1\n"
            "equation deg -2 4 order 4\nbound 60\n"
        )
        assert not job.spec.is_pattern
        assert job.bound == 60
        assert job.ci.equations[0].order == 4
        assert parse_blowup_job(serialize_blowup_job(job)) == job

    def test_duplicate_key_rejected(self):
        with pytest.raises(FormatError):
            parse_blowup_job("center 1 2\ncenter 1 2\nk 0\nfiber 1\nb 1\n")


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCliBasics:
    def test_wellform_reduces_weights(self, capsys):
        code, out, err = run_cli(capsys, "wellform", example("f2.cox"))
        assert code == 0
        assert "1 1 1 0 -2" in out and "0 0 0 1 1" in out
        assert "verified" in out

    def test_wellform_fixed_point(self, capsys):
        code, out, _ = run_cli(capsys, "wellform", example("F.cox"))
        assert code == 0 and "already well-formed" in out

    def test_standardize(self, capsys, tmp_path):
        mat = tmp_path / "a.mat"
        mat.write_text("2 5\n3 3 3 0 -2\n1 1 1 2 0\n")
        code, out, _ = run_cli(capsys, "standardize", str(mat))
        assert code == 0 and "minor gcd 2" in out
        assert "standard matrix:" in out

    def test_missing_file_exits_2(self, capsys):
        code, out, err = run_cli(capsys, "standardize", example("no-such-file.cox"))
        assert code == 2 and err.startswith("error:")

    def test_empty_input_exits_2(self, capsys):
        code, out, err = run_cli(capsys, "standardize", "/dev/null")
        assert code == 2 and "error:" in err

    def test_unknown_verb_exits_2(self, capsys):
        assert run_cli(capsys, "nonsense")[0] == 2

    def test_no_verb_exits_2(self, capsys):
        assert run_cli(capsys)[0] == 2

    def test_wps(self, capsys):
        code, out, _ = run_cli(capsys, "wps", "6", "10", "15")
        assert code == 0 and "1 1 1" in out
        code, _, err = run_cli(capsys, "wps", "0", "2")
        assert code == 2 and err.startswith("error:")

    def test_equiv(self, capsys):
        code, out, _ = run_cli(capsys, "equiv", example("calT.cox"), example("calT.cox"))
        assert code == 0 and out.strip() == "equivalent"
        code, out, _ = run_cli(capsys, "equiv", example("calT.cox"), example("F.cox"))
        assert code == 0 and out.strip() == "not equivalent"


class TestCliGeometry:
    def test_gale(self, capsys):
        code, out, _ = run_cli(capsys, "gale", example("F.cox"))
        assert code == 0 and "y0:" in out

    def test_gens_veronese(self, capsys, tmp_path):
        f2wf = tmp_path / "f2wf.cox"
        f2wf.write_text(
            "rank 2\nvars x y z t u\n1 1 1 0 -2\n0 0 0 1 1\n"
            "irrelevant (x,y,z)(t,u)\n"
        )
        code, out, _ = run_cli(capsys, "gens", str(f2wf), "0", "1", "--bound", "2")
        assert code == 0
        assert out.split() == ["t", "x^2u", "xyu", "y^2u", "xzu", "yzu", "z^2u"]

    def test_cox2fan_fan2cox_round_trip(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "cox2fan", example("F3.cox"))
        assert code == 0
        fanfile = tmp_path / "F3.fan"
        fanfile.write_text(out)
        code, out, _ = run_cli(capsys, "fan2cox", str(fanfile))
        assert code == 0 and "irrelevant" in out

    def test_subdivide(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "cox2fan", example("F3.cox"))
        fanfile = tmp_path / "F3.fan"
        fanfile.write_text(out)
        code, out, _ = run_cli(
            capsys, "subdivide", str(fanfile), "2", "1", "2", "1", "0"
        )
        assert code == 0 and "rays 8" in out

    def test_charts(self, capsys):
        code, out, _ = run_cli(capsys, "charts", example("F3.cox"))
        assert code == 0
        assert "1/3(" in out and "[terminal]" in out and "smooth" in out

    def test_chambers(self, capsys):
        code, out, _ = run_cli(capsys, "chambers", example("calTv.cox"))
        assert code == 0 and "walls:" in out and "chamber 0" in out
        assert "irrelevant" in out

    def test_game(self, capsys):
        code, out, _ = run_cli(capsys, "game", example("F.cox"))
        assert code == 0
        assert "models: 4" in out and "crossings: 3" in out
        assert out.count("Fibration") == 2
        # "AntiFlip" contains "Flip", so 2 anti-flips + 1 flip = 3 matches
        assert out.count("AntiFlip") == 2 and out.count("Flip") == 3
        assert "irrelevant (y0,y1)(x0,x1,x2,x3,x4)" in out

    def test_game_with_flop(self, capsys):
        code, out, _ = run_cli(capsys, "game", example("calTv.cox"))
        assert code == 0 and "Flop" in out and "DivisorialContraction" in out

    def test_blowup(self, capsys):
        code, out, _ = run_cli(
            capsys, "blowup", example("F3.cox"), "--center", "1,2", "--k", "2",
            "--b", "4,2,3,1,1", "--newvar", "w",
        )
        assert code == 0
        assert "3 0 4 2 0 1 1 -3" in out
        assert "x -> x*w^(4/3)" in out

    def test_discrepancy_complete_job(self, capsys):
        code, out, _ = run_cli(capsys, "discrepancy", example("kawamata.job"))
        assert code == 0
        assert "discrepancy: 1/3" in out and "matches target 1/3: yes" in out

    def test_discrepancy_solves_pattern(self, capsys):
        code, out, _ = run_cli(capsys, "discrepancy", example("kawamata-solve.job"))
        assert code == 0
        assert "solved exceptional weight: 4" in out and "discrepancy: 1/3" in out

    def test_discrepancy_pattern_without_target_fails(self, capsys, tmp_path):
        text = read_example("kawamata-solve.job")
        stripped = "\n".join(
            line for line in text.splitlines() if not line.startswith("target")
        )
        jobfile = tmp_path / "incomplete.job"
        jobfile.write_text(stripped + "\n")
        code, _, err = run_cli(capsys, "discrepancy", str(jobfile))
        assert code == 2 and err.startswith("error:")


class TestCliOutputModes:
    def test_json_is_byte_stable(self, capsys):
        code1, out1, _ = run_cli(capsys, "game", example("F.cox"), "--json")
        code2, out2, _ = run_cli(capsys, "game", example("F.cox"), "--json")
        assert code1 == code2 == 0 and out1 == out2
        payload = json.loads(out1)
        assert len(payload["models"]) == 4 and len(payload["crossings"]) == 3
        assert payload["ends"][0]["kind"] == "Fibration"

    def test_json_discrepancy(self, capsys):
        code, out, _ = run_cli(capsys, "discrepancy", example("kawamata.job"), "--json")
        assert code == 0 and json.loads(out)["discrepancy"] == "1/3"

    def test_json_wellform(self, capsys):
        code, out, _ = run_cli(capsys, "wellform", example("f2.cox"), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["presentation"]["weights"] == [
            [1, 1, 1, 0, -2],
            [0, 0, 0, 1, 1],
        ]
        assert payload["verified"] is True
        assert payload["already_well_formed"] is False

    def test_game_dot(self, capsys, tmp_path):
        dot = tmp_path / "g.dot"
        code, _, _ = run_cli(capsys, "game", example("F.cox"), "--dot", str(dot))
        assert code == 0
        text = dot.read_text()
        assert text.startswith("digraph game") and "AntiFlip" in text

    def test_fan_dot(self, capsys, tmp_path):
        dot = tmp_path / "f.dot"
        code, _, _ = run_cli(capsys, "cox2fan", example("F3.cox"), "--dot", str(dot))
        assert code == 0 and dot.read_text().startswith("graph fan")


class TestEntryPoints:
    def test_module_invocation(self):
        root = os.path.join(os.path.dirname(__file__), os.pardir)
        proc = subprocess.run(
            [sys.executable, "-m", "coxforge.cli", "wps", "6", "10", "15"],
            capture_output=True,
            text=True,
            cwd=root,
            env={**os.environ, "PYTHONPATH": os.path.join(root, "src")},
        )
        assert proc.returncode == 0
        assert "1 1 1" in proc.stdout
