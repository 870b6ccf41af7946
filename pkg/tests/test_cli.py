import subprocess
import sys

import pytest

from dotboxes.board import new_board, serialize_board
from dotboxes.cli import main
from dotboxes.generator import dumbbell


def run_cli(args):
    proc = subprocess.run(
        [sys.executable, "-m", "dotboxes", *args],
        capture_output=True,
        text=True,
    )
    return proc


def test_unknown_subcommand_usage_exit():
    proc = run_cli(["definitely-not-a-command"])
    assert proc.returncode == 2


def test_gpos_solve_cli(tmp_path):
    p = tmp_path / "f.cnf"
    p.write_text("p poscnf 2 1\n1 2 0\n")
    assert main(["gpos-solve", str(p)]) == 0


def test_gpos_solve_reports_winner(tmp_path, capsys):
    p = tmp_path / "f.cnf"
    p.write_text("p poscnf 2 1\n1 2 0\n")
    main(["gpos-solve", str(p)])
    out = capsys.readouterr().out
    assert "winner: Trudy" in out


def test_domain_error_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.cnf"
    p.write_text("p poscnf 2 1\n1 -2 0\n")
    assert main(["gpos-solve", str(p)]) == 1
    assert "error" in capsys.readouterr().err


def test_solve_cli(tmp_path, capsys):
    b = tmp_path / "b.board"
    b.write_text(serialize_board(new_board(1, 1)))
    assert main(["solve", str(b)]) == 0
    out = capsys.readouterr().out
    assert "net value: -1" in out


def test_analyze_cli(tmp_path, capsys):
    b = tmp_path / "d.board"
    b.write_text(serialize_board(dumbbell()))
    assert main(["analyze", str(b)]) == 0
    out = capsys.readouterr().out
    assert "loony-endgame: yes" in out
    assert "c: 2" in out and "k: 2" in out and "T: 6" in out
    assert "controlled-value: 6" in out


def test_render_cli(tmp_path, capsys):
    b = tmp_path / "b.board"
    b.write_text(serialize_board(new_board(1, 1)))
    assert main(["render", str(b)]) == 0
    assert capsys.readouterr().out == "+ +\n\n+ +\n"


def test_verify_gadget_cli(capsys):
    assert main(["verify-gadget", "wire", "--k", "1"]) == 0
    assert "pass" in capsys.readouterr().out


@pytest.mark.slow
def test_compile_simulate_cli(tmp_path, capsys):
    f = tmp_path / "f.cnf"
    f.write_text("p poscnf 2 1\n1 2 0\n")
    board = tmp_path / "out.board"
    ann = tmp_path / "out.ann"
    assert main(["compile", str(f), "-o", str(board), "--annotations", str(ann)]) == 0
    capsys.readouterr()
    assert main(["simulate", str(board), "--annotations", str(ann)]) == 0
    out = capsys.readouterr().out
    assert "winner: A" in out
    assert "margin: +1" in out
