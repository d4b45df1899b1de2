"""Command line surface: exit codes and stable final lines."""

import pytest

from syncreact import sls, validate
from syncreact.cli import main

from .conftest import FIXTURES

BROKEN = "system b\ninputs a b\noutputs 0\ninit c0\nstate c0 0\ntrans c0 a c0\n"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def last_line(out: str) -> str:
    return out.strip().splitlines()[-1]


class TestCheck:
    def test_valid(self, capsys):
        code, out, _ = run(capsys, "check", FIXTURES / "p1.sls")
        assert code == 0
        assert last_line(out) == "ok"

    def test_incomplete_exits_2_with_diagnostic(self, capsys, tmp_path):
        target = tmp_path / "broken.sls"
        target.write_text(BROKEN)
        code, _, err = run(capsys, "check", target)
        assert code == 2
        assert "incomplete" in err and "c0" in err and "b" in err

    def test_parse_error_exits_2(self, capsys, tmp_path):
        target = tmp_path / "bad.sls"
        target.write_text("nonsense\n")
        code, _, err = run(capsys, "bisim", target, "a", "b")
        assert code == 2
        assert "error" in err


class TestQueries:
    def test_reactime_infinite(self, capsys):
        code, out, _ = run(capsys, "reactime", FIXTURES / "p1.sls", "p0")
        assert code == 0
        assert last_line(out) == "reactime infinite"

    def test_reactime_finite_with_witness(self, capsys):
        code, out, _ = run(capsys, "reactime", FIXTURES / "p2_n4.sls", "q0")
        assert code == 0
        words = last_line(out).split()
        assert words[:4] == ["reactime", "finite", "4", "witness"]
        assert words[4:7] == ["tt", "tt", "tt"]
        assert words[7] in ("tt", "ff")

    def test_bisim_true_false(self, capsys):
        code, out, _ = run(capsys, "bisim", FIXTURES / "p1.sls", "p0", "p0")
        assert code == 0 and last_line(out) == "true"
        code, out, _ = run(capsys, "bisim", FIXTURES / "p1.sls", "p0", "p1")
        assert code == 0 and last_line(out) == "false"

    def test_seppairs_lines(self, capsys):
        code, out, _ = run(capsys, "seppairs", FIXTURES / "p1.sls", "p0")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "pair tt ff det"
        assert last_line(out) == "seppairs 1"

    def test_separators_lines(self, capsys):
        code, out, _ = run(
            capsys, "separators", FIXTURES / "p1.sls", "p0", "p1", "--max-len", "3"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "sep ff det"
        assert last_line(out) == "separators 1"

    def test_strongsep(self, capsys):
        code, out, err = run(capsys, "strongsep", FIXTURES / "p1.sls", "p1", "p0")
        assert code == 0
        assert last_line(out) == "false"
        assert "eq-cycle" in err

    def test_diff_lines(self, capsys):
        code, out, _ = run(
            capsys, "diff", FIXTURES / "p1.sls", "p0", "p1", "-w", "ff ff"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "diff 0 *"
        assert lines[1] == "diff 1 (ff,tt)"

    def test_doe(self, capsys):
        code, out, _ = run(capsys, "doe", FIXTURES / "delay1.sls", "s0")
        assert code == 0
        assert last_line(out) == "* | (1,2)"

    def test_doe_nonreactive_note(self, capsys):
        code, out, err = run(capsys, "doe", FIXTURES / "const.sls", "c0")
        assert code == 0
        assert last_line(out) == "| *"
        assert "not reactive" in err

    def test_ssp_two_files(self, capsys):
        code, out, _ = run(
            capsys,
            "ssp",
            FIXTURES / "union1.sls",
            "u0",
            FIXTURES / "union2.sls",
            "v0",
        )
        assert code == 0
        assert last_line(out) == "{}"

    def test_ssp_one_file(self, capsys):
        code, out, _ = run(capsys, "ssp", FIXTURES / "toggle.sls", "s0", "s0")
        assert code == 0
        assert last_line(out) == "{a/b}"

    def test_sspseq(self, capsys):
        code, out, _ = run(capsys, "sspseq", FIXTURES / "toggle.sls", "s0")
        assert code == 0
        assert last_line(out) == "| {a/b}"

    def test_sspseq_nonreactive_exits_2(self, capsys):
        code, _, err = run(capsys, "sspseq", FIXTURES / "const.sls", "c0")
        assert code == 2

    def test_unknown_state_exits_2(self, capsys):
        code, _, err = run(capsys, "seppairs", FIXTURES / "p1.sls", "zz")
        assert code == 2
        assert "error" in err


class TestComposeAndLemma:
    def test_compose_seq_output_reloads(self, capsys, tmp_path):
        target = tmp_path / "composed.sls"
        code, out, _ = run(
            capsys,
            "compose",
            "--seq",
            FIXTURES / "delay1.sls",
            FIXTURES / "receiver.sls",
            "-o",
            target,
        )
        assert code == 0
        reloaded = sls.load(target)
        assert validate(reloaded) == []

    def test_compose_par_output_reloads(self, capsys, tmp_path):
        target = tmp_path / "composed.sls"
        code, out, _ = run(
            capsys,
            "compose",
            "--par",
            FIXTURES / "toggle.sls",
            FIXTURES / "const.sls",
            "-o",
            target,
        )
        assert code == 0
        reloaded = sls.load(target)
        assert validate(reloaded) == []
        assert len(reloaded.states) <= 2 * 1

    def test_compose_signature_mismatch_exits_2(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "compose",
            "--seq",
            FIXTURES / "toggle.sls",
            FIXTURES / "p1.sls",
            "-o",
            tmp_path / "x.sls",
        )
        assert code == 2

    def test_lemma_positive(self, capsys):
        code, out, _ = run(
            capsys,
            "lemma",
            FIXTURES / "delay1.sls",
            FIXTURES / "receiver.sls",
            "--qf",
            "s0",
            "--qg",
            "g0",
        )
        assert code == 0
        assert last_line(out) == "GuaranteedReactive 1"

    def test_lemma_negative(self, capsys):
        code, out, _ = run(
            capsys,
            "lemma",
            FIXTURES / "disap_f.sls",
            FIXTURES / "disap_g.sls",
            "--qf",
            "p0",
            "--qg",
            "q1",
        )
        assert code == 0
        assert last_line(out) == "NoGuarantee"

    def test_doe_compose(self, capsys):
        code, out, _ = run(
            capsys,
            "doe-compose",
            FIXTURES / "delay1.sls",
            FIXTURES / "receiver.sls",
            "--qf",
            "s0",
            "--qg",
            "g0",
            "-t",
            "1",
        )
        assert code == 0
        assert last_line(out) == "| *"

    def test_doe_compose_bad_index_exits_2(self, capsys):
        code, _, _ = run(
            capsys,
            "doe-compose",
            FIXTURES / "delay1.sls",
            FIXTURES / "receiver.sls",
            "--qf",
            "s0",
            "--qg",
            "g0",
            "-t",
            "0",
        )
        assert code == 2


class TestQuotientAndDot:
    def test_quotient_writes_reduced_system(self, capsys, tmp_path):
        src = tmp_path / "dup.sls"
        src.write_text(
            "system dup\ninputs a\noutputs 0\ninit s\n"
            "state s 0\nstate t 0\ntrans s a t\ntrans t a s\n"
        )
        target = tmp_path / "q.sls"
        code, out, _ = run(capsys, "quotient", src, "-o", target)
        assert code == 0
        assert last_line(out) == "classes 1"
        assert len(sls.load(target).states) == 1

    def test_dot_const(self, capsys):
        code, out, _ = run(capsys, "dot", FIXTURES / "const.sls")
        assert code == 0
        assert out.count("shape=") == 1
        assert out.count("->") == 2

    def test_dot_p1_counts(self, capsys):
        code, out, _ = run(capsys, "dot", FIXTURES / "p1.sls")
        assert code == 0
        assert out.count("shape=") == 3
        assert out.count("->") == 6
        assert out.count("doublecircle") == 1

    def test_dot_output_is_byte_stable(self, capsys, tmp_path):
        first = tmp_path / "a.dot"
        second = tmp_path / "b.dot"
        run(capsys, "dot", FIXTURES / "p2_n4.sls", "-o", first)
        run(capsys, "dot", FIXTURES / "p2_n4.sls", "-o", second)
        assert first.read_bytes() == second.read_bytes()


class TestPsyc:
    def test_typecheck(self, capsys):
        code, out, _ = run(capsys, "psyc", "typecheck", FIXTURES / "program1.psy")
        assert code == 0
        assert last_line(out) == "comm"

    def test_build_writes_system(self, capsys, tmp_path):
        target = tmp_path / "p1.sls"
        code, out, _ = run(
            capsys, "psyc", "build", FIXTURES / "program1.psy", "-o", target
        )
        assert code == 0
        assert last_line(out) == "states 3"
        assert validate(sls.load(target)) == []

    def test_build_budget_exits_3(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            "psyc",
            "build",
            FIXTURES / "program2.psy",
            "--max-states",
            "2",
            "-o",
            tmp_path / "x.sls",
        )
        assert code == 3
        assert "resource" in err

    def test_type_error_exits_2(self, capsys, tmp_path):
        src = tmp_path / "bad.psy"
        src.write_text("inputs tt ff\noutputs tt ff\nvar x : bool\nx := 3")
        code, _, err = run(capsys, "psyc", "typecheck", src)
        assert code == 2
        assert "Assign" in err


class TestUsage:
    def test_no_command_exits_2(self, capsys):
        assert main([]) == 2

    def test_unknown_command_exits_2(self, capsys):
        assert main(["frobnicate"]) == 2
