"""Golden-file tests for the command-line surface.

Every documented invocation is pinned byte for byte; a second invocation
must reproduce the first exactly.
"""

import json

from heckelink.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestReduce:
    def test_square(self, capsys):
        code, out, _ = run(capsys, "reduce", "--strands", "2", "1 1")
        assert code == 0
        assert out == "(q1+q2)*T[2,1] + (-q1*q2)*T[1,2]\n"

    def test_cancellation(self, capsys):
        code, out, _ = run(capsys, "reduce", "--strands", "2", "1 -1")
        assert code == 0
        assert out == "T[1,2]\n"

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "reduce", "--strands", "2", "3")
        assert code == 2
        assert out == ""
        assert "out of range" in err

    def test_inline_strands(self, capsys):
        code, out, _ = run(capsys, "reduce", "B3: 1 -2 1")
        assert code == 0

    def test_inline_strand_conflict(self, capsys):
        code, _, err = run(capsys, "reduce", "--strands", "2", "B3: 1")
        assert code == 2
        assert "conflicts" in err

    def test_zero_strands(self, capsys):
        code, _, err = run(capsys, "reduce", "--strands", "0", "")
        assert code == 2

    def test_unlink_jones(self, capsys):
        code, out, _ = run(capsys, "jones", "--strands", "2", "")
        assert code == 0
        assert out == "-s-s^-1\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "reduce", "--strands", "2", "1 1")
        assert code == 0
        assert json.loads(out) == [
            {"perm": [2, 1], "coeff": "q1+q2"},
            {"perm": [1, 2], "coeff": "-q1*q2"},
        ]

    def test_prime_field(self, capsys):
        # (q1, q2) = (-1, 2) in F_3: T^2 = (q1+q2) T - q1 q2 = T + 2
        code, out, _ = run(
            capsys, "reduce", "--strands", "2", "--field", "fp", "--p", "3", "--q", "2", "1 1"
        )
        assert code == 0
        assert out == "T[2,1] + (2)*T[1,2]\n"


class TestInvariantCommands:
    def test_jones_trefoil(self, capsys):
        code, out, _ = run(capsys, "jones", "--strands", "2", "1 1 1")
        assert code == 0
        assert out == "-t^4+t^3+t\n"

    def test_jones_unknot(self, capsys):
        code, out, _ = run(capsys, "jones", "--strands", "1", "")
        assert code == 0
        assert out == "1\n"

    def test_homfly_square(self, capsys):
        code, out, _ = run(capsys, "homfly", "--strands", "2", "1 1")
        assert code == 0
        assert out == "-q1^2*q2^2+q1^2+q1*q2+q2^2 / q1+q2\n"

    def test_jones_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "jones", "--strands", "2", "1 1 1")
        assert code == 0
        assert json.loads(out) == {
            "variable": "t",
            "components": 1,
            "coefficients": {"4": "-1", "3": "1", "1": "1"},
        }

    def test_non_generic_field_rejected(self, capsys):
        code, out, err = run(
            capsys, "jones", "--strands", "2", "--field", "rationals", "--q", "2", "1 1"
        )
        assert code == 3
        assert "generic" in err


class TestDecompose:
    def test_basis_braid(self, capsys):
        code, out, _ = run(capsys, "decompose", "--strands", "3", "2 1")
        assert code == 0
        assert out == "(3): 1\n"

    def test_two_strand_square(self, capsys):
        code, out, _ = run(capsys, "decompose", "--strands", "2", "1 1")
        assert code == 0
        assert out == "(2): q-1\n(1,1): q\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "decompose", "--strands", "2", "1 1")
        assert code == 0
        assert json.loads(out) == {"(2)": "q-1", "(1,1)": "q"}

    def test_non_generic_rejected(self, capsys):
        code, _, err = run(
            capsys,
            "decompose", "--strands", "2", "--field", "fp", "--p", "3", "--q", "2", "1 1",
        )
        assert code == 3
        assert "generic" in err


class TestSpecht:
    def test_generic_table(self, capsys):
        code, out, _ = run(capsys, "specht", "--n", "3")
        assert code == 0
        assert out == (
            "partition\tdim_S\tdim_D\tgram_det\n"
            "(3)\t1\t1\tq^3+2*q^2+2*q+1\n"
            "(2,1)\t2\t2\tq^3+q^2+q\n"
            "(1,1,1)\t1\t1\t1\n"
        )

    def test_prime_field_table(self, capsys):
        # q = 2 in F_3 gives 1 + q = 0, so e = 2
        code, out, _ = run(
            capsys, "specht", "--n", "2", "--field", "Fp", "--p", "3", "--q", "2"
        )
        assert code == 0
        assert out == (
            "partition\tdim_S\tdim_D\tgram_det\n"
            "(2)\t1\t0\t0\n"
            "(1,1)\t1\t1\t1\n"
        )

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "specht", "--n", "0")
        assert code == 0
        assert out == "partition\tdim_S\tdim_D\tgram_det\n"

    def test_json(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "specht", "--n", "2")
        assert code == 0
        assert json.loads(out) == [
            {"partition": "(2)", "dim_S": 1, "dim_D": 1, "gram_det": "q+1"},
            {"partition": "(1,1)", "dim_S": 1, "dim_D": 1, "gram_det": "1"},
        ]


class TestVerify:
    def test_quick(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick")
        assert code == 0
        assert out.endswith("all checks passed\n")
        assert "FAIL" not in out

    def test_exhaustive(self, capsys):
        code, out, _ = run(capsys, "--format", "json", "verify", "--exhaustive", "--n", "3", "--max-len", "4")
        assert code == 0
        report = json.loads(out)
        assert report["violations"] == []
        assert report["checked"] > 0

    def test_fault_injection(self, capsys):
        code, out, _ = run(capsys, "verify", "--exhaustive", "--n", "2", "--max-len", "4", "--inject-fault")
        assert code == 4

    def test_quick_fault_injection(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick", "--inject-fault")
        assert code == 4
        assert "FAIL" in out


class TestDeterminism:
    def test_byte_identical_repeats(self, capsys):
        outputs = []
        for _ in range(2):
            code, out, _ = run(capsys, "decompose", "--strands", "3", "1 1 2")
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1]

    def test_env_var_field(self, capsys, monkeypatch):
        monkeypatch.setenv("HECKELINK_FIELD", "fp:3:2")
        code, out, _ = run(capsys, "reduce", "--strands", "2", "1 1")
        assert code == 0
        assert out == "T[2,1] + (2)*T[1,2]\n"

    def test_env_var_overridden_by_flag(self, capsys, monkeypatch):
        monkeypatch.setenv("HECKELINK_FIELD", "fp:3:2")
        code, out, _ = run(capsys, "reduce", "--strands", "2", "--field", "generic", "1 1")
        assert code == 0
        assert out == "(q1+q2)*T[2,1] + (-q1*q2)*T[1,2]\n"
