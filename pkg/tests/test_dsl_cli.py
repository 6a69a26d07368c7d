import json
import random
import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wittforge import dsl
from wittforge.cli import run_command
from wittforge.errors import ParseError, WittforgeError, ZeroSlot
from wittforge.fields import (
    FieldTower,
    enumerate_square_classes,
    nonresidue_class,
    sq_mul,
    var_class,
)
from wittforge.laurent import LaurentPoly
from wittforge.qform import pfister

F5T = FieldTower.prime(5, "t")
F13ST = FieldTower.prime(13, "s", "t")


class TestParsers:
    def test_field_descriptors(self):
        for text in ("Q", "R", "F5", "F13((s))((t))", "Q((x))", "R((t))((s))"):
            tower = dsl.parse_field(text)
            assert str(tower) == text

    def test_field_errors(self):
        for bad in ("", "Z", "F4", "F13((s)", "F13((s))x", "F((s))", "Q(("):
            with pytest.raises(ParseError):
                dsl.parse_field(bad)

    def test_class_roundtrip(self):
        for tower in (F5T, F13ST):
            for c in enumerate_square_classes(tower):
                assert dsl.parse_class(str(c), tower) == c

    def test_monomials(self):
        u, t = nonresidue_class(F5T), var_class(F5T, "t")
        assert dsl.parse_class("4*t^3", F5T) == t
        assert dsl.parse_class("-1", F5T).is_one  # -1 is a square mod 5
        assert dsl.parse_class("u*t", F5T) == sq_mul(u, t)
        assert dsl.parse_class("1/2", F5T) == dsl.parse_class("3", F5T)  # 1/2 = 3 mod 5

    def test_form_literals(self):
        f = dsl.parse_form("[1,-u,-t,u*t]", F5T)
        assert f.dim == 4
        g = dsl.parse_form("<<u,t>>", F5T)
        assert g == pfister(F5T, (nonresidue_class(F5T), var_class(F5T, "t")))
        assert dsl.parse_form("<<>>", F5T).entries == (dsl.parse_class("1", F5T),)

    def test_form_errors(self):
        for bad in ("[1", "[1,]", "<<u", "[]", "[1]x", "<<u,>>"):
            with pytest.raises(ParseError):
                dsl.parse_form(bad, F5T)
        with pytest.raises(ZeroSlot):
            dsl.parse_form("<<0>>", F5T)

    def test_unknown_identifier(self):
        with pytest.raises(ParseError):
            dsl.parse_class("w", F5T)
        with pytest.raises(ParseError):
            dsl.parse_class("u", FieldTower.rationals())

    def test_element_coords(self):
        coords = dsl.parse_element_coords("(1, 0, t, 2+t^2)", F5T)
        assert len(coords) == 4
        assert str(coords[3]) == "2+t^2"
        assert coords[2] == LaurentPoly.variable(F5T, "t")
        with pytest.raises(ParseError):
            dsl.parse_element_coords("(1, 2", F5T)

    def test_poly_string_roundtrip(self):
        for text in ("2+t^2", "1-t", "t^-1", "3*t", "1+s*t"):
            p = dsl.parse_poly(text, F13ST)
            assert dsl.parse_poly(str(p), F13ST) == p

    @given(st.text(alphabet=string.printable, max_size=25))
    @settings(max_examples=300, deadline=None)
    def test_parser_totality(self, text):
        for fn in (
            lambda: dsl.parse_field(text),
            lambda: dsl.parse_form(text, F5T),
            lambda: dsl.parse_class(text, F5T),
        ):
            try:
                fn()
            except WittforgeError:
                pass  # ParseError or a domain error, never a crash


class TestCli:
    def run(self, capsys, *argv):
        code = run_command(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_qf_isotropy_examples(self, capsys):
        code, out, _ = self.run(
            capsys, "qf-isotropy", "--field", "F5((t))", "--form", "<<u,t>>"
        )
        assert code == 0 and out.strip() == "anisotropic"
        code, out, _ = self.run(
            capsys, "qf-isotropy", "--field", "Q", "--form", "[1,-1]", "--oracle"
        )
        assert code == 0 and "isotropic" in out and "agreement" in out

    def test_parse_error_exit_2_with_caret(self, capsys):
        code, _, err = self.run(
            capsys, "qf-isotropy", "--field", "Q((x))", "--form", "[1"
        )
        assert code == 2
        assert "^" in err and "parse error" in err

    def test_domain_error_exit_1_named(self, capsys):
        code, _, err = self.run(
            capsys, "qf-pfister-split", "--field", "F5((t))",
            "--form", "<<u,t>>", "--delta", "1",
        )
        assert code == 1 and "DeltaIsSquare" in err

    def test_bad_usage_exit_2(self, capsys):
        assert self.run(capsys, "qf-isotropy")[0] == 2
        assert self.run(capsys, "no-such-command")[0] == 2

    def test_cubic_obstruction_json(self, capsys):
        code, out, _ = self.run(
            capsys, "g2-cubic-obstruction", "--field", "F13((s))((t))",
            "--octonion", "u,s,t", "--d", "u", "--json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "inadmissible"
        assert len(payload["evidence"]) == 64

    def test_json_reports_reparse(self, capsys):
        from wittforge.tori import CubicObstructionReport, TypeReport, ComparisonReport

        _, out, _ = self.run(
            capsys, "g2-cubic-obstruction", "--field", "F13((s))((t))",
            "--octonion", "u,s,t", "--d", "t", "--json",
        )
        assert CubicObstructionReport.from_json(out).to_json() == out.strip()
        _, out, _ = self.run(
            capsys, "g2-types", "--field", "F13((s))((t))", "--slots", "u,s,t", "--json"
        )
        assert TypeReport.from_json(out).to_json() == out.strip()
        _, out, _ = self.run(
            capsys, "g2-compare", "--field", "F13((s))((t))",
            "--slots1", "u,s,t", "--slots2", "1,s,t", "--json",
        )
        assert ComparisonReport.from_json(out).to_json() == out.strip()

    def test_deterministic_output(self, capsys):
        argv = [
            "g2-types", "--field", "F5((t))", "--slots", "u,t,u*t", "--json",
        ]
        _, first, _ = self.run(capsys, *argv)
        _, second, _ = self.run(capsys, *argv)
        assert first == second

    def test_alg_commands(self, capsys):
        code, out, _ = self.run(
            capsys, "alg-build", "--field", "F13((s))((t))", "--slots", "u,s",
            "--mul", "(0,1,0,0)", "(0,0,1,0)",
        )
        assert code == 0 and "product (0, 0, 0, 1)" in out
        code, out, _ = self.run(
            capsys, "alg-split", "--field", "Q", "--slots", "1,3", "--oracle"
        )
        assert code == 0 and "split" in out and "zero divisor" in out
        code, out, _ = self.run(capsys, "alg-genus", "--q1=-1,-1", "--q2=-1,-2")
        assert code == 0 and "equal genus" in out
        code, out, _ = self.run(capsys, "alg-genus", "--q1=-1,-1", "--q2=-1,-3")
        assert code == 0 and "different genus" in out

    def test_qf_witt_over_q(self, capsys):
        code, out, _ = self.run(
            capsys, "qf-witt", "--field", "Q", "--form", "[1,1,-7,-7]", "--json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["witt_index"] == 0 and payload["kernel_dim"] == 4
        assert payload["kernel_invariants"]["signature"] == [2, 2]

    def test_pfister_split_witness(self, capsys):
        code, out, _ = self.run(
            capsys, "qf-pfister-split", "--field", "F5((t))",
            "--form", "<<u,t>>", "--delta", "u*t", "--witness",
        )
        assert code == 0 and out.splitlines()[0] == "splits"
        assert out.splitlines()[1].startswith("witness <<u*t,")

    def test_factor_bound_env(self, capsys, monkeypatch):
        monkeypatch.setenv("WITTFORGE_FACTOR_BOUND", "10")
        code, _, err = self.run(
            capsys, "qf-isotropy", "--field", "Q", "--form", "[10403]"
        )
        assert code == 1 and "FactorBoundExceeded" in err

    def test_fuzzed_cli_never_crashes(self, capsys):
        rng = random.Random(99)
        alphabet = "[]<>(),*^-+ uFQRst0123456789"
        for _ in range(120):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 15)))
            code = run_command(
                ["qf-isotropy", "--field", "F5((t))", "--form", text]
            )
            assert code in (0, 1, 2)
            capsys.readouterr()
