"""
Тесты командной строки: коды выхода и вывод подкоманд
"""
import json

import pytest

from main import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, main
from tests.conftest import SAMPLES


def _sample(name: str) -> str:
    return str(SAMPLES / name)


class TestEval:

    def test_md_true(self, capsys):
        """Модель ex1 удовлетворяет предложению"""
        code = main(["eval", "--md", _sample("ex1.md"), "--model", _sample("ex1_model.json")])
        assert code == EXIT_OK
        assert "ex1: true" in capsys.readouterr().out

    def test_md_false(self, capsys):
        code = main(["eval", "--md", _sample("ex1.md"), "--model", _sample("ex1_model_false.json")])
        assert code == EXIT_NEGATIVE
        assert "ex1: false" in capsys.readouterr().out

    def test_formula_value(self, capsys):
        """Значение предложения в модели Гёделя"""
        code = main(["eval", "--model", _sample("ex1_model.json"), "--formula", "forall x. U(x)"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "3/5"

    def test_formula_with_assignment(self, capsys):
        code = main(["eval", "--model", _sample("ex1_model.json"), "--formula", "U(x)", "--assign", "x=0"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "3/5"

    def test_free_variable_without_assignment(self, capsys):
        code = main(["eval", "--model", _sample("ex1_model.json"), "--formula", "U(x)"])
        assert code == EXIT_ERROR
        assert "--assign" in capsys.readouterr().err

    def test_formula_and_md_together(self, capsys):
        """Ровно один из --formula и --md"""
        code = main(["eval", "--model", _sample("ex1_model.json"), "--formula", "U(x)", "--md", _sample("ex1.md")])
        assert code == EXIT_ERROR
        assert "exactly one" in capsys.readouterr().err


class TestEntail:

    def test_valid_and_checkable(self, capsys, tmp_path):
        """Вывод Valid проходит проверку checkproof"""
        code = main(["entail", "--premises", _sample("premises.md"), "--goal", _sample("goal.md")])
        output = capsys.readouterr().out
        assert code == EXIT_OK
        assert output.startswith("% verdict: Valid")

        proof = tmp_path / "derived.prf"
        proof.write_text(output, encoding="utf-8")
        assert main(["checkproof", str(proof)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "ok"

    def test_invalid(self, capsys):
        """Ł: A ≥ 1/2 не влечёт A&A ≥ 1/2"""
        code = main(["entail", "--premises", _sample("luk_premises.md"), "--goal", _sample("luk_goal.md")])
        output = capsys.readouterr().out
        assert code == EXIT_NEGATIVE
        assert "% verdict: Invalid" in output
        assert "% model over lukasiewicz" in output

    def test_json_output(self, capsys):
        code = main(["--format", "json", "entail",
                     "--premises", _sample("premises.md"), "--goal", _sample("goal.md")])
        payload = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert payload["verdict"] == "valid"
        assert payload["derivation"]

    def test_json_derivation_is_checkable(self, capsys, tmp_path):
        """JSON-вывод entail принимается checkproof"""
        main(["--format", "json", "entail", "--premises", _sample("premises.md"), "--goal", _sample("goal.md")])
        proof = tmp_path / "derived.json"
        proof.write_text(capsys.readouterr().out, encoding="utf-8")
        assert main(["checkproof", str(proof)]) == EXIT_OK

    def test_modal(self, capsys):
        code = main(["entail-modal", "--premises", _sample("modal.md"), "--goal", _sample("modal_goal.md")])
        assert code == EXIT_OK
        assert "% verdict: Valid" in capsys.readouterr().out

    def test_modal_files_need_entail_modal(self, capsys):
        code = main(["entail", "--premises", _sample("modal.md"), "--goal", _sample("modal_goal.md")])
        assert code == EXIT_ERROR
        assert "entail-modal" in capsys.readouterr().err

    def test_goal_frame_must_match_premises(self, capsys, tmp_path):
        """Цель на рефлексивном фрейме при тупиковом фрейме посылок отклоняется"""
        premises = tmp_path / "dead_end.md"
        premises.write_text(
            "algebra l3;\nframe 1 { };\npred p/0;\n\n"
            "md p1 {\n    components: [p];\n    set: explicit { (1) };\n}\n",
            encoding="utf-8",
        )
        code = main(["entail-modal", "--premises", str(premises), "--goal", _sample("modal_goal.md")])
        assert code == EXIT_ERROR
        assert "differs" in capsys.readouterr().err

    def test_missing_file(self, capsys, tmp_path):
        code = main(["entail", "--goal", str(tmp_path / "absent.md")])
        assert code == EXIT_ERROR
        assert "cannot read file" in capsys.readouterr().err


class TestCheckproof:

    def test_good(self, capsys):
        assert main(["checkproof", _sample("good.prf")]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "ok"

    def test_bad(self, capsys):
        """Шаг 3 пересекает предложения с разными компонентами"""
        assert main(["checkproof", _sample("bad.prf")]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.strip() == "step 3: component mismatch"


class TestSatAndFilter:

    def test_sat(self, capsys):
        code = main(["sat", "--md", _sample("luk_goal.md")])
        output = capsys.readouterr().out
        assert code == EXIT_OK
        assert output.startswith("satisfiable")
        assert "A = [" in output

    def test_unsat(self, capsys, tmp_path):
        """A ≤ 1/2 и A&A = 1 несовместны в Ł"""
        doc = tmp_path / "unsat.md"
        doc.write_text(
            "algebra lukasiewicz;\ndomain 1;\npred A/0;\n\n"
            "md u {\n    components: [A; A & A];\n    set: boxes { [0,1/2] x [1,1] };\n}\n",
            encoding="utf-8",
        )
        assert main(["sat", "--md", str(doc)]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.strip() == "unsatisfiable"

    def test_filter(self, capsys):
        code = main(["filter", "--md", _sample("goal.md")])
        assert code == EXIT_OK
        assert "components:" in capsys.readouterr().out


class TestSweep:

    def test_countermodel_found(self, capsys):
        """Без посылок ∃x P(x) = 1 опровергается на домене 1"""
        code = main(["sweep", "--goal", _sample("goal.md"), "--max-size", "3"])
        output = capsys.readouterr().out
        assert code == EXIT_NEGATIVE
        assert output.startswith("countermodel at domain size 1")

    def test_no_countermodel(self, capsys):
        code = main(["sweep", "--premises", _sample("premises.md"), "--goal", _sample("goal.md"),
                     "--max-size", "3"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "no countermodel up to 3"


class TestTranslate:

    def test_atom(self, capsys):
        code = main(["translate", "--algebra", "classical", "--value", "1", "--formula", "P(x)"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "P__1(x)"

    def test_sigma(self, capsys):
        code = main(["translate", "--algebra", "classical", "--formula", "P(x)", "--sigma"])
        output = capsys.readouterr().out
        assert code == EXIT_OK
        assert output.startswith("% sigma")

    def test_formula_needs_value(self, capsys):
        code = main(["translate", "--algebra", "classical", "--formula", "P(x)"])
        assert code == EXIT_ERROR
        assert "--value" in capsys.readouterr().err

    def test_infinite_algebra(self, capsys):
        code = main(["translate", "--algebra", "lukasiewicz", "--value", "1", "--formula", "P(x)"])
        assert code == EXIT_ERROR


class TestZeroOne:

    def test_csv_written(self, capsys, tmp_path):
        """∃x P(x) стремится к 1"""
        out_path = tmp_path / "report.csv"
        code = main(["--jobs", "1", "zeroone", "--config", _sample("zeroone.json"), "--out", str(out_path)])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "% verdict (heuristic, delta=1/20): toward 1"
        lines = out_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "n,mode,fraction_num,fraction_den,estimate,stderr,samples,seed"
        assert len(lines) == 11

    def test_bad_config(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"algebra": "classical"}', encoding="utf-8")
        assert main(["zeroone", "--config", str(bad)]) == EXIT_ERROR


class TestOptions:

    @pytest.mark.parametrize("argv", [
        ["--case-budget", "0", "sat", "--md", _sample("goal.md")],
        ["sat", "--md", _sample("goal.md"), "--algebra", "x3"],
        ["sat", "--md", _sample("goal.md"), "--domain", "0"],
    ])
    def test_rejected(self, argv, capsys):
        assert main(argv) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error:")
