import json
from pathlib import Path

import numpy as np
import pytest

from saletan import builtin, classify_and_contract
from saletan.algebra import satisfies
from saletan.cli import EXIT_ERROR, EXIT_NOT_CONTRACTIBLE, EXIT_OK, main, run
from saletan.errors import AxiomViolation, IndexOutOfRange, ParseError
from saletan.io import (
    algebra_from_json,
    algebra_to_json,
    bundled_names,
    data_path,
    dumps,
    load_algebra,
    load_tensor,
    matrix_from_json,
    matrix_to_json,
    normalize_report,
    tensor_from_json,
    tensor_to_json,
)
from saletan.algebra import matrix_coalgebra

GOLDEN = Path(__file__).parent / "golden"
CASES = json.loads((GOLDEN / "cases.json").read_text())


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


def _is_algebra(name):
    return "constants" in json.loads(data_path(name + ".json").read_text())


class TestLoading:
    def test_bundled_su2(self):
        alg = load_algebra(data_path("su2.json"))
        assert alg.tensor == builtin("su2").tensor and "jacobi" in alg.axioms

    @pytest.mark.parametrize("name", [n for n in bundled_names() if _is_algebra(n)])
    def test_every_bundled_algebra_passes_its_axioms(self, name):
        alg = load_algebra(data_path(name + ".json"))
        if alg.tensor.kind == "product" and alg.tensor.arity == 2:
            assert satisfies(alg.tensor, alg.axioms)

    @pytest.mark.parametrize("name", [n for n in bundled_names() if not _is_algebra(n)])
    def test_every_bundled_tensor_is_square(self, name):
        m = load_tensor(data_path(name + ".json"))
        assert m.shape[0] == m.shape[1]

    def test_missing_antisymmetric_partner(self, tmp_path):
        path = write(tmp_path, "bad.json", {"dim": 3, "constants": [{"in": [0, 1], "out": 2, "c": "1"}],
                                            "axioms": ["antisymmetric"]})
        with pytest.raises(AxiomViolation) as info:
            load_algebra(path)
        assert info.value.witness == (0, 1) and info.value.axiom == "antisymmetric"

    def test_zero_denominator(self, tmp_path):
        path = write(tmp_path, "bad.json", {"dim": 2, "constants": [{"in": [0, 1], "out": 1, "c": "1/0"}]})
        with pytest.raises(ParseError) as info:
            load_algebra(path)
        assert info.value.field == "constants[0].c"

    def test_index_out_of_range(self, tmp_path):
        path = write(tmp_path, "bad.json", {"dim": 2, "constants": [{"in": [0, 2], "out": 1, "c": "1"}]})
        with pytest.raises(IndexOutOfRange):
            load_algebra(path)

    def test_invalid_json_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"dim": 2,\n "constants": [}')
        with pytest.raises(ParseError, match="line 2"):
            load_algebra(path)

    @pytest.mark.parametrize("data", [{"matrix": [["1", "0"]]}, {"matrix": []}, {"rows": [["1"]]},
                                      {"matrix": [["1", "x"], ["0", "1"]]}])
    def test_bad_tensor_maps(self, data):
        with pytest.raises(ParseError):
            matrix_from_json(data)


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["su2", "gl2", "mat(2)", "heisenberg3"])
    def test_algebra(self, name):
        alg = builtin(name)
        again = algebra_from_json(json.loads(dumps(algebra_to_json(alg))))
        assert again.tensor == alg.tensor and again.axioms == alg.axioms and again.labels == alg.labels

    def test_coproduct(self):
        delta = matrix_coalgebra(2)
        assert tensor_from_json(json.loads(dumps(tensor_to_json(delta)))) == delta

    def test_rational_matrix(self):
        m = load_tensor(data_path("n_alpha_half_mat2.json"))
        assert np.array_equal(matrix_from_json(json.loads(dumps(matrix_to_json(m)))), m)

    def test_report_output_feeds_back_in(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["contract", "--algebra", "su2", "--tensor", "proj_x1", "--out", str(out)]) == EXIT_OK
        report = json.loads(out.read_text())
        contracted = tmp_path / "contracted.json"
        contracted.write_text(json.dumps({**report["result"]["contracted"], "axioms": ["antisymmetric", "jacobi"]}))
        tensor = tmp_path / "n.json"
        tensor.write_text(json.dumps(report["inputs"]["tensor"]))
        again, code = run(["contract", "--algebra", str(contracted), "--tensor", str(tensor)])
        assert code == EXIT_OK
        direct = classify_and_contract(builtin("e2").tensor, load_tensor(tensor))
        assert again["result"]["contracted"] == tensor_to_json(direct.contracted)


class TestExitCodes:
    def test_contract_prints_e2(self, capsys):
        assert main(["contract", "--algebra", str(data_path("su2.json")),
                     "--tensor", str(data_path("proj_x1.json"))]) == EXIT_OK
        out = capsys.readouterr().out
        assert "[X1, X2] = X3" in out and "[X3, X1] = X2" in out and "[X2, X3]" not in out

    def test_check_witness_without_flag(self, capsys):
        report, code = run(["check", "--algebra", "su2", "--tensor", "proj_x1x2"])
        assert code == EXIT_OK and report["result"]["witness"] == [0, 1]
        assert "witness: (0, 1)" in capsys.readouterr().out

    def test_require_contraction(self, capsys):
        assert main(["check", "--algebra", "su2", "--tensor", "proj_x1x2", "--require-contraction"]) \
            == EXIT_NOT_CONTRACTIBLE
        assert main(["check", "--algebra", "su2", "--tensor", "proj_x1", "--require-contraction"]) == EXIT_OK

    @pytest.mark.parametrize("argv", [
        ["contract", "--algebra", "nope", "--tensor", "proj_x1"],
        ["contract", "--algebra", "su2", "--tensor", "jordan3x"],
        ["contract", "--algebra", "su2"],
        ["levy-nahas", "--algebra", "su2", "--tensor", "jordan3", "--p", "1"],
        ["function-example", "--phi", "p^", "--f", "p", "--g", "p"],
        ["bogus"],
    ])
    def test_errors_exit_one(self, argv, capsys):
        assert main(argv) == EXIT_ERROR

    def test_limit_probe_defaults(self, capsys):
        report, code = run(["limit-probe", "--algebra", "su2", "--tensor", "proj_x1"])
        assert code == EXIT_OK
        probe = report["result"]["probe"]
        assert probe["converged"] and abs(probe["order"] - 1) < 0.05

    def test_limit_probe_levy_nahas(self, capsys):
        report, _ = run(["limit-probe", "--algebra", "su2", "--tensor", "proj_x1x2", "--p", "1"])
        assert report["result"]["probe"]["converged"]

    def test_limit_probe_scale_function(self, capsys):
        report, code = run(["limit-probe", "--algebra", "su2", "--tensor", "proj_x1", "--scale-f", "1 + 2*x"])
        assert code == EXIT_OK and report["result"]["probe"]["converged"]
        assert main(["limit-probe", "--algebra", "su2", "--tensor", "proj_x1", "--scale-f", "2 + x"]) == EXIT_ERROR

    @pytest.mark.parametrize("argv", [
        ["decompose", "--tensor", "jordan3"],
        ["hierarchy", "--algebra", "su2", "--tensor", "proj_x1", "--kmax", "3", "--laws", "--subideals"],
        ["gilmore", "--algebra", "su2", "--tensor", "proj_x1x2"],
        ["family", "--algebra", "su2", "--tensor", "identity3", "--a", "diag110"],
        ["axioms", "--algebra", "mat2"],
    ])
    def test_other_commands_run(self, argv, capsys):
        report, code = run(argv)
        assert code == EXIT_OK and report["result"]

    def test_hierarchy_checks_pass(self, capsys):
        report, _ = run(["hierarchy", "--algebra", "su2", "--tensor", "proj_x1", "--laws", "--subideals"])
        checks = report["result"]["checks"]
        assert all(all(group.values()) for group in checks.values())

    def test_family_reduction_reported(self, capsys):
        report, _ = run(["family", "--algebra", "su2", "--tensor", "identity3", "--a", "diag110"])
        assert report["result"]["reduction"] == "factorized with lambda0=1"

    def test_report_provenance(self, capsys):
        report, _ = run(["decompose", "--tensor", "proj_x1"])
        assert report["tool"]["name"] == "saletan" and report["timestamp"]
        assert report["inputs"]["command"] == "decompose"


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_reports(name, capsys):
    report, code = run(CASES[name])
    assert code == EXIT_OK
    assert dumps(normalize_report(report)) == (GOLDEN / f"{name}.json").read_text()


def test_reports_are_deterministic(capsys):
    first, _ = run(CASES["su2_not_contractible"])
    second, _ = run(CASES["su2_not_contractible"])
    assert normalize_report(first) == normalize_report(second)
