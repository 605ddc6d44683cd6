import json

import pytest
from click.testing import CliRunner

import finalg as fa
from finalg.cli import (
    EXIT_HYPOTHESES,
    EXIT_PARSE,
    EXIT_PROPERTY_FALSE,
    PipelineUsageError,
    main,
    run_pipeline,
)
from finalg.document import format_cayley_table, format_map_file, parse_algebra_document


def invoke(*args, env=None):
    return CliRunner().invoke(main, list(args), env=env, catch_exceptions=False)


@pytest.fixture()
def workdir(tmp_path):
    runner = CliRunner()

    def cli(*args, env=None):
        return runner.invoke(main, [str(a) for a in args], env=env, catch_exceptions=False)

    def gen(*args):
        result = cli(*args)
        assert result.exit_code == 0, result.output
        return result

    gen("gen", "matrix", "--n", "2", "-o", tmp_path / "m2.alg")
    gen("gen", "matrix", "--n", "3", "-o", tmp_path / "m3.alg")
    gen("gen", "triangular", "--n", "2", "-o", tmp_path / "t2.alg")
    (tmp_path / "s3.tbl").write_text(format_cayley_table(fa.symmetric_group(3)))
    gen("gen", "group", "--cayley", tmp_path / "s3.tbl", "--name", "QS3",
        "-o", tmp_path / "qs3.alg")
    return tmp_path, cli


class TestGenerators:
    def test_gen_matches_in_memory_constructors(self, tmp_path):
        runner = CliRunner()
        qc2 = tmp_path / "qc2.alg"
        (tmp_path / "c2.tbl").write_text(format_cayley_table(fa.cyclic_group(2)))
        cases = []
        for n in (1, 2, 3):
            out = tmp_path / f"m{n}.alg"
            runner.invoke(main, ["gen", "matrix", "--n", str(n), "-o", str(out)])
            cases.append((out, fa.build_matrix_algebra(n)))
            out = tmp_path / f"t{n}.alg"
            runner.invoke(main, ["gen", "triangular", "--n", str(n), "-o", str(out)])
            cases.append((out, fa.build_upper_triangular(n)))
        runner.invoke(
            main, ["gen", "group", "--cayley", str(tmp_path / "c2.tbl"), "-o", str(qc2)]
        )
        cases.append((qc2, fa.build_group_algebra(fa.cyclic_group(2))))
        m2 = tmp_path / "m2.alg"
        for family, expected in [
            ("direct", fa.direct_product(cases[2][1], fa.build_group_algebra(fa.cyclic_group(2)))),
            ("tensor", fa.tensor_product(cases[2][1], fa.build_group_algebra(fa.cyclic_group(2)))),
        ]:
            out = tmp_path / f"{family}.alg"
            result = runner.invoke(main, ["gen", family, str(m2), str(qc2), "-o", str(out)])
            assert result.exit_code == 0, result.output
            cases.append((out, expected))
        out = tmp_path / "t2u.alg"
        result = runner.invoke(
            main, ["gen", "adjoin-unit", str(tmp_path / "t2.alg"), "-o", str(out)]
        )
        assert result.exit_code == 0
        cases.append((out, fa.adjoin_unit(fa.build_upper_triangular(2))))
        for path, expected in cases:
            assert parse_algebra_document(path.read_text()) == expected

    def test_dimension_cap(self, tmp_path):
        runner = CliRunner()
        out = tmp_path / "m5.alg"
        result = runner.invoke(main, ["gen", "matrix", "--n", "5", "-o", str(out)])
        assert result.exit_code == EXIT_PARSE
        result = runner.invoke(
            main, ["gen", "matrix", "--n", "5", "-o", str(out), "--max-dim", "30"]
        )
        assert result.exit_code == 0
        result = runner.invoke(
            main,
            ["gen", "matrix", "--n", "5", "-o", str(out)],
            env={"FINALG_MAX_DIM": "30"},
        )
        assert result.exit_code == 0


class TestAnalyze:
    def test_m2_report_facts(self, workdir):
        tmp_path, cli = workdir
        result = cli("analyze", tmp_path / "m2.alg")
        assert result.exit_code == 0
        assert "commutator-simple = true" in result.output
        assert "semiprime = true" in result.output
        assert "dim-commutators = 3" in result.output

    def test_t2_property_false_with_witness(self, workdir):
        tmp_path, cli = workdir
        result = cli("analyze", tmp_path / "t2.alg")
        assert result.exit_code == EXIT_PROPERTY_FALSE
        assert "commutator-simple = false" in result.output
        assert "witness-ideal-dim = 1" in result.output

    def test_byte_identical_reruns(self, workdir):
        tmp_path, cli = workdir
        first = cli("analyze", tmp_path / "qs3.alg", "--format", "structured")
        second = cli("analyze", tmp_path / "qs3.alg", "--format", "structured")
        assert first.output == second.output

    def test_structured_output_parses_back(self, workdir):
        tmp_path, cli = workdir
        result = cli("analyze", tmp_path / "m2.alg", "--format", "structured")
        payload = json.loads(result.output)
        assert payload["verdict"] == "ok"
        assert payload["command"] == "analyze"
        sections = {sec["name"]: dict(map(tuple, sec["entries"])) for sec in payload["sections"]}
        assert sections["commutator"]["dim-commutators"] == 3
        assert sections["trace"]["trace-space-dim"] == 1

    def test_fingerprint_is_stable_across_regeneration(self, workdir, tmp_path):
        tmp_path, cli = workdir
        again = tmp_path / "m2-again.alg"
        cli("gen", "matrix", "--n", "2", "-o", again)
        a = cli("analyze", tmp_path / "m2.alg", "--format", "structured")
        b = cli("analyze", again, "--format", "structured")
        assert json.loads(a.output)["fingerprint"] == json.loads(b.output)["fingerprint"]


class TestVerifiers:
    def test_derivation_criterion_on_qs3(self, workdir):
        tmp_path, cli = workdir
        result = cli("verify-derivation-criterion", tmp_path / "qs3.alg")
        assert result.exit_code == 0
        assert "derivations = 3" in result.output
        assert "criterion-maps = 3" in result.output
        assert "verdict: ok" in result.output

    def test_derivation_criterion_on_t2(self, workdir):
        tmp_path, cli = workdir
        result = cli("verify-derivation-criterion", tmp_path / "t2.alg")
        assert result.exit_code == EXIT_HYPOTHESES
        assert "semiprime = false" in result.output

    def test_jordan_criterion_transpose(self, workdir):
        tmp_path, cli = workdir
        result = cli("verify-jordan-criterion", tmp_path / "m3.alg", "--map", "transpose")
        assert result.exit_code == 0
        assert "antihomomorphism = true" in result.output
        assert "homomorphism = false" in result.output

    def test_jordan_criterion_doubling_map(self, workdir):
        tmp_path, cli = workdir
        doubling = fa.scaled_identity_map(4, 2)
        map_path = tmp_path / "double.map"
        map_path.write_text(format_map_file(doubling))
        result = cli("verify-jordan-criterion", tmp_path / "m2.alg", "--map", map_path)
        assert result.exit_code == EXIT_HYPOTHESES
        assert "unit-preserved = false" in result.output

    def test_transpose_rejected_on_non_square_dimension(self, workdir):
        tmp_path, cli = workdir
        result = cli("verify-jordan-criterion", tmp_path / "t2.alg", "--map", "transpose")
        assert result.exit_code == EXIT_PARSE


class TestLocalTests:
    def test_identity_map_is_not_a_local_derivation(self, workdir):
        tmp_path, cli = workdir
        map_path = tmp_path / "id.map"
        map_path.write_text(format_map_file(fa.Mat.identity(4)))
        result = cli(
            "local-test", tmp_path / "m2.alg", "--map", map_path,
            "--kind", "derivation", "--seed", "7", "--samples", "5",
        )
        assert result.exit_code == EXIT_PROPERTY_FALSE
        assert "counterexample" in result.output
        assert "caveat" in result.output

    def test_actual_derivation_passes(self, workdir):
        tmp_path, cli = workdir
        a = fa.build_matrix_algebra(2)
        d = fa.derivation_space(a).basis_maps()[0]
        map_path = tmp_path / "der.map"
        map_path.write_text(format_map_file(d))
        result = cli(
            "local-test", tmp_path / "m2.alg", "--map", map_path,
            "--kind", "derivation", "--seed", "7", "--samples", "10",
        )
        assert result.exit_code == 0
        assert "passed = true" in result.output

    def test_inner_auto_transpose_all_witnesses(self, workdir):
        tmp_path, cli = workdir
        map_path = tmp_path / "tr.map"
        map_path.write_text(format_map_file(fa.transpose_map(2)))
        result = cli(
            "local-test", tmp_path / "m2.alg", "--map", map_path,
            "--kind", "inner-auto", "--seed", "7", "--samples", "3",
        )
        assert result.exit_code == 0
        assert '"status": "witness"' in result.output

    def test_inner_auto_doubling_infeasible(self, workdir):
        tmp_path, cli = workdir
        map_path = tmp_path / "double.map"
        map_path.write_text(format_map_file(fa.scaled_identity_map(4, 2)))
        result = cli(
            "local-test", tmp_path / "m2.alg", "--map", map_path,
            "--kind", "inner-auto", "--seed", "7", "--samples", "2",
        )
        assert result.exit_code == EXIT_PROPERTY_FALSE

    def test_seeded_reruns_are_byte_identical(self, workdir):
        tmp_path, cli = workdir
        map_path = tmp_path / "tr.map"
        map_path.write_text(format_map_file(fa.transpose_map(2)))
        args = (
            "local-test", tmp_path / "m2.alg", "--map", map_path,
            "--kind", "inner-auto", "--seed", "13", "--samples", "4",
            "--format", "structured",
        )
        assert cli(*args).output == cli(*args).output


class TestTraceCommand:
    def test_m2_finds_a_witness(self, workdir):
        tmp_path, cli = workdir
        result = cli("trace", tmp_path / "m2.alg", "--seed", "5")
        assert result.exit_code == 0
        assert "found = true" in result.output

    def test_t2_definite_negative(self, workdir):
        tmp_path, cli = workdir
        result = cli("trace", tmp_path / "t2.alg", "--seed", "5")
        assert result.exit_code == EXIT_PROPERTY_FALSE
        assert "definite-negative = true" in result.output


class TestUsageAndErrors:
    def test_unknown_pipeline_command(self):
        with pytest.raises(PipelineUsageError):
            run_pipeline("frobnicate", {})

    def test_unknown_cli_command_exits_2(self):
        result = CliRunner().invoke(main, ["frobnicate"])
        assert result.exit_code == 2

    def test_parse_error_exit_code(self, tmp_path):
        bad = tmp_path / "bad.alg"
        bad.write_text("algebra X\ndim 1\nproduct 0 0 = 1/0\n")
        result = CliRunner().invoke(main, ["analyze", str(bad)])
        assert result.exit_code == EXIT_PARSE

    def test_missing_file_exit_code(self, tmp_path):
        result = CliRunner().invoke(main, ["analyze", str(tmp_path / "nope.alg")])
        assert result.exit_code == EXIT_PARSE

    def test_run_pipeline_report_round_trip(self, tmp_path):
        out = tmp_path / "m2.alg"
        CliRunner().invoke(main, ["gen", "matrix", "--n", "2", "-o", str(out)])
        report = run_pipeline("analyze", {"path": str(out)})
        payload = json.loads(fa.emit_report(report, "structured"))
        assert payload == report.to_jsonable()
