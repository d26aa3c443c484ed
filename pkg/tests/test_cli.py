"""CLI surface: grammar, output formats, exit codes, catalog files."""

import io
import json
import subprocess
import sys

import numpy as np
import pytest

from psi_lab import cli
from psi_lab.cli import (
    SpecParseError,
    main,
    parse_spec,
    read_catalog,
    validate_record,
    write_catalog,
)
from psi_lab.enumeration import all_groups_of_order
from psi_lab.families import (
    Abelian,
    Cyclic,
    Dihedral,
    DirectProduct,
    Modular,
    Semidihedral,
    SemidirectCyclic,
    Sym3,
    canonical_label,
)
from psi_lab.harness import CATALOG_SPECS


def test_parse_examples():
    assert parse_spec("S3xC5") == DirectProduct((Sym3(), Cyclic(5)))
    assert parse_spec("C7:C3[2]") == SemidirectCyclic(7, Cyclic(3), 2)
    assert parse_spec("Ab[2,2]") == Abelian((2, 2))
    assert parse_spec("SD16") == Semidihedral(16)
    assert parse_spec("M16") == Modular(16)
    assert parse_spec("D12") == Dihedral(12)
    assert parse_spec(" S3 x C5 ") == DirectProduct((Sym3(), Cyclic(5)))


def test_parse_canonicalizes_product_order():
    assert canonical_label(parse_spec("C5xS3")) == "S3xC5"
    assert canonical_label(parse_spec("C2xC3xS3")) == "S3xC3xC2"


def test_parse_semantic_errors_have_positions():
    with pytest.raises(SpecParseError) as exc:
        parse_spec("Q12")
    assert "power of 2" in str(exc.value)
    with pytest.raises(SpecParseError) as exc:
        parse_spec("C7:C3[3]")
    assert "multiplicative order" in str(exc.value)
    with pytest.raises(SpecParseError) as exc:
        parse_spec("S3xQ12")
    assert exc.value.position == 3


def test_parse_syntax_errors():
    for bad in ("", "C", "S3x", "Ab[]", "Ab[2", "C7:C3[2", "S3yC5", "C6!"):
        with pytest.raises(SpecParseError):
            parse_spec(bad)


def test_round_trip_catalog_specs():
    for spec in CATALOG_SPECS:
        label = canonical_label(spec)
        assert parse_spec(label) == spec
        assert canonical_label(parse_spec(label)) == label


def test_psi_command_text(capsys):
    assert main(["psi", "S3"]) == 0
    out = capsys.readouterr().out
    assert "psi:       13" in out
    assert "13/21" in out
    assert "{1:1, 2:3, 3:2}" in out


def test_psi_command_q8xc3(capsys):
    assert main(["psi", "Q8xC3"]) == 0
    out = capsys.readouterr().out
    assert "psi:       189" in out
    assert "27/43" in out


def test_psi_command_json_schema(capsys):
    assert main(["psi", "Q8xC3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == cli.SCHEMA_NAME
    assert payload["psi"] == "189"
    assert payload["psiPrime"] == {"num": "27", "den": "43"}
    assert payload["order"] == 24


def test_psi_command_beyond_cap(capsys):
    assert main(["psi", "C100000"]) == 0
    out = capsys.readouterr().out
    assert "not realized" in out


def test_verify_json_round_trips(capsys):
    assert main(["verify", "main-theorem", "--max-order", "8", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == cli.SCHEMA_NAME
    assert payload["records"]
    for record in payload["records"]:
        validate_record(record)
    eq = [r for r in payload["records"] if r["outcome"] == "equality-boundary"]
    assert len(eq) == 1
    assert eq[0]["order"] == 6
    assert eq[0]["psiPrime"] == {"num": "13", "den": "21"}
    assert eq[0]["witnesses"][0]["isomorphism"] is not None


def test_verify_single_spec(capsys):
    assert main(["verify", "supersolvable-conjecture", "A4"]) == 0
    out = capsys.readouterr().out
    assert "EQUALITY-BOUNDARY" in out
    assert "evidence" in out


def test_text_json_csv_agree(capsys):
    argv = ["scan", "--max-order", "6", "--checks", "main-theorem,upper-bound"]
    assert main(argv) == 0
    text = capsys.readouterr().out
    assert main(argv + ["--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert main(argv + ["--csv"]) == 0
    csv_text = capsys.readouterr().out

    import csv as csv_mod

    rows = list(csv_mod.DictReader(io.StringIO(csv_text)))
    assert len(rows) == len(payload["records"])
    by_key = {(r["claim"], r["subject"]): r for r in payload["records"]}
    for row in rows:
        rec = by_key[(row["claim"], row["subject"])]
        assert row["psi"] == rec["psi"]
        assert row["psi_prime_num"] == rec["psiPrime"]["num"]
        assert row["psi_prime_den"] == rec["psiPrime"]["den"]
        assert row["outcome"] == rec["outcome"]
        # every numeric value shown in the text output verbatim
        assert f"psi={row['psi']}" in text
        num, den = int(row["psi_prime_num"]), int(row["psi_prime_den"])
        shown = f"psi'={num}/{den}" if den != 1 else "psi'=1 "
        assert shown in text


def test_scan_summary_line(capsys):
    assert main(["scan", "--max-order", "4"]) == 0
    out = capsys.readouterr().out
    assert "summary:" in out


def test_exit_code_on_violation_synthetic():
    from fractions import Fraction

    from psi_lab.harness import VIOLATED, VerdictReport, Witness

    w = Witness("synthetic", 6, 13, Fraction(13, 21), VIOLATED, True)
    report = VerdictReport("main-theorem", "synthetic", VIOLATED, True, (w,))
    assert cli._reports_exit([report]) == 1
    assert cli._reports_exit([]) == 0


def test_usage_errors_exit_2(capsys):
    assert main(["psi", "Q12"]) == 2
    assert main(["verify", "no-such-claim", "--max-order", "4"]) == 2
    assert main(["nonsense"]) == 2
    assert main(["table", "nonsense"]) == 2


def test_enumeration_cap_error_exit_2(capsys):
    assert main(["verify", "main-theorem", "--max-order", "17"]) == 2
    err = capsys.readouterr().err
    assert "catalog" in err


def test_env_var_overrides_cap(monkeypatch, capsys):
    monkeypatch.setenv(cli.ENV_MAX_ORDER, "4")
    assert main(["verify", "main-theorem", "--max-order", "6"]) == 2
    monkeypatch.delenv(cli.ENV_MAX_ORDER)
    assert main(["verify", "main-theorem", "--max-order", "6"]) == 0


def test_catalog_export_import_bit_identical(tmp_path, capsys):
    path = tmp_path / "catalog.bin"
    assert main(["export-catalog", "--max-order", "6", "--output", str(path)]) == 0
    capsys.readouterr()
    groups = []
    for n in range(1, 7):
        groups.extend(all_groups_of_order(n).groups)
    with open(path, "rb") as fh:
        loaded = read_catalog(fh)
    assert len(loaded) == len(groups)
    for original, reloaded in zip(groups, loaded):
        assert np.array_equal(original.table, reloaded.table)
    # re-export reproduces the file byte for byte
    buf = io.BytesIO()
    write_catalog(loaded, buf)
    assert buf.getvalue() == path.read_bytes()


def test_catalog_import_command(tmp_path, capsys):
    path = tmp_path / "catalog.bin"
    main(["export-catalog", "--max-order", "5", "--output", str(path)])
    capsys.readouterr()
    assert main(["import-catalog", str(path)]) == 0
    out = capsys.readouterr().out
    assert "6 groups" in out  # orders 1..5 hold six groups total
    assert "validated" in out


def test_catalog_file_scan(tmp_path, capsys):
    path = tmp_path / "catalog.bin"
    main(["export-catalog", "--max-order", "8", "--output", str(path)])
    capsys.readouterr()
    assert main(
        ["verify", "top-values", "--max-order", "8", "--catalog-file", str(path)]
    ) == 0


def test_corrupt_catalog_rejected(tmp_path, capsys):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"NOTACAT")
    assert main(["import-catalog", str(path)]) == 2
    # valid header, garbage table: fails full validation
    good = tmp_path / "tampered.bin"
    main(["export-catalog", "--max-order", "4", "--output", str(good)])
    capsys.readouterr()
    data = bytearray(good.read_bytes())
    data[-1] ^= 1  # corrupt the last table entry
    bad2 = tmp_path / "tampered2.bin"
    bad2.write_bytes(bytes(data))
    assert main(["import-catalog", str(bad2)]) == 2


def test_module_entry_point_subprocess():
    result = subprocess.run(
        [sys.executable, "-m", "psi_lab", "psi", "S3"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert result.returncode == 0
    assert "13/21" in result.stdout


def test_table_families_command(capsys):
    assert main(["table", "families", "--max-param", "4"]) == 0
    out = capsys.readouterr().out
    assert "modular" in out
    assert "disagrees" in out
    assert main(["table", "families", "--max-param", "4", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    modular = [r for r in payload["rows"] if r["family"] == "modular"]
    assert modular and all(not r["formulaMatches"] for r in modular)
    assert modular[0]["tablePsi"] == "87"
    assert modular[0]["formulaRatio"] == {"num": "16", "den": "171"}
