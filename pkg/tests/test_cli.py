import json

import pytest

from delaymoments.cli import (
    document_from_json,
    load_config,
    main,
    render_json,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_series_text_output(capsys):
    code, out, err = run_cli(
        capsys, "series", "--cumulant", "2", "--regime", "inv-m", "--order", "4")
    assert code == 0
    assert "(g^2+2)/(1+g)^6" in out
    assert "(8g^4-28g^3+68g^2-40g+2)/(1+g)^10" in out
    assert "# computed in" in err


def test_series_deterministic_stdout(capsys):
    _, first, _ = run_cli(
        capsys, "series", "--trace-powers", "2", "--regime", "gamma",
        "--order", "1", "--format", "json")
    _, second, _ = run_cli(
        capsys, "series", "--trace-powers", "2", "--regime", "gamma",
        "--order", "1", "--format", "json")
    assert first == second


def test_series_json_round_trip(capsys):
    _, out, _ = run_cli(
        capsys, "series", "--wigner-moment", "1", "--regime", "inv-gamma",
        "--order", "5", "--format", "json")
    document = document_from_json(out)
    assert render_json(document) == out
    assert document["schema_version"] == 1
    assert document["request"]["regime"] == "inv-gamma"
    assert document["guarantee_order"] == 5
    powers = [t["power"] for t in document["terms"]]
    assert powers == sorted(powers)
    for term in document["terms"]:
        for text in term["coeff"]["num"] + term["coeff"]["den"]:
            int(text)  # exact integer strings


def test_series_latex(capsys):
    code, out, _ = run_cli(
        capsys, "series", "--wigner-moment", "1", "--regime", "inv-m",
        "--order", "2", "--format", "latex")
    assert code == 0
    assert out == (r"\frac{1}{1+\gamma} - \frac{\gamma}{(1+\gamma)^{5}}\,"
                   r"\frac{1}{M^{2}} + O(M^{-3})" + "\n")


def test_series_schur_identity_moment(capsys):
    code, out, _ = run_cli(
        capsys, "series", "--schur", "1", "--regime", "gamma", "--order", "0")
    assert code == 0
    assert "g^0: M" in out


def test_series_rejects_bad_partition(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["series", "--schur", "1,2", "--regime", "gamma", "--order", "0"])
    assert exc.value.code == 2


def test_series_rejects_unknown_regime(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["series", "--schur", "1", "--regime", "bogus", "--order", "0"])
    assert exc.value.code == 2


def test_series_order_cap(tmp_path, capsys):
    cfg = tmp_path / "cfg"
    cfg.write_text("max-order = 3\n")
    code, _, err = run_cli(
        capsys, "series", "--schur", "1", "--regime", "gamma", "--order", "9",
        "--config", str(cfg))
    assert code == 2
    assert "exceeds" in err


def test_series_out_file(tmp_path, capsys):
    target = tmp_path / "series.json"
    code, out, _ = run_cli(
        capsys, "series", "--variance", "--regime", "gamma", "--order", "0",
        "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    document = document_from_json(target.read_text())
    assert document["request"]["kind"] == "variance"


def test_config_parsing(tmp_path):
    cfg = tmp_path / "settings"
    cfg.write_text("# comment\nmax-order = 12\njobs=2\n")
    assert load_config(str(cfg)) == {"max-order": 12, "jobs": 2}


def test_config_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "settings"
    cfg.write_text("sneaky = 1\n")
    code, _, err = run_cli(
        capsys, "series", "--schur", "1", "--regime", "gamma", "--order", "0",
        "--config", str(cfg))
    assert code == 2 and "unknown key" in err


def test_eval_cross_regime(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "--wigner-moment", "1", "--m-value", "20",
        "--gamma-value", "2", "--order-inv-m", "4", "--order-inv-gamma", "8")
    assert code == 0
    assert "inv-m" in out and "inv-gamma" in out
    assert "|inv-m - inv-gamma|" in out


def test_eval_pole_names_factor(capsys):
    code, _, err = run_cli(
        capsys, "eval", "--variance", "--m-value", "2", "--gamma-value", "1",
        "--order-gamma", "1")
    assert code == 2
    assert "M^2-4" in err


def test_eval_requires_an_order(capsys):
    code, _, err = run_cli(
        capsys, "eval", "--variance", "--m-value", "20", "--gamma-value", "1")
    assert code == 2


def test_verify_intro(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "intro")
    assert code == 0
    lines = [l for l in out.splitlines() if l.startswith(("PASS", "FAIL"))]
    hard = [l for l in lines if "[HARD]" in l]
    assert len(hard) == 9
    assert all(l.startswith("PASS") for l in hard)
    assert any(l.startswith("FAIL [SOFT]") for l in lines)


def test_verify_strict_flags_soft_findings(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "intro", "--strict")
    assert code == 1


def test_verify_section5(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "section5")
    assert code == 0
    assert "section5.trace2.inv_gamma" in out
    assert "section5.tracesq.inv_gamma" in out


def test_verify_json_block(capsys):
    code, out, _ = run_cli(capsys, "verify", "--scope", "section5", "--json")
    assert code == 0
    payload = json.loads(out[out.index("{"):])
    assert payload["scope"] == "section5"
    assert all(r["passed"] for r in payload["results"])


def test_verify_parallel_matches_serial(capsys):
    _, serial, _ = run_cli(capsys, "verify", "--scope", "section4")
    _, parallel, _ = run_cli(capsys, "verify", "--scope", "section4",
                             "--jobs", "4")
    assert serial == parallel


def test_conjecture_command(capsys):
    code, out, _ = run_cli(capsys, "conjecture", "--n-max", "2")
    assert code == 0
    assert "PASS a.n=1" in out
    payload = json.loads(out[out.index("{"):])
    assert payload["all_passed"] is True
