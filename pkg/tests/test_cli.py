import io
import json
import zipfile

from click.testing import CliRunner

from graphbase.cli import main

GML_K4 = ("graph [ directed 0"
          " node [ id 1 ] node [ id 2 ] node [ id 3 ] node [ id 4 ]"
          " edge [ source 1 target 2 ] edge [ source 1 target 3 ]"
          " edge [ source 1 target 4 ] edge [ source 2 target 3 ]"
          " edge [ source 2 target 4 ] edge [ source 3 target 4 ] ]")


def test_convert_command(tmp_path):
    src = tmp_path / "in.gml"
    src.write_text(GML_K4)
    dst = tmp_path / "out.mtx"
    result = CliRunner().invoke(main, ["convert", str(src), str(dst),
                                       "--to", "matrix-market"])
    assert result.exit_code == 0, result.output
    assert dst.read_bytes().startswith(b"%%MatrixMarket")


def test_convert_reports_loss(tmp_path):
    src = tmp_path / "in.gml"
    src.write_text('graph [ node [ id 1 label "x" ] ]')
    dst = tmp_path / "out.dimacs"
    result = CliRunner().invoke(main, ["convert", str(src), str(dst),
                                       "--to", "dimacs"])
    assert result.exit_code == 0
    assert "node-label" in result.output


def test_analyze_command(tmp_path):
    src = tmp_path / "k4.gml"
    src.write_text(GML_K4)
    result = CliRunner().invoke(main, ["analyze", str(src)])
    assert result.exit_code == 0, result.output
    props = json.loads(result.output)
    assert props["is_planar"] is True
    assert props["vertex_connectivity"] == 3


def test_generate_rome_and_determinism(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"rounds": 8, "ops_per_round": 4}))
    for out in (out1, out2):
        result = CliRunner().invoke(main, [
            "generate", "rome", "--seed", "5", "--config", str(cfg),
            "--out", str(out)])
        assert result.exit_code == 0, result.output
    files1 = sorted(p.name for p in out1.glob("*.gml"))
    assert len(files1) == 8
    for name in files1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    assert "mutation generator" in (out1 / "provenance.txt").read_text()


def test_generate_north(tmp_path):
    out = tmp_path / "north"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"count": 6, "min_nodes": 5,
                               "max_nodes": 15}))
    result = CliRunner().invoke(main, [
        "generate", "north", "--seed", "2", "--config", str(cfg),
        "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert len(list(out.glob("*.gml"))) >= 1
    assert "sanitization pipeline" in (out / "provenance.txt").read_text()


def test_import_command(tmp_path):
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w") as z:
        z.writestr("k4.gml", GML_K4)
    zip_path = tmp_path / "graphs.zip"
    zip_path.write_bytes(buf.getvalue())
    result = CliRunner().invoke(main, [
        "import", str(zip_path), "--data-dir", str(tmp_path / "data")])
    assert result.exit_code == 0, result.output
    assert "imported 1/1" in result.output


def test_token_command(tmp_path):
    result = CliRunner().invoke(main, [
        "token", "alice", "--data-dir", str(tmp_path / "data")])
    assert result.exit_code == 0
    assert len(result.output.strip()) > 20
