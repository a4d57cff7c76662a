import json
import subprocess
import sys

import pytest

from helpers import C2, S2, CHAIN3, gl_id_by_hand, product_extension
from wschreier import ActionClass, PreAction, coarse_quotient, extensions_isomorphic, identity_hom, validate_hom
from wschreier import formats
from wschreier.cli import main
from wschreier.formats import FormatError


@pytest.fixture
def files(tmp_path):
    formats.write_monoid(S2, tmp_path / "S2.mon")
    formats.write_monoid(C2, tmp_path / "C2.mon")
    formats.write_monoid(CHAIN3, tmp_path / "chain3.mon")
    formats.write_hom(validate_hom(S2, S2, [0, 0]), tmp_path / "top.hom", "S2.mon", "S2.mon")
    formats.write_hom(validate_hom(S2, S2, [0, 1]), tmp_path / "id.hom", "S2.mon", "S2.mon")
    formats.write_extension(product_extension(S2, S2), tmp_path / "prod.ext")
    formats.write_extension(gl_id_by_hand(), tmp_path / "glid.ext")
    formats.write_hom(identity_hom(C2), tmp_path / "idc.hom", "C2.mon", "C2.mon")
    (tmp_path / "broken.ext").write_text("N C2.mon\nG C2.mon\nH C2.mon\nk idc.hom\ne idc.hom\ns idc.hom\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


# --- formats ---------------------------------------------------------------

def test_monoid_round_trip(tmp_path):
    formats.write_monoid(CHAIN3, tmp_path / "m.mon", comment="three chain")
    assert formats.read_monoid(tmp_path / "m.mon") == CHAIN3


def test_comments_and_blank_lines(tmp_path):
    (tmp_path / "m.mon").write_text("# C2\n2\n\n0 1  # row of identity\n1 0\n")
    assert formats.read_monoid(tmp_path / "m.mon") == C2


def test_bad_monoid_files(tmp_path):
    (tmp_path / "a.mon").write_text("2\n0 1\n")
    (tmp_path / "b.mon").write_text("2\n0 x\n1 0\n")
    (tmp_path / "c.mon").write_text("")
    for name in "abc":
        with pytest.raises(FormatError):
            formats.read_monoid(tmp_path / f"{name}.mon")


def test_hom_round_trip(files):
    f = formats.read_hom(files / "id.hom")
    assert f.dom == S2 and list(f.map) == [0, 1]
    with pytest.raises(FormatError):
        formats.read_hom(files / "id.hom", dom=C2)


def test_extension_round_trip(files):
    ext = formats.read_extension(files / "glid.ext")
    assert ext.G == gl_id_by_hand().G and extensions_isomorphic(ext, gl_id_by_hand())


def test_extension_missing_line(tmp_path, files):
    (files / "short.ext").write_text("N S2.mon\nG S2.mon\n")
    with pytest.raises(FormatError):
        formats.read_extension(files / "short.ext")


def test_quotient_and_action_round_trip(files):
    Q = coarse_quotient(S2, S2)
    formats.write_quotient(Q, files / "c.quot", "S2.mon", "S2.mon")
    assert formats.read_quotient(files / "c.quot") == Q
    act = ActionClass.trivial(Q)
    formats.write_action(act, files / "c.act")
    assert formats.read_action(files / "c.act", Q) == act
    pre = PreAction([[0, 1], [0, 0]])
    formats.write_action(pre, files / "p.act")
    assert formats.read_action(files / "p.act") == pre


def test_action_labels_outside_fibre(files):
    Q = coarse_quotient(S2, S2)
    (files / "bad.act").write_text("c:0 c:1\nc:0 c:1\n")
    with pytest.raises(FormatError):
        formats.read_action(files / "bad.act", Q)


# --- CLI -------------------------------------------------------------------

def test_classify_s2(files, capsys):
    code, out = run(capsys, "classify", files / "S2.mon", files / "S2.mon")
    assert code == 0
    assert "up to isomorphism: 3" in out
    assert "  1 0 0\n  1 1 0\n  1 0 1" in out


def test_classify_oracle(files, capsys):
    code, out = run(capsys, "--json", "classify", files / "S2.mon", files / "S2.mon", "--oracle")
    data = json.loads(out)
    assert code == 0 and data["result"]["oracle"] == {"bijection": True, "count": 3, "order_preserved": True}


def test_morphism_prod_to_glid(files, capsys):
    code, out = run(capsys, "morphism", files / "prod.ext", files / "glid.ext")
    assert code == 0 and out.startswith("morphism: 0 2 1 2")
    code, out = run(capsys, "morphism", files / "glid.ext", files / "prod.ext")
    assert code == 1 and out.strip() == "NONE"


def test_check_ext_broken(files, capsys):
    code, out = run(capsys, "check-ext", files / "broken.ext")
    assert code == 2 and "KernelMismatch" in out


def test_check_ext_valid(files, capsys):
    code, out = run(capsys, "--json", "check-ext", files / "glid.ext")
    data = json.loads(out)["result"]
    assert code == 0 and data["weakly_schreier"] and not data["schreier"] and data["retractions"] == 2


def test_missing_file_exit_2(files, capsys):
    code, out = run(capsys, "classify", files / "nope.mon", files / "S2.mon")
    assert code == 2 and "FileNotFoundError" in out


def test_usage_error_exit_2(capsys):
    assert main(["frobnicate"]) == 2


def test_retractions(files, capsys):
    code, out = run(capsys, "--json", "retractions", files / "glid.ext", "--list")
    data = json.loads(out)["result"]
    assert code == 0 and data["retractions"] == [[0, 1, 0], [0, 1, 1]]
    code, out = run(capsys, "retractions", files / "glid.ext", "--list", "--cap", "1")
    assert code == 2 and "RetractionCapExceeded" in out


def test_quotients_actions_build(files, capsys):
    code, out = run(capsys, "quotients", files / "S2.mon", files / "S2.mon", "-o", files / "q")
    assert code == 0 and "admissible quotients: 2" in out
    code, out = run(capsys, "actions", files / "q" / "q000.quot", "-o", files / "a")
    assert code == 0 and "action classes: 1" in out
    code, out = run(capsys, "build", files / "q" / "q000.quot", files / "a" / "a000.act", "-o", files / "b.ext")
    assert code == 0
    assert extensions_isomorphic(formats.read_extension(files / "b.ext"), gl_id_by_hand())


def test_build_rejects_non_admissible(files, capsys):
    (files / "bad.quot").write_text("C2.mon C2.mon\n0 1\n0 0\n")
    (files / "t.act").write_text("0 1\n0 1\n")
    code, out = run(capsys, "build", files / "bad.quot", files / "t.act")
    assert code == 2 and "NotAdmissible" in out


def test_glueing_outputs(files, capsys):
    code, _ = run(capsys, "glueing", files / "S2.mon", files / "S2.mon", files / "id.hom", "-o", files / "glg.ext")
    assert code == 0
    for suffix in (".ext", ".quot", ".act"):
        assert (files / f"glg{suffix}").exists()
    assert formats.read_extension(files / "glg.ext").G.order == 3
    code, out = run(capsys, "glueing", files / "S2.mon", files / "S2.mon", files / "id.hom", "--form", "quotient")
    assert code == 0 and "order 3" in out


def test_coarse(files, capsys):
    code, out = run(capsys, "coarse", files / "S2.mon", files / "S2.mon", "-o", files / "co")
    assert code == 0 and "coarse quotient classes: 3" in out
    assert formats.read_quotient(files / "co.quot") == coarse_quotient(S2, S2)


def test_matmon(files, capsys):
    code, out = run(capsys, "--json", "matmon", "--dim", "2", "--field", "2", "-o", files / "mm")
    data = json.loads(out)["result"]
    assert code == 0
    assert data == {"order": 16, "invertible": 6, "coarse_classes": 106, "conjugation_compatible": True, "extension_order": 106}


def test_matmon_bad_field(capsys):
    code, out = run(capsys, "matmon", "--field", "4")
    assert code == 2 and "UnsupportedField" in out


def test_oracle(files, capsys):
    code, out = run(capsys, "oracle", files / "C2.mon", files / "S2.mon")
    assert code == 0 and "3 extensions" in out


def test_json_is_deterministic(files, capsys):
    args = ("classify", files / "chain3.mon", files / "S2.mon")
    _, a = run(capsys, "--json", *args)
    _, b = run(capsys, "--json", *args)
    _, c = run(capsys, "--json", "--threads", "2", *args)
    assert a == b == c
    assert "wall_time" not in json.loads(a)
    _, d = run(capsys, "--json", "--timing", *args)
    assert "wall_time" in json.loads(d)


def test_help_documents_formats():
    out = subprocess.run([sys.executable, "-m", "wschreier.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    for token in (".mon", ".hom", ".ext", ".quot", ".act", "exit codes"):
        assert token in out.stdout


def test_console_script(files):
    out = subprocess.run(["wschreier", "classify", str(files / "C2.mon"), str(files / "C2.mon")], capture_output=True, text=True)
    assert out.returncode == 0 and "up to isomorphism: 1" in out.stdout
