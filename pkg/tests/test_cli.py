import numpy as np
import pytest

from skewsds.cli import main
from skewsds.catalog import catalog, get_entry
from skewsds.diffsets import verify_sds
from skewsds.formats import (
    FormatError,
    dump_family,
    dump_matrix,
    parse_family,
    parse_matrix,
    read_family,
    read_matrix,
    write_family,
)
from skewsds.gsmatrix import gs_matrix_from_blocks, is_hadamard, is_skew_hadamard


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_catalog_contents():
    entries = catalog()
    assert [e.name for e in entries] == ["47-X", "47-Y", "47-P", "47-Q", "97-U", "97-V"]
    u = get_entry("97-U")
    assert u.family.cardinals == (48, 39, 48, 51)
    assert get_entry("47-X").listed.lam == 39
    assert get_entry("47-X").family.lam == 23 + 30 + 22 + 22 - 47 == 50
    assert get_entry("47-P").family.lam == 35
    for e in entries:
        assert verify_sds(e.family).passed
        assert e.skew_block == 0
    with pytest.raises(KeyError):
        get_entry("47-Z")


@pytest.mark.parametrize("entry", catalog(), ids=lambda e: e.name)
def test_family_file_roundtrip(entry, tmp_path):
    path = tmp_path / "f.sds"
    write_family(path, entry.family, entry.skew_block)
    record = read_family(path)
    assert record.skew_block == entry.skew_block
    assert record.family == entry.family
    a, b = verify_sds(entry.family), verify_sds(record.family)
    assert a.parameters == b.parameters and np.array_equal(a.residuals, b.residuals)


def test_family_parse_tolerates_comments_and_commas():
    record = parse_family("# fano\nv: 7\nlambda: 1\nblock: 1, 2,4  # QR\n")
    assert record.family.blocks[0].tolist() == [1, 2, 4]
    assert record.skew_block is None
    assert "block: 1 2 4" in dump_family(record.family)


def test_family_empty_block_roundtrip():
    text = "v: 3\nlambda: 0\nskew_block: 0\nblock: 1\nblock: 2\nblock: 0\nblock:\n"
    record = parse_family(text)
    assert record.family.cardinals == (1, 1, 1, 0)
    assert parse_family(dump_family(record.family, 0)) == record


@pytest.mark.parametrize("text", [
    "lambda: 1\nblock: 1\n",
    "v: 7\nblock: 1\n",
    "v: 7\nlambda: 1\n",
    "v: 7\nlambda: 1\nblock: 1 7\n",
    "v: 7\nlambda: 1\nblock: 1 1\n",
    "v: 7\nlambda: 1\nblock: 1 x\n",
    "v: 7\nlambda: 1\ncolour: red\nblock: 1\n",
    "v: 7\nlambda: 1\nskew_block: 3\nblock: 1\n",
    "v: 7\nv: 8\nlambda: 1\nblock: 1\n",
    "v 7\n",
])
def test_family_parse_errors(text):
    with pytest.raises(FormatError):
        parse_family(text)


def test_matrix_roundtrip():
    m = gs_matrix_from_blocks(get_entry("47-X").family.blocks)
    back = parse_matrix(dump_matrix(m))
    assert np.array_equal(back, m)
    assert dump_matrix(np.array([[1]])) == "1\n+\n"


@pytest.mark.parametrize("text", ["", "x\n", "2\n++\n", "2\n++\n+\n", "2\n+*\n--\n", "2\n+ \n--\n", "1\n+\n+\n"])
def test_matrix_parse_errors(text):
    with pytest.raises(FormatError):
        parse_matrix(text)


def test_verify_catalog(capsys):
    code, out, _ = run(capsys, "verify", "--catalog", "97-U")
    assert code == 0
    assert "4-(97;48,39,48,51;89)" in out and "verdict: PASS" in out
    assert "skew-type blocks: 0:yes" in out
    code, out, _ = run(capsys, "verify", "--catalog", "47-Q")
    assert code == 0 and "9²+9²+5²+1²" in out
    code, out, _ = run(capsys, "verify", "--catalog", "47-X", "--listed")
    assert code == 0 and "3-(47;30,22,22;39)" in out


def test_verify_broken_file(capsys, tmp_path):
    fam = get_entry("47-X").family
    blocks = [b.tolist() for b in fam.blocks]
    absent = next(r for r in range(47) if r not in blocks[1])
    blocks[1][0] = absent
    path = tmp_path / "broken.sds"
    path.write_text(f"v: 47\nlambda: 50\n" + "".join(f"block: {' '.join(map(str, b))}\n" for b in blocks))
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 1 and "verdict: FAIL" in out


def test_verify_input_errors(capsys, tmp_path):
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "verify", "--catalog", "nope")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.sds"))[0] == 2
    bad = tmp_path / "bad.sds"
    bad.write_text("v: 7\n")
    assert run(capsys, "verify", str(bad))[0] == 2


def test_build_and_check(capsys, tmp_path):
    out188 = tmp_path / "m188.mat"
    code, out, _ = run(capsys, "build", "--catalog", "47-X", "-o", str(out188))
    assert code == 0 and "order: 188" in out and "skew-Hadamard: yes" in out
    code, out, _ = run(capsys, "check", str(out188))
    assert code == 0 and "Hadamard: yes" in out and "skew-Hadamard: yes" in out

    out388 = tmp_path / "m388.mat"
    code, out, _ = run(capsys, "build", "--catalog", "97-V", "-o", str(out388))
    assert code == 0 and "order: 388" in out
    m = read_matrix(out388)
    assert is_skew_hadamard(m)
    assert run(capsys, "check", str(out388))[0] == 0


def test_build_paley_first(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--catalog", "47-P", "--paley-first")
    assert code == 0 and "skew-Hadamard: yes" in out
    triple = tmp_path / "triple.sds"
    write_family(triple, get_entry("47-Y").listed)
    assert run(capsys, "build", str(triple))[0] == 2
    assert run(capsys, "build", str(triple), "--paley-first")[0] == 0
    assert run(capsys, "build", "--catalog", "97-U", "--paley-first")[0] == 2


def test_check_tampered_and_malformed(capsys, tmp_path):
    m = gs_matrix_from_blocks(get_entry("97-U").family.blocks)
    m[5, 7] *= -1
    path = tmp_path / "t.mat"
    path.write_text(dump_matrix(m))
    code, out, _ = run(capsys, "check", str(path))
    assert code == 1 and "Hadamard: no" in out
    one = tmp_path / "one.mat"
    one.write_text("1\n+\n")
    code, out, _ = run(capsys, "check", str(one))
    assert code == 0 and "skew-Hadamard: yes" in out
    sym = tmp_path / "sym.mat"
    sym.write_text("2\n++\n+-\n")
    assert run(capsys, "check", str(sym))[0] == 1
    assert run(capsys, "check", str(sym), "--require", "hadamard")[0] == 0
    ragged = tmp_path / "ragged.mat"
    ragged.write_text("2\n++\n+\n")
    assert run(capsys, "check", str(ragged))[0] == 2


def test_fingerprint_cmd(capsys):
    code, out, _ = run(capsys, "fingerprint", "--catalog", "47-X", "--block", "1")
    assert code == 0 and out.strip() == "18:12 19:26 20:8"
    code, out, _ = run(capsys, "fingerprint", "--catalog", "47-Y", "--block", "1")
    assert out.strip() == "18:14 19:22 20:10"
    assert run(capsys, "fingerprint", "--catalog", "47-Y", "--block", "9")[0] == 2


def test_equiv_cmd(capsys, tmp_path):
    code, out, _ = run(capsys, "equiv", "--catalog", "47-P", "--catalog2", "47-Q")
    assert code == 0 and out.strip() == "inequivalent"
    path = tmp_path / "u.sds"
    write_family(path, get_entry("97-U").family)
    code, out, _ = run(capsys, "equiv", str(path), "--catalog2", "97-U")
    assert code == 0 and out.startswith("equivalent: multiplier=1")


def test_search_cmd(capsys, tmp_path):
    path = tmp_path / "found.sds"
    code, out, _ = run(capsys, "search", "--v", "7", "--sizes", "3", "--lambda", "1", "--seed", "1", "-o", str(path))
    assert code == 0 and "seed: 1" in out and "spec: 1-(7;3;1)" in out
    record = read_family(path)
    assert verify_sds(record.family).passed
    code, out, _ = run(capsys, "search", "--v", "3", "--sizes", "1,1,1,0", "--lambda", "0", "--skew-block", "0")
    assert code == 0
    record = parse_family(out[out.index("v: 3"):])
    assert record.skew_block == 0
    assert is_skew_hadamard(gs_matrix_from_blocks(record.family.blocks))


def test_search_cmd_errors(capsys):
    assert run(capsys, "search", "--v", "7", "--sizes", "3", "--lambda", "2")[0] == 2
    assert run(capsys, "search", "--v", "97", "--sizes", "48,39,48,51", "--lambda", "89",
               "--cosets", "97,96")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["search", "--v", "7", "--sizes", "a", "--lambda", "1"])
    assert exc.value.code == 2
    code, out, _ = run(capsys, "search", "--v", "97", "--sizes", "48,39,48,51", "--lambda", "89",
                       "--skew-block", "0", "--cosets", "97,35", "--restarts", "1", "--max-steps", "20")
    assert code == 3 and "exhausted" in out


def test_catalog_cmd(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "--write", str(tmp_path))
    assert code == 0 and out.count("\n") == 6
    assert read_family(tmp_path / "97-V.sds").family == get_entry("97-V").family


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "skewsds", "verify", "--catalog", "47-P"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "verdict: PASS" in proc.stdout
