import subprocess
import sys

import numpy as np
import pytest

from dihedral_lwe import codec
from dihedral_lwe.cli import main
from dihedral_lwe.params import build_params
from dihedral_lwe.pke import Plaintext


@pytest.fixture
def keys(tmp_path):
    pk, sk = tmp_path / "pk", tmp_path / "sk"
    assert main(["keygen", "--n", "512", "--out-pk", str(pk), "--out-sk", str(sk), "--seed", "11"]) == 0
    return pk, sk


def write_message(path, n, seed):
    z = Plaintext(np.random.default_rng(seed).integers(0, 2, n, dtype=np.uint8))
    path.write_bytes(codec.serialize(z, build_params(n)))
    return z


def test_params(capsys):
    assert main(["params", "--n", "512"]) == 0
    out = capsys.readouterr().out
    assert "q=262657" in out and out.splitlines()[0] == "n=512"
    assert main(["params", "--n", "4", "--profile", "toy"]) == 0
    assert "q=17" in capsys.readouterr().out


def test_roundtrip_512(tmp_path, keys):
    pk, sk = keys
    msg, ct, out = tmp_path / "msg", tmp_path / "ct", tmp_path / "out"
    z = write_message(msg, 512, 0)
    assert main(["encrypt", "--pk", str(pk), "--in", str(msg), "--out", str(ct), "--seed", "5"]) == 0
    assert main(["decrypt", "--sk", str(sk), "--in", str(ct), "--out", str(out)]) == 0
    assert codec.deserialize(out.read_bytes()) == z
    assert out.read_bytes() == msg.read_bytes()


def test_raw_messages(tmp_path, keys):
    pk, sk = keys
    raw = np.random.default_rng(3).integers(0, 256, 64, dtype=np.uint8).tobytes()
    (tmp_path / "m").write_bytes(raw)
    assert main(["encrypt", "--pk", str(pk), "--in", str(tmp_path / "m"), "--out", str(tmp_path / "c"),
                 "--seed", "1", "--raw"]) == 0
    assert main(["decrypt", "--sk", str(sk), "--in", str(tmp_path / "c"), "--out", str(tmp_path / "o"),
                 "--raw"]) == 0
    assert (tmp_path / "o").read_bytes() == raw
    (tmp_path / "short").write_bytes(raw[:10])
    assert main(["encrypt", "--pk", str(pk), "--in", str(tmp_path / "short"), "--out", str(tmp_path / "c"),
                 "--seed", "1", "--raw"]) == 1


def test_determinism(tmp_path):
    outs = []
    for tag in ("a", "b"):
        pk, sk = tmp_path / f"pk{tag}", tmp_path / f"sk{tag}"
        main(["keygen", "--n", "64", "--out-pk", str(pk), "--out-sk", str(sk), "--seed", "99"])
        msg = tmp_path / "msg"
        write_message(msg, 64, 1)
        ct = tmp_path / f"ct{tag}"
        main(["encrypt", "--pk", str(pk), "--in", str(msg), "--out", str(ct), "--seed", "100"])
        outs.append((pk.read_bytes(), sk.read_bytes(), ct.read_bytes()))
    assert outs[0] == outs[1]


def test_entropy_seed_is_printed(tmp_path, capsys):
    pk, sk = tmp_path / "pk", tmp_path / "sk"
    assert main(["keygen", "--n", "16", "--out-pk", str(pk), "--out-sk", str(sk)]) == 0
    err = capsys.readouterr().err
    seed = int(err.strip().split("=")[1])
    pk2, sk2 = tmp_path / "pk2", tmp_path / "sk2"
    main(["keygen", "--n", "16", "--out-pk", str(pk2), "--out-sk", str(sk2), "--seed", str(seed)])
    assert pk.read_bytes() == pk2.read_bytes()


def test_truncated_ciphertext(tmp_path, keys, capsys):
    pk, sk = keys
    msg, ct = tmp_path / "msg", tmp_path / "ct"
    write_message(msg, 512, 2)
    main(["encrypt", "--pk", str(pk), "--in", str(msg), "--out", str(ct), "--seed", "5"])
    ct.write_bytes(ct.read_bytes()[:-7])
    assert main(["decrypt", "--sk", str(sk), "--in", str(ct), "--out", str(tmp_path / "o")]) == 1
    assert "TruncatedBody" in capsys.readouterr().err


def test_wrong_file_kind(tmp_path, keys, capsys):
    pk, sk = keys
    assert main(["decrypt", "--sk", str(pk), "--in", str(pk), "--out", str(tmp_path / "o")]) == 1
    assert "ParamMismatch" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["params"]) == 1
    assert main(["params", "--n", "6"]) == 1
    assert main(["keygen", "--n", "8", "--out-pk", "x", "--out-sk", "y", "--seed", "-3"]) == 1
    assert main(["decrypt", "--sk", str(tmp_path / "missing"), "--in", "x", "--out", "y"]) == 1


def test_analyze_element(tmp_path, capsys):
    elem = tmp_path / "e.txt"
    elem.write_text("1 0 0 0 1 0 0 0\n")
    csv_path = tmp_path / "p.csv"
    assert main(["analyze", "--in", str(elem), "--csv", str(csv_path)]) == 0
    out = capsys.readouterr().out
    assert "invertible_over_Q=no" in out
    assert "matrix_norm=2.000000" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "k,abs_f,abs_g" and len(lines) == 1 + 2
    elem.write_text("1 0 0 0 0 0 0 0")
    assert main(["analyze", "--in", str(elem)]) == 0
    assert "invertible_over_Q=yes" in capsys.readouterr().out
    elem.write_text("1 2 x")
    assert main(["analyze", "--in", str(elem)]) == 1


def test_analyze_pk(keys, capsys):
    pk, _ = keys
    assert main(["analyze", "--pk", str(pk)]) == 0
    assert "n=512 q=262657" in capsys.readouterr().out


def test_verify_lemmas(capsys):
    assert main(["verify-lemmas", "--n", "8", "--trials", "100", "--seed", "1"]) == 0
    table = capsys.readouterr().out.splitlines()
    assert len(table) == 11
    assert all(" PASS " in row for row in table[1:])


def test_verify_lemmas_large_n_skips_exact_checks(capsys):
    assert main(["verify-lemmas", "--n", "128", "--trials", "5", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert "SKIP" in out and "FAIL" not in out


def test_bench(capsys):
    assert main(["bench", "--n", "128", "--reps", "2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].split() == ["n", "ntt_us", "schoolbook_us", "ratio"]
    assert [int(r.split()[0]) for r in out[1:]] == [64, 128]
    assert main(["bench", "--n", "64", "--mode", "ntt", "--reps", "1"]) == 0
    assert capsys.readouterr().out.splitlines()[0].split() == ["n", "ntt_us"]


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    assert capsys.readouterr().out.strip().endswith("selftest: PASS")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "dihedral_lwe.cli", "params", "--n", "8"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "q=73" in res.stdout
