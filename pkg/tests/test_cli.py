import json
import subprocess
import sys

import pytest

from weqtk.chains import sphere_complex, zero_chain_map, zero_complex
from weqtk.cli import (JobSpec, canonical, decode_chain_map,
                       decode_fincategory, decode_finfunctor,
                       decode_finset_map, decode_simplicial_map, decode_sset,
                       encode_chain_map, encode_fincategory, encode_finfunctor,
                       encode_finset_map, encode_simplicial_map, encode_sset,
                       replay, run)
from weqtk.errors import ParseError
from weqtk.fincat import identity_functor, walking_iso
from weqtk.finset import finset_map
from weqtk.linalg import GF2
from weqtk.simplicial import (POINT, SSET, standard_simplex, vertex_map,
                              zigzag)


def test_roundtrip_finset_map():
    f = finset_map(2, 3, [0, 2])
    assert decode_finset_map(encode_finset_map(f)) == f


def test_roundtrip_fincategory_and_functor():
    iso = walking_iso()
    assert decode_fincategory(encode_fincategory(iso)) == iso
    fun = identity_functor(iso)
    assert decode_finfunctor(encode_finfunctor(fun)) == fun


def test_roundtrip_chain_map():
    s = sphere_complex(GF2, 0)
    f = zero_chain_map(s, zero_complex(GF2))
    assert decode_chain_map(encode_chain_map(f)) == f


def test_roundtrip_simplicial():
    d2 = standard_simplex(2)
    assert decode_sset(encode_sset(d2)) == d2
    f = vertex_map(d2, 1)
    assert decode_simplicial_map(encode_simplicial_map(f)) == f


def test_bad_payload_raises_parse_error():
    with pytest.raises(ParseError):
        decode_finset_map({"source": 2, "target": 1, "table": [5, 0]})


def test_check_rlp_verified():
    job = JobSpec("check-rlp", {
        "j": encode_finset_map(finset_map(0, 1, [])),
        "g": encode_finset_map(finset_map(2, 1, [0, 0]))})
    cert, code = run(job)
    assert code == 0 and cert["verdict"] == "verified"
    assert replay(cert)


def test_check_rlp_refuted():
    job = JobSpec("check-rlp", {
        "j": encode_finset_map(finset_map(0, 1, [])),
        "g": encode_finset_map(finset_map(0, 1, []))})
    cert, code = run(job)
    assert code == 1 and cert["verdict"] == "refuted"
    assert replay(cert)


def test_check_equivalence():
    iso = walking_iso()
    job = JobSpec("check-equivalence",
                  {"functor": encode_finfunctor(identity_functor(iso))})
    cert, code = run(job)
    assert code == 0
    assert replay(cert)


def test_check_quasi_iso_refuted_with_counterexample():
    s = sphere_complex(GF2, 0)
    f = zero_chain_map(s, zero_complex(GF2))
    job = JobSpec("check-quasi-iso", {"map": encode_chain_map(f)})
    cert, code = run(job)
    assert code == 1
    assert cert["witness"]["counterexample"]["cycle"] == [1]
    assert replay(cert)


def test_check_we_sset():
    z1, j0, j2 = zigzag(1)
    f = vertex_map(z1, 0)
    job = JobSpec("check-we-sset", {"map": encode_simplicial_map(f)},
                  {"k_max": 2, "n_max": 0, "m_max": 0})
    cert, code = run(job)
    assert code == 0 and cert["verdict"] == "verified"
    assert replay(cert)


def test_check_we_sset_unknown():
    job = JobSpec("check-we-sset",
                  {"map": encode_simplicial_map(vertex_map(POINT, 0))})
    cert, code = run(job)
    assert code == 0  # identity-like: verified
    two = SSET.coproduct([POINT, POINT])[0]
    f = vertex_map(two, 0)
    job2 = JobSpec("check-we-sset", {"map": encode_simplicial_map(f)},
                   {"k_max": 2})
    cert2, code2 = run(job2)
    assert code2 == 2 and cert2["verdict"] == "unknown-at-bound"
    assert replay(cert2)


def test_check_pure_mono():
    job = JobSpec("check-pure-mono",
                  {"map": encode_finset_map(finset_map(1, 2, [0]))},
                  {"size_bound": 2})
    cert, code = run(job)
    assert code == 0
    assert replay(cert)
    job2 = JobSpec("check-pure-mono",
                   {"map": encode_finset_map(finset_map(0, 1, []))},
                   {"size_bound": 2})
    cert2, code2 = run(job2)
    assert code2 == 1
    assert replay(cert2)


def test_free_injective():
    job = JobSpec("free-injective",
                  {"J": [encode_finset_map(finset_map(0, 1, []))], "X": 2})
    cert, code = run(job)
    assert code == 0
    assert cert["witness"]["carrier"] == 3
    assert replay(cert)


def test_subdivide_and_ex_and_pi0():
    d1 = standard_simplex(1)
    cert, code = run(JobSpec("subdivide", {"object": encode_sset(d1),
                                           "iterations": 2}))
    assert code == 0 and cert["witness"]["counts"] == [5, 4]
    assert replay(cert)
    cert2, code2 = run(JobSpec("ex", {"object": encode_sset(d1)},
                               {"dim_bound": 1}))
    assert code2 == 0 and cert2["witness"]["level_sizes"] == [2, 5]
    assert replay(cert2)
    cert3, code3 = run(JobSpec("pi0", {"object": encode_sset(d1)}))
    assert code3 == 0 and cert3["witness"]["components"] == [[0, 1]]
    assert replay(cert3)
    f = vertex_map(d1, 0)
    cert4, code4 = run(JobSpec("pi0", {"map": encode_simplicial_map(f)}))
    assert code4 == 0 and cert4["witness"]["surjective"] is True
    assert replay(cert4)


def test_replay_detects_tampering():
    job = JobSpec("check-rlp", {
        "j": encode_finset_map(finset_map(0, 1, [])),
        "g": encode_finset_map(finset_map(2, 1, [0, 0]))})
    cert, _ = run(job)
    text = canonical(cert)
    start = text.index('"witness"')
    # Flip one byte inside the witness region.
    corrupted_some = False
    for offset in range(start, len(text)):
        c = text[offset]
        if c.isdigit():
            corrupted = text[:offset] + ("0" if c != "0" else "1") + text[offset + 1:]
            try:
                tampered = json.loads(corrupted)
            except json.JSONDecodeError:
                continue
            assert not replay(tampered)
            corrupted_some = True
            if offset > start + 40:
                break
    assert corrupted_some


def test_certificates_deterministic():
    job = JobSpec("check-rlp", {
        "j": encode_finset_map(finset_map(0, 1, [])),
        "g": encode_finset_map(finset_map(2, 1, [0, 0]))})
    a, _ = run(job)
    b, _ = run(job)
    assert canonical(a) == canonical(b)


def test_cli_subprocess_smoke(tmp_path):
    payload = {"j": encode_finset_map(finset_map(0, 1, [])),
               "g": encode_finset_map(finset_map(2, 1, [0, 0]))}
    inp = tmp_path / "job.json"
    inp.write_text(json.dumps(payload))
    out = tmp_path / "cert.json"
    proc = subprocess.run(
        [sys.executable, "-m", "weqtk.cli", "check-rlp",
         "--input", str(inp), "--output", str(out), "--threads", "4"],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    cert = json.loads(out.read_text())
    assert cert["verdict"] == "verified"
    proc2 = subprocess.run(
        [sys.executable, "-m", "weqtk.cli", "replay", "--input", str(out)],
        capture_output=True, text=True)
    assert proc2.returncode == 0, proc2.stderr


def test_format_header_accepted_and_checked():
    payload = {"format": "weqtk/1",
               "j": encode_finset_map(finset_map(0, 1, [])),
               "g": encode_finset_map(finset_map(2, 1, [0, 0]))}
    cert, code = run(JobSpec("check-rlp", payload))
    assert code == 0
    with pytest.raises(ParseError):
        run(JobSpec("check-rlp", dict(payload, format="weqtk/2")))
    with pytest.raises(ParseError):
        run(JobSpec("check-rlp", payload, {"k_max": -1}))


def test_check_equivalence_refuted():
    from weqtk.fincat import discrete_two, enumerate_functors, terminal_category
    fun = enumerate_functors(discrete_two(), terminal_category())[0]
    cert, code = run(JobSpec("check-equivalence",
                             {"functor": encode_finfunctor(fun)}))
    assert code == 1 and cert["verdict"] == "refuted"
    assert cert["witness"]["failure"]["kind"] == "full"
    assert replay(cert)


def test_budget_error_exit_code(tmp_path):
    from weqtk.cli import main
    z1, _, _ = zigzag(1)
    payload = {"map": encode_simplicial_map(vertex_map(z1, 0))}
    inp = tmp_path / "job.json"
    inp.write_text(json.dumps(payload))
    code = main(["check-we-sset", "--input", str(inp),
                 "--search-budget", "1", "--k-max", "2"])
    assert code == 5


def test_parse_error_exit_code(tmp_path):
    from weqtk.cli import main
    inp = tmp_path / "job.json"
    inp.write_text("{not json")
    assert main(["pi0", "--input", str(inp)]) == 3
    inp.write_text(json.dumps({"object": {"kind": "simplicial-set",
                                          "counts": [1], "faces": [[[1]]]}}))
    assert main(["pi0", "--input", str(inp)]) == 3
