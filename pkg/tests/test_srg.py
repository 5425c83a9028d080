"""
Tests of strongly regular graphs, Paley graphs and lower-bound certificates in bookram.srg
"""

import json
import logging

import pytest
from pytest import raises

from bookram.graph import read_graph6_file, to_graph6, write_graph6_file
from bookram.metrics import book_size
from bookram.srg import (
    GaloisField,
    LowerBoundCertificate,
    SrgParams,
    certificate_from_file,
    certify,
    corollary_rows,
    is_prime_power,
    load_witness,
    paley,
    srg_book_bound,
    srg_complement_params,
    verify_srg,
)
from bookram.utils import (
    DATA_ENV_VAR,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    data_dir,
    empty_graph,
    kneser_graph,
    path_graph,
    rook_graph,
)


def test_srg_params():
    p = SrgParams.from_string("15,6,1,3")
    assert p.as_tuple() == (15, 6, 1, 3)
    assert str(p) == "(15,6,1,3)"
    assert p.as_record() == {"v": 15, "k": 6, "lambda": 1, "mu": 3}
    assert srg_complement_params(p).as_tuple() == (15, 8, 4, 4)
    with raises(ValueError, match="fail"):
        SrgParams(15, 6, 1, 2)
    with raises(ValueError, match="Invalid degree"):
        SrgParams(5, 5, 0, 0)
    with raises(ValueError, match="Expected"):
        SrgParams.from_string("1,2,3")


def test_is_prime_power():
    assert [q for q in range(1, 30) if is_prime_power(q)] == [
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29,
    ]  # fmt: skip


@pytest.mark.parametrize("q", [2, 5, 8, 9, 25, 27])
def test_galois_field(q):
    f = GaloisField(q)
    elements = list(f.elements())
    for x in elements:
        assert f.add(x, f.neg(x)) == 0
        assert f.mul(x, 1) == x
        assert f.mul(x, 0) == 0
    # every nonzero element has an inverse
    for x in elements[1:]:
        assert any(f.mul(x, y) == 1 for y in elements)
    for x, y, z in zip(elements, elements[1:], elements[2:], strict=False):
        assert f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z))
    expected_squares = (q - 1) // 2 if q % 2 else q - 1
    assert len(f.squares()) == expected_squares


def test_galois_field_errors():
    with raises(ValueError, match="not a prime power"):
        GaloisField(12)


def test_paley_small():
    assert paley(5) == cycle_graph(5)
    assert verify_srg(paley(5)).as_tuple() == (5, 2, 0, 1)
    with raises(ValueError, match="mod 4"):
        paley(4)
    with raises(ValueError, match="mod 4"):
        paley(7)
    with raises(ValueError, match="not a prime power"):
        paley(21)


@pytest.mark.parametrize("q", [5, 9, 13, 17, 25, 29])
def test_paley_parameters(q):
    g = paley(q)
    assert verify_srg(g).as_tuple() == (q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4)
    assert book_size(g) == (q - 5) // 4


def test_verify_srg(c5, petersen, k33):
    assert verify_srg(c5).as_tuple() == (5, 2, 0, 1)
    assert verify_srg(petersen).as_tuple() == (10, 3, 0, 1)
    assert verify_srg(k33).as_tuple() == (6, 3, 0, 3)
    assert verify_srg(path_graph(3)) is None
    assert verify_srg(cycle_graph(6)) is None
    assert verify_srg(complete_graph(5)) is None
    assert verify_srg(empty_graph(5)) is None
    assert verify_srg(empty_graph(1)) is None


@pytest.mark.parametrize(
    ("params", "expected"),
    [((15, 6, 1, 3), (2, 5, 16)), ((9, 4, 1, 2), (2, 2, 10)), ((243, 110, 37, 60), (38, 82, 244))],
)
def test_srg_book_bound(params, expected):
    assert srg_book_bound(SrgParams(*params)) == expected


def test_srg_book_bound_vacuous():
    # K_3 has an edgeless complement, so there is no blue page target
    with raises(ValueError, match="vacuous"):
        srg_book_bound(SrgParams(3, 2, 1, 0))


def test_certify_paley9(paley9):
    cert = certify(paley9)
    assert (cert.m, cert.n, cert.bound) == (2, 2, 10)
    assert cert.srg_params.as_tuple() == (9, 4, 1, 2)
    assert str(cert) == "r(B_2, B_2) >= 10"
    assert not cert.degenerate


@pytest.mark.parametrize("n", [1, 2, 5])
def test_certify_complete_bipartite(n):
    cert = certify(complete_bipartite_graph(n + 1, n + 1))
    assert cert.red_bs == 0
    assert cert.blue_bs == n - 1
    assert (cert.m, cert.n, cert.bound) == (1, n, 2 * n + 3)


def test_certify_degenerate(caplog):
    with caplog.at_level(logging.WARNING, "bookram"):
        cert = certify(empty_graph(1))
    assert cert.degenerate
    assert (cert.m, cert.n, cert.bound) == (1, 1, 2)
    assert "Degenerate" in caplog.text
    assert cert.as_record()["degenerate"] is True


def test_certificate_consistency():
    for g in (kneser_graph(6), rook_graph(4), kneser_graph(7), paley(13)):
        cert = certify(g)
        assert srg_book_bound(cert.srg_params) == (cert.m, cert.n, cert.bound)


def test_certificate_applies_to():
    cert = certify(kneser_graph(6))
    assert cert.applies_to(2, 5)
    assert cert.applies_to(5, 2)
    assert cert.applies_to(3, 6)
    assert not cert.applies_to(1, 5)
    assert not cert.applies_to(2, 4)


def test_certificate_validation(paley9):
    with raises(ValueError, match="witness order"):
        LowerBoundCertificate(m=2, n=2, bound=11, witness=paley9, red_bs=1, blue_bs=1)
    with raises(ValueError, match="red book"):
        LowerBoundCertificate(m=1, n=2, bound=10, witness=paley9, red_bs=1, blue_bs=1)


def test_certificate_book_sizes_recomputed(paley9):
    # paley(9) has a red B_1 and a blue B_1, so it cannot witness r(B_1, B_1) >= 10
    with raises(ValueError, match="book sizes"):
        LowerBoundCertificate(m=1, n=1, bound=10, witness=paley9, red_bs=None, blue_bs=None)
    with raises(ValueError, match="book sizes"):
        LowerBoundCertificate(m=3, n=2, bound=10, witness=paley9, red_bs=2, blue_bs=1)
    k6 = complete_graph(6)
    with raises(ValueError, match="book sizes"):
        LowerBoundCertificate(m=5, n=1, bound=7, witness=k6, red_bs=4, blue_bs=0)
    cert = LowerBoundCertificate(m=5, n=1, bound=7, witness=k6, red_bs=4, blue_bs=None, degenerate=True)
    assert cert.as_record()["degenerate"] is True


def test_certificate_records(tmp_path, paley9):
    cert = certify(paley9)
    record = cert.as_record()
    assert record["graph6"] == to_graph6(paley9)
    assert record["srg_params"] == {"v": 9, "k": 4, "lambda": 1, "mu": 2}
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(record))
    reloaded = certificate_from_file(path)
    assert reloaded.witness == paley9
    assert (reloaded.m, reloaded.n, reloaded.bound) == (2, 2, 10)

    record["bound"] = 11
    path.write_text(json.dumps(record))
    with raises(ValueError, match="claims"):
        certificate_from_file(path)
    with raises(FileNotFoundError):
        certificate_from_file(tmp_path / "missing.json")

    g6 = tmp_path / "paley9.g6"
    write_graph6_file(paley9, g6)
    assert certificate_from_file(g6).bound == 10


def test_witness_files_match_constructions():
    d = data_dir()
    assert read_graph6_file(d / "srg_15_6_1_3.g6") == kneser_graph(6)
    assert read_graph6_file(d / "srg_16_6_2_2.g6") == rook_graph(4)
    assert read_graph6_file(d / "srg_21_10_3_6.g6") == kneser_graph(7)


def test_corollary_rows():
    rows = corollary_rows()
    assert len(rows) == 16
    assert [(r.m, r.n) for r in rows][:3] == [(2, 5), (3, 5), (4, 6)]
    for row in rows:
        m, n, bound = srg_book_bound(row.params)
        assert (min(m, n), max(m, n)) == (row.m, row.n)
        assert bound == row.r
        assert row.r == row.params.v + 1


def test_load_witness(monkeypatch, tmp_path, caplog):
    rows = {(r.m, r.n): r for r in corollary_rows()}
    g = load_witness(rows[(3, 5)])
    assert verify_srg(g).as_tuple() == (16, 6, 2, 2)
    assert load_witness(rows[(7, 10)]) is None

    monkeypatch.setenv(DATA_ENV_VAR, str(tmp_path))
    with caplog.at_level(logging.WARNING, "bookram"):
        assert load_witness(rows[(2, 5)]) is None
    assert "missing" in caplog.text

    write_graph6_file(rook_graph(4), tmp_path / "srg_15_6_1_3.g6")
    with raises(ValueError, match="expected"):
        load_witness(rows[(2, 5)])
