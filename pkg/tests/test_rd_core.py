import pytest

from rdbound.rd_core import (
    LadderError,
    NotSimple,
    bound_by_mu,
    default_ladder,
    load_ladder,
    mu,
    parse_ladder,
    rd_upper,
)


@pytest.mark.parametrize("n,v", [(1, 1), (5, 1), (6, 2), (7, 3), (8, 4), (9, 4), (10, 5), (20, 15),
                                 (21, 15), (32, 26), (108, 102), (109, 102), (325, 317),
                                 (1681, 1672), (15121, 15111), (151201, 151190), (1663201, 1663189)])
def test_ladder_checkpoints(n, v):
    assert rd_upper(n) == v


def test_compat_changes_only_rd6():
    lad = default_ladder()
    diffs = [n for n in range(1, 2000) if lad(n) != lad(n, paper_compat=True)]
    assert diffs == [6]
    assert rd_upper(6, paper_compat=True) == 1


def test_ladder_monotone_and_below_n():
    lad = default_ladder()
    vals = [lad(n) for n in range(1, 5000)]
    assert vals == sorted(vals)
    assert all(v <= max(n - 1, 1) for n, v in zip(range(1, 5000), vals))


def test_parse_rejects_garbage():
    with pytest.raises(LadderError):
        parse_ladder("1 = 1\nnonsense")


def test_parse_rejects_non_monotone():
    with pytest.raises(LadderError):
        parse_ladder("1 = 1\n2 = 1\n3 = 2\n4 = 1\nfrom 5: n - 4")


def test_load_from_file(tmp_path):
    path = tmp_path / "ladder.txt"
    path.write_text("version = test\n1 = 1\n2 = 1\nfrom 3: n - 2\n")
    lad = load_ladder(path)
    assert lad.version == "test"
    assert rd_upper(10, ladder=lad) == 8


def test_env_override(tmp_path, monkeypatch):
    from rdbound import rd_core

    path = tmp_path / "ladder.txt"
    path.write_text("1 = 1\nfrom 2: n - 1\n")
    monkeypatch.setenv(rd_core.LADDER_ENV, str(path))
    assert rd_upper(50) == 49
    monkeypatch.delenv(rd_core.LADDER_ENV)
    assert rd_upper(50) == 44


def test_mu_values():
    assert [mu("PSU2", q) for q in (4, 5, 7, 9, 11, 13, 16, 37)] == [5, 5, 7, 6, 11, 14, 17, 38]
    assert [mu("PSU2", q, paper_compat=True) for q in (13, 16, 37)] == [12, 14, 36]
    assert mu("PSU3", 5) == 50
    assert mu("PSU3", 4) == 65
    assert mu("PSU3", 2, allow_nonsimple=True) == 9


def test_not_simple():
    with pytest.raises(NotSimple):
        mu("PSU2", 3)
    with pytest.raises(NotSimple):
        mu("PSU3", 2)


def test_bound_by_mu():
    assert bound_by_mu("PSU3", 3) == 22
    assert bound_by_mu("PSU2", 9) == 2
    assert bound_by_mu("PSU2", 9, paper_compat=True) == 1
