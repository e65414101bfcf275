import logging

import pytest

from jacobsthal.cache import format_entry, load_cache, parse_entry, save_cache, verify_cache_file
from jacobsthal.factorization import MINIMAL_BUDGET, Budget, FactorCache, Factorization, factorize
from jacobsthal.sequence import jacobsthal

SEMIPRIME = (2**61 - 1) * (2**89 - 1)


def test_entry_round_trip():
    for fac in [
        Factorization(85, [(5, 1), (17, 1)]),
        Factorization(1, []),
        Factorization(3 * SEMIPRIME, [(3, 1)], SEMIPRIME),
        Factorization(2**10, [(2, 10)]),
    ]:
        assert parse_entry(format_entry(fac)) == fac


def test_format():
    assert format_entry(Factorization(85, [(5, 1), (17, 1)])) == "85=5^1,17^1"
    assert format_entry(Factorization(3 * SEMIPRIME, [(3, 1)], SEMIPRIME)) == f"{3 * SEMIPRIME}=3^1,C{SEMIPRIME}"


@pytest.mark.parametrize("line", ["85=5^1,19^1", "85", "85=5^1,C17", "85=5,17", "x=5^1", "85=C17,5^1", "21=3^1,7^0,7^1"])
def test_corrupt_entries_rejected(line):
    with pytest.raises(ValueError):
        parse_entry(line)


def test_file_round_trip(tmp_path):
    cache = FactorCache()
    for k in range(2, 80):
        factorize(jacobsthal(k), Budget(rho_iterations=5000), cache=cache)
    factorize(SEMIPRIME, MINIMAL_BUDGET, cache=cache)
    path = tmp_path / "factors.cache"
    save_cache(cache, path)
    loaded = load_cache(path)
    assert loaded.entries() == cache.entries()
    save_cache(loaded, tmp_path / "again.cache")
    assert path.read_text() == (tmp_path / "again.cache").read_text()
    assert sorted(p.name for p in tmp_path.iterdir()) == ["again.cache", "factors.cache"]


def test_corrupt_lines_dropped_with_warning(tmp_path, caplog):
    path = tmp_path / "c.cache"
    path.write_text("# header\n21=3^1,7^1\n22=3^1,7^1\n\nnonsense\n85=5^1,17^1\n")
    with caplog.at_level(logging.WARNING):
        cache = load_cache(path)
    assert set(cache.entries()) == {21, 85}
    assert len([r for r in caplog.records if "corrupt" in r.message]) == 2
    valid, bad = verify_cache_file(path)
    assert valid == 2 and [n for n, _ in bad] == [3, 5]


def test_missing_file_is_empty(tmp_path):
    assert len(load_cache(tmp_path / "nope")) == 0


def test_save_is_atomic_on_failure(tmp_path, monkeypatch):
    path = tmp_path / "c.cache"
    path.write_text("21=3^1,7^1\n")
    cache = FactorCache({85: Factorization(85, [(5, 1), (17, 1)])})

    def boom(*args, **kwargs):
        raise OSError("disk full")

    monkeypatch.setattr("jacobsthal.cache.os.replace", boom)
    with pytest.raises(OSError):
        save_cache(cache, path)
    assert path.read_text() == "21=3^1,7^1\n"
    assert [p.name for p in tmp_path.iterdir()] == ["c.cache"]
