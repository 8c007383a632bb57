import cmath
import json
import math

import pytest

from negaspec.constructions import bilinear_negabent
from negaspec.core import GenFunction
from negaspec.search import (
    CATALOG_ITEMS,
    CatalogRecord,
    InfeasibleSpaceError,
    SearchSpace,
    candidate_function,
    enumerate_space,
    merge_catalog_files,
    search_negabent,
    verify_examples,
)


def test_space_totals():
    assert SearchSpace(2, 1).total == 16
    assert SearchSpace(2, 2).total == 256
    assert SearchSpace(3, 1).total == 216
    assert SearchSpace(4, 2).total == 8**16


def test_space_validation():
    with pytest.raises(ValueError):
        SearchSpace(1, 1)
    with pytest.raises(ValueError):
        SearchSpace(2, 0)
    with pytest.raises(ValueError):
        SearchSpace(2, 1, shard_index=2, shard_count=2)
    with pytest.raises(ValueError):
        SearchSpace(2, 1, shard_index=-1)
    with pytest.raises(ValueError):
        SearchSpace(2, 1, shard_count=0)


def test_infeasible_space_rejected():
    space = SearchSpace(4, 2)
    with pytest.raises(InfeasibleSpaceError):
        space.ensure_feasible()
    with pytest.raises(InfeasibleSpaceError):
        next(search_negabent(space))
    # raising the ceiling admits the space
    SearchSpace(2, 2, max_candidates=300).ensure_feasible()
    with pytest.raises(InfeasibleSpaceError):
        SearchSpace(2, 2, max_candidates=255).ensure_feasible()


def test_enumeration_order_and_count():
    funcs = list(enumerate_space(SearchSpace(2, 1)))
    assert len(funcs) == 16
    assert funcs[0].values == (0, 0)
    assert funcs[1].values == (0, 1)
    assert funcs[4].values == (1, 0)
    assert funcs[-1].values == (3, 3)
    assert len(set(f.values for f in funcs)) == 16


def test_candidate_function_bounds():
    space = SearchSpace(3, 1)
    assert candidate_function(space, 0).values == (0, 0, 0)
    assert candidate_function(space, 215).values == (5, 5, 5)
    with pytest.raises(ValueError):
        candidate_function(space, 216)
    with pytest.raises(ValueError):
        candidate_function(space, -1)


def test_shards_partition_the_space():
    total = SearchSpace(3, 1).total
    seen = []
    for i in range(5):
        shard = SearchSpace(3, 1, shard_index=i, shard_count=5)
        seen.extend(shard.candidate_range())
    assert seen == list(range(total))


def _spectrum_is_flat(q, n, values, tol=1e-9):
    # independent check coded from scratch: direct double loop over the
    # transform definition, no shared helpers
    pts = q**n
    coords = [
        tuple((i // q ** (n - 1 - k)) % q for k in range(n))
        for i in range(pts)
    ]
    w = cmath.exp(1j * math.pi / q)
    for u in coords:
        total = 0j
        for x, fx in zip(coords, values):
            e = fx + 2 * sum(a * b for a, b in zip(x, u)) + sum(x)
            total += w**e
        if abs(abs(total) / math.sqrt(q) ** n - 1) > tol:
            return False
    return True


@pytest.mark.parametrize(
    "q,n,expected", [(2, 1, 8), (2, 2, 64), (3, 1, 36)]
)
def test_exhaustive_counts(q, n, expected):
    records = list(search_negabent(SearchSpace(q, n), backend="both"))
    assert len(records) == SearchSpace(q, n).total
    hits = [r for r in records if r.negabent]
    assert len(hits) == expected
    # cross-check each verdict against the from-scratch spectrum test
    for r in records:
        assert r.negabent == _spectrum_is_flat(q, n, r.values)


def test_hits_only_stream():
    hits = list(search_negabent(SearchSpace(2, 2), hits_only=True))
    assert len(hits) == 64
    assert all(r.negabent for r in hits)
    assert bilinear_negabent(2).values in {r.values for r in hits}


def test_hits_closed_under_constant_shift():
    hits = {r.values for r in search_negabent(SearchSpace(2, 2), hits_only=True)}
    for values in hits:
        for c in range(4):
            shifted = tuple((v + c) % 4 for v in values)
            assert shifted in hits


def test_hit_digest_contents():
    hits = [r for r in search_negabent(SearchSpace(2, 1)) if r.negabent]
    for r in hits:
        assert r.tsq == (2, 2)
        assert r.phases is not None and len(r.phases) == 2
        f = GenFunction(2, 1, r.values)
        from negaspec.transforms import nht
        from negaspec.core import all_points

        for k, u in zip(r.phases, all_points(2, 1)):
            expected = cmath.exp(1j * math.pi * k / 4)
            assert abs(nht(f, u) - expected) < 1e-9


def test_float_backend_matches_exact():
    exact = [r.negabent for r in search_negabent(SearchSpace(3, 1), "exact")]
    floats = [r.negabent for r in search_negabent(SearchSpace(3, 1), "float")]
    assert exact == floats
    with pytest.raises(ValueError):
        next(search_negabent(SearchSpace(2, 1), backend="fancy"))


def test_record_json_round_trip():
    r = CatalogRecord(2, 2, (0, 0, 1, 3), True, (4, 4, 4, 4), (1, 3, 5, 7))
    line = r.to_json_line()
    doc = json.loads(line)
    assert list(doc)[:4] == ["q", "n", "values", "negabent"]
    assert "phases" not in doc
    back = CatalogRecord.from_json_line(line)
    assert (back.q, back.n, back.values, back.negabent, back.tsq) == (
        2, 2, (0, 0, 1, 3), True, (4, 4, 4, 4),
    )
    miss = CatalogRecord(2, 2, (0, 0, 0, 1), False)
    doc = json.loads(miss.to_json_line())
    assert "tsq" not in doc
    assert CatalogRecord.from_json_line(miss.to_json_line()).tsq is None


def test_shard_merge_is_byte_identical(tmp_path):
    whole = tmp_path / "whole.jsonl"
    whole.write_text(
        "".join(
            r.to_json_line() + "\n"
            for r in search_negabent(SearchSpace(2, 2))
        )
    )
    parts = []
    for i in range(8):
        part = tmp_path / f"part{i}.jsonl"
        space = SearchSpace(2, 2, shard_index=i, shard_count=8)
        part.write_text(
            "".join(r.to_json_line() + "\n" for r in search_negabent(space))
        )
        parts.append(part)
    merged = tmp_path / "merged.jsonl"
    merge_catalog_files(parts, merged)
    assert merged.read_bytes() == whole.read_bytes()


def test_catalog_items_tabulate():
    assert len(CATALOG_ITEMS) == 10
    for expr, n, moduli in CATALOG_ITEMS:
        assert moduli
        from negaspec.polyspec import poly_function

        for q in moduli:
            f = poly_function(expr, q, n)
            assert f.n == n and f.q == q


def test_verify_examples_all_pass():
    rows = verify_examples()
    assert len(rows) == 33
    for row in rows:
        assert row.passed, row.label
        assert row.points <= 10**4
        assert row.seconds >= 0
    labels = [r.label for r in rows]
    assert any("quadratic" in lab for lab in labels)
    assert any("bilinear" in lab for lab in labels)
    assert any("2*x1^4 + x1^2 [q=27]" == lab for lab in labels)


def test_verify_examples_respects_point_budget():
    rows = verify_examples(max_points=100)
    assert rows
    for row in rows:
        assert row.points <= 100
        assert row.passed
    assert len(rows) < 33
