import pytest

from wittlab.multipoly import MultiPoly
from wittlab.witt import (
    WittPolyCache,
    carry_polys,
    ghost_polys,
    load_cache,
    save_cache,
    universal_polys,
    validate_cache,
)


class TestGhostPolys:
    def test_w0(self):
        w = ghost_polys(2, 1)
        assert w[0] == MultiPoly(1, {(1,): 1})

    def test_w1_p2(self):
        w = ghost_polys(2, 2)
        assert w[1] == MultiPoly(2, {(2, 0): 1, (0, 1): 2})

    def test_w2_p3(self):
        w = ghost_polys(3, 3)
        assert w[2] == MultiPoly(3, {(9, 0, 0): 1, (0, 3, 0): 3, (0, 0, 1): 9})


class TestUniversalPolys:
    def test_degree_zero(self):
        c = universal_polys(3, 1)
        assert c.sum[0] == MultiPoly(2, {(1, 0): 1, (0, 1): 1})
        assert c.prod[0] == MultiPoly(2, {(1, 1): 1})

    def test_s1_p2(self):
        # 2 S_1 = 2X_1 + 2Y_1 + X_0^2 + Y_0^2 - (X_0+Y_0)^2, solved by hand
        c = universal_polys(2, 2)
        expected = MultiPoly(
            4, {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}
        )
        assert c.sum[1] == expected

    def test_p1_p2(self):
        c = universal_polys(2, 2)
        expected = MultiPoly(
            4,
            {(2, 0, 0, 1): 1, (0, 1, 2, 0): 1, (0, 1, 0, 1): 2},
        )
        assert c.prod[1] == expected

    def test_neg_p2(self):
        # -1 has all-ones coordinates when p = 2: N_0 = -X_0, then check
        # the defining identity directly instead of a closed form
        c = universal_polys(2, 3)
        assert c.neg[0] == MultiPoly(3, {(1, 0, 0): -1})
        c.verify_ghost_identities()

    @pytest.mark.parametrize("p,n", [(2, 4), (3, 4), (5, 3)])
    def test_ghost_identities_symbolic(self, p, n):
        cache = universal_polys(p, n)
        cache.verify_ghost_identities()  # raises on any failure

    @pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 2)])
    def test_integrality(self, p, n):
        # construction aborts on non-exact division, so success is the test;
        # also confirm every coefficient is a Python int (never Fraction)
        cache = universal_polys(p, n)
        for fam in ("sum", "prod", "neg"):
            for poly in getattr(cache, fam):
                assert all(isinstance(c, int) for c in poly.terms.values())


class TestCarryPolys:
    def test_t0_is_sum(self):
        t = carry_polys(2, 3)
        assert t[0] == MultiPoly(2, {(1, 0): 1, (0, 1): 1})

    def test_t1_p2(self):
        # t_1 = (X^2 + Y^2 - (X+Y)^2)/2 = -XY
        t = carry_polys(2, 2)
        assert t[1] == MultiPoly(2, {(1, 1): -1})

    def test_carries_specialize_sum_polys(self):
        # carry family must be S_i at (X_0, 0, ..., Y_0, 0, ...)
        p, n = 3, 3
        cache = universal_polys(p, n)
        carries = carry_polys(p, n)
        subs = []
        for i in range(2 * n):
            if i == 0:
                subs.append(MultiPoly.var(2, 0))
            elif i == n:
                subs.append(MultiPoly.var(2, 1))
            else:
                subs.append(MultiPoly.zero(2))
        for i in range(n):
            assert cache.sum[i].substitute(subs) == carries[i]


class TestCacheFile:
    def test_round_trip(self, tmp_path):
        cache = universal_polys(2, 3)
        save_cache(cache, str(tmp_path))
        loaded = load_cache(2, 3, str(tmp_path))
        assert loaded.render_lines() == cache.render_lines()

    def test_validate_ok(self, tmp_path):
        save_cache(universal_polys(3, 2), str(tmp_path))
        assert validate_cache(3, 2, str(tmp_path)) == []

    def test_validate_detects_corruption(self, tmp_path):
        path = save_cache(universal_polys(2, 2), str(tmp_path))
        text = open(path).read().replace(" 1 ;", " 7 ;", 1)
        open(path, "w").write(text)
        diffs = validate_cache(2, 2, str(tmp_path))
        assert diffs

    def test_bit_exact_regeneration(self, tmp_path):
        a = universal_polys(5, 2).render_lines()
        b = universal_polys(5, 2).render_lines()
        assert a == b
