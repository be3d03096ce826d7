import random
import string

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strata import (
    DslError,
    RegionSpec,
    SurfaceSpec,
    WallEdge,
    WallMatrix,
    canonical_text,
    parse_surface,
    total_genus,
    validate_surface,
)
from conftest import fuzz_inputs, random_spec, run_fuzz


class TestParsing:
    def test_single_torus_region(self, env):
        spec = parse_surface("region r : toric_code genus=1", env)
        assert len(spec.regions) == 1
        assert spec.regions[0].genus == 1
        assert total_genus(spec) == 1

    def test_two_regions_two_walls(self, env):
        spec = parse_surface(
            """
            # torus made of two annuli
            region a : toric_code genus=0
            region b : toric_code genus=0
            wall w1 : a -> b matrix=em_swap
            wall w2 : b -> a matrix=em_swap
            """,
            env,
        )
        assert len(spec.walls) == 2
        assert total_genus(spec) == 1  # cycle rank 1

    def test_three_tau_sphere(self, env):
        spec = parse_surface("region r : fib genus=0 anyons=[tau,tau,tau]", env)
        assert [v.mult for v in spec.regions[0].anyons] == [(0, 1)] * 3

    def test_forward_reference(self, env):
        spec = parse_surface(
            "wall w : a -> b matrix=id_fib\nregion a : fib genus=0\nregion b : fib genus=0",
            env,
        )
        assert spec.walls[0].from_region == "a"

    def test_boundaries_and_anyons_any_order(self, env):
        spec = parse_surface(
            "region r : toric_code genus=0 boundaries=[rough] anyons=[e]", env
        )
        assert spec.regions[0].boundaries[0].name == "rough"
        spec2 = parse_surface(
            "region r : toric_code genus=0 anyons=[e] boundaries=[rough]", env
        )
        assert spec == spec2

    def test_algebra_as_insertion(self, env):
        spec = parse_surface("region r : toric_code genus=0 anyons=[rough,rough]", env)
        assert spec.regions[0].anyons[0].mult == (1, 1, 0, 0)

    def test_comments_and_blank_lines(self, env):
        spec = parse_surface("\n# nothing here\n\nregion r : fib genus=2 # tail\n", env)
        assert spec.regions[0].genus == 2


class TestParseErrors:
    def err(self, env, text) -> DslError:
        with pytest.raises(DslError) as excinfo:
            parse_surface(text, env)
        return excinfo.value

    def test_syntax_error_position(self, env):
        err = self.err(env, "region r fib genus=0")
        assert (err.line, err.kind) == (1, "syntax")
        assert err.col == 10  # points at 'fib' where ':' was expected

    def test_unknown_category(self, env):
        err = self.err(env, "region r : noSuch genus=0")
        assert err.kind == "unknown-name"
        assert err.col == 12

    def test_unknown_wall(self, env):
        err = self.err(env, "region a : fib genus=0\nwall w : a -> a matrix=noSuch")
        assert (err.line, err.kind) == (2, "unknown-name")

    def test_unknown_anyon(self, env):
        err = self.err(env, "region r : fib genus=0 anyons=[e]")
        assert err.kind == "unknown-name"

    def test_wall_end_category_mismatch(self, env):
        err = self.err(
            env,
            "region a : fib genus=0\nregion b : toric_code genus=0\n"
            "wall w : a -> b matrix=id_fib",
        )
        assert err.kind == "category-mismatch"
        assert err.line == 3

    def test_boundary_category_mismatch(self, env):
        err = self.err(env, "region r : fib genus=0 boundaries=[rough]")
        assert err.kind == "category-mismatch"

    def test_duplicate_region(self, env):
        err = self.err(env, "region r : fib genus=0\nregion r : fib genus=0")
        assert (err.line, err.kind) == (2, "duplicate")

    def test_duplicate_wall(self, env):
        err = self.err(
            env,
            "region a : fib genus=0\nwall w : a -> a matrix=id_fib\n"
            "wall w : a -> a matrix=id_fib",
        )
        assert err.kind == "duplicate"

    def test_negative_genus_rejected(self, env):
        err = self.err(env, "region r : fib genus=-1")
        assert err.kind == "syntax"

    def test_unknown_region_in_wall(self, env):
        err = self.err(env, "region a : fib genus=0\nwall w : a -> ghost matrix=id_fib")
        assert err.kind == "unknown-name"

    def test_trailing_junk(self, env):
        err = self.err(env, "region r : fib genus=0 stuff")
        assert err.kind == "syntax"


class TestTotalGenus:
    def test_single_region(self, env):
        assert total_genus(parse_surface("region r : fib genus=2", env)) == 2

    def test_chain_of_annuli(self, env, wall_pools):
        from conftest import chain_to_spec

        fib = env.category("fib")
        for n in (1, 2, 4):
            spec = chain_to_spec([fib] * n, [wall_pools["fib"][0]] * n, closed=True)
            assert total_genus(spec) == 1

    def test_sphere_split(self, env):
        spec = parse_surface(
            "region a : toric_code genus=0\nregion b : toric_code genus=0\n"
            "wall w : a -> b matrix=em_swap",
            env,
        )
        assert total_genus(spec) == 0


class TestValidateSurface:
    def test_torus_ok(self, env):
        assert validate_surface(parse_surface("region r : toric_code genus=1", env)) == []

    def test_bad_wall_cited(self, env, toric):
        bad = WallMatrix("proj", toric, toric, np.diag([1, 0, 0, 0]).astype(np.int64))
        spec = SurfaceSpec(
            [RegionSpec("a", toric, 0), RegionSpec("b", toric, 0)],
            [WallEdge("w", "a", "b", bad)],
        )
        report = validate_surface(spec)
        assert any("'w'" in v.message for v in report)

    def test_disconnected(self, env, fib):
        spec = SurfaceSpec([RegionSpec("a", fib, 0), RegionSpec("b", fib, 0)], [])
        assert any(v.code == "connected" for v in validate_surface(spec))

    def test_empty(self):
        assert any(v.code == "empty" for v in validate_surface(SurfaceSpec()))


class TestRoundTrip:
    def test_examples(self, env):
        for text in [
            "region r : toric_code genus=1",
            "region r : fib genus=0 anyons=[tau,tau,tau]",
            "region a : toric_code genus=0 boundaries=[rough,smooth]\n"
            "region b : toric_code genus=2 anyons=[e,f]\n"
            "wall w : a -> b matrix=em_swap\nwall v : b -> b matrix=id_toric_code",
        ]:
            spec = parse_surface(text, env)
            assert parse_surface(canonical_text(spec), env) == spec

    def test_random_specs(self, env, wall_pools, boundary_walls):
        rng = random.Random(2024)
        for _ in range(50):
            spec = random_spec(rng, env, wall_pools, boundary_walls)
            again = parse_surface(canonical_text(spec), env)
            assert again == spec
            assert canonical_text(again) == canonical_text(spec)


# ---------------------------------------------------------------------------
# fuzzing


def test_fuzz_corpus(env):
    ok, errors = run_fuzz(env, count=1000)
    assert ok + errors == 1000
    assert ok >= 100  # the corpus must actually exercise the happy path
    assert errors >= 100


@settings(max_examples=300, deadline=None)
@given(st.text(alphabet=string.printable, max_size=200))
def test_parser_totality_on_arbitrary_text(text):
    env = _HYPOTHESIS_ENV
    try:
        parse_surface(text, env)
    except DslError as err:
        assert err.line >= 1 and err.col >= 1


from strata import Workspace

_HYPOTHESIS_ENV = Workspace.with_builtins()
