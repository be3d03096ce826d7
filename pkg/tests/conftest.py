import random
import string

import pytest

from strata import (
    DslError,
    ObjectVector,
    RegionSpec,
    SurfaceSpec,
    WallEdge,
    Workspace,
    boundary_wall_from_lagrangian,
    canonical_text,
    compose_walls,
    parse_surface,
    reverse_wall,
    simple,
)


@pytest.fixture(scope="session")
def env() -> Workspace:
    return Workspace.with_builtins()


@pytest.fixture(scope="session")
def toric(env):
    return env.category("toric_code")


@pytest.fixture(scope="session")
def fib(env):
    return env.category("fib")


@pytest.fixture(scope="session")
def wall_pools(env):
    """Anomaly-free walls C -> C per category, used by randomized tests.

    The composite condensation walls get registered in the shared
    workspace under parseable names so canonical surface text
    round-trips.
    """
    pools = {
        name: [env.wall(f"id_{name}")]
        for name in ("trivial", "toric_code", "fib", "ising", "semion", "zn_toric_3")
    }
    swap = env.wall("em_swap")
    rough_w = boundary_wall_from_lagrangian(env.algebra("rough"))
    smooth_w = boundary_wall_from_lagrangian(env.algebra("smooth"))
    pools["toric_code"].append(swap)
    for a, left in (("e", rough_w), ("m", smooth_w)):
        for b, right in (("e", rough_w), ("m", smooth_w)):
            wall = compose_walls(left, reverse_wall(right))
            wall.name = f"cond_{a}{b}"
            env.walls[wall.name] = wall
            pools["toric_code"].append(wall)
    return pools


@pytest.fixture(scope="session")
def boundary_walls(env):
    out = {}
    for name in ("rough", "smooth"):
        wall = boundary_wall_from_lagrangian(env.algebra(name))
        env.walls[wall.name] = wall
        out[name] = wall
    return out


def random_object_vector(rng: random.Random, md) -> ObjectVector:
    return ObjectVector(md, tuple(rng.randint(0, 2) for _ in range(md.rank)))


def random_spec(rng: random.Random, env, wall_pools, boundary_walls) -> SurfaceSpec:
    """A small random valid surface: one category for the bulk regions,

    a random connected multigraph of anomaly-free walls, random anyons,
    and (for toric code) optional Lagrangian boundaries or a trivial
    disk hanging off a condensation wall.
    """
    cat_name = rng.choice(["toric_code", "toric_code", "fib", "ising", "semion", "trivial"])
    md = env.category(cat_name)
    n = rng.randint(1, 3)
    regions = []
    for i in range(n):
        r = RegionSpec(f"r{i}", md, rng.randint(0, 2))
        for _ in range(rng.randint(0, 2)):
            lab = rng.choice(md.labels)
            r.anyons.append(simple(md, lab))
            r.anyon_labels.append(lab)
        if cat_name == "toric_code":
            for _ in range(rng.randint(0, 2)):
                name = rng.choice(["rough", "smooth"])
                r.boundaries.append(env.algebra(name))
        regions.append(r)

    spec = SurfaceSpec(regions, [])
    eid = 0

    def add_edge(a: str, b: str):
        nonlocal eid
        wall = rng.choice(wall_pools[cat_name])
        if rng.random() < 0.5:
            a, b = b, a
        spec.walls.append(WallEdge(f"w{eid}", a, b, wall))
        eid += 1

    for i in range(1, n):
        add_edge(f"r{rng.randrange(i)}", f"r{i}")
    for _ in range(rng.randint(0, 2)):
        add_edge(f"r{rng.randrange(n)}", f"r{rng.randrange(n)}")

    if cat_name == "toric_code" and rng.random() < 0.3:
        # condense onto a trivial disk through a boundary wall
        spec.regions.append(RegionSpec("disk", env.category("trivial"), 0))
        spec.walls.append(
            WallEdge(f"w{eid}", f"r{rng.randrange(n)}", "disk",
                     boundary_walls[rng.choice(["rough", "smooth"])])
        )
    return spec


def random_chain(rng: random.Random, env, wall_pools):
    """(categories, walls) for a closed chain over one category."""
    cat_name = rng.choice(["toric_code", "toric_code", "fib", "ising", "semion", "zn_toric_3"])
    md = env.category(cat_name)
    length = rng.randint(1, 4)
    walls = [rng.choice(wall_pools[cat_name]) for _ in range(length)]
    return [md] * length, walls


def chain_to_spec(categories, walls, closed: bool) -> SurfaceSpec:
    """The region-graph form of a chain of wall loops on a cylinder/torus."""
    if closed:
        regions = [RegionSpec(f"a{i}", md, 0) for i, md in enumerate(categories)]
        edges = [
            WallEdge(f"w{i}", f"a{i}", f"a{(i + 1) % len(walls)}", w)
            for i, w in enumerate(walls)
        ]
    else:
        regions = [RegionSpec(f"a{i}", md, 0) for i, md in enumerate(categories)]
        edges = [WallEdge(f"w{i}", f"a{i}", f"a{i + 1}", w) for i, w in enumerate(walls)]
    return SurfaceSpec(regions, edges)


# ---------------------------------------------------------------------------
# move battery shared by the engine tests and the acceptance suite


def applicable_moves(spec: SurfaceSpec, rng: random.Random):
    """One instance of every move kind that applies to this spec."""
    from strata import (
        CapBoundary,
        ComposeParallelWalls,
        CutHandle,
        FuseAnyons,
        ReverseEdge,
        SplitPartition,
        SplitRegionTransparent,
    )

    moves = []
    for e in spec.walls:
        moves.append(ReverseEdge(e.id))
    for r in spec.regions:
        if r.genus >= 1:
            moves.append(CutHandle(r.id))
        if r.boundaries:
            moves.append(CapBoundary(r.id, rng.randrange(len(r.boundaries))))
        if len(r.anyons) >= 2:
            i = rng.randrange(len(r.anyons))
            j = rng.randrange(len(r.anyons))
            if i != j:
                moves.append(FuseAnyons(r.id, i, j))
    # transparent split of a random region with a random partition
    r = rng.choice(spec.regions)
    ends = {(e.id, "from") for e in spec.walls if e.from_region == r.id}
    ends |= {(e.id, "to") for e in spec.walls if e.to_region == r.id}
    moves.append(
        SplitRegionTransparent(
            r.id,
            SplitPartition(
                genus=rng.randint(0, r.genus),
                anyons=frozenset(i for i in range(len(r.anyons)) if rng.random() < 0.5),
                boundaries=frozenset(
                    i for i in range(len(r.boundaries)) if rng.random() < 0.5
                ),
                edge_ends=frozenset(x for x in ends if rng.random() < 0.5),
                new_region="split_r",
                new_edge="split_e",
            ),
        )
    )
    # compose across any bare annulus with two distinct incident edges
    for r in spec.regions:
        if r.genus or r.anyons or r.boundaries:
            continue
        incident = [
            (e.id, end)
            for e in spec.walls
            for end in (("from",) if e.from_region == r.id else ())
            + (("to",) if e.to_region == r.id else ())
        ]
        if len(incident) == 2 and incident[0][0] != incident[1][0]:
            moves.append(ComposeParallelWalls(incident[0][0], r.id, incident[1][0]))
    return moves



# ---------------------------------------------------------------------------
# parser fuzz corpus shared by the surface tests and the acceptance suite


def fuzz_inputs(rng: random.Random, env, count: int):
    """Deterministic corpus: valid texts, mutated texts, raw junk."""
    categories = list(env.categories)
    walls = list(env.walls)
    algebras = list(env.algebras)
    keywords = ["region", "wall", "genus", "anyons", "boundaries", "matrix",
                ":", "=", "->", "[", "]", ",", "#"]

    def valid_text():
        # one bulk category keeps most generated texts resolvable; a few
        # deliberately mix categories to exercise the mismatch errors
        cat = rng.choice(["toric_code", "fib", "ising", "semion", "trivial"])
        md = env.categories[cat]
        n = rng.randint(1, 3)
        lines = []
        for i in range(n):
            line = f"region r{i} : {cat} genus={rng.randint(0, 3)}"
            if rng.random() < 0.5:
                labs = ",".join(rng.choice(md.labels) for _ in range(rng.randint(1, 3)))
                line += f" anyons=[{labs}]"
            if cat == "toric_code" and rng.random() < 0.3:
                line += f" boundaries=[{rng.choice(['rough', 'smooth'])}]"
            lines.append(line)
        wall_choices = [f"id_{cat}"] + (["em_swap"] if cat == "toric_code" else [])
        for j in range(rng.randint(0, 3)):
            a, b = rng.randint(0, n - 1), rng.randint(0, n - 1)
            wname = rng.choice(wall_choices if rng.random() < 0.85 else walls)
            lines.append(f"wall w{j} : r{a} -> r{b} matrix={wname}")
        if rng.random() < 0.2:
            lines.append(f"region extra : {rng.choice(categories)} "
                         f"genus=0 anyons=[{rng.choice(algebras)}]")
        if rng.random() < 0.4:
            lines.insert(rng.randint(0, len(lines)), f"# {rng.random()}")
        rng.shuffle(lines)
        return "\n".join(lines)

    def mutate(text):
        kind = rng.randrange(4)
        if kind == 0 and text:
            cut = rng.randrange(len(text))
            return text[:cut]
        if kind == 1 and text:
            pos = rng.randrange(len(text))
            return text[:pos] + rng.choice("()!$%{}\t;~0aZ_") + text[pos + 1:]
        if kind == 2:
            return text + "\n" + " ".join(rng.choice(keywords) for _ in range(6))
        lines = text.splitlines()
        if lines:
            lines.insert(rng.randrange(len(lines) + 1), rng.choice(lines))
        return "\n".join(lines)

    def junk():
        alphabet = string.printable
        return "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 120)))

    out = []
    for i in range(count):
        if i % 5 < 2:
            out.append(valid_text())
        elif i % 5 < 4:
            out.append(mutate(valid_text()))
        else:
            out.append(junk())
    return out


def run_fuzz(env, count=1000, seed=20240817):
    """Parse the corpus; return (#parsed, #typed errors). Anything else

    escaping parse_surface is a crash and fails the suite.
    """
    rng = random.Random(seed)
    ok = errors = 0
    for text in fuzz_inputs(rng, env, count):
        try:
            spec = parse_surface(text, env)
        except DslError as err:
            assert err.line >= 1 and err.col >= 1
            assert err.kind in ("syntax", "unknown-name", "category-mismatch", "duplicate")
            errors += 1
        else:
            assert isinstance(spec, SurfaceSpec)
            assert parse_surface(canonical_text(spec), env) == spec
            ok += 1
    return ok, errors
