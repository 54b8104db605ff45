import random

import pytest

from coincide import manifolds
from coincide.engine import PairQuery
from coincide.invariants import MapClass
from coincide.manifolds import INF
from coincide.tables import load_default_tables


@pytest.fixture(scope="session")
def tables():
    return load_default_tables()


def catalog_manifolds():
    """A spread of named-family and generic descriptors for fuzzing."""
    out = []
    out.extend(manifolds.sphere(n) for n in range(2, 9))
    out.extend(manifolds.real_projective(n) for n in range(2, 9))
    out.extend(
        manifolds.grassmann(r, k)
        for r, k in ((3, 1), (4, 2), (5, 2), (6, 2), (6, 3), (7, 2), (8, 2))
    )
    out.extend(manifolds.oriented_grassmann(r, 2) for r in (4, 5, 6))
    out.extend(manifolds.stiefel(r, 2) for r in (4, 5, 6, 7))
    out.append(manifolds.product([manifolds.sphere(2), manifolds.sphere(3)]))
    out.append(manifolds.product([manifolds.sphere(2), manifolds.sphere(2)]))
    out.append(
        manifolds.product([manifolds.real_projective(2), manifolds.sphere(3)])
    )
    out.extend(manifolds.surface(g, True) for g in range(0, 4))
    out.extend(manifolds.surface(g, False) for g in range(1, 4))
    out.append(manifolds.generic(dim=6, pi1=2, orientable=True, closed=True))
    out.append(
        manifolds.generic(dim=6, pi1=2, orientable=False, closed=True, euler=2)
    )
    out.append(manifolds.generic(dim=4, pi1=1, closed=True, euler=2))
    out.append(manifolds.generic(dim=5, closed=True))
    out.append(manifolds.generic(dim=7, compact=False))
    out.append(manifolds.generic(dim=6, pi1=INF))
    out.append(
        manifolds.generic(dim=4, pi1=4, orientable=False, closed=True, euler=2)
    )
    out.append(manifolds.generic(dim=8, pi1=2, orientable=True, closed=True, euler=4))
    return out


def _random_class(rng, tab, desc, m, kind):
    """A realizable class description for fuzzing (no contradictory data)."""
    n = desc.dim
    choices = ["zero", "opaque", "opaque"]
    if m == n:
        choices.append("degree")
    if m == 2 * n - 1:
        choices.append("hopf")
    if desc.kind == "sphere":
        source = tab.pi_sphere(m - 1, n - 1)
        if source is not None and source.is_finite:
            choices.append("boundary")
    rep = rng.choice(choices)
    if rep == "degree":
        return MapClass(rep="degree", d=rng.randint(-2, 3))
    if rep == "hopf":
        return MapClass(rep="hopf", h=rng.randint(-2, 4))
    if rep == "boundary":
        source = tab.pi_sphere(m - 1, n - 1)
        if n % 2 == 1:
            coords = (0,) * source.dimension
        else:
            coords = tuple(rng.randrange(d) for d in source.torsion)
        return MapClass(rep="boundary", coords=coords)
    return MapClass(rep=rep)


def random_queries(tab, count, seed=20240817):
    """Deterministic stream of well-formed queries over the catalog."""
    rng = random.Random(seed)
    catalog = catalog_manifolds()
    queries = []
    while len(queries) < count:
        desc = rng.choice(catalog)
        m = rng.randint(2, 20)
        kind = rng.choice(["self", "root", "general"])
        quantifier = rng.choice(["given", "given", "forall"])
        f1 = f2 = None
        if quantifier == "given":
            f1 = _random_class(rng, tab, desc, m, kind)
            if kind == "general":
                f2 = _random_class(rng, tab, desc, m, kind)
            elif kind == "self":
                f2 = f1
        queries.append(
            PairQuery(
                manifold=desc, m=m, kind=kind, f1=f1, f2=f2, quantifier=quantifier
            )
        )
    return queries
