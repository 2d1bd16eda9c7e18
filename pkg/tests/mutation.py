"""Seeded single-constant mutations used as negative controls."""

import random

from sjw.superalgebra import BilinearMap

DELTAS = (-2, -1, 1, 2)


def _detectable(a, which, i, j):
    """Slots whose perturbation cannot give another valid structure of the same kind.

    Off-diagonal slots break super (anti)commutativity unless the mirror
    slot moves too.  On the diagonal, ``[x, x]`` must vanish for even ``x``
    and ``x x`` for odd ``x``; the remaining diagonal slots are skipped
    (``G(1)`` with ``[x, x] = c`` is Poisson for every c, and rescaling
    ``1 * 1`` in F gives an isomorphic algebra).
    """
    if i != j:
        return True
    odd = a.parity(i)
    return (which == "bracket" and not odd) or (which == "product" and odd)


def _has_slot(a, which):
    bm = getattr(a, which)
    return bm is not None and any(_detectable(a, which, i, j) and (i, j) not in bm.undefined
                                  for i in range(min(a.dim, 2)) for j in range(a.dim))


def mutate(a, seed, maps=("product", "bracket")):
    """Perturb one structure constant by a nonzero integer; the parity of the slot is respected."""
    rng = random.Random(seed)
    options = [m for m in maps if _has_slot(a, m)]
    which = rng.choice(options)
    bm = getattr(a, which)
    par = a.parities
    while True:
        i, j = rng.randrange(a.dim), rng.randrange(a.dim)
        if (i, j) not in bm.undefined and _detectable(a, which, i, j):
            break
    k = rng.choice([k for k in range(a.dim) if par[k] == (par[i] + par[j]) % 2])
    table = {key: dict(row) for key, row in bm.table.items()}
    row = table.setdefault((i, j), {})
    row[k] = row.get(k, 0) + rng.choice(DELTAS)
    new = BilinearMap(a.dim, table, bm.undefined, which=bm.which)
    return a.replace(**{which: new, "kinds": ()}), (which, i, j, k)
