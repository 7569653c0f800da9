"""Integer double description method.

Converts between the two presentations of a rational polyhedral cone:
``{x : A x >= 0, E x = 0}`` and ``cone(rays) + span(lineality)``.
"""

from __future__ import annotations

from .lattice_linalg import dot, nullspace, primitive


def extreme_rays(inequalities, equations, dim: int):
    """Rays and lineality basis of ``{x : a.x >= 0 for a in inequalities, e.x = 0}``.

    All vectors are integer tuples; rays are primitive and extreme, and are
    only determined modulo the returned lineality space.
    """
    lin = [tuple(v) for v in nullspace(list(equations), dim)] if equations else \
        [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    tight: list[frozenset[int]] = []

    for idx, a in enumerate(inequalities):
        lvals = [dot(a, l) for l in lin]
        piv = next((i for i, v in enumerate(lvals) if v), None)
        if piv is not None:
            l0 = lin.pop(piv)
            s = lvals.pop(piv)
            if s < 0:
                l0 = tuple(-x for x in l0)
                s = -s
            lin = [primitive([s * x - v * y for x, y in zip(l, l0)]) if v else l
                   for l, v in zip(lin, lvals)]
            new_rays = []
            for r in rays:
                v = dot(a, r)
                new_rays.append(primitive([s * x - v * y for x, y in zip(r, l0)]) if v else r)
            rays = new_rays + [l0]
            tight = [z | {idx} for z in tight] + [frozenset(range(idx))]
            continue

        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            tight = [z | {idx} if vals[i] == 0 else z for i, z in enumerate(tight)]
            continue
        new_rays, new_tight = [], []
        for i, r in enumerate(rays):
            if vals[i] > 0:
                new_rays.append(r)
                new_tight.append(tight[i])
            elif vals[i] == 0:
                new_rays.append(r)
                new_tight.append(tight[i] | {idx})
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if any(k != p and k != q and common <= tight[k] for k in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                new_rays.append(primitive([vp * x - vq * y for x, y in zip(rays[q], rays[p])]))
                new_tight.append(common | {idx})
        rays, tight = new_rays, new_tight

    return rays, lin


def facets(generators, lineality, dim: int):
    """Inequalities and equations of ``cone(generators) + span(lineality)``.

    Returns ``(normals, equations)``: the cone is ``{x : f.x >= 0, e.x = 0}``
    with one normal per facet.
    """
    return extreme_rays(generators, lineality, dim)
