"""Bounded brute-force enumeration of operator families and tensor families.

Candidates are enumerated in a fixed order (itertools.product over the
coefficient list, entries in row-major order, alpha outermost), filtered by
the defining identity, and every hit is re-checked by its module validator.
"""

import itertools

import numpy as np

from . import algebra as alg
from .exact_linalg import exact_array, scalar
from .families import (OperatorFamily, check_derivation_family, check_nijenhuis_family,
                       check_reynolds_family, check_rota_baxter_family, check_twisted_o_family)
from .yang_baxter import (TensorFamily, check_aybe, check_aybf_type1, check_aybf_type2,
                          is_skew_symmetric, o_family_from_aybf2, rb_family_from_aybf1)

DEFAULT_BOUND = 200_000


class SearchBoundExceeded(ValueError):
    pass


TARGETS = ("rb", "o", "twisted_o", "nijenhuis", "reynolds", "derivation",
           "aybf1", "aybf2", "aybf2_skew", "aybe")


def _candidates(s, rows, cols, coeffs, bound, skew=False):
    coeffs = [scalar(c) for c in coeffs]
    if skew:
        free = [(i, j) for i in range(rows) for j in range(cols) if i < j]
    else:
        free = [(i, j) for i in range(rows) for j in range(cols)]
    total = len(coeffs) ** (len(free) * s.size)
    if total > bound:
        raise SearchBoundExceeded(f"search space has {total} candidates, bound is {bound}")
    for vals in itertools.product(coeffs, repeat=len(free) * s.size):
        arr = np.zeros((s.size, rows, cols), dtype=object)
        k = 0
        for al in range(s.size):
            for (i, j) in free:
                arr[al, i, j] = vals[k]
                if skew:
                    arr[al, j, i] = -vals[k]
                k += 1
        yield arr


def _checker(target, a, m, h):
    if target == "rb":
        return lambda t: check_rota_baxter_family(t, a), a.dim, a.dim
    if target == "o":
        return lambda t: check_twisted_o_family(t, a, m), a.dim, m.module_dim
    if target == "twisted_o":
        return lambda t: check_twisted_o_family(t, a, m, h), a.dim, m.module_dim
    if target == "nijenhuis":
        return lambda t: check_nijenhuis_family(t, a), a.dim, a.dim
    if target == "reynolds":
        return lambda t: check_reynolds_family(t, a), a.dim, a.dim
    if target == "derivation":
        m = m or alg.adjoint_bimodule(a)
        return lambda t: check_derivation_family(t, a, m), m.module_dim, a.dim
    raise ValueError(f"unknown operator target {target!r}")


def search(target, a, s, coeffs, max_results=None, m=None, h=None, bound=DEFAULT_BOUND):
    """All hits (up to max_results) for the given target, in enumeration order.

    Each hit is a dict with the found object and the revalidation verdicts.
    """
    hits = []
    if target in ("aybf1", "aybf2", "aybf2_skew", "aybe"):
        if target == "aybe":
            from .semigroup import trivial
            s = trivial()
        check = check_aybf_type1 if target in ("aybf1", "aybe") else check_aybf_type2
        for arr in _candidates(s, a.dim, a.dim, coeffs, bound, skew=(target == "aybf2_skew")):
            rf = TensorFamily(s, arr)
            if not check(rf, a).ok:
                continue
            hit = {"object": rf, "revalidated": check(rf, a).ok}
            if target == "aybe":
                hit["revalidated"] = check_aybe(arr[0], a).ok
            if target in ("aybf1", "aybe"):
                hit["induced_ok"] = check_rota_baxter_family(rb_family_from_aybf1(rf, a), a).ok
            elif is_skew_symmetric(rf):
                t = o_family_from_aybf2(rf, a)
                hit["induced_ok"] = check_twisted_o_family(t, a, alg.coadjoint_bimodule(a)).ok
            hits.append(hit)
            if max_results is not None and len(hits) >= max_results:
                break
        return hits
    check, rows, cols = _checker(target, a, m, h)
    for arr in _candidates(s, rows, cols, coeffs, bound):
        t = OperatorFamily(s, arr)
        if check(t).ok:
            hits.append({"object": t, "revalidated": check(OperatorFamily(s, exact_array(arr))).ok})
            if max_results is not None and len(hits) >= max_results:
                break
    return hits
