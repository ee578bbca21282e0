"""The verification suite for b_n: every check produces a JSON-ready record."""

from __future__ import annotations

import os
from dataclasses import dataclass
from dataclasses import field as dc_field
from math import comb

from wittkit.koszul.complexes import GradedComplex, cone, restrict
from wittkit.koszul.contraction import ContractionError, contraction_null_homotopy, fiber_homology_at_origin
from wittkit.koszul.forms import adjoint, b_complex, is_form_chain_map, is_symmetric
from wittkit.koszul.homology import graded_homology_range
from wittkit.koszul.poly import field_from_name


@dataclass
class Record:
    check: str
    n: int
    result: bool
    degree_range: list | None = None
    field: str | None = None
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.check, "n": self.n, "degree_range": self.degree_range, "result": self.result}
        if self.field:
            out["field"] = self.field
        if self.detail:
            out["detail"] = self.detail
        return out


def default_bound(n: int) -> int:
    return 3 * n + 2


def lowest_degree(c: GradedComplex) -> int:
    """Below this graded degree every slice is zero."""
    return -max(t for ts in c.objects.values() for t in ts)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("WITTKIT_THREADS", "1")))
    except ValueError:
        return 1


def nonzero_slices(c: GradedComplex, lo: int, hi: int) -> dict:
    """``{d: homology}`` for the graded degrees in ``[lo, hi]`` with nonzero homology."""
    table = graded_homology_range(c, range(lo, hi + 1), workers=_threads())
    return {d: {k: v for k, v in h.items() if v} for d, h in table.items() if any(h.values())}


def _single_point_class(bad: dict) -> bool:
    """True when the homology is one copy of the base field in a single slice."""
    return len(bad) == 1 and sum(next(iter(bad.values())).values()) == 1


def verify_b(n: int, bound: int | None = None, fields=("Q", "Fp")) -> list[Record]:
    """Run every check on b_n; graded checks cover all degrees up to ``bound``."""
    bound = default_bound(n) if bound is None else bound
    out = []
    tables = {}
    for name in fields:
        fld = field_from_name(name)
        b = b_complex(n, fld)
        c = b.complex
        fname = fld.name
        out.append(Record("d_squared_zero", n, c.d_squared_zero(), field=fname))
        out.append(Record("ranks_binomial", n, list(c.ranks().values()) == [comb(n, j) for j in c.degrees],
                          field=fname, detail={"ranks": {str(k): v for k, v in c.ranks().items()}}))
        out.append(Record("euler_characteristic_zero" if n else "euler_characteristic_one", n,
                          c.euler_characteristic() == (0 if n else 1), field=fname))
        out.append(Record("symmetric", n, is_symmetric(b), field=fname))
        out.append(Record("form_chain_map", n, is_form_chain_map(b), field=fname))
        adj = adjoint(b)
        out.append(Record("adjoint_chain_map", n, adj.is_chain_map(), field=fname))
        if n == 0:
            continue
        co = cone(adj)
        lo = lowest_degree(co)
        bad = nonzero_slices(co, lo, bound)
        tables[("cone", fname)] = bad
        out.append(Record("cone_acyclic", n, not bad, [lo, bound], fname,
                          {"nonzero": {str(d): {str(k): v for k, v in h.items()} for d, h in bad.items()}}))
        out.append(Record("cone_homology_is_point_class", n, _single_point_class(bad), [lo, bound], fname))
        r0 = restrict(c, 0, 0)
        lo0 = lowest_degree(r0)
        bad0 = nonzero_slices(r0, lo0, bound)
        tables[("restrict", fname)] = bad0
        out.append(Record("restrict_T0_zero_acyclic", n, not bad0, [lo0, bound], fname,
                          {"nonzero": {str(d): {str(k): v for k, v in h.items()} for d, h in bad0.items()}}))
        out.append(Record("restrict_T0_zero_homology_is_point_class", n, _single_point_class(bad0),
                          [lo0, bound], fname))
        for j in range(1, n + 1):
            try:
                contraction_null_homotopy(restrict(c, j, 1), j)
                ok = True
            except ContractionError:
                ok = False
            out.append(Record(f"contraction_T{j}_one", n, ok, field=fname))
        r1 = restrict(c, 0, 1)
        try:
            contraction_null_homotopy(r1)
            failed = False
        except ContractionError:
            failed = True
        fibre = fiber_homology_at_origin(r1)
        out.append(Record("contraction_T0_one_fails", n, failed and any(fibre.values()), field=fname,
                          detail={"fibre_homology": {str(k): v for k, v in fibre.items()}}))
    if n and len(fields) > 1:
        names = [field_from_name(f).name for f in fields]
        agree = all(tables[(kind, names[0])] == tables[(kind, other)]
                    for kind in ("cone", "restrict") for other in names[1:])
        out.append(Record("fields_agree", n, agree, [None, bound], ",".join(names)))
    return out


def report(n: int, bound: int | None = None, fields=("Q", "Fp")) -> dict:
    records = verify_b(n, bound, fields)
    return {"n": n, "bound": default_bound(n) if bound is None else bound,
            "checks": [r.to_json() for r in records], "all_passed": all(r.result for r in records)}

