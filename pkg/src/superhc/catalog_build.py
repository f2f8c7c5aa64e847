"""Generator for ``data/catalog.json``: pair rows with explicit involutions and Cartan subspaces.

Run ``python3 -m superhc.catalog_build`` to rewrite the shipped file.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from importlib import resources

from .liealg import SuperMatrix
from .polynomial import Polynomial
from .scalars import I, ONE, GaussianRational

MAX_DIM = 40
HALF = GaussianRational(Fraction(1, 2))


# naming -------------------------------------------------------------------------------
def _gl_factor(a: int, b: int) -> tuple[str, str, int, int] | None:
    if a == 0 and b == 0:
        return None
    slug = f"gl{a}{b}" if b else f"gl{a}"
    return slug, f"gl({a}|{b})" if b else f"gl({a})", b, a


def _osp_factor(r: int, odd: int) -> tuple[str, str, int, int] | None:
    """osp(r|odd) with odd = 2s; so(1) and the zero algebra are omitted."""
    if odd == 0:
        if r <= 1:
            return None
        return f"so{r}", f"so({r})", 0, r
    if r == 0:
        return f"sp{odd}", f"sp({odd})", odd, 0
    return f"osp{r}-{odd}", f"osp({r}|{odd})", odd, r


def _join(factors) -> tuple[str, str]:
    present = [f for f in factors if f is not None]
    present.sort(key=lambda f: (-f[2], -f[3]))
    return "x".join(f[0] for f in present), "×".join(f[1] for f in present)


def _poly(variables, factors) -> dict:
    """Product of linear factors given as (coefficients, constant)."""
    p = Polynomial.constant(variables, 1)
    for coeffs, const in factors:
        p = p * Polynomial.linear(variables, coeffs, const)
    return p.to_json()


# involution data ----------------------------------------------------------------------
def _swap_block(size: int, q: int, middle_sign: int) -> dict:
    """Permutation swapping k <-> size-1-k for k < q, and +-1 on the middle block."""
    entries = {}
    for k in range(size):
        if k < q:
            entries[(k, size - 1 - k)] = ONE
        elif k >= size - q:
            entries[(k, size - 1 - k)] = ONE
        else:
            entries[(k, k)] = ONE if middle_sign > 0 else -ONE
    return entries


def gl_block_pair(m: int, n: int, r: int, s: int) -> dict:
    """(gl(m|n), gl(r|s) x gl(m-r|n-s)) by conjugation with a signed involutive permutation."""
    qe, qo = min(r, m - r), min(s, n - s)
    entries = _swap_block(m, qe, 1 if r <= m - r else -1)
    for (i, j), v in _swap_block(n, qo, 1 if s <= n - s else -1).items():
        entries[(m + i, m + j)] = v
    s_mat = SuperMatrix(m, n, entries)
    a_basis, labels = [], []
    for i in range(qe):
        a_basis.append(SuperMatrix(m, n, {(i, i): HALF, (m - 1 - i, m - 1 - i): -HALF}))
    for j in range(qo):
        a_basis.append(SuperMatrix(m, n, {(m + j, m + j): HALF, (m + n - 1 - j, m + n - 1 - j): -HALF}))
    labels = [f"t{k+1}" for k in range(len(a_basis))]
    if len(labels) == 1:
        labels = ["t"]
    return {"kind": "conjugation", "matrix": s_mat, "a": a_basis, "labels": labels}


def osp_block_pair(m: int, n: int, r: int, s: int) -> dict:
    """(osp(m|2n), osp(r|2s) x osp(m-r|2n-2s)); the odd block is f_1..f_n, f'_1..f'_n."""
    qe, qo = min(r, m - r), min(s, n - s)
    entries = _swap_block(m, qe, 1 if 2 * r <= m else -1)
    odd_sign = 1 if 2 * s <= n else -1
    for j in range(n):
        if j < qo or j >= n - qo:
            partner = n - 1 - j
            entries[(m + j, m + partner)] = ONE
            entries[(m + n + j, m + n + partner)] = ONE
        else:
            entries[(m + j, m + j)] = ONE if odd_sign > 0 else -ONE
            entries[(m + n + j, m + n + j)] = ONE if odd_sign > 0 else -ONE
    s_mat = SuperMatrix(m, 2 * n, entries)
    a_basis = []
    for i in range(qe):
        a_basis.append(SuperMatrix(m, 2 * n, {(i, i): ONE, (m - 1 - i, m - 1 - i): -ONE}))
    for j in range(qo):
        k = n - 1 - j
        a_basis.append(SuperMatrix(m, 2 * n, {
            (m + j, m + j): HALF, (m + n + j, m + n + j): -HALF,
            (m + k, m + k): -HALF, (m + n + k, m + n + k): HALF}))
    labels = [f"t{k+1}" for k in range(len(a_basis))]
    if len(labels) == 1:
        labels = ["t"]
    return {"kind": "conjugation", "matrix": s_mat, "a": a_basis, "labels": labels}


def gl_osp_pair(m: int, n: int) -> dict:
    """(gl(m|2n), osp(m|2n)) via x -> -s^{-1} x^{st} s for the form s = I_m + symplectic."""
    entries = {(i, i): ONE for i in range(m)}
    for j in range(n):
        entries[(m + j, m + n + j)] = ONE
        entries[(m + n + j, m + j)] = -ONE
    s_mat = SuperMatrix(m, 2 * n, entries)
    a_basis = [SuperMatrix(m, 2 * n, {(i, i): ONE}) for i in range(m)]
    a_basis += [SuperMatrix(m, 2 * n, {(m + j, m + j): ONE, (m + n + j, m + n + j): ONE})
                for j in range(n)]
    labels = [f"t{k+1}" for k in range(len(a_basis))]
    return {"kind": "neg_supertranspose", "matrix": s_mat, "a": a_basis, "labels": labels}


def osp_gl_pair(m: int, n: int) -> dict:
    """(osp(2m|2n), gl(m|n)) via conjugation by a complex structure s with s^2 = -1."""
    size = 2 * m
    entries = {}
    centre = (m - 1) / 2 if m % 2 else None
    for i in range(m):
        if centre is not None and i == centre:
            entries[(i, i)] = I
            entries[(m + i, m + i)] = -I
            continue
        a_i = ONE if i < m / 2 else -ONE
        entries[(m + i, i)] = a_i          # e_i -> a_i e_{m+i}
        entries[(i, m + i)] = -a_i.inverse()  # e_{m+i} -> -1/a_i e_i
    for j in range(n):
        entries[(size + n + j, size + j)] = ONE   # f_j -> f'_j
        entries[(size + j, size + n + j)] = -ONE  # f'_j -> -f_j
    s_mat = SuperMatrix(size, 2 * n, entries)
    a_basis = []
    for i in range(m // 2):
        partner = m - 1 - i
        a_basis.append(SuperMatrix(size, 2 * n, {
            (i, i): ONE, (size - 1 - i, size - 1 - i): -ONE,
            (partner, partner): ONE, (size - 1 - partner, size - 1 - partner): -ONE}))
    for j in range(n):
        a_basis.append(SuperMatrix(size, 2 * n, {(size + j, size + j): ONE,
                                                 (size + n + j, size + n + j): -ONE}))
    labels = [f"t{k+1}" for k in range(len(a_basis))]
    if len(labels) == 1:
        labels = ["t"]
    return {"kind": "conjugation", "matrix": s_mat, "a": a_basis, "labels": labels}


# rows ---------------------------------------------------------------------------------
def _row(pair_id, family, g_label, k_label, algebra, params, data, **extra) -> dict:
    row = {
        "id": pair_id,
        "family": family,
        "g": g_label,
        "k": k_label,
        "algebra": algebra,
        "params": params,
        "realizable": True,
        "involution": {"kind": data["kind"], "matrix": data["matrix"].to_json()},
        "cartan_subspace": [a.to_json() for a in data["a"]],
        "a_labels": data["labels"],
        "positivity": None,
        "grs_automorphism": "",
        "iwasawa_table": "",
        "iwasawa_expected": None,
        "interlaced_expected": None,
        "special": False,
        "component": "",
        "reduces_to": None,
        "golden": {},
        "notes": "",
    }
    row.update(extra)
    return row


def gl_rows() -> list[dict]:
    rows, seen = [], set()
    for size in range(2, 7):
        for m in range(1, size):
            n = size - m
            if size * size > MAX_DIM:
                continue
            for r in range(m + 1):
                for s in range(n + 1):
                    if (r, s) in ((0, 0), (m, n)):
                        continue
                    slug, k_label = _join([_gl_factor(r, s), _gl_factor(m - r, n - s)])
                    pair_id = f"gl{m}-{n}.{slug}"
                    if pair_id in seen:
                        continue
                    seen.add(pair_id)
                    data = gl_block_pair(m, n, r, s)
                    iw = (m - 2 * r) * (n - 2 * s) >= 0
                    iw_prime = (m - 2 * r) * (n - 2 * s) <= 0
                    rows.append(_row(
                        pair_id, "gl/gl×gl", f"gl({m}|{n})", k_label,
                        {"family": "gl", "m": m, "n": n}, {"m": m, "n": n, "r": r, "s": s}, data,
                        grs_automorphism=f"e_i <-> e_(m+1-i) for i <= {min(r, m - r)}; "
                                         f"d_j <-> d_(n+1-j) for j <= {min(s, n - s)}",
                        iwasawa_table="iff (m-2r)(n-2s) >= 0",
                        iwasawa_expected=iw,
                        interlaced_expected=iw and iw_prime,
                        component=_gl_component(m, n, r, s)))
    return rows


def _gl_component(m, n, r, s) -> str:
    if min(s, n - s) > 0:
        return "delta component (odd block) of the torus"
    if min(r, m - r) > 0:
        return "epsilon component (even block) of the torus"
    return "none (a = 0)"


def gl_osp_rows() -> list[dict]:
    rows = []
    for n in range(1, 4):
        for m in range(1, 7):
            if (m + 2 * n) ** 2 > MAX_DIM:
                continue
            data = gl_osp_pair(m, n)
            rows.append(_row(
                f"gl{m}-{2*n}.osp{m}-{2*n}", "gl/osp", f"gl({m}|{2*n})", f"osp({m}|{2*n})",
                {"family": "gl", "m": m, "n": 2 * n}, {"m": m, "n": n}, data,
                grs_automorphism="e_i <-> -e_i; d_i <-> -d_(2n+1-i)",
                iwasawa_table="yes", iwasawa_expected=True, interlaced_expected=True,
                special=True, component="Z-grading element (central in g_0)"))
    return rows


def osp_rows() -> list[dict]:
    rows, seen = [], set()
    for m in range(1, 9):
        for n in range(1, 5):
            dim = m * (m - 1) // 2 + n * (2 * n + 1) + 2 * m * n
            if dim > MAX_DIM:
                continue
            for r in range(m + 1):
                for s in range(n + 1):
                    if (r, s) in ((0, 0), (m, n)):
                        continue
                    slug, k_label = _join([_osp_factor(r, 2 * s), _osp_factor(m - r, 2 * n - 2 * s)])
                    pair_id = f"osp{m}-{2*n}.{slug}"
                    if pair_id in seen:
                        continue
                    seen.add(pair_id)
                    data = osp_block_pair(m, n, r, s)
                    iw = (m - 2 * r) * (n - 2 * s) >= 0
                    iw_prime = (m - 2 * r) * (n - 2 * s) <= 0
                    special = m == 2 and r == 1
                    rows.append(_row(
                        pair_id, "osp/osp×osp", f"osp({m}|{2*n})", k_label,
                        {"family": "osp", "m": m, "n": 2 * n}, {"m": m, "n": n, "r": r, "s": s}, data,
                        grs_automorphism=f"e_i <-> -e_i for i <= {min(r, m - r)}; "
                                         f"d_i <-> d_(n+1-i) for i <= {min(s, n - s)}",
                        iwasawa_table="iff (m-2r)(n-2s) >= 0",
                        iwasawa_expected=iw,
                        interlaced_expected=iw and iw_prime,
                        special=special,
                        component=("Z-grading element (central in g_0)" if special
                                   else _osp_component(m, n, r, s))))
    return rows


def _osp_component(m, n, r, s) -> str:
    if min(s, n - s) > 0:
        return "delta component (symplectic block) of the torus"
    if min(r, m - r) > 0:
        return "epsilon component (orthogonal block) of the torus"
    return "none (a = 0)"


def osp_gl_rows() -> list[dict]:
    rows = []
    for m in range(1, 5):
        for n in range(1, 5):
            dim = 2 * m * (2 * m - 1) // 2 + n * (2 * n + 1) + 4 * m * n
            if dim > MAX_DIM:
                continue
            data = osp_gl_pair(m, n)
            rows.append(_row(
                f"osp{2*m}-{2*n}.gl{m}{n}", "osp/gl", f"osp({2*m}|{2*n})", f"gl({m}|{n})",
                {"family": "osp", "m": 2 * m, "n": 2 * n}, {"m": m, "n": n}, data,
                grs_automorphism="d_i <-> -d_i; e_i <-> -e_(m+1-i)",
                iwasawa_table="yes", iwasawa_expected=True, interlaced_expected=True,
                component="delta component of the torus"))
    return rows


def exceptional_rows() -> list[dict]:
    def row(pair_id, g, k, grs, iw, dim):
        return {
            "id": pair_id, "family": "exceptional", "g": g, "k": k,
            "algebra": {"family": "exceptional", "m": 0, "n": 0, "dim": dim},
            "params": {}, "realizable": False, "involution": None,
            "cartan_subspace": [], "a_labels": [], "positivity": None,
            "grs_automorphism": grs, "iwasawa_table": "yes" if iw else "no",
            "iwasawa_expected": iw, "interlaced_expected": None, "special": False,
            "component": "", "reduces_to": None, "golden": {},
            "notes": "no matrix realization; metadata only",
        }

    return [
        row("d12a.osp2-2xso2", "d(1,2;α)", "osp(2|2)×so(2)", "e <-> -e, d <-> -d", True, 17),
        row("ab13.gosp2-4", "ab(1|3)", "gosp(2|4)", "e1 <-> -e1, d <-> -d", True, 40),
        row("ab13.sl14", "ab(1|3)", "sl(1|4)", "e1 <-> -e1, e2 <-> -e2, d <-> -d", True, 40),
        row("ab13.d122", "ab(1|3)", "d(1,2;2)", "e_i <-> -e_i for all i", True, 40),
        row("g12.d123", "g(1|2)", "d(1,2;3)", "e_i <-> -e_i for all i", True, 31),
        row("g12.osp3-2xsl2", "g(1|2)", "osp(3|2)×sl(2)", "e_i <-> -e_i for all i", False, 31),
    ]


# golden targets -----------------------------------------------------------------------
def _rank_one(ghost_factors, casimir_factors, normalization) -> dict:
    return {
        "ghost": _poly(["t"], [([1], c) for c in ghost_factors]),
        "casimir": _poly(["t"], [([1], c) for c in casimir_factors]),
        "normalization": normalization,
    }


GOLDEN = {
    "gl2-1.gl11xgl1": _rank_one([0], [0, 0], "(e1-e2)(t) = 1"),
    "gl2-2.gl12xgl1": _rank_one([0, -1], [0, -1], "(e1-e2)(t) = 1"),
    "gl3-1.gl21xgl1": _rank_one([0], [0, 1], "(e1-e3)(t) = 1"),
    "osp2-2.osp1-2": _rank_one([-1], [0, -2], "e1(t) = 1"),
    "osp2-4.osp1-4": _rank_one([-1, -3], [0, -4], "e1(t) = 1"),
    "osp3-2.osp2-2": _rank_one([-1], [0, -1], "e1(t) = 1"),
    "osp2-4.osp2-2xsp2": _rank_one([1, 0], [0, 1], "(d1-d2)(t) = 1"),
    "osp1-4.osp1-2xsp2": _rank_one([1], [0, 2], "(d1-d2)(t) = 1"),
    "gl4-1.gl21xgl2": {
        "ghost": _poly(["t1", "t2"], [([1, 0], 1), ([0, 1], 0)]),
        "normalization": "(e1-e4)(t1) = 1, (e2-e3)(t2) = 1",
    },
}

REDUCTIONS = {
    "osp3-2.osp2-2": "osp2-2.osp1-2",
    "gl3-1.gl21xgl1": "gl2-1.gl11xgl1",
}


def generate() -> dict:
    rows = gl_rows() + gl_osp_rows() + osp_rows() + osp_gl_rows() + exceptional_rows()
    for row in rows:
        if row["id"] in GOLDEN:
            row["golden"] = GOLDEN[row["id"]]
        if row["id"] in REDUCTIONS:
            row["reduces_to"] = REDUCTIONS[row["id"]]
    return {"version": 1, "pairs": rows}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    target = argv[0] if argv else str(resources.files("superhc") / "data" / "catalog.json")
    with open(target, "w", encoding="utf-8") as fh:
        json.dump(generate(), fh, indent=1, ensure_ascii=False)
        fh.write("\n")
    print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
