"""Matrix realizations of gl(m|n) and osp(m|2n), their bracket, form and roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .linalg import EchelonBasis, add_scaled, solve_square
from .scalars import ONE, ZERO, GaussianRational, gq

__all__ = [
    "SuperMatrix",
    "Superalgebra",
    "Root",
    "RootDatum",
    "DimensionError",
    "HomogeneityError",
    "build_gl",
    "build_osp",
    "bracket",
    "supertrace_form",
    "root_decomposition",
]


class DimensionError(ValueError):
    pass


class HomogeneityError(ValueError):
    pass


class SuperMatrix:
    """A square super matrix with sparse Gaussian-rational entries.

    Indices below ``m`` are even, the remaining ``n`` are odd; the parity of
    entry (i, j) is the sum of the parities of i and j.
    """

    __slots__ = ("m", "n", "entries", "_key")

    def __init__(self, m: int, n: int, entries: dict | None = None):
        self.m = m
        self.n = n
        size = m + n
        clean = {}
        for (i, j), value in (entries or {}).items():
            if not (0 <= i < size and 0 <= j < size):
                raise DimensionError(f"entry ({i},{j}) outside a {size}x{size} matrix")
            value = GaussianRational.coerce(value)
            if value:
                clean[(i, j)] = value
        self.entries = clean
        self._key = None

    # construction --------------------------------------------------------------
    @classmethod
    def unit(cls, m: int, n: int, i: int, j: int) -> "SuperMatrix":
        return cls(m, n, {(i, j): ONE})

    @classmethod
    def diagonal(cls, m: int, n: int, values) -> "SuperMatrix":
        return cls(m, n, {(k, k): v for k, v in enumerate(values)})

    @classmethod
    def zero(cls, m: int, n: int) -> "SuperMatrix":
        return cls(m, n)

    @classmethod
    def from_rows(cls, m: int, n: int, rows) -> "SuperMatrix":
        return cls(m, n, {(i, j): gq(v) if isinstance(v, str) else v
                          for i, row in enumerate(rows) for j, v in enumerate(row)})

    # basic properties ----------------------------------------------------------
    @property
    def size(self) -> int:
        return self.m + self.n

    def index_parity(self, k: int) -> int:
        return 0 if k < self.m else 1

    def entry_parity(self, i: int, j: int) -> int:
        return self.index_parity(i) ^ self.index_parity(j)

    @property
    def parity(self) -> int | None:
        """0 or 1 for homogeneous nonzero matrices, 0 for zero, None if mixed."""
        parities = {self.entry_parity(i, j) for (i, j) in self.entries}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def is_homogeneous(self) -> bool:
        return self.parity is not None

    def is_zero(self) -> bool:
        return not self.entries

    def is_diagonal(self) -> bool:
        return all(i == j for (i, j) in self.entries)

    def __getitem__(self, key) -> GaussianRational:
        return self.entries.get(key, ZERO)

    def _check(self, other: "SuperMatrix"):
        if not isinstance(other, SuperMatrix):
            raise TypeError(f"expected SuperMatrix, got {type(other).__name__}")
        if (self.m, self.n) != (other.m, other.n):
            raise DimensionError(f"gl({self.m}|{self.n}) vs gl({other.m}|{other.n})")

    # linear structure ----------------------------------------------------------
    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        out = dict(self.entries)
        add_scaled(out, other.entries, ONE)
        return _raw(self.m, self.n, out)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        out = dict(self.entries)
        add_scaled(out, other.entries, -ONE)
        return _raw(self.m, self.n, out)

    def __neg__(self) -> "SuperMatrix":
        return _raw(self.m, self.n, {k: -v for k, v in self.entries.items()})

    def scale(self, scalar) -> "SuperMatrix":
        scalar = GaussianRational.coerce(scalar)
        if not scalar:
            return SuperMatrix.zero(self.m, self.n)
        return _raw(self.m, self.n, {k: v * scalar for k, v in self.entries.items()})

    def __rmul__(self, scalar) -> "SuperMatrix":
        return self.scale(scalar)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                new = out.get((i, j), ZERO) + a * b
                if new:
                    out[(i, j)] = new
                else:
                    out.pop((i, j))
        return _raw(self.m, self.n, out)

    def supertranspose(self) -> "SuperMatrix":
        """[[A, B], [C, D]] -> [[A^t, C^t], [-B^t, D^t]]."""
        m = self.m
        out = {}
        for (i, j), v in self.entries.items():
            # entry (i, j) moves to (j, i); it is negated when it sat in block B
            out[(j, i)] = -v if (i < m <= j) else v
        return _raw(self.m, self.n, out)

    def supertrace(self) -> GaussianRational:
        total = ZERO
        for (i, j), v in self.entries.items():
            if i == j:
                total = total + v if i < self.m else total - v
        return total

    def inverse_monomial(self) -> "SuperMatrix":
        """Inverse of a matrix with exactly one nonzero entry per row and column."""
        out = {}
        rows = set()
        for (i, j), v in self.entries.items():
            if i in rows:
                raise ValueError("not a monomial matrix")
            rows.add(i)
            out[(j, i)] = v.inverse()
        if len(rows) != self.size or len(out) != self.size:
            raise ValueError("not an invertible monomial matrix")
        return _raw(self.m, self.n, out)

    # comparison / hashing --------------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (self.m, self.n, frozenset(self.entries.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, SuperMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        body = ", ".join(f"({i+1},{j+1}):{v}" for (i, j), v in sorted(self.entries.items()))
        return f"SuperMatrix({self.m}|{self.n}; {body})"

    def rows(self) -> list[list[GaussianRational]]:
        return [[self[(i, j)] for j in range(self.size)] for i in range(self.size)]

    # serialization ---------------------------------------------------------------
    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n,
                "entries": [[v.to_json() for v in row] for row in self.rows()]}

    @classmethod
    def from_json(cls, data: dict) -> "SuperMatrix":
        m, n = int(data["m"]), int(data["n"])
        rows = data["entries"]
        if len(rows) != m + n or any(len(r) != m + n for r in rows):
            raise DimensionError("entries do not form an (m+n)x(m+n) array")
        return cls(m, n, {(i, j): GaussianRational.parse(v)
                          for i, row in enumerate(rows) for j, v in enumerate(row)})


def _raw(m: int, n: int, entries: dict) -> SuperMatrix:
    obj = SuperMatrix.__new__(SuperMatrix)
    obj.m, obj.n, obj.entries, obj._key = m, n, entries, None
    return obj


def bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """Supercommutator xy - (-1)^{|x||y|} yx of homogeneous matrices."""
    x._check(y)
    px, py = x.parity, y.parity
    if px is None or py is None:
        raise HomogeneityError("bracket needs homogeneous arguments")
    xy, yx = x @ y, y @ x
    return xy + yx if (px and py) else xy - yx


def supertrace_form(x: SuperMatrix, y: SuperMatrix) -> GaussianRational:
    """The invariant form str(xy)."""
    x._check(y)
    m = x.m
    total = ZERO
    by_row: dict[int, list] = {}
    for (j, i), v in y.entries.items():
        by_row.setdefault(j, []).append((i, v))
    for (i, j), a in x.entries.items():
        for k, b in by_row.get(j, ()):
            if k == i:
                total = total + a * b if i < m else total - a * b
    return total


# --------------------------------------------------------------------------------
# algebras


@dataclass(frozen=True)
class Root:
    weight: tuple  # coordinates on the epsilon/delta basis
    parity: int
    isotropic: bool
    basis_indices: tuple  # indices of the algebra basis spanning the root space


@dataclass
class RootDatum:
    weight_names: list
    roots: list
    cartan_indices: list

    def by_weight(self) -> dict:
        return {r.weight: r for r in self.roots}

    @property
    def even(self) -> list:
        return [r for r in self.roots if r.parity == 0]

    @property
    def odd(self) -> list:
        return [r for r in self.roots if r.parity == 1]


@dataclass(eq=False)
class Superalgebra:
    """A matrix Lie superalgebra with an ordered homogeneous basis.

    ``n`` is the size of the odd block, so osp(m|2n) has ``n == 2 * rank_sp``.
    ``weights[k]`` is the epsilon/delta weight of the k-th standard basis vector.
    """

    family: str
    m: int
    n: int
    basis: list
    labels: list
    cartan: list
    weights: list
    weight_names: list
    form_matrix: SuperMatrix | None = None
    name: str = ""
    _span: EchelonBasis = field(default=None, repr=False)

    def __post_init__(self):
        span = EchelonBasis()
        for idx, b in enumerate(self.basis):
            if not span.add(b.entries, label=idx):
                raise ValueError(f"basis of {self.name} is linearly dependent")
        self._span = span

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.m + self.n

    def parity(self, idx: int) -> int:
        return self.basis[idx].parity

    def coordinates(self, x: SuperMatrix) -> dict:
        """Coordinates of ``x`` on the algebra basis; raises if ``x`` is outside."""
        coords = self._span.coordinates(x.entries)
        if coords is None:
            raise ValueError(f"matrix does not lie in {self.name}")
        return coords

    def contains(self, x: SuperMatrix) -> bool:
        return (x.m, x.n) == (self.m, self.n) and self._span.contains(x.entries)

    def combination(self, coords: dict) -> SuperMatrix:
        out: dict = {}
        for idx, c in coords.items():
            add_scaled(out, self.basis[idx].entries, c)
        return _raw(self.m, self.n, out)

    def entry_weight(self, i: int, j: int) -> tuple:
        return tuple(a - b for a, b in zip(self.weights[i], self.weights[j]))

    def weight_of(self, x: SuperMatrix) -> tuple | None:
        """Common ad(h)-weight of a matrix supported on matrix units, or None if mixed."""
        found = {self.entry_weight(i, j) for (i, j) in x.entries}
        return found.pop() if len(found) == 1 else None

    @cached_property
    def gram(self) -> list:
        return [[supertrace_form(x, y) for y in self.basis] for x in self.basis]

    @cached_property
    def dual_basis(self) -> list:
        """Elements x^i with (x_j, x^i) = delta_ij."""
        inv = solve_square(self.gram)
        # (x_j, sum_k c_k x_k) = sum_k gram[j][k] c_k = delta_ij  =>  c = inv[:, i]
        return [self.combination({k: inv[k][i] for k in range(self.dim) if inv[k][i]})
                for i in range(self.dim)]

    @cached_property
    def weight_form(self) -> list:
        """Gram matrix of the form induced on h* in epsilon/delta coordinates."""
        return _weight_form(self)

    def pair_weights(self, alpha, beta) -> GaussianRational:
        form = self.weight_form
        total = ZERO
        for a, row in zip(alpha, form):
            for b, f in zip(beta, row):
                if a and b and f:
                    total = total + f * a * b
        return total

    def cartan_element(self, symbol: str) -> SuperMatrix:
        """Diagonal element attached to a weight symbol like 'e1' or 'd2'."""
        if symbol not in self.weight_names:
            raise KeyError(f"unknown weight symbol {symbol!r}")
        pos = self.weight_names.index(symbol)
        entries = {(k, k): gq(w[pos]) for k, w in enumerate(self.weights) if w[pos]}
        return SuperMatrix(self.m, self.n, entries)


def _weight_form(alg: Superalgebra) -> list:
    # Cartan elements H_symbol with eps_a(H_b) = delta_ab; the induced form on h*
    # is the inverse of the Gram matrix of these elements.
    elems = [alg.cartan_element(s) for s in alg.weight_names]
    gram = [[supertrace_form(a, b) for b in elems] for a in elems]
    return solve_square(gram)


def _sorted_algebra(family, m, n, root_vectors, cartan_vectors, weights, names, form=None, name=""):
    def root_key(item):
        weight, _ = item
        return tuple(gq(w).re for w in weight)

    ordered = sorted(root_vectors, key=root_key)
    basis = [mat for _, mat in ordered] + cartan_vectors
    labels = [f"x[{_weight_label(w, names)}]" for w, _ in ordered]
    labels += [f"h{k+1}" for k in range(len(cartan_vectors))]
    cartan = list(range(len(ordered), len(basis)))
    return Superalgebra(family, m, n, basis, labels, cartan, weights, names, form, name)


def _weight_label(weight, names) -> str:
    parts = []
    for c, nm in zip(weight, names):
        if not c:
            continue
        mag = abs(c)
        coef = "" if mag == 1 else str(mag)
        sign = "-" if c < 0 else "+"
        parts.append(f"{sign}{coef}{nm}")
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def build_gl(m: int, n: int) -> Superalgebra:
    """gl(m|n) with the matrix-unit basis and the diagonal Cartan subalgebra."""
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 0:
        raise DimensionError(f"invalid dimensions gl({m}|{n})")
    size = m + n
    names = [f"e{i+1}" for i in range(m)] + [f"d{j+1}" for j in range(n)]
    weights = [tuple(1 if k == i else 0 for k in range(size)) for i in range(size)]
    roots, cartan = [], []
    for i in range(size):
        for j in range(size):
            unit = SuperMatrix.unit(m, n, i, j)
            if i == j:
                cartan.append(unit)
            else:
                w = tuple(a - b for a, b in zip(weights[i], weights[j]))
                roots.append((w, unit))
    alg = _sorted_algebra("gl", m, n, roots, cartan, weights, names, name=f"gl({m}|{n})")
    alg.labels = [_gl_label(b) for b in alg.basis]
    return alg


def _gl_label(b: SuperMatrix) -> str:
    (i, j), = b.entries
    return f"E({i+1},{j+1})"


def osp_form_matrix(m: int, n: int) -> SuperMatrix:
    """Antidiagonal split form on the even part, standard symplectic form on the odd part."""
    entries = {(i, m - 1 - i): ONE for i in range(m)}
    for j in range(n):
        entries[(m + j, m + n + j)] = ONE
        entries[(m + n + j, m + j)] = -ONE
    return SuperMatrix(m, 2 * n, entries)


def osp_projector(form: SuperMatrix):
    """The involution x -> -J^{-1} x^{st} J whose fixed points form osp(J)."""
    inverse = form.inverse_monomial()

    def sigma(x: SuperMatrix) -> SuperMatrix:
        return -(inverse @ x.supertranspose() @ form)

    return sigma


def build_osp(m: int, n: int) -> Superalgebra:
    """osp(m|2n) preserving the form of :func:`osp_form_matrix`."""
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 1:
        raise DimensionError(f"invalid dimensions osp({m}|{2*n})")
    form = osp_form_matrix(m, n)
    sigma = osp_projector(form)
    half = m // 2
    names = [f"e{i+1}" for i in range(half)] + [f"d{j+1}" for j in range(n)]
    rank = half + n
    weights = []
    for k in range(m):
        w = [0] * rank
        if k < half:
            w[k] = 1
        elif m - 1 - k < half:
            w[m - 1 - k] = -1
        weights.append(tuple(w))
    for sign in (1, -1):
        for j in range(n):
            w = [0] * rank
            w[half + j] = sign
            weights.append(tuple(w))
    size = m + 2 * n
    seen = EchelonBasis()
    roots, cartan = [], []
    for i in range(size):
        for j in range(size):
            unit = SuperMatrix.unit(m, 2 * n, i, j)
            vec = unit + sigma(unit)
            if vec.is_zero() or not seen.add(vec.entries):
                continue
            lead = vec.entries[min(vec.entries)]
            vec = vec.scale(lead.inverse())
            w = tuple(a - b for a, b in zip(weights[i], weights[j]))
            if any(w):
                roots.append((w, vec))
            else:
                cartan.append(vec)
    return _sorted_algebra("osp", m, 2 * n, roots, cartan, weights, names, form,
                           name=f"osp({m}|{2*n})")


def root_decomposition(alg: Superalgebra) -> RootDatum:
    """Group the non-Cartan basis vectors by their ad(h)-weight."""
    cartan = set(alg.cartan)
    for idx in alg.cartan:
        if not alg.basis[idx].is_diagonal():
            raise ValueError("root decomposition needs a diagonal Cartan subalgebra")
    groups: dict[tuple, list] = {}
    for idx, b in enumerate(alg.basis):
        if idx in cartan:
            continue
        w = alg.weight_of(b)
        if w is None or not any(w):
            raise ValueError(f"basis vector {alg.labels[idx]} is not a root vector")
        groups.setdefault(w, []).append(idx)
    roots = []
    for w, idxs in groups.items():
        parities = {alg.parity(i) for i in idxs}
        if len(parities) != 1:
            raise ValueError(f"root space {w} mixes parities")
        parity = parities.pop()
        roots.append(Root(w, parity, not alg.pair_weights(w, w), tuple(idxs)))
    return RootDatum(list(alg.weight_names), roots, list(alg.cartan))
