"""Two realizations of a presented finite ribbon category.

* ``HopfCategory``: finite-dimensional modules over a ribbon Hopf algebra
  given by structure constants, with a roster of named modules.  Objects
  carry explicit action matrices, morphisms are exact matrices, and the
  braiding/twist come from the R-matrix and the ribbon element.
* ``FusionCategory``: skeletal ribbon fusion data (simple names, fusion
  multiplicities, dual involution, twist scalars).  This backend is
  numerical only: dimensions, the fusion ring and twist scalars, but no
  morphism matrices.

Structure constant conventions (also the JSON file format):
``mult[i][j][k]`` is the coefficient of ``b_k`` in ``b_i * b_j``;
``comult[i][j][k]`` the coefficient of ``b_j (x) b_k`` in ``Delta(b_i)``;
``antipode[i][j]`` the coefficient of ``b_j`` in ``S(b_i)``;
``r_matrix[i][j]`` the coefficient of ``b_i (x) b_j``.
Module actions are lists, per algebra basis element, of dim x dim matrices.

The twist is the action of the *inverse* ribbon element; the convention is
covariant through every identity checked by the validator and move suite.
"""

import itertools
import os
import random
import warnings

from .errors import (
    AxiomError,
    BackendMismatch,
    DimensionCapExceeded,
    NonProjectiveLabel,
    SchemaError,
    UnsupportedForBackend,
)
from .linalg import Field, Matrix, Scalar, solve_sylvester_family, unvec

DEFAULT_MAX_DIM = 4096


def max_tensor_dim():
    return int(os.environ.get("SKEINLAB_MAX_DIM", DEFAULT_MAX_DIM))


# ---------------------------------------------------------------------------
# validation report


class ValidationReport:
    """Axiom-by-axiom pass/fail listing; warnings do not fail the report."""

    def __init__(self):
        self.entries = []

    def add(self, axiom, ok, detail="", severity="error"):
        self.entries.append({"axiom": axiom, "ok": bool(ok),
                             "detail": detail, "severity": severity})

    @property
    def ok(self):
        return all(e["ok"] or e["severity"] == "warning" for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e["ok"] and e["severity"] == "error"]

    def warnings(self):
        return [e for e in self.entries if not e["ok"] and e["severity"] == "warning"]

    def to_json(self):
        return {"ok": self.ok, "checks": self.entries}


# ---------------------------------------------------------------------------
# morphisms and objects


class Mor:
    """A morphism: typed matrix in the domain/codomain distinguished bases.

    ``matrix`` is codomain-dim x domain-dim; it is None for the formal
    morphisms of the fusion backend.
    """

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain, codomain, matrix):
        if matrix is not None:
            assert matrix.rows == codomain.dim and matrix.cols == domain.dim
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    def __matmul__(self, other):
        assert self.domain.dim == other.codomain.dim
        return Mor(other.domain, self.codomain, self.matrix @ other.matrix)

    def __add__(self, other):
        return Mor(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other):
        return Mor(self.domain, self.codomain, self.matrix - other.matrix)

    def __mul__(self, scalar):
        return Mor(self.domain, self.codomain, self.matrix * scalar)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        return self.matrix == other.matrix

    def is_zero(self):
        return self.matrix.is_zero()

    def __repr__(self):
        return f"Mor({self.domain.name} -> {self.codomain.name})"


class Obj:
    """A Hopf-backend object: module dimension plus one action matrix per
    algebra basis element."""

    __slots__ = ("cat", "name", "dim", "action", "flags")

    def __init__(self, cat, name, dim, action, flags=frozenset()):
        self.cat = cat
        self.name = name
        self.dim = dim
        self.action = tuple(action)
        self.flags = frozenset(flags)

    @property
    def is_unit(self):
        if self.dim != 1:
            return False
        return all(m[0, 0] == e for m, e in zip(self.action, self.cat.data.counit))

    def act(self, vec):
        """Action matrix of the algebra element with coefficient vector vec."""
        f = self.cat.field
        out = Matrix.zeros(f, self.dim, self.dim)
        for c, m in zip(vec, self.action):
            if not c.is_zero():
                out = out + m * c
        return out

    def identity(self):
        return Mor(self, self, Matrix.identity(self.cat.field, self.dim))

    def __eq__(self, other):
        if not isinstance(other, Obj):
            return NotImplemented
        return (self.cat is other.cat and self.dim == other.dim
                and self.action == other.action)

    def __repr__(self):
        return f"Obj({self.name}, dim={self.dim})"


class FusionObj:
    """A fusion-backend object: multiplicity vector over the simples."""

    __slots__ = ("cat", "name", "mults")

    def __init__(self, cat, name, mults):
        self.cat = cat
        self.name = name
        self.mults = tuple(mults)

    @property
    def dim(self):
        # number of simple summands; quantum dimensions are out of scope
        return sum(self.mults)

    def __eq__(self, other):
        if not isinstance(other, FusionObj):
            return NotImplemented
        return self.cat is other.cat and self.mults == other.mults

    def __repr__(self):
        return f"FusionObj({self.name}, {self.mults})"


# ---------------------------------------------------------------------------
# data containers


class ModuleData:
    def __init__(self, name, dim, action, flags):
        self.name = name
        self.dim = dim
        self.action = action  # list of Matrix, one per basis element
        self.flags = frozenset(flags)


class HopfData:
    """Parsed ribbon Hopf algebra presentation."""

    def __init__(self, field, dim, basis, unit_vec, mult, comult, counit,
                 antipode, r_matrix, ribbon, modules, generators, name=""):
        self.field = field
        self.dim = dim
        self.basis = basis
        self.unit_vec = unit_vec      # list of Scalar
        self.mult = mult              # mult[i][j] -> list of (k, Scalar)
        self.comult = comult          # comult[i] -> list of (j, k, Scalar)
        self.counit = counit          # list of Scalar
        self.antipode = antipode      # antipode[i] -> list of (j, Scalar)
        self.r_matrix = r_matrix      # list of (i, j, Scalar)
        self.ribbon = ribbon          # list of Scalar
        self.modules = modules        # name -> ModuleData
        self.generators = generators  # list of basis indices
        self.name = name

    @classmethod
    def from_dict(cls, obj):
        try:
            field = Field.from_json(obj["field"])
            d = int(obj["dim"])
            basis = list(obj["basis"])
            if len(basis) != d:
                raise SchemaError("basis length != dim")
            dec = field.decode
            unit_vec = [dec(x) for x in obj["unit_vec"]]
            mult = [[[] for _ in range(d)] for _ in range(d)]
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        c = dec(obj["mult"][i][j][k])
                        if not c.is_zero():
                            mult[i][j].append((k, c))
            comult = [[] for _ in range(d)]
            for i in range(d):
                for j in range(d):
                    for k in range(d):
                        c = dec(obj["comult"][i][j][k])
                        if not c.is_zero():
                            comult[i].append((j, k, c))
            counit = [dec(x) for x in obj["counit"]]
            antipode = [[] for _ in range(d)]
            for i in range(d):
                for j in range(d):
                    c = dec(obj["antipode"][i][j])
                    if not c.is_zero():
                        antipode[i].append((j, c))
            r_matrix = []
            for i in range(d):
                for j in range(d):
                    c = dec(obj["r_matrix"][i][j])
                    if not c.is_zero():
                        r_matrix.append((i, j, c))
            ribbon = [dec(x) for x in obj["ribbon"]]
            modules = {}
            for name, m in obj["modules"].items():
                md = int(m["dim"])
                action = [Matrix.from_lists(field, a) for a in m["action"]]
                if len(action) != d or any(a.rows != md or a.cols != md
                                           for a in action):
                    raise SchemaError(f"module {name}: bad action shape")
                modules[name] = ModuleData(name, md, action,
                                           m.get("flags", []))
            generators = list(obj.get("generators", range(d)))
            return cls(field, d, basis, unit_vec, mult, comult, counit,
                       antipode, r_matrix, ribbon, modules, generators,
                       name=obj.get("name", ""))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad hopf category file: {exc}") from exc

    def to_dict(self):
        enc = self.field.encode
        d = self.dim
        zero = self.field.zero

        def dense3(sparse, kind):
            out = [[[enc(zero)] * d for _ in range(d)] for _ in range(d)]
            if kind == "mult":
                for i in range(d):
                    for j in range(d):
                        for k, c in sparse[i][j]:
                            out[i][j][k] = enc(c)
            else:
                for i in range(d):
                    for j, k, c in sparse[i]:
                        out[i][j][k] = enc(c)
            return out

        anti = [[enc(zero)] * d for _ in range(d)]
        for i in range(d):
            for j, c in self.antipode[i]:
                anti[i][j] = enc(c)
        rmat = [[enc(zero)] * d for _ in range(d)]
        for i, j, c in self.r_matrix:
            rmat[i][j] = enc(c)
        return {
            "kind": "hopf",
            "name": self.name,
            "field": self.field.to_json(),
            "dim": d,
            "basis": list(self.basis),
            "unit_vec": [enc(x) for x in self.unit_vec],
            "mult": dense3(self.mult, "mult"),
            "comult": dense3(self.comult, "comult"),
            "counit": [enc(x) for x in self.counit],
            "antipode": anti,
            "r_matrix": rmat,
            "ribbon": [enc(x) for x in self.ribbon],
            "generators": list(self.generators),
            "modules": {
                name: {"dim": m.dim,
                       "action": [a.to_lists() for a in m.action],
                       "flags": sorted(m.flags)}
                for name, m in self.modules.items()
            },
        }


class FusionData:
    """Parsed skeletal fusion data."""

    def __init__(self, field, simples, unit, dual, fusion, twists, name=""):
        self.field = field
        self.simples = simples
        self.unit = unit
        self.dual = dual        # permutation list
        self.fusion = fusion    # N[i][j][k] ints
        self.twists = twists    # list of Scalar
        self.name = name

    @classmethod
    def from_dict(cls, obj):
        try:
            field = Field.from_json(obj["field"])
            simples = list(obj["simples"])
            n = len(simples)
            unit = int(obj["unit"])
            dual = [int(x) for x in obj["dual"]]
            fusion = [[[int(obj["fusion"][i][j][k]) for k in range(n)]
                       for j in range(n)] for i in range(n)]
            twists = [field.decode(t) for t in obj["twists"]]
            if not (0 <= unit < n) or len(dual) != n or len(twists) != n:
                raise SchemaError("inconsistent fusion data sizes")
            return cls(field, simples, unit, dual, fusion, twists,
                       name=obj.get("name", ""))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad fusion category file: {exc}") from exc

    def to_dict(self):
        return {
            "kind": "fusion",
            "name": self.name,
            "field": self.field.to_json(),
            "simples": list(self.simples),
            "unit": self.unit,
            "dual": list(self.dual),
            "fusion": [[list(self.fusion[i][j]) for j in range(len(self.simples))]
                       for i in range(len(self.simples))],
            "twists": [self.field.encode(t) for t in self.twists],
        }


# ---------------------------------------------------------------------------
# sparse elements of tensor powers of H (used by the validator)


class TensorElt:
    """Sparse element of H^(x)k: dict mapping index tuples to scalars."""

    def __init__(self, data, terms=None):
        self.data = data
        self.terms = dict(terms or {})

    def add_term(self, key, c):
        cur = self.terms.get(key)
        new = c if cur is None else cur + c
        if new.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __eq__(self, other):
        return self.terms == other.terms

    def mul(self, other):
        out = TensorElt(self.data)
        mult = self.data.mult
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                # expand slotwise products of basis monomials
                partial = [((), c12)]
                for a, b in zip(k1, k2):
                    nxt = []
                    for key, c in partial:
                        for k, m in mult[a][b]:
                            nxt.append((key + (k,), c * m))
                    partial = nxt
                for key, c in partial:
                    out.add_term(key, c)
        return out

    def is_zero(self):
        return not self.terms


def _unit_tensor(data, k):
    out = TensorElt(data)
    idxs = [[(i, c) for i, c in enumerate(data.unit_vec) if not c.is_zero()]]
    combos = [((), data.field.one)]
    for _ in range(k):
        combos = [(key + (i,), c * ci) for key, c in combos for i, ci in idxs[0]]
    for key, c in combos:
        out.add_term(key, c)
    return out


# ---------------------------------------------------------------------------
# Hopf backend


class HopfCategory:
    """Modules over a validated ribbon Hopf algebra."""

    kind = "hopf"

    def __init__(self, data):
        self.data = data
        self.field = data.field
        d = data.dim
        f = self.field
        # left/right multiplication matrices of the basis elements
        self.left_mult = []
        self.right_mult = []
        for i in range(d):
            lm = Matrix.zeros(f, d, d)
            for j in range(d):
                for k, c in data.mult[i][j]:
                    lm.entries[k * d + j] = lm.entries[k * d + j] + c
            self.left_mult.append(lm)
            rm = Matrix.zeros(f, d, d)
            for j in range(d):
                for k, c in data.mult[j][i]:
                    rm.entries[k * d + j] = rm.entries[k * d + j] + c
            self.right_mult.append(rm)
        # antipode on coefficient vectors
        s = Matrix.zeros(f, d, d)
        for i in range(d):
            for j, c in data.antipode[i]:
                s.entries[j * d + i] = c
        self.s_matrix = s
        self._obj_cache = {}
        self._r_inv = None
        self._drinfeld = None
        self._ribbon_inv = None

    # -- algebra element helpers ------------------------------------------

    def alg_mul(self, a, b):
        d = self.data.dim
        out = [self.field.zero] * d
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if bj.is_zero():
                    continue
                for k, c in self.data.mult[i][j]:
                    out[k] = out[k] + ai * bj * c
        return out

    def alg_antipode(self, a):
        d = self.data.dim
        out = [self.field.zero] * d
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, c in self.data.antipode[i]:
                out[j] = out[j] + ai * c
        return out

    def alg_counit(self, a):
        out = self.field.zero
        for ai, ei in zip(a, self.data.counit):
            out = out + ai * ei
        return out

    def left_mult_of(self, a):
        d = self.data.dim
        out = Matrix.zeros(self.field, d, d)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                out = out + self.left_mult[i] * ai
        return out

    def alg_inverse(self, a):
        """Two-sided inverse of an algebra element, or None."""
        la = self.left_mult_of(a)
        rhs = Matrix(self.field, self.data.dim, 1, list(self.data.unit_vec))
        try:
            x = la.solve(rhs)
        except ValueError:
            return None
        xv = x.col(0)
        if self.alg_mul(xv, a) != list(self.data.unit_vec):
            return None
        return xv

    def basis_vec(self, i):
        v = [self.field.zero] * self.data.dim
        v[i] = self.field.one
        return v

    # -- distinguished elements --------------------------------------------

    def drinfeld_u(self):
        """u = m(S (x) id)(R_21), so u = sum S(b_j) b_i over R terms."""
        if self._drinfeld is None:
            u = [self.field.zero] * self.data.dim
            for i, j, c in self.data.r_matrix:
                prod = self.alg_mul(self.alg_antipode(self.basis_vec(j)),
                                    self.basis_vec(i))
                u = [x + c * y for x, y in zip(u, prod)]
            self._drinfeld = u
        return self._drinfeld

    def ribbon_inv(self):
        if self._ribbon_inv is None:
            inv = self.alg_inverse(list(self.data.ribbon))
            assert inv is not None, "ribbon element not invertible"
            self._ribbon_inv = inv
        return self._ribbon_inv

    def pivotal(self):
        """The pivotal element g = u v^{-1} and its inverse."""
        g = self.alg_mul(self.drinfeld_u(), self.ribbon_inv())
        ginv = self.alg_inverse(g)
        assert ginv is not None
        return g, ginv

    def r_terms(self):
        return self.data.r_matrix

    def r_inv_terms(self):
        """R^{-1} in H (x) H, as sparse (i, j, coeff) terms."""
        if self._r_inv is None:
            d = self.data.dim
            f = self.field
            # left multiplication by R on H (x) H
            lm = Matrix.zeros(f, d * d, d * d)
            for i, j, c in self.data.r_matrix:
                lm = lm + self.left_mult[i].kron(self.left_mult[j]) * c
            unit2 = [f.zero] * (d * d)
            for i, ci in enumerate(self.data.unit_vec):
                for j, cj in enumerate(self.data.unit_vec):
                    unit2[i * d + j] = ci * cj
            x = lm.solve(Matrix(f, d * d, 1, unit2))
            terms = []
            for i in range(d):
                for j in range(d):
                    c = x[i * d + j, 0]
                    if not c.is_zero():
                        terms.append((i, j, c))
            self._r_inv = terms
        return self._r_inv

    # -- objects -------------------------------------------------------------

    def unit(self):
        f = self.field
        action = [Matrix(f, 1, 1, [e]) for e in self.data.counit]
        return Obj(self, "I", 1, action, flags={"unit"})

    def module(self, name):
        if name not in self._obj_cache:
            if name not in self.data.modules:
                raise SchemaError(f"unknown module {name!r}")
            m = self.data.modules[name]
            self._obj_cache[name] = Obj(self, name, m.dim, m.action, m.flags)
        return self._obj_cache[name]

    def module_names(self):
        return list(self.data.modules)

    def tensor(self, x, y):
        self._check_backend(x)
        self._check_backend(y)
        if x.is_unit:
            return y
        if y.is_unit:
            return x
        dim = x.dim * y.dim
        if dim > max_tensor_dim():
            raise DimensionCapExceeded(
                f"tensor dimension {dim} exceeds SKEINLAB_MAX_DIM")
        f = self.field
        action = []
        for i in range(self.data.dim):
            m = Matrix.zeros(f, dim, dim)
            for j, k, c in self.data.comult[i]:
                m = m + x.action[j].kron(y.action[k]) * c
            action.append(m)
        return Obj(self, f"{x.name}*{y.name}", dim, action)

    def tensor_all(self, objs):
        out = self.unit()
        for o in objs:
            out = self.tensor(out, o)
        return out

    def tensor_mor(self, fm, gm):
        fu = fm.domain.is_unit and fm.codomain.is_unit
        gu = gm.domain.is_unit and gm.codomain.is_unit
        if fu:
            return Mor(gm.domain, gm.codomain, gm.matrix * fm.matrix[0, 0])
        if gu:
            return Mor(fm.domain, fm.codomain, fm.matrix * gm.matrix[0, 0])
        return Mor(self.tensor(fm.domain, gm.domain),
                   self.tensor(fm.codomain, gm.codomain),
                   fm.matrix.kron(gm.matrix))

    def dual(self, x):
        """X^dual with the transpose-of-antipode action."""
        self._check_backend(x)
        if x.is_unit:
            return x
        f = self.field
        action = []
        for i in range(self.data.dim):
            m = Matrix.zeros(f, x.dim, x.dim)
            for j, c in self.data.antipode[i]:
                m = m + x.action[j] * c
            action.append(m.transpose())
        return Obj(self, f"{x.name}^", x.dim, action)

    def dual_mor(self, fm):
        """f^dual: cod^dual -> dom^dual, the transpose matrix."""
        return Mor(self.dual(fm.codomain), self.dual(fm.domain),
                   fm.matrix.transpose())

    # -- duality morphisms ----------------------------------------------------

    def ev(self, x):
        """Left evaluation X^dual (x) X -> I."""
        f = self.field
        d = x.dim
        ent = [f.zero] * (d * d)
        for i in range(d):
            ent[i * d + i] = f.one
        return Mor(self.tensor(self.dual(x), x), self.unit(),
                   Matrix(f, 1, d * d, ent))

    def coev(self, x):
        """Left coevaluation I -> X (x) X^dual."""
        f = self.field
        d = x.dim
        ent = [f.zero] * (d * d)
        for i in range(d):
            ent[i * d + i] = f.one
        return Mor(self.unit(), self.tensor(x, self.dual(x)),
                   Matrix(f, d * d, 1, ent))

    def ev_r(self, x):
        """Right evaluation X (x) X^dual -> I via the pivotal element."""
        f = self.field
        d = x.dim
        g, _ = self.pivotal()
        gx = x.act(g)
        ent = [f.zero] * (d * d)
        for i in range(d):
            for j in range(d):
                ent[i * d + j] = gx[j, i]
        return Mor(self.tensor(x, self.dual(x)), self.unit(),
                   Matrix(f, 1, d * d, ent))

    def coev_r(self, x):
        """Right coevaluation I -> X^dual (x) X via the inverse pivot."""
        f = self.field
        d = x.dim
        _, ginv = self.pivotal()
        gi = x.act(ginv)
        ent = [f.zero] * (d * d)
        for i in range(d):
            for k in range(d):
                ent[i * d + k] = gi[k, i]
        return Mor(self.unit(), self.tensor(self.dual(x), x),
                   Matrix(f, d * d, 1, ent))

    # -- braiding and twist ----------------------------------------------------

    def _flip(self, x, y):
        f = self.field
        ent = [f.zero] * (x.dim * y.dim) ** 2
        cols = x.dim * y.dim
        for a in range(x.dim):
            for b in range(y.dim):
                ent[(b * x.dim + a) * cols + (a * y.dim + b)] = f.one
        return ent

    def braiding(self, x, y):
        """c_{X,Y}: X (x) Y -> Y (x) X, flip after acting with R."""
        f = self.field
        r_act = Matrix.zeros(f, x.dim * y.dim, x.dim * y.dim)
        for i, j, c in self.r_terms():
            r_act = r_act + x.action[i].kron(y.action[j]) * c
        flip = Matrix(f, x.dim * y.dim, x.dim * y.dim, self._flip(x, y))
        return Mor(self.tensor(x, y), self.tensor(y, x), flip @ r_act)

    def braiding_inv(self, x, y):
        """c_{Y,X}^{-1}: X (x) Y -> Y (x) X, via R^{-1}."""
        f = self.field
        rinv_act = Matrix.zeros(f, x.dim * y.dim, x.dim * y.dim)
        for i, j, c in self.r_inv_terms():
            rinv_act = rinv_act + y.action[i].kron(x.action[j]) * c
        flip = Matrix(f, x.dim * y.dim, x.dim * y.dim, self._flip(x, y))
        return Mor(self.tensor(x, y), self.tensor(y, x), rinv_act @ flip)

    def twist(self, x):
        return Mor(x, x, x.act(self.ribbon_inv()))

    def twist_inv(self, x):
        return Mor(x, x, x.act(list(self.data.ribbon)))

    # -- hom spaces -------------------------------------------------------------

    def hom_basis(self, x, y):
        """Basis of the intertwiner space Hom(X, Y), via the Sylvester solver."""
        self._check_backend(x)
        self._check_backend(y)
        pairs = [(y.action[g], x.action[g]) for g in self.data.generators]
        sols = solve_sylvester_family(pairs, dims=(y.dim, x.dim),
                                      field=self.field)
        out = []
        for k in range(sols.cols):
            out.append(Mor(x, y, unvec(self.field, sols.col(k), y.dim, x.dim)))
        return out

    def hom_dim(self, x, y):
        return len(self.hom_basis(x, y))

    def expand_in_basis(self, mors, basis):
        """Coefficients of each morphism of ``mors`` in ``basis`` (exact)."""
        f = self.field
        if not basis:
            for m in mors:
                assert m.is_zero()
            return Matrix.zeros(f, 0, len(mors))
        cols = [Matrix(f, len(b.matrix.entries), 1, list(b.matrix.entries))
                for b in basis]
        bmat = Matrix.hstack(cols)
        rhs = Matrix.hstack([Matrix(f, len(m.matrix.entries), 1,
                                    list(m.matrix.entries)) for m in mors])
        return bmat.solve(rhs)

    def projective_generator(self):
        """The regular representation and a basis of its endomorphisms."""
        reg = Obj(self, "H", self.data.dim, self.left_mult,
                  flags={"projective"})
        return reg, self.hom_basis(reg, reg)

    def injective_cogenerator(self):
        """The dual regular module (an injective cogenerator)."""
        reg, _ = self.projective_generator()
        return self.dual(reg)

    def iso_pair(self, x, y, tries=60, seed=0):
        """Mutually inverse intertwiners (f, g) between X and Y, or None."""
        if x.dim != y.dim:
            return None
        if x.dim == 0:
            z = Matrix.zeros(self.field, 0, 0)
            return Mor(x, y, z), Mor(y, x, z)
        basis = self.hom_basis(x, y)
        if not basis:
            return None
        candidates = list(basis)
        s = basis[0]
        for b in basis[1:]:
            s = s + b
        candidates.append(s)
        rng = random.Random(seed)
        for _ in range(tries):
            m = basis[0] * self.field.scalar(rng.randint(0, 4))
            for b in basis[1:]:
                m = m + b * self.field.scalar(rng.randint(0, 4))
            candidates.append(m)
        for f in candidates:
            try:
                inv = f.matrix.inverse()
            except ValueError:
                continue
            g = Mor(y, x, inv)
            return f, g
        return None

    def _check_backend(self, x):
        if not isinstance(x, Obj) or x.cat is not self:
            raise BackendMismatch(f"object {x!r} does not belong to {self!r}")

    def to_dict(self):
        return self.data.to_dict()

    def __repr__(self):
        return f"HopfCategory({self.data.name or 'dim %d' % self.data.dim})"


# ---------------------------------------------------------------------------
# fusion backend


class FusionCategory:
    """Skeletal ribbon fusion data: the fusion ring, duals and twist scalars."""

    kind = "fusion"

    def __init__(self, data):
        self.data = data
        self.field = data.field
        self.n = len(data.simples)

    def unit(self):
        m = [0] * self.n
        m[self.data.unit] = 1
        return FusionObj(self, self.data.simples[self.data.unit], m)

    def simple(self, i):
        m = [0] * self.n
        m[i] = 1
        return FusionObj(self, self.data.simples[i], m)

    def module(self, name):
        if name not in self.data.simples:
            raise SchemaError(f"unknown simple {name!r}")
        return self.simple(self.data.simples.index(name))

    def module_names(self):
        return list(self.data.simples)

    def tensor(self, x, y):
        self._check_backend(x)
        self._check_backend(y)
        out = [0] * self.n
        for i, mi in enumerate(x.mults):
            if not mi:
                continue
            for j, mj in enumerate(y.mults):
                if not mj:
                    continue
                for k in range(self.n):
                    out[k] += mi * mj * self.data.fusion[i][j][k]
        return FusionObj(self, f"{x.name}*{y.name}", out)

    def tensor_all(self, objs):
        out = self.unit()
        for o in objs:
            out = self.tensor(out, o)
        return out

    def dual(self, x):
        self._check_backend(x)
        out = [0] * self.n
        for i, mi in enumerate(x.mults):
            out[self.data.dual[i]] += mi
        return FusionObj(self, f"{x.name}^", out)

    def hom_dim(self, x, y):
        return sum(a * b for a, b in zip(x.mults, y.mults))

    def hom_basis(self, x, y):
        """Formal basis: one matrix-free morphism handle per hom dimension."""
        return [Mor(x, y, None) for _ in range(self.hom_dim(x, y))]

    def twist_scalar(self, i):
        return self.data.twists[i]

    def braiding(self, x, y):
        raise UnsupportedForBackend(
            "fusion backend carries no braiding morphisms")

    def canonical_end_obj(self):
        out = [0] * self.n
        for i in range(self.n):
            for k in range(self.n):
                out[k] += self.data.fusion[self.data.dual[i]][i][k]
        return FusionObj(self, "A", out)

    def projective_generator(self):
        gen = FusionObj(self, "G", [1] * self.n)
        return gen, self.n

    def is_projective(self, x):
        return True  # semisimple: every object is projective

    def _check_backend(self, x):
        if not isinstance(x, FusionObj) or x.cat is not self:
            raise BackendMismatch(f"object {x!r} does not belong to {self!r}")

    def to_dict(self):
        return self.data.to_dict()

    def __repr__(self):
        return f"FusionCategory({self.data.name or self.data.simples})"


# ---------------------------------------------------------------------------
# validators


def validate_fusion(data):
    rep = ValidationReport()
    n = len(data.simples)
    u = data.unit
    ok = all(data.fusion[u][j][k] == (1 if j == k else 0)
             for j in range(n) for k in range(n))
    ok = ok and all(data.fusion[j][u][k] == (1 if j == k else 0)
                    for j in range(n) for k in range(n))
    rep.add("unit", ok, "N[unit][j][k] = delta_jk = N[j][unit][k]")
    ok = all(data.dual[data.dual[i]] == i for i in range(n))
    rep.add("dual-involution", ok)
    ok = all(data.fusion[i][j][u] == (1 if j == data.dual[i] else 0)
             for i in range(n) for j in range(n))
    rep.add("duality", ok, "N[i][j][unit] = delta_{j,dual(i)}")
    assoc = True
    for i, j, k, l in itertools.product(range(n), repeat=4):
        lhs = sum(data.fusion[i][j][m] * data.fusion[m][k][l] for m in range(n))
        rhs = sum(data.fusion[j][k][m] * data.fusion[i][m][l] for m in range(n))
        if lhs != rhs:
            assoc = False
            break
    rep.add("associativity", assoc)
    rep.add("twist-unit", data.twists[u].is_one(), "theta_unit = 1")
    ok = all(data.twists[data.dual[i]] == data.twists[i] for i in range(n))
    rep.add("twist-dual", ok, "theta_dual(i) = theta_i")
    return rep


def validate_hopf(data):
    rep = ValidationReport()
    cat = HopfCategory(data)
    f = data.field
    d = data.dim
    basis = [cat.basis_vec(i) for i in range(d)]
    unit = list(data.unit_vec)

    ok = all(cat.alg_mul(cat.alg_mul(basis[i], basis[j]), basis[k])
             == cat.alg_mul(basis[i], cat.alg_mul(basis[j], basis[k]))
             for i in range(d) for j in range(d) for k in range(d))
    rep.add("associativity", ok)
    ok = all(cat.alg_mul(unit, b) == b == cat.alg_mul(b, unit) for b in basis)
    rep.add("unit", ok)

    def delta_elt(vec):
        out = TensorElt(data)
        for i, c in enumerate(vec):
            if c.is_zero():
                continue
            for j, k, cc in data.comult[i]:
                out.add_term((j, k), c * cc)
        return out

    ok = True
    for i in range(d):
        lhs = TensorElt(data)
        rhs = TensorElt(data)
        for j, k, c in data.comult[i]:
            for a, b, cc in data.comult[j]:
                lhs.add_term((a, b, k), c * cc)
            for a, b, cc in data.comult[k]:
                rhs.add_term((j, a, b), c * cc)
        if lhs != rhs:
            ok = False
            break
    rep.add("coassociativity", ok)

    ok = True
    for i in range(d):
        le = [f.zero] * d
        ri = [f.zero] * d
        for j, k, c in data.comult[i]:
            le[k] = le[k] + c * data.counit[j]
            ri[j] = ri[j] + c * data.counit[k]
        if le != basis[i] or ri != basis[i]:
            ok = False
            break
    rep.add("counit", ok)

    ok = delta_elt(unit) == _unit_tensor(data, 2)
    for i in range(d):
        for j in range(d):
            if delta_elt(cat.alg_mul(basis[i], basis[j])) != \
                    delta_elt(basis[i]).mul(delta_elt(basis[j])):
                ok = False
    rep.add("comult-algebra-map", ok)

    ok = cat.alg_counit(unit).is_one()
    for i in range(d):
        for j in range(d):
            if cat.alg_counit(cat.alg_mul(basis[i], basis[j])) != \
                    data.counit[i] * data.counit[j]:
                ok = False
    rep.add("counit-algebra-map", ok)

    ok = True
    for i in range(d):
        lhs = [f.zero] * d
        rhs = [f.zero] * d
        for j, k, c in data.comult[i]:
            sj = cat.alg_antipode(basis[j])
            sk = cat.alg_antipode(basis[k])
            lhs = [x + c * y for x, y in zip(lhs, cat.alg_mul(sj, basis[k]))]
            rhs = [x + c * y for x, y in zip(rhs, cat.alg_mul(basis[j], sk))]
        target = [data.counit[i] * x for x in unit]
        if lhs != target or rhs != target:
            ok = False
            break
    rep.add("antipode", ok)

    r_elt = TensorElt(data, {(i, j): c for i, j, c in data.r_matrix})
    r21 = TensorElt(data, {(j, i): c for i, j, c in data.r_matrix})
    try:
        rinv_terms = cat.r_inv_terms()
        r_inv = TensorElt(data, {(i, j): c for i, j, c in rinv_terms})
        ok = r_elt.mul(r_inv) == _unit_tensor(data, 2) \
            and r_inv.mul(r_elt) == _unit_tensor(data, 2)
    except (ValueError, AssertionError):
        ok = False
    rep.add("r-invertible", ok)

    ok = True
    for i in range(d):
        delta = delta_elt(basis[i])
        dop = TensorElt(data, {(k, j): c for (j, k), c in delta.terms.items()})
        if dop.mul(r_elt) != r_elt.mul(delta):
            ok = False
            break
    rep.add("r-intertwines-comult", ok, "Delta^op R = R Delta")

    dxr = TensorElt(data)
    for i, j, c in data.r_matrix:
        for a, b, cc in data.comult[i]:
            dxr.add_term((a, b, j), c * cc)
    r13 = TensorElt(data)
    r23 = TensorElt(data)
    r12 = TensorElt(data)
    for i, j, c in data.r_matrix:
        for k, cu in enumerate(unit):
            if cu.is_zero():
                continue
            r13.add_term((i, k, j), c * cu)
            r23.add_term((k, i, j), c * cu)
            r12.add_term((i, j, k), c * cu)
    rep.add("r-hexagon-1", dxr == r13.mul(r23), "(Delta x id)R = R13 R23")
    ixr = TensorElt(data)
    for i, j, c in data.r_matrix:
        for a, b, cc in data.comult[j]:
            ixr.add_term((i, a, b), c * cc)
    rep.add("r-hexagon-2", ixr == r13.mul(r12), "(id x Delta)R = R13 R12")

    v = list(data.ribbon)
    ok = all(cat.alg_mul(v, b) == cat.alg_mul(b, v) for b in basis)
    rep.add("ribbon-central", ok)
    vinv = cat.alg_inverse(v)
    rep.add("ribbon-invertible", vinv is not None)
    u = cat.drinfeld_u()
    usu = cat.alg_mul(u, cat.alg_antipode(u))
    rep.add("ribbon-square", cat.alg_mul(v, v) == usu, "v^2 = u S(u)")
    rep.add("ribbon-antipode", cat.alg_antipode(v) == v, "S(v) = v")
    rep.add("ribbon-counit", cat.alg_counit(v).is_one(), "eps(v) = 1")
    ok = False
    if vinv is not None:
        monodromy = r21.mul(r_elt)
        # solve monodromy * X = v (x) v in H (x) H, then compare with Delta(v)
        lm = Matrix.zeros(f, d * d, d * d)
        for (i, j), c in monodromy.terms.items():
            lm = lm + cat.left_mult[i].kron(cat.left_mult[j]) * c
        vv = [f.zero] * (d * d)
        for i, ci in enumerate(v):
            for j, cj in enumerate(v):
                vv[i * d + j] = ci * cj
        try:
            x = lm.solve(Matrix(f, d * d, 1, vv))
            dv = delta_elt(v)
            xe = TensorElt(data)
            for i in range(d):
                for j in range(d):
                    c = x[i * d + j, 0]
                    if not c.is_zero():
                        xe.add_term((i, j), c)
            ok = xe == dv
        except ValueError:
            ok = False
    rep.add("ribbon-comult", ok, "Delta(v) = (R21 R)^{-1} (v x v)")

    for name, m in data.modules.items():
        ok = m.action and all(a.rows == m.dim for a in m.action)
        uact = Matrix.zeros(f, m.dim, m.dim)
        for c, a in zip(unit, m.action):
            if not c.is_zero():
                uact = uact + a * c
        ok = ok and uact == Matrix.identity(f, m.dim)
        for i in range(d):
            for j in range(d):
                prod = m.action[i] @ m.action[j]
                target = Matrix.zeros(f, m.dim, m.dim)
                for k, c in data.mult[i][j]:
                    target = target + m.action[k] * c
                if prod != target:
                    ok = False
        rep.add(f"module:{name}", ok, "action respects the algebra relations")

    span = _span_closure(cat, data.generators)
    rep.add("generators-span", span == d,
            f"generators span a {span}-dim subalgebra of dim {d}")

    _advisory_projective_checks(cat, rep)
    return rep


def _span_closure(cat, generators):
    f = cat.field
    d = cat.data.dim
    vecs = [list(cat.data.unit_vec)] + [cat.basis_vec(g) for g in generators]
    while True:
        m = Matrix.from_rows(f, vecs).transpose()
        rank = m.rank()
        new = []
        for g in generators:
            for v in list(vecs):
                new.append(cat.alg_mul(cat.basis_vec(g), v))
        m2 = Matrix.from_rows(f, vecs + new).transpose()
        if m2.rank() == rank:
            return rank
        vecs = vecs + new


def _advisory_projective_checks(cat, rep):
    reg, _ = cat.projective_generator()
    for name, m in cat.data.modules.items():
        if "projective" not in m.flags:
            continue
        p = cat.module(name)
        into = cat.hom_basis(p, reg)
        out = cat.hom_basis(reg, p)
        if not into or not out:
            rep.add(f"projective-flag:{name}", False,
                    "dim Hom(H,P) * dim Hom(P,H) = 0", severity="warning")
            continue
        split = _find_split(cat, p, into, out)
        rep.add(f"projective-flag:{name}", split,
                "" if split else "no splitting of P through H found",
                severity="warning")


def _find_split(cat, p, into, out, seed=0):
    # fix s: P -> H, then solve linearly for r = sum_a lam_a out_a with rs = id
    f = cat.field
    rng = random.Random(seed)
    cands = list(into)
    s = into[0]
    for b in into[1:]:
        s = s + b
    cands.append(s)
    for _ in range(10):
        m = into[0] * f.scalar(rng.randint(0, 3))
        for b in into[1:]:
            m = m + b * f.scalar(rng.randint(0, 3))
        cands.append(m)
    idp = Matrix.identity(f, p.dim)
    for s in cands:
        cols = [Matrix(f, p.dim * p.dim, 1,
                       list((r.matrix @ s.matrix).entries)) for r in out]
        rhs = Matrix(f, p.dim * p.dim, 1, list(idp.entries))
        try:
            Matrix.hstack(cols).solve(rhs)
            return True
        except ValueError:
            continue
    return False


# ---------------------------------------------------------------------------
# loading


def category_from_dict(obj):
    kind = obj.get("kind")
    if kind == "hopf":
        data = HopfData.from_dict(obj)
        rep = validate_hopf(data)
        if not rep.ok:
            first = rep.failures()[0]
            raise AxiomError(first["axiom"], first["detail"])
        return HopfCategory(data)
    if kind == "fusion":
        data = FusionData.from_dict(obj)
        rep = validate_fusion(data)
        if not rep.ok:
            first = rep.failures()[0]
            raise AxiomError(first["axiom"], first["detail"])
        return FusionCategory(data)
    raise SchemaError(f"unknown category kind {kind!r}")


def load_category(path):
    import json

    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    return category_from_dict(obj)


def warn_nonprojective(cat, obj):
    flags = getattr(obj, "flags", frozenset())
    if cat.kind == "hopf" and "projective" not in flags:
        warnings.warn(f"label {obj.name!r} is not flagged projective",
                      NonProjectiveLabel, stacklevel=3)
