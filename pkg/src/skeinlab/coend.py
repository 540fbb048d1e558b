"""Generator-reduced ends and coends, and the invariants derived from them.

An end over the module category is computed as the equalizer of the left and
right End(G)-actions on F(G, G) for an injective cogenerator G (the dual
regular module); a coend is the dual coequalizer over the projective
generator (the regular module).  Derived from these:

* the canonical end A (the end of X^dual (x) X),
* the right and left Nakayama functors on objects,
* the distinguished invertible object alpha, with alpha^{-1} = N_r(I),
* the dimension of the modified-trace space, dim Hom(alpha, I),
* Hopf integrals and the dimension of J_l (x)_H k.

A kernel of module maps is a submodule and a cokernel a quotient module, so
both reductions return objects when the ambient space carries an action.
"""

from .errors import InvertibilityCheckFailed, UnsupportedForBackend
from .linalg import Matrix
from .backends import HopfCategory, Mor, Obj


class BifunctorPresentation:
    """The data of F(G, G) with commuting left/right End(G)-actions.

    ``lefts[e]`` and ``rights[e]`` are the two endomorphism actions on the
    ambient space, one pair per basis element of End(G).  When the
    presentation is object-valued, ``module_action`` holds one ambient action
    matrix per algebra basis element and ``cat`` the owning category.
    """

    def __init__(self, dim, lefts, rights, module_action=None, cat=None,
                 name=""):
        self.dim = dim
        self.lefts = list(lefts)
        self.rights = list(rights)
        self.module_action = module_action
        self.cat = cat
        self.name = name

    def check(self):
        """L and R are commuting families (algebra axioms hold by origin)."""
        for le in self.lefts:
            for ri in self.rights:
                if not (le @ ri == ri @ le):
                    return False
        return True

    def differences(self):
        return [le - ri for le, ri in zip(self.lefts, self.rights)]


class EndSpace:
    """An equalizer subspace: inclusion matrix plus optional module structure."""

    def __init__(self, inclusion, obj=None):
        self.inclusion = inclusion      # ambient_dim x k
        self.obj = obj

    @property
    def dim(self):
        return self.inclusion.cols


class CoendSpace:
    """A coequalizer quotient: projection, a section, optional module structure."""

    def __init__(self, projection, section, obj=None):
        self.projection = projection    # k x ambient_dim
        self.section = section          # ambient_dim x k, projection @ section = id
        self.obj = obj

    @property
    def dim(self):
        return self.projection.rows


def end_over_generator(p):
    """Kernel of the stacked maps {L(e) - R(e)}, with inherited action."""
    diffs = p.differences()
    if diffs:
        incl = Matrix.vstack(diffs).kernel()
    else:
        incl = Matrix.identity(_field_of(p), p.dim)
    obj = None
    if p.module_action is not None:
        action = [incl.solve(m @ incl) for m in p.module_action]
        obj = Obj(p.cat, p.name or "end", incl.cols, action)
    return EndSpace(incl, obj)


def coend_over_generator(p):
    """Cokernel of the summed maps {L(e) - R(e)}, with inherited action."""
    diffs = p.differences()
    f = _field_of(p)
    if diffs:
        rel = Matrix.hstack(diffs)
        proj = rel.cokernel()
    else:
        proj = Matrix.identity(f, p.dim)
    if proj.rows:
        section = proj.solve(Matrix.identity(f, proj.rows))
    else:
        section = Matrix.zeros(f, p.dim, 0)
    obj = None
    if p.module_action is not None:
        action = [proj @ m @ section for m in p.module_action]
        obj = Obj(p.cat, p.name or "coend", proj.rows, action)
    return CoendSpace(proj, section, obj)


def _field_of(p):
    if p.cat is not None:
        return p.cat.field
    return (p.lefts or p.rights)[0].field


# ---------------------------------------------------------------------------
# canonical end and Nakayama functors


def _require_hopf(cat):
    if not isinstance(cat, HopfCategory):
        raise UnsupportedForBackend("operation needs the hopf backend")


def canonical_end(cat):
    """The end of X^dual (x) X.  Hopf: equalizer of (e^dual (x) id) and
    (id (x) e) inside G^dual (x) G over the injective cogenerator G.
    Fusion: the multiplicity vector of the direct sum of X_i^dual (x) X_i.
    """
    if cat.kind == "fusion":
        return cat.canonical_end_obj()
    cog = cat.injective_cogenerator()
    endo = cat.hom_basis(cog, cog)
    ident = Matrix.identity(cat.field, cog.dim)
    ambient = cat.tensor(cat.dual(cog), cog)
    p = BifunctorPresentation(
        ambient.dim,
        lefts=[e.matrix.transpose().kron(ident) for e in endo],
        rights=[ident.kron(e.matrix) for e in endo],
        module_action=list(ambient.action),
        cat=cat,
        name="A",
    )
    return end_over_generator(p).obj


def canonical_end_presentation(cat):
    """The canonical end with its inclusion into G^dual (x) G (hopf only).

    Returns (obj, inclusion, cogenerator); the inclusion is the end's
    structure map at the cogenerator.
    """
    _require_hopf(cat)
    cog = cat.injective_cogenerator()
    endo = cat.hom_basis(cog, cog)
    ident = Matrix.identity(cat.field, cog.dim)
    ambient = cat.tensor(cat.dual(cog), cog)
    p = BifunctorPresentation(
        ambient.dim,
        lefts=[e.matrix.transpose().kron(ident) for e in endo],
        rights=[ident.kron(e.matrix) for e in endo],
        module_action=list(ambient.action),
        cat=cat,
        name="A",
    )
    sp = end_over_generator(p)
    return sp.obj, sp.inclusion, cog


def nakayama_right(cat, x):
    """N_r(X), the coend of Hom(X, -)* (x) -, over the projective generator."""
    _require_hopf(cat)
    gen, endo = cat.projective_generator()
    hom = cat.hom_basis(x, gen)
    h = len(hom)
    f = cat.field
    if h == 0:
        return Obj(cat, f"N_r({x.name})", 0,
                   [Matrix.zeros(f, 0, 0)] * cat.data.dim)
    ident_g = Matrix.identity(f, gen.dim)
    ident_h = Matrix.identity(f, h)
    lefts = []
    rights = []
    for e in endo:
        comp = cat.expand_in_basis([e @ fm for fm in hom], hom)  # h x h
        lefts.append(comp.transpose().kron(ident_g))
        rights.append(ident_h.kron(e.matrix))
    action = [ident_h.kron(a) for a in gen.action]
    p = BifunctorPresentation(h * gen.dim, lefts, rights,
                              module_action=action, cat=cat,
                              name=f"N_r({x.name})")
    return coend_over_generator(p).obj


def nakayama_left(cat, x):
    """N_l(X), the end of Hom(-, X) (x) -, over the injective cogenerator."""
    _require_hopf(cat)
    cog = cat.injective_cogenerator()
    endo = cat.hom_basis(cog, cog)
    hom = cat.hom_basis(cog, x)
    h = len(hom)
    f = cat.field
    if h == 0:
        return Obj(cat, f"N_l({x.name})", 0,
                   [Matrix.zeros(f, 0, 0)] * cat.data.dim)
    ident_g = Matrix.identity(f, cog.dim)
    ident_h = Matrix.identity(f, h)
    lefts = []
    rights = []
    for e in endo:
        comp = cat.expand_in_basis([fm @ e for fm in hom], hom)
        lefts.append(comp.kron(ident_g))
        rights.append(ident_h.kron(e.matrix))
    action = [ident_h.kron(a) for a in cog.action]
    p = BifunctorPresentation(h * cog.dim, lefts, rights,
                              module_action=action, cat=cat,
                              name=f"N_l({x.name})")
    return end_over_generator(p).obj


def distinguished_invertible(cat):
    """(alpha, alpha_inv) with alpha := N_r(I)^dual; fusion: the unit twice."""
    if cat.kind == "fusion":
        return cat.unit(), cat.unit()
    alpha_inv = nakayama_right(cat, cat.unit())
    alpha = cat.dual(alpha_inv)
    alpha.name, alpha_inv.name = "alpha", "alpha_inv"
    pair = cat.tensor(alpha, cat.dual(alpha))
    if cat.hom_dim(pair, cat.unit()) != 1 or cat.hom_dim(cat.unit(), pair) != 1:
        raise InvertibilityCheckFailed(
            "alpha (x) alpha^dual does not have a 1-dim Hom with the unit")
    if cat.iso_pair(pair, cat.unit()) is None:
        raise InvertibilityCheckFailed("alpha (x) alpha^dual is not the unit")
    return alpha, alpha_inv


def modified_trace_dim(cat):
    """dim Hom(alpha, I): the dimension of the possibly degenerate
    modified-trace space (equivalently, of the empty-ball skein value)."""
    if cat.kind == "fusion":
        return 1
    alpha, _ = distinguished_invertible(cat)
    return cat.hom_dim(alpha, cat.unit())


def _hom_action(cat, images, basis):
    """Coefficient matrix of a linear map sending basis[k] to images[k]."""
    return cat.expand_in_basis(images, basis)


def coend_unit_pair(cat, dualize_second):
    """The ball coend over the projective generator, two flavors.

    ``dualize_second=True``:  the coend of Hom(I, P) (x) Hom(I, P^dual)
    (the two-balls-along-a-disk excision instance, valued at the empty ball).
    ``dualize_second=False``: the coend of Hom(I, P) (x) Hom(P, I)
    (the sphere instance, dual to the two-sided modified traces).

    Returns (CoendSpace, BifunctorPresentation).
    """
    _require_hopf(cat)
    gen, endo = cat.projective_generator()
    first = cat.hom_basis(cat.unit(), gen)
    if dualize_second:
        second = cat.hom_basis(cat.unit(), cat.dual(gen))
    else:
        second = cat.hom_basis(gen, cat.unit())
    f = cat.field
    h1, h2 = len(first), len(second)
    ident1 = Matrix.identity(f, h1)
    ident2 = Matrix.identity(f, h2)
    lefts = []
    rights = []
    for e in endo:
        post = _hom_action(cat, [e @ phi for phi in first], first)
        lefts.append(post.kron(ident2))
        if dualize_second:
            ed = cat.dual_mor(e)
            act = _hom_action(cat, [ed @ psi for psi in second], second)
        else:
            act = _hom_action(cat, [psi @ e for psi in second], second)
        rights.append(ident1.kron(act))
    p = BifunctorPresentation(h1 * h2, lefts, rights, cat=cat)
    return coend_over_generator(p), p


def integrals(cat):
    """(dim of left integrals, dim of J_l (x)_H k), hopf backend only."""
    _require_hopf(cat)
    f = cat.field
    d = cat.data.dim
    eye = Matrix.identity(f, d)
    stacked = Matrix.vstack([
        cat.left_mult[g] - eye * cat.data.counit[g]
        for g in cat.data.generators
    ])
    j = stacked.kernel()  # columns are the left integrals
    k = j.cols
    if k == 0:
        return 0, 0
    rel_cols = []
    for h in range(d):
        moved = cat.right_mult[h] @ j      # columns Lambda_m . b_h
        shifted = moved - j * cat.data.counit[h]
        coords = j.solve(shifted)          # right action stays inside J_l
        rel_cols.append(coords)
    rel = Matrix.hstack(rel_cols)
    return k, k - rel.rank()


class Invariants:
    """Cached invariants of a loaded category used by the block engine."""

    def __init__(self, cat):
        self.cat = cat
        if cat.kind == "fusion":
            self.A = cat.canonical_end_obj()
            self.alpha = cat.unit()
            self.alpha_inv = cat.unit()
            self.A_inclusion = None
            self.cogenerator = None
            self.left_integrals = None
            self.integrals_tensor_k = None
        else:
            self.A, self.A_inclusion, self.cogenerator = \
                canonical_end_presentation(cat)
            self.alpha, self.alpha_inv = distinguished_invertible(cat)
            self.left_integrals, self.integrals_tensor_k = integrals(cat)
        self._pi_cache = {}

    @property
    def dim_A(self):
        return self.A.dim

    def unimodular(self):
        if self.cat.kind == "fusion":
            return True
        return self.cat.iso_pair(self.alpha, self.cat.unit()) is not None

    def modified_trace_dim(self):
        if self.cat.kind == "fusion":
            return 1
        return self.cat.hom_dim(self.alpha, self.cat.unit())

    def end_structure_map(self, target):
        """pi_X: A -> X^dual (x) X, transported from the cogenerator.

        The presentation gives pi at the injective cogenerator; dinaturality
        along any isomorphism G ~ cogenerator carries it to G.  Objects are
        keyed by identity, so repeated gluings reuse the transport.
        """
        cat = self.cat
        if target == self.cogenerator:
            return Mor(self.A, cat.tensor(cat.dual(target), target),
                       self.A_inclusion)
        key = id(target)
        if key not in self._pi_cache:
            pair = cat.iso_pair(target, self.cogenerator)
            assert pair is not None, \
                "no isomorphism onto the injective cogenerator"
            phi, phi_inv = pair
            carry = phi.matrix.transpose().kron(phi_inv.matrix)
            self._pi_cache[key] = Mor(
                self.A, cat.tensor(cat.dual(target), target),
                carry @ self.A_inclusion)
        return self._pi_cache[key]


def compute_invariants(cat):
    return Invariants(cat)


def invariants_report(cat, inv=None):
    """The JSON-ready invariants summary for a loaded category."""
    inv = inv or Invariants(cat)
    if cat.kind == "fusion":
        alpha_name = cat.data.simples[cat.data.unit]
    else:
        socle = inv.alpha
        alpha_name = _describe_module(cat, socle)
    return {
        "alpha": alpha_name,
        "dim_A": inv.dim_A,
        "unimodular": inv.unimodular(),
        "dim_modified_traces": inv.modified_trace_dim(),
        "dim_left_integrals": inv.left_integrals,
        "dim_integrals_tensor_k": inv.integrals_tensor_k,
    }


def _describe_module(cat, obj):
    """Name a computed object by a roster module when one is isomorphic."""
    for name in cat.module_names():
        m = cat.module(name)
        if m.dim == obj.dim and cat.iso_pair(obj, m) is not None:
            return name
    return f"<{obj.dim}-dimensional module>"
