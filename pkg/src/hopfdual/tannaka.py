"""Reconstruction of algebras from modules: annihilator quotients, recovery
of the monoid algebra from its regular representation, and recovery of the
coproduct from tensor products of representations."""

from __future__ import annotations

from dataclasses import dataclass

from .bialgebra import BialgebraMorphism, FinBialgebra, check_morphism
from .exact import FieldSpec, Matrix, Span, kron, solve
from .monoids import FiniteMonoid, monoid_algebra
from .report import Report
from .reps import AlgebraModule, Representation, rep_to_module


@dataclass
class ReconstructionResult:
    """Quotient of an algebra by the annihilator of a module.

    ``algebra`` is the image of the action map with its induced product
    (coalgebra data absent); ``quotient_map`` sends the ambient algebra
    onto it; ``faithful_action`` is the induced module, faithful by
    construction. ``degenerate`` flags the zero module.
    """
    algebra: FinBialgebra
    quotient_map: Matrix
    faithful_action: AlgebraModule
    degenerate: bool


def _flatten(m: Matrix) -> tuple:
    return tuple(x for row in m.entries for x in row)


def annihilator_quotient(A: FinBialgebra, X: AlgebraModule) -> ReconstructionResult:
    """A / Ann(X), realized as the span of the action images inside the
    endomorphism algebra of X, with the induced product."""
    if X.algebra is not A:
        if X.algebra.mult != A.mult or X.algebra.unit != A.unit or \
                X.algebra.field != A.field:
            raise ValueError("module is not over the given algebra")
    f = A.field
    d2 = X.dim * X.dim
    flat = [_flatten(m) for m in X.matrices]
    if X.dim == 0:
        zero_alg = FinBialgebra(f, 0, (), {}, (), has_bialgebra=False)
        qmap = Matrix.zero(f, 0, A.dim)
        return ReconstructionResult(zero_alg, qmap,
                                    AlgebraModule(zero_alg, [], validate=False),
                                    degenerate=True)
    # basis of the image: pivot columns of the basis-wise action images
    image_cols = Matrix.from_columns(f, flat)
    from .exact import rref
    ech = rref(image_cols)
    pivots = ech.pivots
    dim_q = len(pivots)
    basis_mats = [X.matrices[p] for p in pivots]
    basis_flat = Matrix.from_columns(f, [flat[p] for p in pivots])
    # coordinates of each generator image over the chosen basis
    qcols = []
    for i in range(A.dim):
        coords = solve(basis_flat, flat[i])
        if coords is None:
            raise RuntimeError("action image fell outside its own span")
        qcols.append(coords)
    qmap = Matrix.from_columns(f, qcols)
    # induced product on the image basis
    mult = {}
    for i in range(dim_q):
        for j in range(dim_q):
            prod = basis_mats[i] * basis_mats[j]
            coords = solve(basis_flat, _flatten(prod))
            if coords is None:
                raise RuntimeError("image span is not closed under products")
            for k, c in enumerate(coords):
                if c != f.zero:
                    mult[(i, j, k)] = c
    unit = solve(basis_flat, _flatten(Matrix.identity(f, X.dim)))
    if unit is None:
        raise RuntimeError("identity action is outside the image span")
    names = tuple(f"[{A.name_of(p)}]" for p in pivots)
    AX = FinBialgebra(f, dim_q, names, mult, unit, has_bialgebra=False)
    action = AlgebraModule(AX, basis_mats, validate=True)
    # faithfulness: the basis matrices are linearly independent by choice
    # of pivots, so only 0 acts as 0; double-check the kernel dimensions.
    ann_dim = A.dim - dim_q
    from .exact import kernel_basis
    ann = kernel_basis(Matrix.from_columns(f, flat))
    if len(ann) != ann_dim:
        raise RuntimeError("annihilator dimension mismatch")
    for v in ann:
        if not X.act(v).is_zero():
            raise RuntimeError("annihilator vector acts nontrivially")
    return ReconstructionResult(AX, qmap, action, degenerate=False)


def reconstruct_from_regular(G: FiniteMonoid, F: FieldSpec) -> Report:
    """Reconstruct the monoid algebra from its own regular representation
    and verify the canonical comparison is the identity on structure
    constants."""
    rep = Report(f"reconstruction of R[{G!r}] from the regular module")
    A = monoid_algebra(G, F)
    reg = rep_to_module(Representation.regular(G, F))
    result = annihilator_quotient(A, reg)
    rep.add("annihilator is zero", result.algebra.dim == A.dim,
            f"dim {result.algebra.dim} vs {A.dim}")
    morph = check_morphism(
        BialgebraMorphism(A, result.algebra, result.quotient_map),
        kind="algebra")
    rep.extend(morph, prefix="canonical map: ")
    from .exact import inverse
    rep.add("canonical map is bijective",
            result.algebra.dim == A.dim
            and inverse(result.quotient_map) is not None)
    if result.algebra.dim == A.dim:
        ident = Matrix.identity(F, A.dim)
        rep.add("canonical basis matches (quotient map is the identity)",
                result.quotient_map == ident)
        rep.add("structure constants agree", result.algebra.mult == A.mult
                and result.algebra.unit == A.unit)
    return rep


def tensor_coproduct_recovery(G: FiniteMonoid, reps) -> Report:
    """For each pair of representations, compare the diagonal action on the
    tensor product with the action computed through the coproduct of the
    monoid algebra, entry by entry."""
    report = Report(f"tensor products via the coproduct for {G!r}")
    reps = list(reps)
    if not reps:
        report.add("no representations supplied", True)
        return report
    F = reps[0].field
    A = monoid_algebra(G, F)
    f = F
    for a_idx, X in enumerate(reps):
        for b_idx, Y in enumerate(reps):
            XY = Representation.tensor(X, Y)
            ok = True
            for g in range(G.size):
                lhs = XY.action(g)
                rhs = Matrix.zero(f, XY.dim, XY.dim)
                for (i, j), c in A.comult_basis(g).items():
                    rhs = rhs + kron(X.action(i), Y.action(j)).scale(c)
                if lhs != rhs:
                    ok = False
                    report.add(f"pair ({a_idx},{b_idx})", False,
                               f"element {G.names[g]}")
                    break
            if ok:
                report.add(f"pair ({a_idx},{b_idx}) diagonal action = "
                           "coproduct action", True)
    return report


def image_span_dimension(X: Representation) -> int:
    """Dimension of the span of the action matrices inside End(X); equals
    the dimension of the reconstructed algebra."""
    f = X.field
    sp = Span(f, X.dim * X.dim)
    for m in X.matrices:
        sp.add(_flatten(m))
    return sp.dim
