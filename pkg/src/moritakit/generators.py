"""Small named categories: the interval, arrows, and the retract/sum generators."""
from __future__ import annotations

from .lincat import CategoryPresentation, KCategory, KFunctor, category_from_matrices, free_kcategory
from .scalars import Field


def bullet(F: Field) -> KCategory:
    C = CategoryPresentation(["0"], {"1_0": ("0", "0")}, {("1_0", "1_0"): "1_0"}, {"0": "1_0"})
    return free_kcategory(C, F, name="bullet")


def one_arrow(F: Field) -> KCategory:
    arrows = {"1_0": ("0", "0"), "1_1": ("1", "1"), "a": ("0", "1")}
    comp = {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1", ("a", "1_0"): "a", ("1_1", "a"): "a"}
    return free_kcategory(CategoryPresentation(["0", "1"], arrows, comp, {"0": "1_0", "1": "1_1"}), F,
                          name="arrow")


def parallel_pair(F: Field) -> KCategory:
    arrows = {"1_0": ("0", "0"), "1_1": ("1", "1"), "a": ("0", "1"), "b": ("0", "1")}
    comp = {("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1"}
    for f in ("a", "b"):
        comp[(f, "1_0")] = f
        comp[("1_1", f)] = f
    return free_kcategory(CategoryPresentation(["0", "1"], arrows, comp, {"0": "1_0", "1": "1_1"}), F,
                          name="P")


def interval_presentation() -> CategoryPresentation:
    """Two objects and one isomorphism ``u: 0 -> 1``."""
    arrows = {"1_0": ("0", "0"), "u": ("0", "1"), "u^-1": ("1", "0"), "1_1": ("1", "1")}
    comp = {
        ("1_0", "1_0"): "1_0", ("1_1", "1_1"): "1_1",
        ("u", "1_0"): "u", ("1_1", "u"): "u",
        ("u^-1", "1_1"): "u^-1", ("1_0", "u^-1"): "u^-1",
        ("u^-1", "u"): "1_0", ("u", "u^-1"): "1_1",
    }
    return CategoryPresentation(["0", "1"], arrows, comp, {"0": "1_0", "1": "1_1"})


def interval(F: Field) -> KCategory:
    return free_kcategory(interval_presentation(), F, name="I")


def idempotent_monoid(F: Field) -> KCategory:
    """``E(1)``: one object ``o`` with ``End = span{1, e}``, ``e^2 = e``."""
    arrows = {"1": ("o", "o"), "e": ("o", "o")}
    comp = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    return free_kcategory(CategoryPresentation(["o"], arrows, comp, {"o": "1"}), F, name="E1")


def retract_category(F: Field) -> KCategory:
    """``R(1)``: ``i: r -> o``, ``p: o -> r`` with ``p i = 1_r``; ``End(o) = span{1_o, ip}``."""
    arrows = {"1_o": ("o", "o"), "ip": ("o", "o"), "1_r": ("r", "r"), "p": ("o", "r"), "i": ("r", "o")}
    comp = {
        ("1_o", "1_o"): "1_o", ("1_o", "ip"): "ip", ("ip", "1_o"): "ip", ("ip", "ip"): "ip",
        ("1_r", "1_r"): "1_r",
        ("p", "1_o"): "p", ("1_r", "p"): "p", ("p", "ip"): "p",
        ("i", "1_r"): "i", ("1_o", "i"): "i", ("ip", "i"): "i",
        ("p", "i"): "1_r", ("i", "p"): "ip",
    }
    return free_kcategory(CategoryPresentation(["o", "r"], arrows, comp, {"o": "1_o", "r": "1_r"}), F,
                          name="R1")


def sum_category(F: Field) -> KCategory:
    """``S(2)``: ``s`` is a direct sum of ``o1`` and ``o2`` via ``i_k``, ``p_k``.

    Realized inside 2x2 matrices: ``o_k`` is the corner ``E_kk`` and ``s`` the identity.
    """
    z, o = F.zero(), F.one()
    E11 = [[o, z], [z, z]]
    E22 = [[z, z], [z, o]]
    I = [[o, z], [z, o]]
    bases = {
        ("o1", "o1"): [E11], ("o2", "o2"): [E22],
        ("o1", "s"): [E11], ("o2", "s"): [E22],
        ("s", "o1"): [E11], ("s", "o2"): [E22],
        ("s", "s"): [E11, E22],
    }
    return category_from_matrices(F, ["o1", "o2", "s"], bases, {"o1": E11, "o2": E22, "s": I}, name="S2")


def zero_category(F: Field) -> KCategory:
    return KCategory(F, ["0"], {}, {}, {"0": []}, name="0")


def empty_category(F: Field) -> KCategory:
    return KCategory(F, [], {}, {}, {}, name="empty")


def discrete(F: Field, objects) -> KCategory:
    objects = list(objects)
    return KCategory(F, objects, {(x, x): 1 for x in objects}, {(x, x, x): [[[F.one()]]] for x in objects},
                     {x: [F.one()] for x in objects}, name="discrete")


def generator_R0(F: Field) -> KFunctor:
    return KFunctor(empty_category(F), zero_category(F), {}, {}, name="R0")


def generator_R1(F: Field) -> KFunctor:
    """``E(1) -> R(1)``, ``e -> ip``."""
    E, R = idempotent_monoid(F), retract_category(F)
    return KFunctor(E, R, {"o": "o"}, {("o", "o"): R.basis("o", "o")}, name="R1")


def generator_S2(F: Field) -> KFunctor:
    """``{o1, o2} -> S(2)``, the inclusion of the summands."""
    D, S = discrete(F, ["o1", "o2"]), sum_category(F)
    images = {("o1", "o1"): [S.ident["o1"]], ("o2", "o2"): [S.ident["o2"]],
              ("o1", "o2"): [], ("o2", "o1"): []}
    return KFunctor(D, S, {"o1": "o1", "o2": "o2"}, images, name="S2")


def named(name: str, F: Field) -> KCategory:
    table = {
        "bullet": bullet, "arrow": one_arrow, "P": parallel_pair, "I": interval,
        "E1": idempotent_monoid, "R1": retract_category, "S2": sum_category, "0": zero_category,
    }
    return table[name](F)


def hom_signature(A: KCategory):
    return {(x, y): A.dim(x, y) for x in A.objects for y in A.objects}
