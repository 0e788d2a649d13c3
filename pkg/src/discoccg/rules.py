# -*- coding: utf-8 -*-
"""The CCG rule catalog: combinatory schemas, derivation trees and validation."""

from __future__ import annotations

from dataclasses import dataclass

from .ccgtypes import Backward, CcgType, Forward

# Rule kinds.  FA/BA: application; FC/BC: harmonic composition; GFC/GBC their
# generalized forms of degree n (n = 1 coincides with FC/BC); FTR/BTR:
# type-raising towards a target type; FCX/BCX: crossed composition, with
# GFCX/GBCX generalized variants; UNARY and CONJ are parser artifacts that the
# ingest passes eliminate before lowering.
KINDS = (
    "LEX", "FA", "BA", "FC", "BC", "GFC", "GBC", "FTR", "BTR",
    "FCX", "BCX", "GFCX", "GBCX", "UNARY", "CONJ",
)

MAX_COMPOSITION_DEGREE = 4


class RuleError(ValueError):
    """A rule was applied to inputs that do not match its schema."""


@dataclass(frozen=True)
class RuleLabel:
    kind: str
    degree: int | None = None
    target: CcgType | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.kind in ("GFC", "GBC", "GFCX", "GBCX"):
            if self.degree is None or self.degree < 1:
                raise ValueError(f"{self.kind} requires a degree >= 1")
        elif self.degree is not None:
            raise ValueError(f"{self.kind} takes no degree")
        if self.kind in ("FTR", "BTR", "UNARY"):
            if self.target is None:
                raise ValueError(f"{self.kind} requires a target type")
        elif self.target is not None:
            raise ValueError(f"{self.kind} takes no target type")

    def __str__(self) -> str:
        if self.degree is not None:
            return f"{self.kind}:{self.degree}"
        if self.target is not None:
            return f"{self.kind}:{self.target.to_slash()}"
        return self.kind

    @property
    def arity(self) -> int:
        return 1 if self.kind in ("FTR", "BTR", "UNARY") else 2


FA = RuleLabel("FA")
BA = RuleLabel("BA")
FC = RuleLabel("FC")
BC = RuleLabel("BC")
FCX = RuleLabel("FCX")
BCX = RuleLabel("BCX")


def gfc(n: int) -> RuleLabel:
    return RuleLabel("GFC", degree=n)


def gbc(n: int) -> RuleLabel:
    return RuleLabel("GBC", degree=n)


def ftr(target: CcgType) -> RuleLabel:
    return RuleLabel("FTR", target=target)


def btr(target: CcgType) -> RuleLabel:
    return RuleLabel("BTR", target=target)


def unary(target: CcgType) -> RuleLabel:
    return RuleLabel("UNARY", target=target)


def _fail(rule: RuleLabel, expected: str, inputs: list[CcgType]) -> RuleError:
    actual = ", ".join(t.to_slash() for t in inputs)
    return RuleError(f"{rule}: expected {expected}, got [{actual}]")


def peel_forward(t: CcgType, n: int) -> tuple[CcgType, list[CcgType]]:
    """Strip ``n`` outermost forward arguments, returning (innermost result, args).

    Args come back outermost-first; ``peel_forward((Y/Z2)/Z1, 2) == (Y, [Z1, Z2])``.
    """
    args: list[CcgType] = []
    for _ in range(n):
        if not isinstance(t, Forward):
            raise ValueError("not enough forward arguments")
        args.append(t.argument)
        t = t.result
    return t, args


def rebuild_forward(result: CcgType, args: list[CcgType]) -> CcgType:
    t = result
    for a in reversed(args):
        t = Forward(t, a)
    return t


def peel_backward(t: CcgType, n: int) -> tuple[CcgType, list[CcgType]]:
    """Strip ``n`` outermost backward arguments; mirror of :func:`peel_forward`."""
    args: list[CcgType] = []
    for _ in range(n):
        if not isinstance(t, Backward):
            raise ValueError("not enough backward arguments")
        args.append(t.argument)
        t = t.result
    return t, args


def rebuild_backward(result: CcgType, args: list[CcgType]) -> CcgType:
    t = result
    for a in reversed(args):
        t = Backward(a, t)
    return t


def apply_rule(rule: RuleLabel, inputs: list[CcgType]) -> CcgType:
    """Apply a combinatory rule schema to input types and return the output type.

    Raises :class:`RuleError` on arity or shape mismatch.  UNARY, CONJ and LEX
    are not combinatory rules: they are resolved by the ingest passes and
    rejected here.
    """
    if rule.kind in ("LEX", "UNARY", "CONJ"):
        raise RuleError(f"{rule.kind} is not a combinatory rule")
    if len(inputs) != rule.arity:
        raise RuleError(f"{rule}: expected {rule.arity} inputs, got {len(inputs)}")

    if rule.kind == "FA":
        fn, arg = inputs
        if not (isinstance(fn, Forward) and fn.argument == arg):
            raise _fail(rule, "(X ⤙ Y, Y)", inputs)
        return fn.result

    if rule.kind == "BA":
        arg, fn = inputs
        if not (isinstance(fn, Backward) and fn.argument == arg):
            raise _fail(rule, "(Y, Y ⤚ X)", inputs)
        return fn.result

    if rule.kind in ("FC", "GFC"):
        n = 1 if rule.kind == "FC" else rule.degree
        if n > MAX_COMPOSITION_DEGREE:
            raise RuleError(f"{rule}: degree exceeds the bound {MAX_COMPOSITION_DEGREE}")
        fn, secondary = inputs
        if not isinstance(fn, Forward):
            raise _fail(rule, "(X ⤙ Y, (Y ⤙ Z) ⤙ ...)", inputs)
        try:
            inner, args = peel_forward(secondary, n)
        except ValueError:
            raise _fail(rule, f"secondary with {n} forward arguments", inputs) from None
        if inner != fn.argument:
            raise _fail(rule, "secondary innermost result matching Y", inputs)
        return rebuild_forward(fn.result, args)

    if rule.kind in ("BC", "GBC"):
        n = 1 if rule.kind == "BC" else rule.degree
        if n > MAX_COMPOSITION_DEGREE:
            raise RuleError(f"{rule}: degree exceeds the bound {MAX_COMPOSITION_DEGREE}")
        secondary, fn = inputs
        if not isinstance(fn, Backward):
            raise _fail(rule, "(... ⤚ (Z ⤚ Y), Y ⤚ X)", inputs)
        try:
            inner, args = peel_backward(secondary, n)
        except ValueError:
            raise _fail(rule, f"secondary with {n} backward arguments", inputs) from None
        if inner != fn.argument:
            raise _fail(rule, "secondary innermost result matching Y", inputs)
        return rebuild_backward(fn.result, args)

    if rule.kind == "FTR":
        (x,) = inputs
        t = rule.target
        return Forward(t, Backward(x, t))

    if rule.kind == "BTR":
        (x,) = inputs
        t = rule.target
        return Backward(Forward(t, x), t)

    if rule.kind in ("FCX", "GFCX"):
        n = 1 if rule.kind == "FCX" else rule.degree
        if n > MAX_COMPOSITION_DEGREE:
            raise RuleError(f"{rule}: degree exceeds the bound {MAX_COMPOSITION_DEGREE}")
        fn, secondary = inputs
        if not isinstance(fn, Forward):
            raise _fail(rule, "(X ⤙ Y, Z ⤚ Y)", inputs)
        try:
            crossed, trailing = peel_forward(secondary, n - 1)
        except ValueError:
            raise _fail(rule, f"secondary with {n - 1} trailing forward arguments", inputs) from None
        if not (isinstance(crossed, Backward) and crossed.result == fn.argument):
            raise _fail(rule, "(X ⤙ Y, Z ⤚ Y)", inputs)
        return rebuild_forward(Backward(crossed.argument, fn.result), trailing)

    if rule.kind in ("BCX", "GBCX"):
        n = 1 if rule.kind == "BCX" else rule.degree
        if n > MAX_COMPOSITION_DEGREE:
            raise RuleError(f"{rule}: degree exceeds the bound {MAX_COMPOSITION_DEGREE}")
        secondary, fn = inputs
        if not isinstance(fn, Backward):
            raise _fail(rule, "(Y ⤙ Z, Y ⤚ X)", inputs)
        try:
            crossed, trailing = peel_backward(secondary, n - 1)
        except ValueError:
            raise _fail(rule, f"secondary with {n - 1} trailing backward arguments", inputs) from None
        if not (isinstance(crossed, Forward) and crossed.result == fn.argument):
            raise _fail(rule, "(Y ⤙ Z, Y ⤚ X)", inputs)
        return rebuild_backward(Forward(fn.result, crossed.argument), trailing)

    raise RuleError(f"unhandled rule {rule}")  # pragma: no cover


@dataclass(frozen=True)
class Leaf:
    word: str
    cat: CcgType


@dataclass(frozen=True)
class Unary:
    rule: RuleLabel
    child: "Derivation"
    cat: CcgType


@dataclass(frozen=True)
class Binary:
    rule: RuleLabel
    left: "Derivation"
    right: "Derivation"
    cat: CcgType


Derivation = Leaf | Unary | Binary


@dataclass(frozen=True)
class Violation:
    path: tuple[int, ...]
    message: str

    def __str__(self) -> str:
        where = "/".join(map(str, self.path)) or "root"
        return f"{where}: {self.message}"


def leaves(d: Derivation) -> list[Leaf]:
    if isinstance(d, Leaf):
        return [d]
    if isinstance(d, Unary):
        return leaves(d.child)
    return leaves(d.left) + leaves(d.right)


def rule_histogram(d: Derivation) -> dict[str, int]:
    hist: dict[str, int] = {}

    def walk(node: Derivation):
        if isinstance(node, Leaf):
            return
        key = str(node.rule)
        hist[key] = hist.get(key, 0) + 1
        if isinstance(node, Unary):
            walk(node.child)
        else:
            walk(node.left)
            walk(node.right)

    walk(d)
    return dict(sorted(hist.items()))


def validate(d: Derivation) -> list[Violation]:
    """Check that every node's type is the rule-schema output of its children.

    Total: returns a list of violations (empty when the derivation is legal).
    Unresolved UNARY and CONJ nodes are reported; they must be eliminated by
    the ingest passes first.
    """
    out: list[Violation] = []

    def walk(node: Derivation, path: tuple[int, ...]):
        if isinstance(node, Leaf):
            if not node.word:
                out.append(Violation(path, "empty word at leaf"))
            return
        if isinstance(node, Unary):
            walk(node.child, path + (0,))
            kids = [node.child.cat]
        else:
            walk(node.left, path + (0,))
            walk(node.right, path + (1,))
            kids = [node.left.cat, node.right.cat]
        try:
            produced = apply_rule(node.rule, kids)
        except RuleError as exc:
            out.append(Violation(path, str(exc)))
            return
        if produced != node.cat:
            out.append(Violation(
                path,
                f"{node.rule} produces {produced.to_slash()}, node claims {node.cat.to_slash()}",
            ))

    walk(d, ())
    return out
