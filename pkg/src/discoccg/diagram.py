# -*- coding: utf-8 -*-
"""Layered string diagrams over typed wires with integer adjoint winding.

A wire is a base symbol plus a winding number z (0 plain, +1 right adjoint,
-1 left adjoint, iterating).  A diagram is a list of layers; each layer
applies one generator (word box, cup, cap or swap) at an offset, with
identities everywhere else.  Composition is layer concatenation, tensoring is
whiskering.

>>> n = RObject.parse("n")
>>> (n.r.l, n.l.r) == (n, n)
True
>>> snake = Diagram.build(n, [(1, Cap("n", 0)), (0, Cup("n", 0))])
>>> snake.cod == n
True
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ccgtypes import Atom, Backward, CcgType, Forward

MAX_WINDING = 6

# Default images of the standard atoms; unlisted atoms map to their own name.
DEFAULT_ATOM_MAP = {"NP": "n", "S": "s", "PP": "p"}


class DiagramError(ValueError):
    """Boundary or generator mismatch while building a diagram."""


@dataclass(frozen=True)
class Wire:
    base: str
    z: int = 0

    def __post_init__(self):
        if abs(self.z) > MAX_WINDING:
            raise DiagramError(f"winding {self.z} on {self.base} exceeds |z| <= {MAX_WINDING}")

    @property
    def l(self) -> "Wire":
        return Wire(self.base, self.z - 1)

    @property
    def r(self) -> "Wire":
        return Wire(self.base, self.z + 1)

    def __str__(self) -> str:
        return self.base + (-self.z * ".l" if self.z < 0 else self.z * ".r")


@dataclass(frozen=True)
class RObject:
    """An ordered list of wires; the empty list is the monoidal unit."""

    wires: tuple[Wire, ...] = ()

    @staticmethod
    def parse(spec: str) -> "RObject":
        """Build from a compact spec like ``"n.r s n.l"``."""
        out = []
        for tok in spec.split():
            base, _, tail = tok.partition(".")
            z = tail.count("r") - tail.count("l")
            out.append(Wire(base, z))
        return RObject(tuple(out))

    def __len__(self) -> int:
        return len(self.wires)

    def __iter__(self):
        return iter(self.wires)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return RObject(self.wires[key])
        return self.wires[key]

    def __matmul__(self, other: "RObject") -> "RObject":
        return RObject(self.wires + other.wires)

    @property
    def l(self) -> "RObject":
        return RObject(tuple(w.l for w in reversed(self.wires)))

    @property
    def r(self) -> "RObject":
        return RObject(tuple(w.r for w in reversed(self.wires)))

    def __str__(self) -> str:
        return " ".join(str(w) for w in self.wires) if self.wires else "1"


EMPTY = RObject()


@dataclass(frozen=True)
class WordBox:
    label: str
    wires: RObject

    @property
    def dom(self) -> RObject:
        return EMPTY

    @property
    def cod(self) -> RObject:
        return self.wires

    def __str__(self) -> str:
        return f"{self.label}:{self.wires}"


@dataclass(frozen=True)
class Cup:
    """Contracts the adjacent pair (base.z, base.z+1); exactly the pregroup
    contractions p·pʳ → 1 (z = 0) and pˡ·p → 1 (z = -1)."""

    base: str
    z: int

    @property
    def dom(self) -> RObject:
        return RObject((Wire(self.base, self.z), Wire(self.base, self.z + 1)))

    @property
    def cod(self) -> RObject:
        return EMPTY

    def __str__(self) -> str:
        return f"cup({Wire(self.base, self.z)}, {Wire(self.base, self.z + 1)})"


@dataclass(frozen=True)
class Cap:
    """Creates the pair (base.z+1, base.z), dual to :class:`Cup`."""

    base: str
    z: int

    @property
    def dom(self) -> RObject:
        return EMPTY

    @property
    def cod(self) -> RObject:
        return RObject((Wire(self.base, self.z + 1), Wire(self.base, self.z)))

    def __str__(self) -> str:
        return f"cap({Wire(self.base, self.z + 1)}, {Wire(self.base, self.z)})"


@dataclass(frozen=True)
class Swap:
    w1: Wire
    w2: Wire

    @property
    def dom(self) -> RObject:
        return RObject((self.w1, self.w2))

    @property
    def cod(self) -> RObject:
        return RObject((self.w2, self.w1))

    def __str__(self) -> str:
        return f"swap({self.w1}, {self.w2})"


Generator = WordBox | Cup | Cap | Swap
Layer = tuple[int, Generator]


@dataclass(frozen=True)
class Diagram:
    dom: RObject
    cod: RObject
    layers: tuple[Layer, ...]

    @staticmethod
    def build(dom: RObject, layers) -> "Diagram":
        """Validating constructor: simulates the layers and derives the codomain."""
        boundary = dom
        out: list[Layer] = []
        for i, (offset, gen) in enumerate(layers):
            boundary = _apply_layer(boundary, offset, gen, i)
            out.append((offset, gen))
        return Diagram(dom, boundary, tuple(out))

    @staticmethod
    def id(obj: RObject) -> "Diagram":
        return Diagram(obj, obj, ())

    def __rshift__(self, other: "Diagram") -> "Diagram":
        return compose(self, other)

    def __matmul__(self, other: "Diagram") -> "Diagram":
        return tensor(self, other)

    def boundaries(self) -> list[RObject]:
        """The run of boundaries: entry ``i`` is the object before layer ``i``."""
        out = [self.dom]
        boundary = self.dom
        for i, (offset, gen) in enumerate(self.layers):
            boundary = _apply_layer(boundary, offset, gen, i)
            out.append(boundary)
        return out

    def count(self, kind) -> int:
        return sum(1 for _, g in self.layers if isinstance(g, kind))

    def __str__(self) -> str:
        if not self.layers:
            return f"id({self.dom})"
        return " >> ".join(f"{g}@{o}" for o, g in self.layers)


def _apply_layer(boundary: RObject, offset: int, gen: Generator, index: int) -> RObject:
    d = gen.dom
    if offset < 0 or offset + len(d) > len(boundary):
        raise DiagramError(
            f"layer {index}: {gen} at offset {offset} does not fit boundary {boundary}")
    actual = boundary[offset:offset + len(d)]
    if actual != d:
        raise DiagramError(
            f"layer {index}: {gen} expects {d}, boundary has {actual} at offset {offset}")
    return boundary[:offset] @ gen.cod @ boundary[offset + len(d):]


def compose(d1: Diagram, d2: Diagram) -> Diagram:
    if d1.cod != d2.dom:
        raise DiagramError(f"compose boundary mismatch: cod {d1.cod} vs dom {d2.dom}")
    return Diagram(d1.dom, d2.cod, d1.layers + d2.layers)


def tensor(d1: Diagram, d2: Diagram) -> Diagram:
    """Whisker ``d1``'s layers first, then ``d2``'s shifted past ``d1``'s codomain."""
    shift = len(d1.cod)
    shifted = tuple((o + shift, g) for o, g in d2.layers)
    return Diagram(d1.dom @ d2.dom, d1.cod @ d2.cod, d1.layers + shifted)


def well_formed(d: Diagram) -> list[str]:
    """Total check of the layered typing invariant; empty list when valid."""
    problems: list[str] = []
    boundary = d.dom
    for i, (offset, gen) in enumerate(d.layers):
        try:
            boundary = _apply_layer(boundary, offset, gen, i)
        except DiagramError as exc:
            return problems + [str(exc)]
    if boundary != d.cod:
        problems.append(f"final boundary {boundary} does not match cod {d.cod}")
    return problems


def f_object(t: CcgType, atom_map: dict[str, str] | None = None) -> RObject:
    """The functor on objects: atoms to single wires, homs to adjoint blocks.

    ``X ⤚ Y`` maps to ``f(X).r @ f(Y)`` and ``X ⤙ Y`` to ``f(X) @ f(Y).l``.

    >>> print(f_object(Forward(Backward(Atom("NP"), Atom("S")), Atom("NP"))))
    n.r s n.l
    """
    amap = DEFAULT_ATOM_MAP if atom_map is None else atom_map
    if isinstance(t, Atom):
        return RObject((Wire(amap.get(t.name, t.name), 0),))
    if isinstance(t, Forward):
        return f_object(t.result, amap) @ f_object(t.argument, amap).l
    return f_object(t.argument, amap).r @ f_object(t.result, amap)


def cup_block(block: RObject, start: int) -> list[Layer]:
    """Cups closing ``block.l @ block`` (sitting at ``start``), innermost pair first."""
    m = len(block)
    return [(start + m - 1 - i, Cup(block[i].base, block[i].z - 1)) for i in range(m)]


def cup_block_r(block: RObject, start: int) -> list[Layer]:
    """Cups closing ``block @ block.r`` (sitting at ``start``), innermost pair first."""
    m = len(block)
    return [(start + m - 1 - i, Cup(block[m - 1 - i].base, block[m - 1 - i].z))
            for i in range(m)]


def cap_block(block: RObject, start: int) -> list[Layer]:
    """Caps creating ``block @ block.l`` at ``start``, outermost pair first."""
    return [(start + i, Cap(block[i].base, block[i].z - 1)) for i in range(len(block))]


def cap_block_r(block: RObject, start: int) -> list[Layer]:
    """Caps creating ``block.r @ block`` at ``start``, outermost pair first."""
    m = len(block)
    return [(start + i, Cap(block[m - 1 - i].base, block[m - 1 - i].z)) for i in range(m)]


def swap_blocks(left: RObject, right: RObject, start: int) -> list[Layer]:
    """Exchange two adjacent blocks ``[left right] -> [right left]``.

    Factorized into elementary swaps: the rightmost wire of ``left`` bubbles
    right across all of ``right`` first, then the next, and so on.
    """
    layers: list[Layer] = []
    wires = list(left) + list(right)
    m, k = len(left), len(right)
    for i in range(m - 1, -1, -1):
        # wires[i] walks right past k wires
        for j in range(k):
            pos = i + j
            layers.append((start + pos, Swap(wires[pos], wires[pos + 1])))
            wires[pos], wires[pos + 1] = wires[pos + 1], wires[pos]
    return layers


# --- JSON interchange -------------------------------------------------------

def wire_to_json(w: Wire) -> dict:
    return {"base": w.base, "z": w.z}


def _wire_from_json(obj) -> Wire:
    return Wire(obj["base"], obj["z"])


def _gen_to_json(gen: Generator) -> dict:
    if isinstance(gen, WordBox):
        return {"kind": "word", "label": gen.label,
                "cod": [wire_to_json(w) for w in gen.wires]}
    if isinstance(gen, Cup):
        return {"kind": "cup", "base": gen.base, "z": gen.z}
    if isinstance(gen, Cap):
        return {"kind": "cap", "base": gen.base, "z": gen.z}
    return {"kind": "swap", "w1": wire_to_json(gen.w1), "w2": wire_to_json(gen.w2)}


def _gen_from_json(obj) -> Generator:
    kind = obj["kind"]
    if kind == "word":
        return WordBox(obj["label"], RObject(tuple(_wire_from_json(w) for w in obj["cod"])))
    if kind == "cup":
        return Cup(obj["base"], obj["z"])
    if kind == "cap":
        return Cap(obj["base"], obj["z"])
    if kind == "swap":
        return Swap(_wire_from_json(obj["w1"]), _wire_from_json(obj["w2"]))
    raise DiagramError(f"unknown generator kind {kind!r}")


def diagram_to_json(d: Diagram) -> str:
    payload = {
        "dom": [wire_to_json(w) for w in d.dom],
        "cod": [wire_to_json(w) for w in d.cod],
        "layers": [{"offset": o, "gen": _gen_to_json(g)} for o, g in d.layers],
    }
    return json.dumps(payload, ensure_ascii=False)


def diagram_from_json(text: str | bytes) -> Diagram:
    payload = json.loads(text)
    dom = RObject(tuple(_wire_from_json(w) for w in payload["dom"]))
    layers = [(entry["offset"], _gen_from_json(entry["gen"])) for entry in payload["layers"]]
    d = Diagram.build(dom, layers)
    cod = RObject(tuple(_wire_from_json(w) for w in payload["cod"]))
    if d.cod != cod:
        raise DiagramError(f"stored cod {cod} does not match layers (computed {d.cod})")
    return d
