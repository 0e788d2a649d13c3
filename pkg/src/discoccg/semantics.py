# -*- coding: utf-8 -*-
"""Tensor-network evaluation of string diagrams over finite vector spaces.

Word boxes look their tensors up in a lexicon, cups contract adjacent legs
against the identity matrix, caps inject identity-matrix states, swaps
transpose legs.  Layers are contracted in layer order; no contraction-order
optimization, determinism over speed.

Random lexicons are generated by a SplitMix64 stream (documented constants
below) so that stored test vectors pin the generator across implementations:
entries are i.i.d. uniform on [-1, 1), keyed by word label, wire signature
and a user seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .diagram import Cap, Cup, Diagram, Swap, Wire, WordBox, RObject, well_formed

# SplitMix64 constants (Steele, Lea & Flood's generator).
_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# FNV-1a 64-bit, used to fold word labels into per-entry seeds.
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


class SemanticsError(ValueError):
    pass


def splitmix64(state: int) -> tuple[int, int]:
    """One SplitMix64 step: returns (output, next state)."""
    state = (state + _GAMMA) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    z ^= z >> 31
    return z, state


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _MASK
    return h


def unit_interval(u64: int) -> float:
    """Map a 64-bit word to [-1, 1) using the top 53 bits."""
    return (u64 >> 11) * 2.0 ** -53 * 2.0 - 1.0


@dataclass(frozen=True)
class DimAssignment:
    """Base-to-dimension map; adjoints inherit the base's dimension."""

    dims: dict[str, int] = field(default_factory=dict)
    default: int = 2

    def __post_init__(self):
        for base, dim in self.dims.items():
            if dim < 1:
                raise SemanticsError(f"dimension for {base!r} must be >= 1")
        if self.default < 1:
            raise SemanticsError("default dimension must be >= 1")

    def of(self, wire: Wire) -> int:
        return self.dims.get(wire.base, self.default)


@dataclass(frozen=True)
class Tensor:
    """Dense tensor with one leg per wire, row-major data."""

    wires: tuple[Wire, ...]
    dims: tuple[int, ...]
    array: np.ndarray

    def to_json(self) -> str:
        payload = {
            "shape": [{"base": w.base, "z": w.z, "dim": d}
                      for w, d in zip(self.wires, self.dims)],
            "data": [float(x) for x in self.array.reshape(-1)],
        }
        return json.dumps(payload)

    @staticmethod
    def from_json(text: str) -> "Tensor":
        payload = json.loads(text)
        wires = tuple(Wire(e["base"], e["z"]) for e in payload["shape"])
        dims = tuple(e["dim"] for e in payload["shape"])
        arr = np.array(payload["data"], dtype=float).reshape(dims)
        return Tensor(wires, dims, arr)


def _signature(cod: RObject) -> str:
    return ",".join(f"{w.base}:{w.z}" for w in cod)


@dataclass
class Lexicon:
    """Word tensors, generated deterministically per (label, codomain, seed).

    ``entries`` may pre-seed specific words; everything else is drawn from the
    SplitMix64 stream.  With ``complex_field`` set, entries get independent
    real and imaginary parts.
    """

    dims: DimAssignment
    seed: int = 0
    entries: dict[tuple[str, tuple[Wire, ...]], Tensor] = field(default_factory=dict)
    complex_field: bool = False

    def tensor_for(self, label: str, cod: RObject) -> Tensor:
        key = (label, tuple(cod))
        if key in self.entries:
            t = self.entries[key]
            if t.dims != tuple(self.dims.of(w) for w in cod):
                raise SemanticsError(f"stored tensor for {label!r} has wrong shape")
            return t
        shape = tuple(self.dims.of(w) for w in cod)
        count = int(np.prod(shape)) if shape else 1
        state = (self.seed ^ fnv1a64(f"{label}|{_signature(cod)}".encode())) & _MASK
        if self.complex_field:
            data = np.empty(2 * count)
            for i in range(2 * count):
                value, state = splitmix64(state)
                data[i] = unit_interval(value)
            arr = (data[:count] + 1j * data[count:]).reshape(shape)
        else:
            data = np.empty(count)
            for i in range(count):
                value, state = splitmix64(state)
                data[i] = unit_interval(value)
            arr = data.reshape(shape)
        t = Tensor(tuple(cod), shape, arr)
        self.entries[key] = t
        return t


def evaluate(d: Diagram, dims: DimAssignment, lex: Lexicon) -> Tensor:
    """Contract a state diagram (empty dom) to the tensor on its codomain."""
    problems = well_formed(d)
    if problems:
        raise SemanticsError("diagram is not well-formed: " + "; ".join(problems))
    if len(d.dom) != 0:
        raise SemanticsError("evaluate expects a state (empty domain)")
    dtype = complex if lex.complex_field else float
    frontier = np.array(1.0, dtype=dtype)
    for offset, gen in d.layers:
        if isinstance(gen, WordBox):
            t = lex.tensor_for(gen.label, gen.wires)
            frontier = _insert(frontier, t.array.astype(dtype, copy=False), offset)
        elif isinstance(gen, Cup):
            frontier = np.trace(frontier, axis1=offset, axis2=offset + 1)
        elif isinstance(gen, Cap):
            dim = dims.of(Wire(gen.base, gen.z))
            frontier = _insert(frontier, np.eye(dim, dtype=dtype), offset)
        elif isinstance(gen, Swap):
            frontier = np.swapaxes(frontier, offset, offset + 1)
        else:  # pragma: no cover
            raise SemanticsError(f"unknown generator {gen!r}")
    shape = tuple(dims.of(w) for w in d.cod)
    if frontier.shape != shape:
        raise SemanticsError(
            f"evaluation produced shape {frontier.shape}, cod expects {shape}")
    return Tensor(tuple(d.cod), shape, frontier)


def _insert(frontier: np.ndarray, block: np.ndarray, offset: int) -> np.ndarray:
    """Tensor ``block``'s axes into ``frontier`` starting at axis ``offset``."""
    out = np.tensordot(frontier, block, axes=0)
    k = block.ndim
    n = frontier.ndim
    if k == 0 or offset == n:
        return out
    src = list(range(n, n + k))
    dst = list(range(offset, offset + k))
    return np.moveaxis(out, src, dst)


def semantically_equal(d1: Diagram, d2: Diagram, dims: DimAssignment,
                       seeds: list[int], rtol: float = 1e-9,
                       atol: float = 1e-12) -> bool:
    """Evaluate both diagrams under shared random lexicons for every seed."""
    if d1.cod != d2.cod:
        raise SemanticsError(f"codomain mismatch: {d1.cod} vs {d2.cod}")
    for seed in seeds:
        lex = Lexicon(dims, seed=seed)
        t1 = evaluate(d1, dims, lex)
        t2 = evaluate(d2, dims, lex)
        if not np.allclose(t1.array, t2.array, rtol=rtol, atol=atol):
            return False
    return True
