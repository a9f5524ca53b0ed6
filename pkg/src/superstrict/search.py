"""Bounded frame enumeration and countermodel search.

Canonical encodings (golden files depend on these):

* A frame on n worlds is the bit string b(0,0) b(0,1) .. b(0,n-1) b(1,0) ..
  b(n-1,n-1) m(0) .. m(n-1), where b(i,j) = 1 iff j is a successor of i and
  m(i) = 1 iff world i is normal.  Frames are enumerated in ascending order
  of that string read as a big-endian integer: relation bits first, then
  normality bits.
* A valuation for variables x1 < .. < xk (sorted by name) is the bit string
  x1@0 .. x1@(n-1) x2@0 .. xk@(n-1), enumerated the same way.
* Witness search scans sizes 1..max_n, frames in canonical order, valuations
  in canonical order, worlds in ascending order, and returns the first hit.

The inner loop evaluates a formula on one frame under every valuation at
once, as numpy arrays of world bitmasks indexed by valuation code.  Every
witness is re-verified through the scalar clauses in
:mod:`superstrict.semantics` before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .semantics import (
    Frame,
    FrameClass,
    Model,
    holds,
    relation_satisfies,
    satisfies_class,
    true_in_model,
)
from .syntax import (
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Imp,
    Or,
    Ssi,
    Sssi,
    Strict,
    Var,
    desugar,
    variables,
)


def _decode_rows(code: int, n: int) -> tuple[int, ...]:
    size = n * n
    rows = []
    for i in range(n):
        row = 0
        for j in range(n):
            if code >> (size - 1 - (i * n + j)) & 1:
                row |= 1 << j
        rows.append(row)
    return tuple(rows)


def _decode_normals(code: int, n: int) -> int:
    mask = 0
    for i in range(n):
        if code >> (n - 1 - i) & 1:
            mask |= 1 << i
    return mask


def enumerate_frames(n: int, fc: FrameClass) -> Iterator[Frame]:
    """Every frame on exactly n worlds satisfying `fc`, canonical order."""
    if n < 1:
        raise ValueError("frame size must be at least 1")
    full = (1 << n) - 1
    for rel_code in range(1 << (n * n)):
        rows = _decode_rows(rel_code, n)
        if not relation_satisfies(rows, n, fc):
            continue
        for norm_code in range(1 << n):
            normals = _decode_normals(norm_code, n)
            if fc.all_normal and normals != full:
                continue
            yield Frame(n, rows, normals)


@lru_cache(maxsize=None)
def _leaf_arrays(n: int, k: int) -> tuple[np.ndarray, ...]:
    """Per-variable extension masks indexed by valuation code."""
    codes = np.arange(1 << (k * n), dtype=np.uint32)
    arrays = []
    for i in range(k):
        mask = np.zeros_like(codes)
        for j in range(n):
            bitpos = k * n - 1 - (i * n + j)
            mask |= ((codes >> bitpos) & 1).astype(np.uint32) << j
        mask.setflags(write=False)
        arrays.append(mask)
    return tuple(arrays)


def _decode_valuation(code: int, n: int, names: Sequence[str]) -> dict[str, int]:
    k = len(names)
    out = {}
    for i, name in enumerate(names):
        mask = 0
        for j in range(n):
            if code >> (k * n - 1 - (i * n + j)) & 1:
                mask |= 1 << j
        out[name] = mask
    return out


def _vec_ext(f: Formula, frame: Frame, leaves: dict[str, np.ndarray], ncodes: int) -> np.ndarray:
    n, rel, normals = frame.n, frame.rel, frame.normals
    full = (1 << n) - 1

    def ext(g: Formula) -> np.ndarray:
        match g:
            case Var(name):
                arr = leaves.get(name)
                return arr if arr is not None else np.zeros(ncodes, dtype=np.uint32)
            case Bot():
                return np.zeros(ncodes, dtype=np.uint32)
            case And(a, b):
                return ext(a) & ext(b)
            case Or(a, b):
                return ext(a) | ext(b)
            case Imp(a, b):
                return (full ^ ext(a)) | ext(b)
            case Ssi(a, b):
                ea, eb = ext(a), ext(b)
                out = np.zeros(ncodes, dtype=np.uint32)
                for w in range(n):
                    if not normals >> w & 1:
                        continue
                    sa = ea & rel[w]
                    good = (sa != 0) & ((sa & (full ^ eb)) == 0)
                    out |= good.astype(np.uint32) << w
                return out
            case Sssi(a, b):
                ea, eb = ext(a), ext(b)
                out = np.zeros(ncodes, dtype=np.uint32)
                for w in range(n):
                    if not normals >> w & 1:
                        continue
                    sa = ea & rel[w]
                    notb = (full ^ eb) & rel[w]
                    good = (sa != 0) & ((sa & (full ^ eb)) == 0) & (notb != 0)
                    out |= good.astype(np.uint32) << w
                return out
            case Strict(a, b):
                ea, eb = ext(a), ext(b)
                out = np.zeros(ncodes, dtype=np.uint32)
                for w in range(n):
                    if not normals >> w & 1:
                        continue
                    good = (ea & rel[w] & (full ^ eb)) == 0
                    out |= good.astype(np.uint32) << w
                return out
            case Box(a):
                ea = ext(a)
                out = np.zeros(ncodes, dtype=np.uint32)
                for w in range(n):
                    if not normals >> w & 1:
                        continue
                    good = (rel[w] & (full ^ ea)) == 0
                    out |= good.astype(np.uint32) << w
                return out
            case Dia(a):
                ea = ext(a)
                out = np.zeros(ncodes, dtype=np.uint32)
                for w in range(n):
                    if not normals >> w & 1:
                        out |= np.uint32(1 << w)
                    else:
                        good = (ea & rel[w]) != 0
                        out |= good.astype(np.uint32) << w
                return out
        raise TypeError(f"not a formula: {g!r}")

    return ext(f)


@dataclass(frozen=True)
class CountermodelReport:
    """A verified countermodel: the formula fails at a normal world."""

    formula: Formula
    frame_class: FrameClass
    model: Model
    world: int
    frame_size: int

    def __post_init__(self) -> None:
        frame = self.model.frame
        if self.frame_size != frame.n:
            raise ValueError("frame_size does not match the model")
        if not satisfies_class(frame, self.frame_class):
            raise ValueError("countermodel frame is outside the requested class")
        if not frame.normals >> self.world & 1:
            raise ValueError("countermodel world is not normal")
        if holds(self.model, self.world, self.formula):
            raise ValueError("countermodel failed re-verification")


def find_countermodel(f: Formula, fc: FrameClass, max_n: int) -> CountermodelReport | None:
    """First model (canonical order, sizes 1..max_n) falsifying `f` at a
    normal world, or None."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    names = tuple(sorted(variables(f)))
    k = len(names)
    for n in range(1, max_n + 1):
        leaves = dict(zip(names, _leaf_arrays(n, k)))
        ncodes = 1 << (k * n)
        full = (1 << n) - 1
        for frame in enumerate_frames(n, fc):
            if frame.normals == 0:
                continue  # nothing can fail at a normal point
            ext = _vec_ext(f, frame, leaves, ncodes)
            fail = (full ^ ext) & frame.normals
            bad = np.nonzero(fail)[0]
            if bad.size:
                code = int(bad[0])
                mask = int(fail[code])
                world = (mask & -mask).bit_length() - 1
                model = Model(frame, _decode_valuation(code, n, names))
                return CountermodelReport(f, fc, model, world, n)
    return None


def valid_up_to(f: Formula, fc: FrameClass, max_n: int) -> bool:
    """No countermodel on any frame of the class with at most max_n worlds."""
    return find_countermodel(f, fc, max_n) is None


def rule_probe_witness(
    premises: Sequence[Formula], conclusion: Formula, fc: FrameClass, max_n: int
) -> tuple[Model, int] | None:
    """First model where every premise is true but the conclusion fails at a
    normal world, plus that world."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    names = tuple(sorted(set().union(*(variables(p) for p in premises), variables(conclusion))))
    k = len(names)
    for n in range(1, max_n + 1):
        leaves = dict(zip(names, _leaf_arrays(n, k)))
        ncodes = 1 << (k * n)
        full = (1 << n) - 1
        for frame in enumerate_frames(n, fc):
            if frame.normals == 0:
                continue
            ok = np.ones(ncodes, dtype=bool)
            for p in premises:
                ok &= ((full ^ _vec_ext(p, frame, leaves, ncodes)) & frame.normals) == 0
            cfail = (full ^ _vec_ext(conclusion, frame, leaves, ncodes)) & frame.normals
            hit = np.nonzero(ok & (cfail != 0))[0]
            if hit.size:
                code = int(hit[0])
                mask = int(cfail[code])
                world = (mask & -mask).bit_length() - 1
                model = Model(frame, _decode_valuation(code, n, names))
                if any(not true_in_model(model, p) for p in premises):
                    raise RuntimeError("rule probe witness failed re-verification")
                if holds(model, world, conclusion):
                    raise RuntimeError("rule probe witness failed re-verification")
                return model, world
    return None


def rule_preservation_probe(
    premises: Sequence[Formula], conclusion: Formula, fc: FrameClass, max_n: int
) -> Frame | None:
    """Frame of the first model witnessing that truth of the premises does
    not carry over to the conclusion, or None up to max_n."""
    wit = rule_probe_witness(premises, conclusion, fc, max_n)
    return wit[0].frame if wit else None


def definability_probe(f: Formula, fc: FrameClass, max_n: int) -> tuple[Model, int] | None:
    """First point (normal or not) where `f` and `desugar(f)` disagree."""
    if max_n < 1:
        raise ValueError("max_n must be at least 1")
    g = desugar(f)
    if g == f:
        return None
    names = tuple(sorted(variables(f) | variables(g)))
    k = len(names)
    for n in range(1, max_n + 1):
        leaves = dict(zip(names, _leaf_arrays(n, k)))
        ncodes = 1 << (k * n)
        for frame in enumerate_frames(n, fc):
            diff = _vec_ext(f, frame, leaves, ncodes) ^ _vec_ext(g, frame, leaves, ncodes)
            hit = np.nonzero(diff)[0]
            if hit.size:
                code = int(hit[0])
                mask = int(diff[code])
                world = (mask & -mask).bit_length() - 1
                model = Model(frame, _decode_valuation(code, n, names))
                if holds(model, world, f) == holds(model, world, g):
                    raise RuntimeError("definability witness failed re-verification")
                return model, world
    return None
