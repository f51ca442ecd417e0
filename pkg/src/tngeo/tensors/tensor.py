# src/tngeo/tensors/tensor.py
"""
Dense complex tensors with named indices.

A :class:`Tensor` is an immutable wrapper around a complex128 numpy array whose
axes carry unique string labels.  Contraction is expressed in terms of label
pairs rather than axis positions, which keeps network code readable:

>>> a = Tensor.from_array(np.eye(3), ["i", "j"])
>>> v = Tensor.from_array(np.arange(3.0), ["k"])
>>> contract(a, v, [("j", "k")]).labels
('i',)

Storage is row-major (C order) over ``dims``; no sparsity is used.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np
import opt_einsum as oe

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Tensor:
    """Immutable dense complex tensor with one label per axis."""

    data: np.ndarray
    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        data = np.array(self.data, dtype=np.complex128, order="C", copy=True)
        labels = tuple(str(l) for l in self.labels)
        if data.ndim != len(labels):
            raise ValueError(
                f"Tensor has {data.ndim} axes but {len(labels)} labels: {labels}"
            )
        if len(set(labels)) != len(labels):
            raise ValueError(f"Tensor labels must be unique, got {labels}")
        if not np.all(np.isfinite(data)):
            raise ValueError("Tensor entries must be finite (no NaN/Inf)")
        data.setflags(write=False)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "labels", labels)

    # --- construction -----------------------------------------------------------

    @classmethod
    def from_array(cls, array: np.ndarray, labels: Sequence[str]) -> "Tensor":
        return cls(np.asarray(array), tuple(labels))

    @classmethod
    def scalar(cls, value: complex) -> "Tensor":
        return cls(np.asarray(value, dtype=np.complex128), ())

    # --- shape ------------------------------------------------------------------

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(int(d) for d in self.data.shape)

    @property
    def rank(self) -> int:
        return len(self.labels)

    def dim(self, label: str) -> int:
        return self.dims[self.axis(label)]

    def axis(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValueError(f"Tensor has no index '{label}' (labels: {self.labels})") from None

    def item(self) -> complex:
        """Value of a rank-0 tensor."""
        if self.rank != 0:
            raise ValueError(f"item() needs a rank-0 tensor, got rank {self.rank}")
        return complex(self.data)

    # --- relabel / reshape ------------------------------------------------------

    def relabel(self, mapping: dict) -> "Tensor":
        return Tensor(self.data, tuple(mapping.get(l, l) for l in self.labels))

    def transpose(self, labels: Sequence[str]) -> "Tensor":
        """Reorder axes to follow ``labels`` (a permutation of the current labels)."""
        if sorted(labels) != sorted(self.labels):
            raise ValueError(f"transpose labels {tuple(labels)} do not permute {self.labels}")
        perm = [self.axis(l) for l in labels]
        return Tensor(np.transpose(self.data, perm), tuple(labels))

    def fuse(self, labels: Sequence[str], new_label: str) -> "Tensor":
        """Merge ``labels`` (in the given order) into one trailing axis ``new_label``."""
        keep = [l for l in self.labels if l not in labels]
        t = self.transpose(keep + list(labels))
        shape = [self.dim(l) for l in keep] + [int(np.prod([self.dim(l) for l in labels]))]
        return Tensor(t.data.reshape(shape), tuple(keep) + (new_label,))

    def split(self, label: str, new_labels: Sequence[str], new_dims: Sequence[int]) -> "Tensor":
        """Inverse of :meth:`fuse` for one axis (row-major split)."""
        ax = self.axis(label)
        if int(np.prod(new_dims)) != self.dims[ax]:
            raise ValueError(f"cannot split dim {self.dims[ax]} into {tuple(new_dims)}")
        shape = list(self.dims[:ax]) + list(new_dims) + list(self.dims[ax + 1:])
        labels = self.labels[:ax] + tuple(new_labels) + self.labels[ax + 1:]
        return Tensor(self.data.reshape(shape), labels)

    def matrix(self, row_labels: Sequence[str], col_labels: Sequence[str]) -> np.ndarray:
        """Return the tensor as a (rows × cols) numpy matrix."""
        t = self.transpose(list(row_labels) + list(col_labels))
        rows = int(np.prod([self.dim(l) for l in row_labels])) if row_labels else 1
        return np.asarray(t.data).reshape(rows, -1)

    # --- algebra ----------------------------------------------------------------

    def conj(self) -> "Tensor":
        return Tensor(np.conj(self.data), self.labels)

    def scale(self, alpha: complex) -> "Tensor":
        return Tensor(alpha * self.data, self.labels)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data.ravel()))

    def allclose(self, other: "Tensor", atol: float = 1e-12) -> bool:
        if sorted(self.labels) != sorted(other.labels):
            return False
        o = other.transpose(self.labels)
        return bool(np.allclose(self.data, o.data, atol=atol, rtol=0.0))


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """Hermitian operator acting on a single site of dimension ``dim``."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"LocalOperator needs a square matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=HERMITIAN_TOL, rtol=0.0):
            raise ValueError("LocalOperator matrix must be Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def identity(cls, dim: int) -> "LocalOperator":
        return cls(np.eye(dim))

    def as_tensor(self, out_label: str = "out", in_label: str = "in") -> Tensor:
        return Tensor(self.matrix, (out_label, in_label))


def contract(a: Tensor, b: Tensor, pairs: Iterable[Tuple[str, str]]) -> Tensor:
    """Contract ``a`` with ``b`` over label ``pairs``.

    The result carries the uncontracted labels of ``a`` followed by those of
    ``b``; its entries are sums over the paired indices of products of entries.

    Raises
    ------
    ValueError
        If a label is missing, paired dimensions differ, a label is paired twice,
        or the result would contain a duplicate label.
    """
    pairs = list(pairs)
    la = [p[0] for p in pairs]
    lb = [p[1] for p in pairs]
    if len(set(la)) != len(la) or len(set(lb)) != len(lb):
        raise ValueError(f"contraction pairs reuse a label: {pairs}")
    ax_a = [a.axis(l) for l in la]
    ax_b = [b.axis(l) for l in lb]
    for (x, y), i, j in zip(pairs, ax_a, ax_b):
        if a.dims[i] != b.dims[j]:
            raise ValueError(
                f"dimension mismatch contracting '{x}' ({a.dims[i]}) with '{y}' ({b.dims[j]})"
            )
    out_labels = tuple(l for l in a.labels if l not in la) + tuple(
        l for l in b.labels if l not in lb
    )
    if len(set(out_labels)) != len(out_labels):
        raise ValueError(f"contraction result has duplicate labels: {out_labels}")
    data = np.tensordot(a.data, b.data, axes=(ax_a, ax_b))
    return Tensor(data, out_labels)


def contract_network(tensors: Sequence[Tensor], output: Sequence[str]) -> Tensor:
    """Contract a whole network where equal labels on two tensors are summed.

    Uses opt_einsum's greedy path search; the result follows ``output`` order.
    """
    counts: dict = {}
    for t in tensors:
        for l in t.labels:
            counts[l] = counts.get(l, 0) + 1
    for l, c in counts.items():
        if c > 2:
            raise ValueError(f"label '{l}' appears on {c} tensors")
    for l in output:
        if counts.get(l, 0) != 1:
            raise ValueError(f"output label '{l}' must be open on exactly one tensor")
    symbols = {l: i for i, l in enumerate(sorted(counts))}
    args: List = []
    for t in tensors:
        args.extend([t.data, [symbols[l] for l in t.labels]])
    args.append([symbols[l] for l in output])
    data = oe.contract(*args, optimize="greedy")
    return Tensor(np.asarray(data), tuple(output))


def trace(t: Tensor, pairs: Iterable[Tuple[str, str]]) -> Tensor:
    """Partial trace of ``t`` over label ``pairs`` of equal dimension."""
    pairs = list(pairs)
    m = t
    for x, y in pairs:
        if m.dim(x) != m.dim(y):
            raise ValueError(f"cannot trace '{x}' against '{y}': dims differ")
        data = np.trace(m.data, axis1=m.axis(x), axis2=m.axis(y))
        m = Tensor(data, tuple(l for l in m.labels if l not in (x, y)))
    return m
