"""Dense coefficient tensors, mixed ell_r norms, and the mixed Hoelder check.

A tensor is a plain numpy array of shape (n_1, ..., n_m). The mixed norm
with exponent vector r is the nested quantity

    ( sum_{i_1} ( ... ( sum_{i_m} |a_i|^{r_m} )^{r_{m-1}/r_m} ... )^{r_1/r_2} )^{1/r_1}

evaluated innermost sum first; r_j = inf replaces the j-th sum by a
supremum. Sums accumulate with compensated (Kahan) summation in fixed index
order, so results are bit-identical run to run and independent of any
thread-level parallelism above this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exponents import INF, as_exponent_vector

__all__ = [
    "kahan_sum",
    "MixedNormResult",
    "mixed_norm",
    "coordinate_product",
    "HolderCheck",
    "holder_verify",
    "tensor_to_obj",
    "tensor_from_obj",
]

# relative slack for the Hoelder verdict and the splitting identity
HOLDER_TOL = 1e-9


def kahan_sum(a: np.ndarray, axis: int = 0) -> np.ndarray:
    """Compensated sum along one axis, sequential in index order."""
    a = np.asarray(a)
    a = np.moveaxis(a, axis, 0)
    dtype = np.result_type(a.dtype, np.float64)
    total = np.zeros(a.shape[1:], dtype=dtype)
    comp = np.zeros(a.shape[1:], dtype=dtype)
    for row in a:
        y = row - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@dataclass(frozen=True)
class MixedNormResult:
    """Value of a mixed norm together with the exponents that produced it."""

    value: float
    exponents_used: tuple[float, ...]


def mixed_norm(a, r) -> MixedNormResult:
    """Mixed ell_r (quasi-)norm of a dense tensor.

    r must have one entry per tensor axis; entries lie in (0, inf]. The
    innermost exponent r_m applies to the last axis.
    """
    a = np.asarray(a)
    if a.ndim == 0:
        a = a.reshape(1)
    r = as_exponent_vector(r, a.ndim, "r")
    cur = np.abs(a).astype(np.float64)
    for rj in reversed(r):
        if rj == INF:
            cur = cur.max(axis=-1)
        else:
            cur = kahan_sum(cur**rj, axis=-1) ** (1.0 / rj)
    return MixedNormResult(value=float(cur), exponents_used=r)


def coordinate_product(tensors) -> np.ndarray:
    """Entrywise product of tensors with identical shapes."""
    tensors = [np.asarray(t) for t in tensors]
    if not tensors:
        raise ValueError("need at least one tensor")
    shape = tensors[0].shape
    for k, t in enumerate(tensors):
        if t.shape != shape:
            raise ValueError(f"tensor {k} has shape {t.shape}, expected {shape}")
    out = tensors[0].copy()
    for t in tensors[1:]:
        out = out * t
    return out


@dataclass(frozen=True)
class HolderCheck:
    """Both sides of one mixed-Hoelder instance and the verdict."""

    lhs: float
    rhs: float
    holds: bool
    slack: float


def holder_verify(tensors, r, q) -> HolderCheck:
    """Verify mixed_norm(prod tensors, r) <= prod_k mixed_norm(tensors[k], q_k).

    q[j][k] is the exponent applied to axis j of factor k; the splitting
    identity 1/r_j = sum_k 1/q[j][k] must hold for every j within 1e-9 in
    reciprocal space, otherwise the instance is rejected. The verdict allows
    1e-9 relative slack on the inequality itself.
    """
    tensors = [np.asarray(t) for t in tensors]
    N = len(tensors)
    if N == 0:
        raise ValueError("need at least one tensor")
    m = tensors[0].ndim
    r = as_exponent_vector(r, m, "r")
    q = [as_exponent_vector(row, N, f"q[{j}]") for j, row in enumerate(q)]
    if len(q) != m:
        raise ValueError(f"q has {len(q)} rows, expected m={m}")
    for j in range(m):
        lhs_recip = 0.0 if r[j] == INF else 1.0 / r[j]
        rhs_recip = math.fsum(0.0 if x == INF else 1.0 / x for x in q[j])
        if abs(lhs_recip - rhs_recip) > HOLDER_TOL:
            raise ValueError(
                f"splitting identity fails at axis {j}: 1/r = {lhs_recip}, "
                f"sum of 1/q = {rhs_recip}"
            )
    lhs = mixed_norm(coordinate_product(tensors), r).value
    rhs_factors = [
        mixed_norm(tensors[k], tuple(q[j][k] for j in range(m))).value
        for k in range(N)
    ]
    rhs = float(np.prod(rhs_factors))
    return HolderCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs * (1.0 + HOLDER_TOL), slack=rhs - lhs)


def tensor_to_obj(a) -> dict:
    """JSON-ready dict {shape, data} with row-major flat data.

    Complex tensors store entries as [re, im] pairs and set dtype: complex.
    Round trip through json.dumps/loads is bit-exact (floats serialize via
    repr).
    """
    a = np.asarray(a)
    obj = {"shape": list(a.shape)}
    if np.iscomplexobj(a):
        flat = a.astype(np.complex128).ravel(order="C")
        obj["dtype"] = "complex"
        obj["data"] = [[float(z.real), float(z.imag)] for z in flat]
    else:
        obj["data"] = [float(x) for x in a.astype(np.float64).ravel(order="C")]
    return obj


def tensor_from_obj(obj) -> np.ndarray:
    """Inverse of tensor_to_obj, with shape/finiteness validation."""
    try:
        shape = tuple(int(n) for n in obj["shape"])
        data = obj["data"]
    except (KeyError, TypeError) as e:
        raise ValueError(f"tensor object needs 'shape' and 'data' fields: {e}") from None
    if any(n < 1 for n in shape):
        raise ValueError(f"shape entries must be positive, got {shape}")
    size = int(np.prod(shape)) if shape else 1
    if len(data) != size:
        raise ValueError(f"data length {len(data)} does not match shape {shape}")
    if obj.get("dtype") == "complex":
        flat = np.array([complex(re, im) for re, im in data], dtype=np.complex128)
    else:
        flat = np.array([float(x) for x in data], dtype=np.float64)
    if not np.all(np.isfinite(flat)):
        raise ValueError("tensor entries must be finite")
    return flat.reshape(shape)
