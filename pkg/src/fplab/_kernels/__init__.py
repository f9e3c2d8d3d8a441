"""Hot-loop kernels with a compiled core and a pure-Python fallback.

Both backends implement the same small contract over dense bit masks
(a set over Z_m is the integer whose bit e is set iff e is a member):

    build_exp_dlog(p, g)                  power / discrete-log tables
    mask_to_indices(mask, m) / indices_to_mask(idx, m)
    shift_or_union(mask, shifts, m)       union of cyclic bit rotations
    remap_affine(mask, mult, add, m)      {mult*e + add mod m}
    remap_table(mask, table, m_out)       {table[e]}, negative entries skipped
    pair_corr_moments_int / _complex      moment sums of windowed pair correlations

Selection happens once at import: the Cython extension when present, else the
numpy/big-int backend. Set FPLAB_PURE_PYTHON=1 to force the fallback.
"""

from __future__ import annotations

import os

if os.environ.get("FPLAB_PURE_PYTHON"):
    from fplab._kernels import pybits as _impl
else:
    try:
        from fplab._kernels import _bitcore as _impl  # type: ignore[no-redef]
    except ImportError:
        from fplab._kernels import pybits as _impl  # type: ignore[no-redef]

BACKEND: str = _impl.BACKEND
build_exp_dlog = _impl.build_exp_dlog
mask_to_indices = _impl.mask_to_indices
indices_to_mask = _impl.indices_to_mask
shift_or_union = _impl.shift_or_union
remap_affine = _impl.remap_affine
remap_table = _impl.remap_table
pair_corr_moments_int = _impl.pair_corr_moments_int
pair_corr_moments_complex = _impl.pair_corr_moments_complex

__all__ = [
    "BACKEND",
    "build_exp_dlog",
    "mask_to_indices",
    "indices_to_mask",
    "shift_or_union",
    "remap_affine",
    "remap_table",
    "pair_corr_moments_int",
    "pair_corr_moments_complex",
]
