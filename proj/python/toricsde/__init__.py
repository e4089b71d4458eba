"""Toric selfdual Einstein 4-orbifolds.

Exact lattice classification (validity, intersection form, signature,
admissibility), conversion between isotropy data and multipole weights, and
numerical verification of the explicit metric (eigenfunction equation,
Poisson reconstruction, det Phi identities, Einstein and selfduality
residuals).

The compiled extension carries the implementation; this package re-exports
its public surface.
"""

import os as _os
import sys as _sys

# Development trees put the built extension next to the CMake build; installed
# wheels place it inside the package.
_ext_dir = _os.environ.get("TORICSDE_EXT_DIR")
if _ext_dir and _ext_dir not in _sys.path:
    _sys.path.insert(0, _ext_dir)

try:
    from _core import *  # type: ignore[import-not-found]  # noqa: F401,F403
    from _core import __doc__ as _core_doc  # type: ignore[import-not-found]
except ImportError:
    from toricsde._core import *  # noqa: F401,F403
    from toricsde._core import __doc__ as _core_doc

__all__ = [
    "delta",
    "structure_group_order",
    "validate",
    "orient_cyclic",
    "apply_unimodular",
    "intersection_matrix",
    "signature",
    "is_positive_definite",
    "decide_admissible",
    "to_multipole",
    "from_multipole",
    "subtorus_kernel",
    "eval_jet",
    "boundary_value",
    "det_phi_closed",
    "det_phi_quadrature",
    "poisson_transform",
    "homogeneous_extension",
    "edge_constancy_check",
    "metric_at",
    "curvature_at",
    "verify_field",
    "classify_json",
    "convert_json",
    "census",
    "boundary_plot_csv",
]
