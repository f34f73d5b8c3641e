"""Select the numerical kernel backend at import.

The compiled extension is preferred. Setting SLOPE_NAV_PURE=1 forces the
pure-Python fallback, which is also used when the extension is not built.
"""

import os

from . import _pykernels as py

if os.environ.get("SLOPE_NAV_PURE") == "1":
    impl = py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as impl
        BACKEND = "cython"
    except ImportError:
        impl = py
        BACKEND = "python"

phi_root = impl.phi_root
phi_residual = impl.phi_residual
quartic_coeffs = impl.quartic_coeffs
slope_F = impl.slope_F
spray_tilde = impl.spray_tilde
wind_bound = impl.wind_bound
integrate_builtin = impl.integrate_builtin
gauss3_jet = impl.gauss3_jet

OK = py.OK
ROOT_COUNT = py.ROOT_COUNT
DEGENERATE = py.DEGENERATE
INADMISSIBLE = py.INADMISSIBLE
DRIFT = py.DRIFT
BRANCHES = {py.BR_QUARTIC: "quartic", py.BR_RANDERS: "quadraticRanders",
            py.BR_MATSUMOTO: "quadraticMatsumoto", py.BR_RIEMANNIAN: "riemannian"}
SURF_INCLINE = py.SURF_INCLINE
SURF_GAUSS3 = py.SURF_GAUSS3
