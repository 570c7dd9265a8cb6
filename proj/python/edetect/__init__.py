# SPDX-License-Identifier: MIT
"""Nonparametric sequential changepoint detection with e-detectors.

Thin Python surface over the C++ core: psi families and their conjugates,
baseline increments, mixture calibration, SR/CUSUM detectors, worst-average
delay bounds, and the Monte-Carlo ARL/delay harness.
"""

from ._edetect import *  # noqa: F401,F403
from ._edetect import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
