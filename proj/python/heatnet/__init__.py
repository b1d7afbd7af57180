"""Monte Carlo averaging construction for constant-coefficient diffusion
PDEs: build wide shallow networks approximating u(T, .) on a cube, with
certified sup error and exact complexity counters.

Everything lives in the _heatnet extension; this package only gives it an
import name without the underscore.
"""

from _heatnet import *  # noqa: F401,F403
