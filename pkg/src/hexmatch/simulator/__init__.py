"""Shot-by-shot simulation of circuit programs."""

from numba import config as _numba_config

# TBB is often too old where installed; prefer the portable layers.
_numba_config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

from .shots import ShotTable
from .statevector import statevector_oracle
from .tableau import SimState, run_shots

__all__ = ["ShotTable", "SimState", "run_shots", "statevector_oracle"]
