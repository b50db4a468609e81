from .commands import run_evolve, run_params, run_spectrum, run_sweep
from .validation import run_validation

__all__ = ["run_evolve", "run_params", "run_spectrum", "run_sweep", "run_validation"]
