from .evaluate import run_evaluate
from .inspect_checkpoint import run_inspect_checkpoint
from .sweep_eval import run_sweep_eval
from .train import run_train
from .tune import run_tune

__all__ = [
    "run_evaluate",
    "run_inspect_checkpoint",
    "run_sweep_eval",
    "run_train",
    "run_tune",
]
