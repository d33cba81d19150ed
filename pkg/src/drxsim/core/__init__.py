from .build_world import build_world
from .evaluate import evaluate
from .run_episode import run_episode
from .run_tti import run_tti
from .sample_num_ues import sample_num_ues
from .train import train
from .train_many import train_many

__all__ = [
    "build_world",
    "evaluate",
    "run_episode",
    "run_tti",
    "sample_num_ues",
    "train",
    "train_many",
]
