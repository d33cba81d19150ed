from .display_settings import display_settings
from .human_readable_bits import human_readable_bits
from .print_eval_summary import print_eval_summary

__all__ = [
    "display_settings",
    "human_readable_bits",
    "print_eval_summary",
]
