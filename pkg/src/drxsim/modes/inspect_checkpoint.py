import logging
import os
import sys

from .. import checkpoint_manager
from ..errors import CheckpointError


def run_inspect_checkpoint(args):
    """Handles the logic for inspecting a checkpoint file."""
    abs_path = os.path.abspath(args.checkpoint)

    print("-" * 30)
    print("Mode: Inspect Checkpoint")
    print(f"Inspecting checkpoint file: '{abs_path}'")
    print("-" * 30)

    try:
        net, normalization, metadata = checkpoint_manager.load_checkpoint(abs_path)
    except CheckpointError as e:
        logging.error(f"Error: {e}")
        print("The checkpoint file might be corrupted or inaccessible.")
        sys.exit(1)

    print(f"Action space: {net.num_actions}")
    print(f"Layer sizes: {' -> '.join(str(d) for d in net.layer_dims)}")
    print(f"Output activation: {net.output_activation}")
    print("Feature normalisation:")
    for key, value in normalization.to_dict().items():
        print(f"  - {key}: {value}")
    if metadata:
        print("Training metadata:")
        for key, value in metadata.items():
            print(f"  - {key}: {value}")
    else:
        print("Training metadata not found.")

    print("-" * 30)
    print("Inspection complete.")
