import json
import logging
import os

import numpy as np

from . import __version__
from .agent import FeatureNormalization
from .errors import CheckpointError, CheckpointMismatchError
from .qnetwork import PARAM_NAMES, QNetwork

_FORMAT = "drxsim-qnetwork"
_REQUIRED_KEYS = ("action_space_size", "layer_dims", "output_activation", "weights", "normalization")


def save_checkpoint(path, net, normalization=FeatureNormalization(), metadata=None):
    """
    Writes the network weights and the feature normalisation to a JSON file.

    Floats are written with their shortest round-trip representation, so a
    reloaded network reproduces identical Q-values.

    Args:
        path (str): Destination file.
        net (QNetwork): Network to store.
        normalization (FeatureNormalization): Constants used to encode states.
        metadata (dict | None): Training metadata (episodes, seed, reward...).
    """
    payload = {
        "format": _FORMAT,
        "version": __version__,
        "action_space_size": net.num_actions,
        "layer_dims": net.layer_dims,
        "output_activation": net.output_activation,
        "weights": {name: net.params[name].tolist() for name in PARAM_NAMES},
        "normalization": normalization.to_dict(),
        "metadata": metadata or {},
    }
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        tmp_path = f"{path}.tmp"
        with open(tmp_path, "w") as f:
            json.dump(payload, f)
        os.replace(tmp_path, path)
    except OSError as e:
        raise CheckpointError(f"Could not write checkpoint '{path}': {e}") from e
    logging.debug(f"Checkpoint written to '{path}' (layers {net.layer_dims})")


def load_checkpoint(path, expected_action_space=None, expected_input_size=None):
    """
    Loads a checkpoint written by save_checkpoint.

    Returns:
        tuple: (QNetwork, FeatureNormalization, dict) - the network, the
               normalisation constants and the training metadata.

    Raises:
        CheckpointError: If the file is missing, unreadable or malformed.
        CheckpointMismatchError: If the action space or input size differs from the expected one.
    """
    try:
        with open(path) as f:
            payload = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CheckpointError(f"Could not read checkpoint '{path}': {e}") from e

    missing = [key for key in _REQUIRED_KEYS if key not in payload]
    if missing:
        raise CheckpointError(f"Checkpoint '{path}' lacks field(s): {', '.join(missing)}")

    input_size, hidden_size, num_actions = payload["layer_dims"]
    if num_actions != payload["action_space_size"]:
        raise CheckpointError(
            f"Checkpoint '{path}' is inconsistent: {num_actions} outputs for an "
            f"action space of {payload['action_space_size']}"
        )
    if expected_action_space is not None and num_actions != expected_action_space:
        raise CheckpointMismatchError(
            f"Checkpoint '{path}' has action space {num_actions}, "
            f"configuration expects {expected_action_space}"
        )
    if expected_input_size is not None and input_size != expected_input_size:
        raise CheckpointMismatchError(
            f"Checkpoint '{path}' has input size {input_size}, "
            f"configuration expects {expected_input_size}"
        )

    net = QNetwork(input_size, hidden_size, num_actions, output_activation=payload["output_activation"])
    try:
        params = {name: np.array(payload["weights"][name], dtype=float) for name in PARAM_NAMES}
    except KeyError as e:
        raise CheckpointError(f"Checkpoint '{path}' lacks weight array {e}") from e
    expected_shapes = {
        "W1": (input_size, hidden_size),
        "b1": (hidden_size,),
        "W2": (hidden_size, num_actions),
        "b2": (num_actions,),
    }
    for name, shape in expected_shapes.items():
        if params[name].shape != shape:
            raise CheckpointError(
                f"Checkpoint '{path}': {name} has shape {params[name].shape}, expected {shape}"
            )
    net.load_params(params)

    normalization = FeatureNormalization(**payload["normalization"])
    metadata = payload.get("metadata", {})
    logging.info(
        f"Loaded checkpoint '{path}' (action space {num_actions}, layers {net.layer_dims})"
    )
    return net, normalization, metadata
