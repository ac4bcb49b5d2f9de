"""Module Attributes.

Pair attributes of the message graph. The invariant attribute of a pair is
its planar distance, which is unchanged by rotations, translations and
reflections of the image plane. The baseline attribute is the raw
displacement, which rotates with the view.

With an orientation grid of M > 1 directions every node carries M slots and
the graph is lifted: a message edge (i <- j) becomes M x M slot edges. The
slot pair (i, m) <- (j, n) is described by the displacement measured along
and across direction m, plus the cosine between directions m and n. A
rotation by a multiple of 2 pi / M permutes the slots and leaves every
pooled quantity unchanged.
"""

from __future__ import annotations

import numpy as np
from sign_graph.skeleton import MessageGraph

from .config import Variant


def orientation_grid(num_orientations: int) -> np.ndarray:
    """Unit directions at angles 2 pi m / M, shape (M, 2)."""
    angles = 2.0 * np.pi * np.arange(num_orientations) / num_orientations
    return np.stack([np.cos(angles), np.sin(angles)], axis=-1)


def lift_graph(graph: MessageGraph, num_orientations: int) -> MessageGraph:
    """Lift a node graph onto node x orientation slots (slot = node * M + m).

    Edge order: for every base edge, receiver orientation m, sender
    orientation n.
    """
    if num_orientations == 1:
        return graph

    slots = np.arange(num_orientations)
    receiver_slot = np.repeat(slots, num_orientations)
    sender_slot = np.tile(slots, num_orientations)

    receivers = graph.receivers[:, None] * num_orientations + receiver_slot[None, :]
    senders = graph.senders[:, None] * num_orientations + sender_slot[None, :]

    return MessageGraph(
        senders=senders.reshape(-1),
        receivers=receivers.reshape(-1),
        num_nodes=graph.num_nodes * num_orientations,
    )


def pair_attributes(
    positions_xy: np.ndarray,
    graph: MessageGraph,
    variant: Variant = Variant.Invariant,
    num_orientations: int = 1,
) -> np.ndarray:
    """Attributes of every directed edge in every frame.

    Parameters
    ----------
    positions_xy : np.ndarray
        Node positions of shape (..., T, N, 2).
    graph : MessageGraph
        The base (unlifted) message graph, self loops included.
    variant : Variant, optional
        Invariant distance or baseline displacement, by default Invariant.
    num_orientations : int, optional
        Orientation grid size M, by default 1.

    Returns
    -------
    np.ndarray
        Shape (..., T, E, 1) for Invariant, (..., T, E, 2) for Baseline, and
        (..., T, E * M * M, 3) when M > 1.
    """
    positions_xy = np.asarray(positions_xy)
    displacement = positions_xy[..., graph.senders, :] - positions_xy[..., graph.receivers, :]

    if num_orientations == 1:
        if variant is Variant.Invariant:
            return np.linalg.norm(displacement, axis=-1, keepdims=True)
        return displacement

    grid = orientation_grid(num_orientations)
    relative = (grid @ grid.T).reshape(-1)

    if variant is Variant.Invariant:
        # Per receiver direction m: (d . o_m, o_m x d), shape (..., E, M, 2).
        along = displacement @ grid.T
        across = displacement[..., None, 1] * grid[:, 0] - displacement[..., None, 0] * grid[:, 1]
        frame = np.stack([along, across], axis=-1)
        frame = np.repeat(frame, num_orientations, axis=-2)
    else:
        frame = np.repeat(displacement[..., None, :], num_orientations * num_orientations, axis=-2)

    cosine = np.broadcast_to(relative[:, None], (*frame.shape[:-1], 1))
    lifted = np.concatenate([frame, cosine], axis=-1)
    return lifted.reshape(*lifted.shape[:-3], -1, 3)


def polynomial_features(attributes: np.ndarray, degree: int) -> np.ndarray:
    """Monomials of the attribute components up to `degree`, constant first.

    Degree d contributes every product of d components, so the width is
    1 + a + a^2 + ... + a^d for `a` components.
    """
    terms = [np.ones((*attributes.shape[:-1], 1), dtype=attributes.dtype)]
    current = terms[0]

    for _ in range(degree):
        current = (current[..., :, None] * attributes[..., None, :]).reshape(*attributes.shape[:-1], -1)
        terms.append(current)

    return np.concatenate(terms, axis=-1)
