from dataclasses import dataclass


@dataclass(frozen=True)
class RrState:
    next_index: int = 0


@dataclass(frozen=True)
class UeView:
    active: bool
    queue_bits: int
    pending_ce: bool = False

    @property
    def eligible(self):
        return self.active and (self.queue_bits > 0 or self.pending_ce)


def schedule(rr, ues):
    """
    Round-robin choice of at most one UE for the TTI.

    Args:
        rr (RrState): Rotation pointer.
        ues (list[UeView]): One view per UE, indexed by UE id.

    Returns:
        tuple: (int | None, RrState) - the chosen UE id and the advanced pointer.
    """
    num_ues = len(ues)
    for offset in range(num_ues):
        ue_id = (rr.next_index + offset) % num_ues
        if ues[ue_id].eligible:
            return ue_id, RrState(next_index=(ue_id + 1) % num_ues)
    return None, rr
