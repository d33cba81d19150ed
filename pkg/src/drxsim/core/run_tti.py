import logging

import numpy as np

from .. import drx, phy
from ..agent import (
    NULL_ACTION,
    CellContext,
    LastOutcome,
    action_to_ce,
    build_features,
    encode,
    reward,
)
from ..errors import InvariantViolation, QueueInstabilityError
from ..mac import Sdu, assemble_tb, enqueue, process_feedback
from ..policies import PolicyKind, decide, stabilize
from ..replay_memory import Transition
from ..scheduler import UeView, schedule
from .build_world import OpenDecision


def _deliver_feedback(world, t):
    for ue in world.ues:
        if ue.in_flight is None:
            ue.last_outcome = LastOutcome()
            continue
        tb, delivered = ue.in_flight
        ue.in_flight = None
        ue.queue, completed, ce_applied = process_feedback(ue.queue, tb, delivered, t)
        for _, delay in completed:
            ue.delays.append(delay)
            ue.satisfaction.push(delay)
        if ce_applied and world.policy.uses_drx:
            ue.drx_bts = drx.apply_ce(ue.drx_bts, world.drx_config, tb.ce, tb.tti)
        ue.last_outcome = LastOutcome(scheduled=True, delivered=delivered, had_payload=tb.has_payload)

    if world.policy.uses_drx:
        for ue in world.ues:
            if ue.drx_bts != ue.drx_ue:
                raise InvariantViolation(
                    f"TTI {t}: BTS view of UE {ue.ue_id} DRX state {ue.drx_bts} "
                    f"differs from the UE's {ue.drx_ue}"
                )


def _enqueue_arrivals(world, t):
    for ue in world.ues:
        while ue.next_arrival < len(ue.arrivals) and ue.arrivals[ue.next_arrival].arrival_tti <= t:
            arrival = ue.arrivals[ue.next_arrival]
            enqueue(ue.queue, Sdu(ue.next_sdu_id, arrival.arrival_tti, arrival.size_bits))
            ue.next_sdu_id += 1
            ue.next_arrival += 1


def _decide(world, t, listening):
    """Returns {ue_id: (encoded_state, action)} for every active UE."""
    active = [ue for ue, w in zip(world.ues, listening) if w]
    if not active:
        return {}

    cfg = world.cfg
    cell = CellContext(
        n_active_ues=len(active),
        total_queue_bits=sum(ue.queue.total_bits for ue in world.ues),
        drx_config=world.drx_config,
    )
    states = []
    for ue in active:
        ue.frames.append(build_features(ue, cell, t))
        states.append(encode(ue.frames, world.normalization, cfg.history_size))

    q_batch = None
    if world.policy is PolicyKind.RL:
        q_batch = world.net.forward(np.vstack(states))

    decisions = {}
    for i, ue in enumerate(active):
        q = q_batch[i] if q_batch is not None else None
        action = decide(world.policy, ue.queue.total_bits, world.policy_rng, q_values=q, epsilon=world.epsilon)
        if world.policy.stabilized:
            action = stabilize(action, ue.queue.total_bits, cfg.q_sat_bits)
        world.action_histogram[action] += 1
        decisions[ue.ue_id] = (states[i], action)
    return decisions


def _transmit(world, t, listening, decisions):
    views = [
        UeView(
            active=bool(w),
            queue_bits=ue.queue.total_bits,
            pending_ce=decisions.get(ue.ue_id, (None, NULL_ACTION))[1] != NULL_ACTION,
        )
        for ue, w in zip(world.ues, listening)
    ]
    chosen, world.rr = schedule(world.rr, views)
    if chosen is None:
        return None, None

    ue = world.ues[chosen]
    action = decisions.get(chosen, (None, NULL_ACTION))[1]
    ce = action_to_ce(action, world.action_space)
    tbs = phy.select_tbs(ue.channel.h_reported, world.phy_params)
    tb = assemble_tb(ue.queue, tbs, ce, t, ue_id=chosen)
    delivered = phy.tb_outcome(ue.channel.h, tbs if tb.has_payload else 0, world.phy_params)
    ue.in_flight = (tb, delivered)
    if ce is not None and world.ce_log is not None:
        world.ce_log.append((t, chosen, ce, ue.queue.total_bits))
    return chosen, tb if delivered else None


def _advance(world, t, chosen, delivered_tb):
    rho = world.phy_params.rho
    for ue in world.ues:
        if world.policy.uses_drx:
            notified = ue.ue_id == chosen
            ue.drx_ue = drx.drx_tick(ue.drx_ue, world.drx_config, t, notified)
            ue.drx_bts = drx.drx_tick(ue.drx_bts, world.drx_config, t, notified)
            if notified and delivered_tb is not None and delivered_tb.ce is not None:
                ue.drx_ue = drx.apply_ce(ue.drx_ue, world.drx_config, delivered_tb.ce, t)
        ue.channel = phy.step_channel(ue.channel, rho, ue.channel_rng)


def _record(world, t, listening):
    cfg = world.cfg
    rewards = []
    for ue, w in zip(world.ues, listening):
        r = reward(ue.satisfaction.value(), cfg.beta, w)
        rewards.append(r)
        ue.cum_reward += r
        ue.active_ttis += w
        if ue.w_trace is not None:
            ue.w_trace.append(w)

        bits = ue.queue.total_bits
        world.max_queue_bits = max(world.max_queue_bits, bits)
        if bits > cfg.queue_cap_bits:
            message = (
                f"TTI {t}: UE {ue.ue_id} queue holds {bits} bits, above the cap of "
                f"{cfg.queue_cap_bits} bits"
            )
            if not world.training:
                raise QueueInstabilityError(message)
            if not world.queue_cap_warned:
                logging.warning(message)
                world.queue_cap_warned = True
    return rewards


def _learn(world, t, decisions, chosen, rewards):
    agent = world.agent
    for ue, r in zip(world.ues, rewards):
        decision = decisions.get(ue.ue_id)
        # A CE decided for a UE that is not scheduled never reaches it.
        took_effect = decision is not None and (decision[1] == NULL_ACTION or ue.ue_id == chosen)
        if took_effect:
            s, a = decision
            if ue.open_decision is not None:
                agent.remember(
                    Transition(
                        ue.open_decision.s, ue.open_decision.a, ue.open_decision.reward, s, False
                    )
                )
            ue.open_decision = OpenDecision(s, a)
        if ue.open_decision is not None:
            ue.open_decision.reward += r

    if (t + 1) % world.cfg.train_every_ttis == 0 and len(agent.memory) >= agent.batch_size:
        agent.train_step()


def run_tti(world, t):
    """
    Simulates TTI t of the cell.

    Event order: HARQ feedback of t-1, arrivals, CSI reports, decisions of the
    active UEs, scheduling and transmission, DRX timers and fading, rewards and
    KPIs, then replay storage and one training step when learning.

    Returns:
        World: The same world, advanced to TTI t + 1.
    """
    _deliver_feedback(world, t)
    _enqueue_arrivals(world, t)

    if world.policy.uses_drx:
        listening = [ue.drx_bts.W for ue in world.ues]
    else:
        listening = [1] * len(world.ues)
    for ue, w in zip(world.ues, listening):
        ue.channel, _ = phy.collect_csi_report(ue.channel, t, world.phy_params.csi_period_ttis, w)

    decisions = _decide(world, t, listening)
    chosen, delivered_tb = _transmit(world, t, listening, decisions)
    _advance(world, t, chosen, delivered_tb)
    rewards = _record(world, t, listening)

    if world.training:
        _learn(world, t, decisions, chosen, rewards)

    world.t = t + 1
    return world
