"""Replayable move certificates and the bounded bidirectional search that produces them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, NamedTuple, Optional, Protocol


class MoveError(ValueError):
    """A step does not apply to the state it was replayed on."""


class Step(Protocol):
    def apply(self, state: Any) -> Any: ...

    def inverse(self) -> "Step": ...

    def to_json(self) -> dict: ...


_STEP_TYPES: dict[str, Callable[[dict], Step]] = {}


def register_step(tag: str):
    def deco(cls):
        cls.tag = tag
        _STEP_TYPES[tag] = cls.from_json
        return cls

    return deco


def step_from_json(obj: dict) -> Step:
    try:
        return _STEP_TYPES[obj["type"]](obj)
    except KeyError:
        raise ValueError(f"unknown step type {obj.get('type')!r}") from None


class Verification(NamedTuple):
    ok: bool
    failed_step: Optional[int] = None  # index of the first failing step; len(steps) for an endpoint mismatch
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class MoveCertificate:
    """An ordered list of steps taking ``source`` to ``target``.

    ``relation`` names the move system (``sse``, ``flow``, ``positive``, ``pair``).
    """

    relation: str
    source: Any
    target: Any
    steps: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self) -> list:
        states = [self.source]
        for step in self.steps:
            states.append(step.apply(states[-1]))
        return states


def verify_certificate(cert: MoveCertificate) -> Verification:
    """Replay every step with exact arithmetic; never raises on bad certificates."""
    state = cert.source
    for i, step in enumerate(cert.steps):
        try:
            state = step.apply(state)
        except (MoveError, ValueError, TypeError, ArithmeticError) as exc:
            return Verification(False, i, f"step {i} ({getattr(step, 'tag', type(step).__name__)}): {exc}")
    if state != cert.target:
        return Verification(False, len(cert.steps), "replay does not end at the stated target")
    return Verification(True)


@dataclass
class SearchStats:
    states: int = 0
    levels: int = 0
    exhausted: bool = False
    truncated: bool = False


def bidirectional_search(
    source,
    target,
    neighbors: Callable[[Any], Iterable[tuple[list, Any]]],
    canon: Callable[[Any], tuple[Hashable, list, Any]],
    max_steps: int,
    max_states: int = 50_000,
    stats: SearchStats | None = None,
) -> Optional[list]:
    """Level-synchronous bidirectional BFS.

    ``canon(state)`` returns ``(key, steps, canonical_state)`` where the steps
    lead from ``state`` to the canonical representative. ``neighbors(state)``
    yields ``(steps, next_state)`` pairs in a deterministic order. Returns the
    step list from ``source`` to ``target`` or ``None`` when the budget runs out.
    Every returned step must be invertible: the target half is replayed backwards.
    """
    stats = stats if stats is not None else SearchStats()
    ks, to_cs, cs = canon(source)
    kt, to_ct, ct = canon(target)
    # parent maps: key -> (parent key, steps from parent's canonical state to this canonical state)
    parents = [{ks: None}, {kt: None}]
    states = [{ks: cs}, {kt: ct}]
    frontiers = [[ks], [kt]]
    depth = [0, 0]

    def path_from_root(side: int, key) -> list:
        chunks = []
        while parents[side][key] is not None:
            pk, steps = parents[side][key]
            chunks.append(steps)
            key = pk
        out = []
        for c in reversed(chunks):
            out.extend(c)
        return out

    def assemble(key) -> list:
        fwd = path_from_root(0, key)
        back = path_from_root(1, key)
        inv = [s.inverse() for s in reversed(back)]
        inv_to_ct = [s.inverse() for s in reversed(to_ct)]
        return list(to_cs) + fwd + inv + inv_to_ct

    if ks == kt:
        return assemble(ks)
    while depth[0] + depth[1] < max_steps:
        if not frontiers[0] or not frontiers[1]:
            # one side's reachable set is closed: no path at any depth
            stats.exhausted = True
            return None
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        other = 1 - side
        nxt = []
        for key in frontiers[side]:
            state = states[side][key]
            for steps, new_state in neighbors(state):
                nk, to_c, c_state = canon(new_state)
                if nk in parents[side]:
                    continue
                parents[side][nk] = (key, list(steps) + list(to_c))
                states[side][nk] = c_state
                stats.states += 1
                if nk in parents[other]:
                    stats.levels = depth[0] + depth[1] + 1
                    return assemble(nk)
                nxt.append(nk)
                if stats.states >= max_states:
                    stats.truncated = True
                    return None
        frontiers[side] = nxt
        depth[side] += 1
        stats.levels = depth[0] + depth[1]
    return None
