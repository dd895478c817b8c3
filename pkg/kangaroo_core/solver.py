"""Distinguished points implementation of the kangaroo method

The tame kangaroo starts at g^Y0 with Y0 = (a+b)//2, the wild one at h. Both
hop by the hashed step of their current element, alternating tame then wild,
and report every distinguished element they land on. The first element
reported by both gives x = Y_j - d_i mod |G|.
"""
import logging
from dataclasses import dataclass
from math import isqrt
from typing import Dict, Optional, Tuple

from kangaroo_core.exceptions import CapExceeded, SolveFailed, VerificationFailed
from kangaroo_core.groups import BaseGroup, Element, OpCounter
from kangaroo_core.stepset import (
    DISTINGUISHED,
    STEP,
    DistinguishedPredicate,
    HashKey,
    StepSet,
    assign_step,
    is_distinguished,
)


TAME = "tame"
WILD = "wild"
DEFAULT_CAP_MULTIPLIER = 20
MAX_RESTARTS = 10


@dataclass(frozen=True)
class SolverKeys:
    """The two independent hash keys one solve runs under"""
    step: HashKey
    distinguished: HashKey

    @classmethod
    def from_seed(cls, seed: int) -> "SolverKeys":
        return cls(HashKey.from_seed(seed, STEP), HashKey.from_seed(seed, DISTINGUISHED))

    def rekey(self, restart: int) -> "SolverKeys":
        return SolverKeys(self.step.derive(restart), self.distinguished.derive(restart))


@dataclass(frozen=True)
class KangarooState:
    """tame: current = g^offset. wild: current = h * g^offset"""
    tag: str
    current: Element
    offset: int
    steps_taken: int = 0


@dataclass(frozen=True)
class SolveResult:
    x: int
    group_ops: int
    tame_steps: int
    wild_steps: int
    restarts: int
    collision_point: bytes
    precomputation_ops: int = 0
    verification_ops: int = 0
    store_size: int = 0

    @property
    def walk_ops(self) -> int:
        return self.tame_steps + self.wild_steps

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "group_ops": self.group_ops,
            "tame_steps": self.tame_steps,
            "wild_steps": self.wild_steps,
            "restarts": self.restarts,
            "collision_point_hex": self.collision_point.hex(),
        }


class PointStore:
    """Distinguished encodings mapped to the offset each kangaroo reported them at"""

    def __init__(self) -> None:
        self._points: Dict[bytes, Dict[str, int]] = {}

    def __len__(self) -> int:
        return len(self._points)

    def add(self, encoded: bytes, tag: str, offset: int) -> Optional[Tuple[int, int]]:
        """Stores a point, keeping the first offset per tag

        :param encoded: distinguished element encoding
        :param tag: TAME or WILD
        :param offset: the kangaroo's offset at that element
        :return: (tame offset, wild offset) once the point holds both tags, else None
        """
        entry = self._points.setdefault(encoded, {})
        entry.setdefault(tag, offset)
        if TAME in entry and WILD in entry:
            return entry[TAME], entry[WILD]
        return None


class JumpTable:
    """g^s for every step size s, built by chained powering g^(n^(k+1)) = (g^(n^k))^n

    :param group: the group
    :param step_set: the step set
    :param counter: receives the precomputation operations
    """
    def __init__(self, group: BaseGroup, step_set: StepSet, counter: OpCounter) -> None:
        self.jumps: Dict[int, Element] = {}
        element = group.generator
        for size in step_set.sizes:
            if size > 1:
                element = group.pow(element, step_set.base, counter)
            self.jumps[size] = element

    def __getitem__(self, size: int) -> Element:
        return self.jumps[size]


def advance(
    state: KangarooState,
    group: BaseGroup,
    step_set: StepSet,
    key: HashKey,
    jumps: JumpTable,
    counter: Optional[OpCounter] = None
) -> KangarooState:
    """One hop: exactly one counted group operation

    :param state: kangaroo before the hop
    :param group: the group
    :param step_set: the step set
    :param key: step-assignment key
    :param jumps: precomputed g^s table
    :param counter: accounting hook
    :return: The kangaroo after the hop
    """
    size = assign_step(step_set, key, group.encode(state.current))
    return KangarooState(
        state.tag,
        group.mul(state.current, jumps[size], counter),
        state.offset + size,
        state.steps_taken + 1,
    )


def heuristic_cost(width: float, sbar: float, c: float, start_gap: str = "average", clustering: float = 0.0) -> float:
    """Expected steps of both kangaroos: 2(gap/S + S(1 + clustering) + sqrt(width)/c)

    :param width: b - a
    :param sbar: mean step
    :param c: distinguished point constant
    :param start_gap: "average" uses gap width/4, "worst" uses width/2
    :param clustering: collision_excess of the step set; 0 treats every landing spot as fresh
    :return: The expected number of group operations
    """
    if min(width, sbar, c) <= 0:
        raise ValueError("Heuristic cost needs positive arguments.")
    if start_gap == "average":
        gap = width / (4 * sbar)
    elif start_gap == "worst":
        gap = width / (2 * sbar)
    else:
        raise ValueError(f"Unknown start gap {start_gap!r}.")
    return 2 * (gap + sbar * (1 + clustering) + width ** 0.5 / c)


def closed_form_cost(width: float, c: float, start_gap: str = "average") -> float:
    """heuristic_cost at its optimum sbar = sqrt(width)/2: (2+2/c) or (3+2/c) times sqrt(width)"""
    lead = 2 if start_gap == "average" else 3
    return (lead + 2 / c) * width ** 0.5


def _walk(
    group: BaseGroup,
    h: Element,
    y0: int,
    tame_start: Element,
    step_set: StepSet,
    predicate: DistinguishedPredicate,
    key: HashKey,
    jumps: JumpTable,
    cap: int,
    counter: OpCounter,
) -> Tuple[KangarooState, KangarooState, Tuple[int, int], bytes, int]:
    store = PointStore()
    kangaroos = [KangarooState(TAME, tame_start, y0), KangarooState(WILD, h, 0)]
    for index in (0, 1):
        encoded = group.encode(kangaroos[index].current)
        if is_distinguished(predicate, encoded):
            hit = store.add(encoded, kangaroos[index].tag, kangaroos[index].offset)
            if hit is not None:
                return kangaroos[0], kangaroos[1], hit, encoded, len(store)
    while kangaroos[0].steps_taken + kangaroos[1].steps_taken < cap:
        for index in (0, 1):
            kangaroo = advance(kangaroos[index], group, step_set, key, jumps, counter)
            kangaroos[index] = kangaroo
            encoded = group.encode(kangaroo.current)
            if is_distinguished(predicate, encoded):
                hit = store.add(encoded, kangaroo.tag, kangaroo.offset)
                if hit is not None:
                    return kangaroos[0], kangaroos[1], hit, encoded, len(store)
    raise CapExceeded(kangaroos[0].steps_taken + kangaroos[1].steps_taken)


def solve(
    group: BaseGroup,
    h: Element,
    a: int,
    b: int,
    step_set: StepSet,
    predicate: DistinguishedPredicate,
    keys: SolverKeys,
    cap_multiplier: float = DEFAULT_CAP_MULTIPLIER,
    max_restarts: int = MAX_RESTARTS,
) -> SolveResult:
    """Solves g^x = h for x in [a, b]

    :param group: the group, generator g
    :param h: target element
    :param a: interval start
    :param b: interval end
    :param step_set: step set built for (a, b)
    :param predicate: distinguished point predicate
    :param keys: step and distinguished keys, rekeyed on every restart
    :param cap_multiplier: restart once both walks together exceed this times sqrt(b - a)
    :param max_restarts: SolveFailed after this many restarts
    :return: The recovered exponent and its operation accounting
    """
    if b <= a:
        raise ValueError(f"Interval [{a}, {b}] is empty.")
    h = group.element(h)
    if group.order < 8 * (b - a):
        logging.warning(f"Group order {group.order} is below 8(b-a) = {8 * (b - a)}, walks may wrap around")
    precomputation = OpCounter()
    jumps = JumpTable(group, step_set, precomputation)
    y0 = (a + b) // 2
    tame_start = group.pow(group.generator, y0, precomputation)
    cap = max(1, int(cap_multiplier * isqrt(b - a)))
    walking = OpCounter()
    tame_steps = wild_steps = 0
    for restart in range(max_restarts + 1):
        run_keys = keys if restart == 0 else keys.rekey(restart)
        try:
            tame, wild, (tame_offset, wild_offset), encoded, store_size = _walk(
                group, h, y0, tame_start, step_set, predicate.with_key(run_keys.distinguished),
                run_keys.step, jumps, cap, walking,
            )
        except CapExceeded as cap_exceeded:
            if restart < max_restarts:
                logging.warning(f"{cap_exceeded.user_message} Restarting with fresh keys ({restart + 1}/{max_restarts})")
            # an exhausted attempt always ends on a full round
            tame_steps += cap_exceeded.steps // 2
            wild_steps += cap_exceeded.steps - cap_exceeded.steps // 2
            continue
        tame_steps += tame.steps_taken
        wild_steps += wild.steps_taken
        x = group.reduce_exponent(tame_offset - wild_offset)
        verification = OpCounter()
        if group.pow(group.generator, x, verification) != h:
            raise VerificationFailed(x)
        logging.debug(f"Solved x={x} after {tame_steps + wild_steps} steps and {restart} restarts")
        return SolveResult(
            x=x,
            group_ops=walking.ops + precomputation.ops + verification.ops,
            tame_steps=tame_steps,
            wild_steps=wild_steps,
            restarts=restart,
            collision_point=encoded,
            precomputation_ops=precomputation.ops,
            verification_ops=verification.ops,
            store_size=store_size,
        )
    raise SolveFailed(max_restarts)
