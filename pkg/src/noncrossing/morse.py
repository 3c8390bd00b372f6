"""Mouth-rooted pairing on the face poset, acyclicity check, and collapse engine.

Given a mouth ``x`` of the region, diagonals are ordered so that those incident
to ``x`` come last. Each face ``s`` is sent to the last ``x``-diagonal that is
compatible with every member of ``s`` not incident to ``x``; toggling that
diagonal pairs up the whole face poset, empty face included.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .complex import Complex, InvariantViolation, face_key, members
from .region import select_mouth


class NoCandidate(InvariantViolation):
    pass


class NotAMatching(InvariantViolation):
    pass


class StuckCollapse(InvariantViolation):
    pass


@dataclass(frozen=True)
class DiagonalOrder:
    """Linear order on diagonal indices, earliest first.

    ``d_x`` lists the diagonals at vertex ``x`` sorted by their other endpoint;
    the pairing picks from it by position, the order relation uses
    ``permutation``.
    """

    permutation: tuple[int, ...]
    x: int
    d_x: tuple[int, ...]

    @cached_property
    def rank(self) -> dict[int, int]:
        return {idx: pos for pos, idx in enumerate(self.permutation)}

    @property
    def d_x_mask(self) -> int:
        mask = 0
        for idx in self.d_x:
            mask |= 1 << idx
        return mask

    def precedes(self, a: int, b: int) -> bool:
        return self.rank[a] <= self.rank[b]

    @property
    def is_canonical(self) -> bool:
        k = len(self.d_x)
        head = self.permutation[: len(self.permutation) - k]
        return self.permutation[len(head) :] == self.d_x and list(head) == sorted(head)


def mouth_order(cplx: Complex, x: int | None = None) -> DiagonalOrder:
    """Lexicographic order on diagonals with those at ``x`` moved to the end."""
    if x is None:
        x = select_mouth(cplx.region)
    at_x = [(dg[1] if dg[0] == x else dg[0], idx) for idx, dg in enumerate(cplx.labels) if x in dg]
    d_x = tuple(idx for _, idx in sorted(at_x))
    rest = tuple(idx for idx in range(cplx.d) if idx not in d_x)
    return DiagonalOrder(rest + d_x, x, d_x)


def compatibility_masks(cplx: Complex) -> list[int]:
    """Bit ``j`` of entry ``i`` is set when ``{i, j}`` is an edge of the complex."""
    masks = [0] * cplx.d
    for f in cplx.by_size.get(2, ()):
        i, j = members(f)
        masks[i] |= 1 << j
        masks[j] |= 1 << i
    return masks


def pairing_function(cplx: Complex, order: DiagonalOrder, face: int, compat: list[int] | None = None) -> int:
    if compat is None:
        compat = compatibility_masks(cplx)
    rest = face & ~order.d_x_mask
    for idx in reversed(order.d_x):
        if rest & ~compat[idx] == 0:
            return idx
    raise NoCandidate(f"no diagonal at vertex {order.x} is compatible with face {members(face)}")


@dataclass
class PairingReport:
    checked: dict[int, int] = field(default_factory=lambda: {1: 0, 2: 0, 3: 0, 4: 0})
    failed: dict[int, int] = field(default_factory=lambda: {1: 0, 2: 0, 3: 0, 4: 0})
    undefined: int = 0
    first_failure: tuple | None = None

    @property
    def passed(self) -> bool:
        return self.undefined == 0 and not any(self.failed.values())

    def _fail(self, condition, *faces):
        self.failed[condition] += 1
        if self.first_failure is None:
            self.first_failure = (condition, *(members(f) for f in faces))


def _pairing_table(cplx: Complex, order: DiagonalOrder) -> tuple[dict[int, int], list[int]]:
    compat = compatibility_masks(cplx)
    table: dict[int, int] = {}
    undefined = []
    for face in cplx.faces:
        try:
            table[face] = pairing_function(cplx, order, face, compat)
        except NoCandidate:
            undefined.append(face)
    return table, undefined


def verify_pairing_conditions(cplx: Complex, order: DiagonalOrder) -> PairingReport:
    """Check the four pairing conditions on every face, empty face included."""
    report = PairingReport()
    f, undefined = _pairing_table(cplx, order)
    report.undefined = len(undefined)
    if undefined:
        report.first_failure = ("undefined", members(undefined[0]))
    faces = cplx.face_set
    for s, fs in f.items():
        bit = 1 << fs
        if not s & bit:
            up = s | bit
            report.checked[1] += 1
            if up not in faces:
                report._fail(1, s)
                continue
            report.checked[2] += 1
            if f.get(up) != fs:
                report._fail(2, s, up)
            for m in members(s):
                other = up ^ (1 << m)
                if other in faces and other in f:
                    report.checked[4] += 1
                    if not order.precedes(fs, f[other]):
                        report._fail(4, s, other)
        else:
            down = s ^ bit
            if down in faces:
                report.checked[3] += 1
                if f.get(down) != fs:
                    report._fail(3, s, down)
    return report


@dataclass
class MorseMatching:
    complex: Complex
    pairing: dict[int, int]
    matched_pairs: list[tuple[int, int]]
    critical: list[int]

    @property
    def is_perfect(self) -> bool:
        return not self.critical


def build_matching(cplx: Complex, order: DiagonalOrder) -> MorseMatching:
    f, undefined = _pairing_table(cplx, order)
    if undefined:
        raise NoCandidate(f"pairing undefined on {len(undefined)} faces, e.g. {members(undefined[0])}")
    partner: dict[int, int] = {}
    pairs = []
    for s in cplx.faces:
        bit = 1 << f[s]
        if s & bit:
            continue
        up = s | bit
        if up not in cplx.face_set:
            raise InvariantViolation(f"{members(up)} is not a face")
        if s in partner or up in partner:
            raise NotAMatching(f"face {members(s)} or {members(up)} matched twice")
        partner[s] = up
        partner[up] = s
        pairs.append((s, up))
    critical = [s for s in cplx.faces if s not in partner]
    return MorseMatching(cplx, f, pairs, critical)


def verify_acyclicity(matching: MorseMatching) -> bool:
    """True iff the modified Hasse diagram has no directed cycle.

    Matched cover relations point up, all others point down. Kahn's
    algorithm consumes every node exactly when the graph is acyclic.
    """
    up = {}
    used = set()
    for s, t in matching.matched_pairs:
        if s in used or t in used:
            return False
        used.update((s, t))
        up[s] = t
    faces = matching.complex.faces
    succ: dict[int, list[int]] = {f: [] for f in faces}
    indeg = dict.fromkeys(faces, 0)
    for t in faces:
        for m in members(t):
            s = t ^ (1 << m)
            if up.get(s) == t:
                succ[s].append(t)
                indeg[t] += 1
            else:
                succ[t].append(s)
                indeg[s] += 1
    queue = deque(f for f in faces if indeg[f] == 0)
    seen = 0
    while queue:
        node = queue.popleft()
        seen += 1
        for nxt in succ[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                queue.append(nxt)
    return seen == len(faces)


@dataclass(frozen=True)
class CollapseLog:
    steps: tuple[tuple[int, int], ...]
    survivor: int

    def to_lines(self) -> list[str]:
        """One ``free-face coface`` pair per line, bitsets in hex."""
        return [f"{tau:x} {sigma:x}" for tau, sigma in self.steps]

    @classmethod
    def from_lines(cls, lines, survivor: int) -> "CollapseLog":
        steps = []
        for line in lines:
            if line.strip():
                a, b = line.split()
                steps.append((int(a, 16), int(b, 16)))
        return cls(tuple(steps), survivor)


def _is_free(present: set[int], tau: int, sigma: int, d: int) -> bool:
    if tau not in present or sigma not in present:
        return False
    cofaces = [tau | (1 << v) for v in range(d) if not tau >> v & 1 and (tau | (1 << v)) in present]
    return cofaces == [sigma]


def collapse(matching: MorseMatching) -> CollapseLog:
    """Run the elementary collapses prescribed by an acyclic perfect matching.

    Pairs go top dimension first, ties in canonical order. If a scheduled pair
    is not yet free, the remaining pairs are swept repeatedly until each one
    becomes free; a sweep with no progress raises :class:`StuckCollapse`.
    """
    cplx = matching.complex
    if matching.critical:
        raise StuckCollapse(f"{len(matching.critical)} critical faces; nothing to collapse to")
    survivor = None
    pending = []
    for s, t in matching.matched_pairs:
        if s == 0:
            survivor = t
        else:
            pending.append((s, t))
    if survivor is None:
        raise StuckCollapse("the empty face is unmatched")
    pending.sort(key=lambda p: (-p[1].bit_count(), face_key(p[1])))

    present = set(cplx.faces)
    steps = []
    while pending:
        left = []
        for tau, sigma in pending:
            if _is_free(present, tau, sigma, cplx.d):
                present.discard(tau)
                present.discard(sigma)
                steps.append((tau, sigma))
            else:
                left.append((tau, sigma))
        if len(left) == len(pending):
            raise StuckCollapse(f"no free pair among {len(left)} remaining, e.g. {members(left[0][0])}")
        pending = left
    if present != {0, survivor}:
        raise StuckCollapse(f"{len(present) - 2} faces left over")
    return CollapseLog(tuple(steps), survivor)


def replay_collapse(cplx: Complex, log: CollapseLog) -> bool:
    """Re-run ``log`` on a fresh copy of ``cplx``; True if every step is legal."""
    present = set(cplx.faces)
    for tau, sigma in log.steps:
        if not (tau | sigma == sigma and (sigma ^ tau).bit_count() == 1):
            return False
        if not _is_free(present, tau, sigma, cplx.d):
            return False
        present.discard(tau)
        present.discard(sigma)
    return present == {0, log.survivor} and log.survivor.bit_count() == 1


def mouth_incidence_check(cplx: Complex, x: int) -> bool:
    """True iff every facet uses a diagonal incident to vertex ``x``."""
    mask = 0
    for idx, dg in enumerate(cplx.labels):
        if x in dg:
            mask |= 1 << idx
    return all(f & mask for f in cplx.facets)


@dataclass
class MorseResult:
    order: DiagonalOrder
    conditions: PairingReport
    matching: MorseMatching | None
    acyclic: bool
    log: CollapseLog | None

    @property
    def ok(self) -> bool:
        return (
            self.conditions.passed
            and self.matching is not None
            and self.matching.is_perfect
            and self.acyclic
            and self.log is not None
        )


def run_morse(cplx: Complex, x: int | None = None) -> MorseResult:
    """Order, verify, match, check acyclicity and collapse, in that order."""
    order = mouth_order(cplx, x)
    report = verify_pairing_conditions(cplx, order)
    if not report.passed:
        return MorseResult(order, report, None, False, None)
    matching = build_matching(cplx, order)
    acyclic = verify_acyclicity(matching)
    log = collapse(matching) if acyclic and matching.is_perfect else None
    return MorseResult(order, report, matching, acyclic, log)
