"""Banked-memory access-pattern simulator for the butterfly loops.

``gen_trace`` replays a variant's index arithmetic (no value arithmetic)
and records, stage by stage, which addresses every butterfly reads and
writes and which array each side targets.  The scheduling model then asks
whether those accesses fit a banked memory at a given initiation interval:

* One step of the pipelined butterfly loop issues ``unroll`` butterflies.
  Step g performs the reads of group g; with ``rw_overlap`` the writes of
  group ``g - depth`` land in the same step (steady state of a pipeline
  whose stores retire ``depth`` groups behind the loads).
* A bank serves at most ``ports * II`` accesses per step (true dual-port
  default: ports=2, any read/write mix).
* In-place traces (dit/dif/flat) keep the pipeline primed across stage
  boundaries: the drained writes of one stage land against the first reads
  of the next, which is exactly where their cross-stage conflicts come
  from.  Two-array traces (pease/pease_nc) flush at the boundary, since the
  buffer swap is a synchronization point.

``schedule`` reports the smallest II with no over-capacity bank-step;
``feasible_partition`` searches for an explicit assignment achieving II=1,
exhaustively (with symmetry breaking) up to 16 addresses and over
structured interleave/blocksize mappings beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import SearchBudgetExceeded, UnsupportedVariant

TRACE_VARIANTS = ("dit", "dif", "flat", "pease", "pease_nc")


@dataclass(frozen=True)
class Iteration:
    """Addresses one butterfly reads and writes."""

    reads: tuple[int, ...]
    writes: tuple[int, ...]


@dataclass(frozen=True)
class Stage:
    """One transform stage: its iterations plus the arrays they target."""

    read_array: str
    write_array: str
    iterations: tuple[Iteration, ...]

    @property
    def in_place(self) -> bool:
        return self.read_array == self.write_array


@dataclass(frozen=True)
class AccessTrace:
    """Per-stage butterfly address trace for one algorithm at one size."""

    algo: str
    log2n: int
    stages: tuple[Stage, ...]

    @property
    def in_place(self) -> bool:
        return all(s.in_place for s in self.stages)


def _inplace_pairs(log2n: int, s: int) -> list[Iteration]:
    """Stage-s butterfly pairs (j+k, j+k+m/2) in j-outer, k-inner order."""
    n = 1 << log2n
    m = 1 << s
    half = m >> 1
    out = []
    for j in range(0, n, m):
        for k in range(half):
            pair = (j + k, j + k + half)
            out.append(Iteration(pair, pair))
    return out


def gen_trace(algo: str, log_n: int) -> AccessTrace:
    """Exact per-stage, per-iteration addresses for one algorithm.

    Stockham and six-step traces are out of scope; requesting them raises
    UnsupportedVariant.
    """
    if algo not in TRACE_VARIANTS:
        raise UnsupportedVariant(f"no trace generator for {algo!r}")
    if not 1 <= log_n <= 16:
        raise ValueError("log_n must be in [1, 16]")
    n = 1 << log_n
    half_n = n >> 1
    stages = []
    if algo in ("dit", "flat"):
        for s in range(1, log_n + 1):
            stages.append(Stage("x", "x", tuple(_inplace_pairs(log_n, s))))
    elif algo == "dif":
        for s in range(log_n, 0, -1):
            stages.append(Stage("x", "x", tuple(_inplace_pairs(log_n, s))))
    else:
        iters = tuple(
            Iteration((2 * r, 2 * r + 1), (r, r + half_n)) for r in range(half_n)
        )
        for s in range(log_n):
            if algo == "pease":
                src, dst = "x", "y"
            else:
                src, dst = ("x", "y") if s % 2 == 0 else ("y", "x")
            stages.append(Stage(src, dst, iters))
    return AccessTrace(algo, log_n, tuple(stages))


@dataclass(frozen=True)
class BankMap:
    """Address-to-bank mapping: interleave, blocksize, or explicit table."""

    kind: str  # "interleave" | "blocksize" | "explicit"
    param: int = 0
    table: tuple[int, ...] | None = None

    def bank_of(self, addr: int) -> int:
        if self.kind == "interleave":
            return addr % self.param
        if self.kind == "blocksize":
            return addr // self.param
        return self.table[addr]

    def n_banks(self, size: int) -> int:
        if self.kind == "interleave":
            return self.param
        if self.kind == "blocksize":
            return -(-size // self.param)
        return max(self.table) + 1 if self.table else 1


def interleave(m: int) -> BankMap:
    """Adjacent addresses to different banks: bank = addr mod m."""
    if m < 1:
        raise ValueError("interleave factor must be >= 1")
    return BankMap("interleave", m)


def blocksize(b: int) -> BankMap:
    """Contiguous b-address blocks per bank: bank = addr div b."""
    if b < 1:
        raise ValueError("block size must be >= 1")
    return BankMap("blocksize", b)


def explicit(assignment) -> BankMap:
    """Explicit per-address bank table (sequence or {addr: bank} dict)."""
    if isinstance(assignment, dict):
        table = tuple(assignment[a] for a in range(len(assignment)))
    else:
        table = tuple(assignment)
    return BankMap("explicit", table=table)


@dataclass(frozen=True)
class BankConfig:
    """Partitioning plus pipeline shape for the scheduling model.

    mapping applies to every array unless given as {array_id: BankMap}.
    """

    mapping: object
    ports: int = 2
    unroll: int = 1
    rw_overlap: bool = True
    depth: int = 1

    def __post_init__(self):
        if self.ports < 1 or self.unroll < 1 or self.depth < 1:
            raise ValueError("ports, unroll, and depth must all be >= 1")

    def map_for(self, array_id: str) -> BankMap:
        if isinstance(self.mapping, dict):
            return self.mapping[array_id]
        return self.mapping


def bank_of(addr: int, cfg) -> int:
    """Bank id of addr under a BankMap or a BankConfig's default mapping."""
    if isinstance(cfg, BankConfig):
        return cfg.map_for(None).bank_of(addr)
    return cfg.bank_of(addr)


@dataclass(frozen=True)
class ConflictReport:
    """Outcome of scheduling one trace against one bank configuration."""

    achieved_ii: int
    target_ii: int
    feasible: bool
    conflicts: tuple = ()  # (stage, step, "array:bank", accesses) at target II
    swap_safe: bool | None = None


def _groups(trace: AccessTrace, unroll: int):
    """Unroll-sized butterfly groups in execution order.

    Yields (stage_idx, reads, writes) where reads/writes are lists of
    (array_id, addr).
    """
    for stage_idx, stage in enumerate(trace.stages):
        iters = stage.iterations
        for lo in range(0, len(iters), unroll):
            chunk = iters[lo : lo + unroll]
            reads = [(stage.read_array, a) for it in chunk for a in it.reads]
            writes = [(stage.write_array, a) for it in chunk for a in it.writes]
            yield stage_idx, reads, writes


def _steps(trace: AccessTrace, cfg: BankConfig):
    """Per-step access lists [(array, addr), ...] with their stage index.

    Applies the rw_overlap/depth pipelining and the in-place cross-stage
    chaining described in the module docstring.
    """
    groups = list(_groups(trace, cfg.unroll))
    if not groups:
        return
    if not cfg.rw_overlap:
        for stage_idx, reads, writes in groups:
            yield stage_idx, reads
            yield stage_idx, writes
        return

    chain = trace.in_place
    regions = []
    if chain:
        regions.append(groups)
    else:
        start = 0
        for i in range(1, len(groups) + 1):
            if i == len(groups) or groups[i][0] != groups[i - 1][0]:
                regions.append(groups[start:i])
                start = i

    for region in regions:
        depth = cfg.depth
        for g, (stage_idx, reads, _) in enumerate(region):
            accesses = list(reads)
            if g >= depth:
                accesses += region[g - depth][2]
            yield stage_idx, accesses
        for g in range(max(0, len(region) - depth), len(region)):
            yield region[g][0], list(region[g][2])


def schedule(trace: AccessTrace, cfg: BankConfig, target_ii: int = 1) -> ConflictReport:
    """Smallest initiation interval with no over-capacity bank-step.

    Searches upward from target_ii; feasible means the target itself held.
    Conflicts are reported for the target II as (stage, step, bank, count).
    """
    if target_ii < 1:
        raise ValueError("target_ii must be >= 1")
    loads = []  # (stage_idx, step_idx, {(array, bank): count})
    max_load = 0
    for step_idx, (stage_idx, accesses) in enumerate(_steps(trace, cfg)):
        counts: dict[tuple, int] = {}
        for array_id, addr in accesses:
            key = (array_id, cfg.map_for(array_id).bank_of(addr))
            counts[key] = counts.get(key, 0) + 1
        if counts:
            loads.append((stage_idx, step_idx, counts))
            max_load = max(max_load, max(counts.values()))

    conflicts = tuple(
        (stage_idx, step_idx, f"{array}:{bank}", count)
        for stage_idx, step_idx, counts in loads
        for (array, bank), count in sorted(counts.items())
        if count > cfg.ports * target_ii
    )
    achieved = max(target_ii, -(-max_load // cfg.ports))
    return ConflictReport(
        achieved_ii=achieved,
        target_ii=target_ii,
        feasible=achieved == target_ii,
        conflicts=conflicts,
    )


def conflict_graph(
    trace: AccessTrace, unroll: int = 1, rw_overlap: bool = True, depth: int = 1
) -> dict[str, set[frozenset[int]]]:
    """Co-cycle address groups per array, across all stages.

    Separation requirements follow downstream: a group carrying more
    accesses than one bank's ports cannot live entirely in that bank.
    """
    if trace.log2n > 8:
        raise ValueError("conflict_graph is an analysis tool; use log_n <= 8")
    cfg = BankConfig(interleave(1), unroll=unroll, rw_overlap=rw_overlap, depth=depth)
    out: dict[str, set[frozenset[int]]] = {}
    for _, accesses in _steps(trace, cfg):
        per_array: dict[str, set[int]] = {}
        for array_id, addr in accesses:
            per_array.setdefault(array_id, set()).add(addr)
        for array_id, addrs in per_array.items():
            out.setdefault(array_id, set()).add(frozenset(addrs))
    return out


def separation_partners(
    trace: AccessTrace,
    addr: int,
    array_id: str = "x",
    ports: int = 2,
    unroll: int = 1,
    rw_overlap: bool = True,
    depth: int = 1,
) -> set[int]:
    """Addresses that some over-capacity co-cycle group ties to addr.

    A step whose accesses to one array exceed `ports` cannot be served by a
    single bank, so its members may be forced apart; this returns the union
    of such step footprints containing addr (minus addr itself).
    """
    cfg = BankConfig(interleave(1), ports=ports, unroll=unroll,
                     rw_overlap=rw_overlap, depth=depth)
    partners: set[int] = set()
    for _, accesses in _steps(trace, cfg):
        addrs = [a for arr, a in accesses if arr == array_id]
        if len(addrs) > ports and addr in addrs:
            partners.update(addrs)
    partners.discard(addr)
    return partners


def _array_step_counts(trace: AccessTrace, cfg: BankConfig):
    """Per-array step loads: array -> list of {addr: count} dicts."""
    per_array: dict[str, list[dict[int, int]]] = {}
    for _, accesses in _steps(trace, cfg):
        buckets: dict[str, dict[int, int]] = {}
        for array_id, addr in accesses:
            counts = buckets.setdefault(array_id, {})
            counts[addr] = counts.get(addr, 0) + 1
        for array_id, counts in buckets.items():
            per_array.setdefault(array_id, []).append(counts)
    return per_array


def _structured_candidates(size: int, n_banks: int):
    m = 1
    while m <= n_banks:
        yield interleave(m)
        m *= 2
    b = size
    while b >= 1:
        if -(-size // b) <= n_banks:
            yield blocksize(b)
        b //= 2


def _steps_fit(steps: list[dict[int, int]], bank_map: BankMap, capacity: int) -> bool:
    for counts in steps:
        loads: dict[int, int] = {}
        for addr, c in counts.items():
            b = bank_map.bank_of(addr)
            total = loads.get(b, 0) + c
            if total > capacity:
                return False
            loads[b] = total
    return True


def _backtrack_assignment(
    steps: list[dict[int, int]], size: int, n_banks: int, capacity: int, budget: int
) -> tuple[int, ...] | None:
    """Exhaustive capacity-respecting assignment search, or None.

    Banks are interchangeable, so address i may only open bank
    max_used_so_far + 1 (symmetry breaking).  Raises SearchBudgetExceeded
    when the node budget runs out before the search concludes.
    """
    touching: list[list[int]] = [[] for _ in range(size)]
    for idx, counts in enumerate(steps):
        for addr in counts:
            touching[addr].append(idx)
    # Most-constrained first: addresses hit by the most steps.
    order = sorted(range(size), key=lambda a: -len(touching[a]))
    loads = [dict() for _ in steps]  # step -> {bank: load}
    assignment = [-1] * size
    nodes = 0

    def place(pos: int, max_used: int) -> bool:
        nonlocal nodes
        if pos == size:
            return True
        addr = order[pos]
        for bank in range(min(max_used + 2, n_banks)):
            nodes += 1
            if nodes > budget:
                raise SearchBudgetExceeded(f"partition search exceeded {budget} nodes")
            ok = True
            touched = []
            for step in touching[addr]:
                total = loads[step].get(bank, 0) + steps[step][addr]
                if total > capacity:
                    ok = False
                    break
                loads[step][bank] = total
                touched.append(step)
            if ok:
                assignment[addr] = bank
                if place(pos + 1, max(max_used, bank)):
                    return True
                assignment[addr] = -1
            for step in touched:
                loads[step][bank] -= steps[step][addr]
        return False

    if place(0, -1):
        return tuple(assignment)
    return None


def feasible_partition(
    trace: AccessTrace,
    n_banks: int,
    ports: int = 2,
    unroll: int = 1,
    rw_overlap: bool = True,
    depth: int = 1,
    node_budget: int = 5_000_000,
) -> dict[str, BankMap] | None:
    """Bank assignment (per array) achieving II=1, or None if none exists.

    Structured interleave/blocksize mappings are tried first; for traces of
    at most 16 addresses a backtracking search over explicit assignments
    then settles the question exhaustively.  Beyond 16 addresses, None only
    certifies that no structured mapping works.
    """
    size = 1 << trace.log2n
    cfg = BankConfig(interleave(1), ports=ports, unroll=unroll,
                     rw_overlap=rw_overlap, depth=depth)
    per_array = _array_step_counts(trace, cfg)
    capacity = ports  # II = 1
    result: dict[str, BankMap] = {}
    for array_id, steps in sorted(per_array.items()):
        found = None
        for candidate in _structured_candidates(size, n_banks):
            if _steps_fit(steps, candidate, capacity):
                found = candidate
                break
        if found is None and size <= 16:
            assignment = _backtrack_assignment(steps, size, n_banks, capacity, node_budget)
            if assignment is not None:
                found = explicit(assignment)
        if found is None:
            return None
        result[array_id] = found
    return result


def pease_nc_partition_check(log_n: int, n_units: int, ports: int = 2) -> ConflictReport:
    """II and swap safety for pease_nc with interleave = n_units on BOTH arrays.

    The trace alternates the two physical arrays between input and output
    roles, so a clean schedule certifies that the single shared partition
    serves reads and writes alike and survives every swap.
    """
    if n_units < 1 or n_units & (n_units - 1):
        raise ValueError("n_units must be a power of two")
    if n_units > 1 << (log_n - 1):
        raise ValueError("n_units must not exceed N/2 butterflies")
    trace = gen_trace("pease_nc", log_n)
    mapping = interleave(n_units)
    cfg = BankConfig({"x": mapping, "y": mapping}, ports=ports, unroll=n_units)
    report = schedule(trace, cfg, target_ii=1)
    return replace(report, swap_safe=report.achieved_ii == 1)


def report_text(report: ConflictReport) -> str:
    """Human-readable rendering of a ConflictReport."""
    lines = [
        f"achieved II = {report.achieved_ii} (target {report.target_ii}): "
        f"{'feasible' if report.feasible else 'infeasible at target'}"
    ]
    if report.swap_safe is not None:
        lines.append(f"swap-safe: {'yes' if report.swap_safe else 'no'}")
    for stage, step, bank, count in report.conflicts:
        lines.append(f"  conflict stage={stage} step={step} bank={bank} accesses={count}")
    return "\n".join(lines)


def report_csv_row(report: ConflictReport) -> dict:
    """Flat dict of the report's headline numbers (CSV-friendly)."""
    return {
        "achieved_ii": report.achieved_ii,
        "target_ii": report.target_ii,
        "feasible": int(report.feasible),
        "conflicts": len(report.conflicts),
        "swap_safe": "" if report.swap_safe is None else int(report.swap_safe),
    }
