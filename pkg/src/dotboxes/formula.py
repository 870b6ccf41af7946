"""Positive CNF formulas and the variable-picking game on them.

Two players alternate picking unchosen variables; Trudy's picks become true,
Fred's become false.  Trudy wins when the formula evaluates true after all
variables are assigned.  Trudy picks first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

TRUDY = "Trudy"
FRED = "Fred"


class FormulaError(ValueError):
    """Malformed formula text; carries a 1-based line number when known."""

    def __init__(self, message: str, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Formula:
    n: int
    clauses: tuple[frozenset[int], ...]  # canonical: sorted, deduplicated

    @property
    def m(self) -> int:
        return len(self.clauses)


def make_formula(n: int, clauses) -> Formula:
    if n < 1:
        raise FormulaError(f"need at least one variable, got n={n}")
    canon = []
    seen = set()
    for cl in clauses:
        cs = frozenset(cl)
        if not cs:
            raise FormulaError("empty clause")
        for v in cs:
            if not isinstance(v, int) or v < 1 or v > n:
                raise FormulaError(f"variable index out of range: {v}")
        if cs not in seen:
            seen.add(cs)
            canon.append(cs)
    canon.sort(key=lambda c: sorted(c))
    return Formula(n=n, clauses=tuple(canon))


def parse_formula(text: str) -> Formula:
    """Header `p poscnf <n> <m>`, then m clause lines of 1-based indices
    terminated by 0.  `c` comment lines allowed anywhere."""
    n = None
    m = None
    clauses = []
    header_seen = False
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if not header_seen:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "poscnf":
                raise FormulaError("expected header `p poscnf <n> <m>`", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormulaError("header counts must be integers", lineno) from None
            if n < 1 or m < 0:
                raise FormulaError(f"bad counts n={n} m={m}", lineno)
            header_seen = True
            continue
        lits = []
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise FormulaError(f"bad clause line {line!r}", lineno) from None
        if not nums or nums[-1] != 0:
            raise FormulaError("clause line must end with 0", lineno)
        for v in nums[:-1]:
            if v < 0:
                raise FormulaError(f"negative literal {v} not allowed", lineno)
            if v == 0:
                raise FormulaError("0 terminator in the middle of a clause", lineno)
            if v > n:
                raise FormulaError(f"variable {v} out of range (n={n})", lineno)
            lits.append(v)
        if not lits:
            raise FormulaError("empty clause", lineno)
        clauses.append(lits)
    if not header_seen:
        raise FormulaError("missing header", 1)
    if len(clauses) != m:
        raise FormulaError(f"header declares {m} clauses, found {len(clauses)}")
    return make_formula(n, clauses)


def serialize_formula(f: Formula) -> str:
    lines = [f"p poscnf {f.n} {f.m}"]
    for cl in f.clauses:
        lines.append(" ".join(str(v) for v in sorted(cl)) + " 0")
    return "\n".join(lines) + "\n"


def evaluate(f: Formula, truth: dict[int, bool]) -> bool:
    for v in range(1, f.n + 1):
        if v not in truth:
            raise FormulaError(f"variable {v} unassigned")
    return all(any(truth[v] for v in cl) for cl in f.clauses)


def pad_even(f: Formula) -> Formula:
    """Add one dummy variable (in no clause) when n is odd."""
    if f.n % 2 == 0:
        return f
    return Formula(n=f.n + 1, clauses=f.clauses)


@dataclass(frozen=True)
class GposState:
    assigned_true: frozenset[int]
    assigned_false: frozenset[int]
    to_pick: str


GPOS_BOUND = 20


class GposStrategy:
    """Optimal-pick mapping for one side, backed by the solve memo."""

    def __init__(self, f: Formula, side: str):
        self.formula = f
        self.side = side

    def __call__(self, state: GposState) -> int:
        return _best_pick(self.formula, state, self.side)

    def pick(self, state: GposState) -> int:
        return self(state)


def gpos_initial(f: Formula) -> GposState:
    return GposState(frozenset(), frozenset(), TRUDY)


def _trudy_wins(f: Formula, true_set: frozenset[int], false_set: frozenset[int]) -> bool:
    n = f.n
    if len(true_set) + len(false_set) == n:
        return all(cl & true_set for cl in f.clauses)
    free = [v for v in range(1, n + 1) if v not in true_set and v not in false_set]
    trudy_turn = len(true_set) == len(false_set)  # Trudy picks first
    if trudy_turn:
        return any(_trudy_wins_memo(f, true_set | {v}, false_set) for v in free)
    return all(_trudy_wins_memo(f, true_set, false_set | {v}) for v in free)


_memo: dict = {}


def _trudy_wins_memo(f, true_set, false_set):
    key = (f, true_set, false_set)
    hit = _memo.get(key)
    if hit is None:
        hit = _trudy_wins(f, true_set, false_set)
        _memo[key] = hit
    return hit


def _best_pick(f: Formula, state: GposState, side: str) -> int:
    free = sorted(
        v
        for v in range(1, f.n + 1)
        if v not in state.assigned_true and v not in state.assigned_false
    )
    if not free:
        raise FormulaError("no variables left to pick")
    if state.to_pick == TRUDY:
        for v in free:
            if _trudy_wins_memo(f, state.assigned_true | {v}, state.assigned_false):
                return v
    else:
        for v in free:
            if not _trudy_wins_memo(f, state.assigned_true, state.assigned_false | {v}):
                return v
    return free[0]  # losing side: lowest-index pick


def gpos_solve(f: Formula) -> tuple[str, GposStrategy]:
    """Winner with Trudy picking first, plus an optimal strategy mapping for
    the winner (total: the losing side's states get a canonical pick)."""
    if f.n > GPOS_BOUND:
        raise FormulaError(f"n={f.n} exceeds the exact-solve bound {GPOS_BOUND}")
    w = TRUDY if _trudy_wins_memo(f, frozenset(), frozenset()) else FRED
    return w, GposStrategy(f, w)
