"""3-CNF formulas: DIMACS I/O, evaluation and an exhaustive SAT oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

DEFAULT_SAT_CAP = 24


class DimacsError(ValueError):
    """Malformed DIMACS input. ``line`` is 1-based, or None if not attributable."""

    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotThreeCNF(DimacsError):
    """A clause has more than three distinct literals."""


class Literal(NamedTuple):
    var: int
    negated: bool

    def __str__(self):
        return f"~x{self.var}" if self.negated else f"x{self.var}"

    def to_int(self):
        return -self.var if self.negated else self.var

    @classmethod
    def from_int(cls, value):
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value < 0)

    def satisfied_by(self, assignment):
        return assignment[self.var - 1] != self.negated


def make_clause(literals):
    """Deduplicate literals, keeping first-occurrence order."""
    clause = tuple(dict.fromkeys(literals))
    if not 1 <= len(clause) <= 3:
        raise NotThreeCNF(f"clause must have 1..3 distinct literals, got {len(clause)}")
    return clause


@dataclass(frozen=True)
class Formula3CNF:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        if not self.clauses:
            raise ValueError("formula needs at least one clause")
        clauses = tuple(make_clause(Literal(*lit) for lit in c) for c in self.clauses)
        for c in clauses:
            for lit in c:
                if not 1 <= lit.var <= self.num_vars:
                    raise ValueError(f"literal {lit} outside 1..{self.num_vars}")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def from_ints(cls, num_vars, clauses):
        """Build from DIMACS-style signed ints, e.g. ``from_ints(3, [[1, -2, 3]])``."""
        return cls(num_vars, tuple(tuple(Literal.from_int(v) for v in c) for c in clauses))

    @property
    def m(self):
        return len(self.clauses)

    def __str__(self):
        return " & ".join("(" + " | ".join(map(str, c)) + ")" for c in self.clauses)


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        yield lineno, raw.strip()


def parse_dimacs(text):
    """Parse DIMACS CNF from ``str`` or ``bytes``.

    Clauses may span lines; a ``%`` line ends the clause section (SATLIB style).
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DimacsError(f"input is not UTF-8: {exc}") from None
    header = None
    clauses = []
    current = []
    current_line = None
    for lineno, line in _tokens(text):
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if header is not None:
                raise DimacsError("duplicate problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad problem line {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"bad problem line {line!r}", lineno) from None
            if n < 1:
                raise DimacsError("formula must have at least one variable", lineno)
            if m < 1:
                raise DimacsError("formula must have at least one clause", lineno)
            header = (n, m, lineno)
            continue
        if header is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                value = int(tok)
            except ValueError:
                raise DimacsError(f"bad token {tok!r}", lineno) from None
            if value == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                clauses.append((current, current_line))
                current = []
                continue
            if abs(value) > header[0]:
                raise DimacsError(f"variable {abs(value)} exceeds header bound {header[0]}", lineno)
            if not current:
                current_line = lineno
            current.append(Literal.from_int(value))
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("last clause not terminated by 0", current_line)
    n, m, hline = header
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}", hline)
    built = []
    for lits, lineno in clauses:
        try:
            built.append(make_clause(lits))
        except NotThreeCNF as exc:
            raise NotThreeCNF(f"not 3-CNF: {exc}", lineno) from None
    return Formula3CNF(n, tuple(built))


def render_dimacs(f):
    lines = [f"p cnf {f.num_vars} {f.m}"]
    for c in f.clauses:
        lines.append(" ".join(str(lit.to_int()) for lit in c) + " 0")
    return "\n".join(lines) + "\n"


def evaluate(f, assignment):
    if len(assignment) != f.num_vars:
        raise ValueError(f"assignment has {len(assignment)} values, formula has {f.num_vars} variables")
    return all(any(lit.satisfied_by(assignment) for lit in c) for c in f.clauses)


def brute_force_sat(f, cap=DEFAULT_SAT_CAP):
    """First satisfying assignment in lexicographic order (False < True, x1 first), or None."""
    if f.num_vars > cap:
        raise ValueError(f"{f.num_vars} variables exceeds the oracle cap of {cap}; pass a larger cap")
    for values in itertools.product((False, True), repeat=f.num_vars):
        if evaluate(f, values):
            return values
    return None


def assignment_to_json(assignment):
    return {f"x{i}": bool(v) for i, v in enumerate(assignment, start=1)}


def assignment_from_json(data, num_vars=None):
    if not isinstance(data, dict):
        raise ValueError("assignment must be a JSON object")
    n = len(data) if num_vars is None else num_vars
    values = []
    for i in range(1, n + 1):
        v = data.get(f"x{i}")
        if not isinstance(v, bool):
            raise ValueError(f"assignment missing boolean x{i}")
        values.append(v)
    if set(data) != {f"x{i}" for i in range(1, n + 1)}:
        raise ValueError("assignment keys must be exactly x1..xn")
    return tuple(values)
