"""Generic linear / mixed-binary program containers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

SENSES = ("<=", ">=", "=")


@dataclass
class Variable:
    name: str
    lb: float = 0.0
    ub: float = math.inf


@dataclass
class Constraint:
    coeffs: dict[int, float]
    sense: str
    rhs: float
    name: str = ""


@dataclass
class LinearProgram:
    variables: list[Variable] = field(default_factory=list)
    objective: dict[int, float] = field(default_factory=dict)
    sense: str = "min"
    constraints: list[Constraint] = field(default_factory=list)

    def add_var(self, name: str, lb: float = 0.0, ub: float = math.inf) -> int:
        if not math.isfinite(lb):
            raise ValueError(f"{name}: lower bound must be finite")
        if ub < lb:
            raise ValueError(f"{name}: empty bound interval")
        self.variables.append(Variable(name, lb, ub))
        return len(self.variables) - 1

    def add_constraint(self, coeffs: Mapping[int, float], sense: str, rhs: float, name: str = ""):
        if sense not in SENSES:
            raise ValueError(f"unknown relation {sense!r}")
        row = {}
        for j, v in coeffs.items():
            if not 0 <= j < len(self.variables):
                raise ValueError(f"constraint references unknown variable {j}")
            if v:
                row[j] = row.get(j, 0) + v
        self.constraints.append(Constraint(row, sense, rhs, name))

    @property
    def n(self) -> int:
        return len(self.variables)

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        lb = np.array([v.lb for v in self.variables], dtype=float)
        ub = np.array([v.ub for v in self.variables], dtype=float)
        return lb, ub

    def cost(self) -> np.ndarray:
        c = np.zeros(self.n)
        for j, v in self.objective.items():
            c[j] = v
        return c

    def matrix(self) -> tuple[np.ndarray, list[str], np.ndarray]:
        A = np.zeros((len(self.constraints), self.n))
        for r, con in enumerate(self.constraints):
            for j, v in con.coeffs.items():
                A[r, j] = v
        return A, [c.sense for c in self.constraints], np.array([c.rhs for c in self.constraints], dtype=float)

    def sparse_matrix(self):
        from scipy.sparse import csr_matrix

        rows, cols, vals = [], [], []
        for r, con in enumerate(self.constraints):
            for j, v in con.coeffs.items():
                rows.append(r)
                cols.append(j)
                vals.append(v)
        return csr_matrix((vals, (rows, cols)), shape=(len(self.constraints), self.n))

    def evaluate(self, values) -> float:
        return float(sum(v * values[j] for j, v in self.objective.items()))

    def max_violation(self, values, lb=None, ub=None) -> float:
        """Largest absolute violation of any constraint or bound."""
        worst = 0.0
        for con in self.constraints:
            lhs = sum(v * values[j] for j, v in con.coeffs.items())
            if con.sense == "<=":
                worst = max(worst, lhs - con.rhs)
            elif con.sense == ">=":
                worst = max(worst, con.rhs - lhs)
            else:
                worst = max(worst, abs(lhs - con.rhs))
        if lb is None:
            lb, ub = self.bounds()
        for j in range(self.n):
            worst = max(worst, lb[j] - values[j], values[j] - ub[j])
        return worst

    def dump(self) -> str:
        """Human-readable LP-text listing."""

        def expr(coeffs):
            terms = []
            for j, v in sorted(coeffs.items()):
                sign = "-" if v < 0 else "+"
                mag = abs(v)
                coef = "" if mag == 1 else f"{mag:g} "
                terms.append(f"{sign} {coef}{self.variables[j].name}")
            text = " ".join(terms) or "0"
            return text[2:] if text.startswith("+ ") else text

        lines = ["Minimize" if self.sense == "min" else "Maximize", f"  obj: {expr(self.objective)}", "Subject To"]
        for r, con in enumerate(self.constraints):
            name = con.name or f"c{r}"
            lines.append(f"  {name}: {expr(con.coeffs)} {con.sense} {con.rhs:g}")
        lines.append("Bounds")
        for v in self.variables:
            ub = "inf" if math.isinf(v.ub) else f"{v.ub:g}"
            lines.append(f"  {v.lb:g} <= {v.name} <= {ub}")
        return "\n".join(lines) + "\n"


@dataclass
class MilpModel:
    base: LinearProgram
    integral: frozenset[int] = frozenset()
    # decoding hints set by the formulation builders
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.integral = frozenset(self.integral)
        for j in self.integral:
            v = self.base.variables[j]
            if not (0 <= j < self.base.n) or v.lb < 0 or v.ub > 1:
                raise ValueError(f"integral variable {j} must have bounds within [0, 1]")

    def dump(self) -> str:
        text = self.base.dump()
        names = " ".join(self.base.variables[j].name for j in sorted(self.integral))
        return text + "Binary\n  " + names + "\nEnd\n"


@dataclass(frozen=True)
class SolveResult:
    status: str
    values: np.ndarray | None = None
    objective: float | None = None
    nodes: int = 0
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"
