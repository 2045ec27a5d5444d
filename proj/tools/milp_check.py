#!/usr/bin/env python3
"""Solve an exported LP-format model with an external MILP solver and
compare the optimum against an expected value.

Exit codes: 0 match, 1 mismatch or solver failure, 2 bad model file,
3 solver unavailable.
"""

import argparse
import re
import sys

TERM_RE = re.compile(r"([+-])\s*(\d+(?:\.\d*)?(?:[eE][+-]?\d+)?)\s+([A-Za-z_][\w]*)")


def parse_lp(text):
    sections = {"minimize": [], "subject to": [], "bounds": [], "binary": []}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        low = line.lower()
        if low in ("minimize", "maximize"):
            current = "minimize"
            continue
        if low in ("subject to", "st", "s.t."):
            current = "subject to"
            continue
        if low == "bounds":
            current = "bounds"
            continue
        if low in ("binary", "binaries", "general", "generals"):
            current = "binary"
            continue
        if low == "end":
            break
        if current is None:
            raise ValueError(f"content before any section: {line!r}")
        sections[current].append(line)

    # rows may wrap onto continuation lines that carry no ':'
    def join_rows(lines):
        rows = []
        for line in lines:
            if ":" in line:
                rows.append(line)
            elif rows:
                rows[-1] += " " + line
            else:
                raise ValueError(f"continuation without a row: {line!r}")
        return rows

    def parse_terms(expr):
        terms = []
        for sign, coef, var in TERM_RE.findall(expr):
            value = float(coef)
            terms.append((var, -value if sign == "-" else value))
        return terms

    objective = []
    for row in join_rows(sections["minimize"]):
        _, expr = row.split(":", 1)
        objective.extend(parse_terms(expr))

    constraints = []
    rel_re = re.compile(r"(<=|>=|=)")
    for row in join_rows(sections["subject to"]):
        name, body = row.split(":", 1)
        m = rel_re.search(body)
        if not m:
            raise ValueError(f"row without a relation: {row!r}")
        sense = m.group(1)
        lhs, rhs = body[: m.start()], body[m.end():]
        constraints.append((name.strip(), parse_terms(lhs), sense, float(rhs)))

    fixed = {}
    for line in sections["bounds"]:
        m = re.match(r"([\w]+)\s*=\s*([-\d.eE+]+)$", line)
        if not m:
            raise ValueError(f"unsupported bound: {line!r}")
        fixed[m.group(1)] = float(m.group(2))

    binaries = set()
    for line in sections["binary"]:
        binaries.update(line.split())

    return objective, constraints, fixed, binaries


def solve(objective, constraints, fixed, binaries):
    import numpy as np
    from scipy import sparse
    from scipy.optimize import Bounds, LinearConstraint, milp

    names = []
    index = {}

    def var(name):
        if name not in index:
            index[name] = len(names)
            names.append(name)
        return index[name]

    for name, _ in objective:
        var(name)
    for _, terms, _, _ in constraints:
        for name, _ in terms:
            var(name)
    for name in list(fixed) + list(binaries):
        var(name)

    n = len(names)
    c = np.zeros(n)
    for name, coef in objective:
        c[index[name]] += coef

    data, rows, cols, lo, hi = [], [], [], [], []
    for r, (_, terms, sense, rhs) in enumerate(constraints):
        for name, coef in terms:
            rows.append(r)
            cols.append(index[name])
            data.append(coef)
        if sense == "<=":
            lo.append(-np.inf)
            hi.append(rhs)
        elif sense == ">=":
            lo.append(rhs)
            hi.append(np.inf)
        else:
            lo.append(rhs)
            hi.append(rhs)
    a = sparse.csr_matrix((data, (rows, cols)), shape=(len(constraints), n))

    lb = np.zeros(n)
    ub = np.full(n, np.inf)
    for name, value in fixed.items():
        lb[index[name]] = value
        ub[index[name]] = value
    integrality = np.zeros(n)
    for name in binaries:
        integrality[index[name]] = 1
        ub[index[name]] = min(ub[index[name]], 1.0)

    res = milp(c=c, constraints=LinearConstraint(a, lo, hi), integrality=integrality, bounds=Bounds(lb, ub))
    return res


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("--expect", type=float, default=None)
    ap.add_argument("--tol", type=float, default=1e-6)
    args = ap.parse_args()

    try:
        from scipy.optimize import milp  # noqa: F401
    except ImportError:
        print("scipy.optimize.milp unavailable", file=sys.stderr)
        return 3

    try:
        with open(args.model) as fh:
            parsed = parse_lp(fh.read())
    except (OSError, ValueError) as e:
        print(f"cannot parse model: {e}", file=sys.stderr)
        return 2

    res = solve(*parsed)
    if not res.success:
        print(f"solver failed: {res.message}", file=sys.stderr)
        return 1
    print(f"optimum {res.fun:.9f}")
    if args.expect is not None and abs(res.fun - args.expect) > args.tol:
        print(f"mismatch: expected {args.expect:.9f}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
