"""Named example categories used by the tests, scripts and CLI."""

from __future__ import annotations

import re

from .category import TOTAL, SmallCategory


def group_element(k: int) -> str:
    return "e" if k == 0 else ("g" if k == 1 else f"g{k}")


def cyclic_group(n: int) -> SmallCategory:
    """Z/n as a one-object category; the object is the identity ``e``."""
    if n < 1:
        raise ValueError("n must be positive")
    arrows = {group_element(k): ("e", "e") for k in range(1, n)}
    table = [
        (group_element(a), group_element(b), group_element((a + b) % n))
        for a in range(1, n)
        for b in range(1, n)
    ]
    return SmallCategory.from_table(["e"], arrows, table, TOTAL, name=f"GROUP({n})")


def parallel_pair() -> SmallCategory:
    """Two arrows f, g from v to u and nothing else."""
    return SmallCategory.from_table(
        ["u", "v"], {"f": ("v", "u"), "g": ("v", "u")}, [], TOTAL, name="PAR"
    )


def kg(n: int) -> SmallCategory:
    """A commuting square with n parallel completions.

    alpha: x -> u, beta: y -> u, gamma_i: v -> x, delta_i: v -> y and
    alpha gamma_i = beta delta_i.  Cones of alpha and beta meet in n
    minimal common extensions.
    """
    if n < 1:
        raise ValueError("n must be positive")
    arrows = {"alpha": ("x", "u"), "beta": ("y", "u")}
    table = []
    for i in range(1, n + 1):
        arrows[f"gamma{i}"] = ("v", "x")
        arrows[f"delta{i}"] = ("v", "y")
        arrows[f"alpha.gamma{i}"] = ("v", "u")
        table.append(("alpha", f"gamma{i}", f"alpha.gamma{i}"))
        table.append(("beta", f"delta{i}", f"alpha.gamma{i}"))
    return SmallCategory.from_table(["u", "x", "y", "v"], arrows, table, TOTAL, name=f"KG({n})")


def sep_index(i: int, j: int) -> str:
    return f"{i}_{j}"


def sep_partner(k: int, i: int, j: int, p: int, rows: int) -> tuple[int, int] | None:
    """Index (i', j') with alpha_k gamma_ij = beta_k delta_i'j', or None."""
    if k == 1 and i % 3 == 1:
        return i, (j + 1) % p
    if k == 2 and i % 3 == 2:
        return i, (j + 1) % p
    if k == 3 and i % 3 == 0:
        return (i + 3) % rows, j
    if k == 4 and i % 3 == 0:
        return None
    return i, j


def sep_vertex(i: int, j: int) -> str:
    """Source of gamma_ij and delta_ij.

    The twisted identifications force sources to agree along each twist,
    so rows 1 and 2 mod 3 share one vertex per row and rows 0 mod 3 share
    one vertex per column.
    """
    return f"zc{j}" if i % 3 == 0 else f"z{i}"


def sep(p: int, m: int) -> SmallCategory:
    """Finite wrapped model of the separation example.

    Rows are indexed by Z/3m and columns by Z/p.  Five squares over the
    vertices v, w share the legs gamma_ij, delta_ij; squares 1 and 2 twist
    columns on rows 1 and 2 mod 3, square 3 shifts rows 0 mod 3 by three,
    and square 4 only identifies rows not divisible by 3.
    """
    if p < 3 or p % 2 == 0 or m < 1:
        raise ValueError("SEP needs odd p > 1 and positive m")
    rows = 3 * m
    objects = [f"u{k}" for k in range(5)] + ["v", "w"]
    objects += [f"z{i}" for i in range(rows) if i % 3] + [f"zc{j}" for j in range(p)]
    arrows: dict[str, tuple[str, str]] = {}
    for k in range(5):
        arrows[f"alpha{k}"] = ("v", f"u{k}")
        arrows[f"beta{k}"] = ("w", f"u{k}")
    table = []
    for i in range(rows):
        for j in range(p):
            z = sep_vertex(i, j)
            arrows[f"gamma{sep_index(i, j)}"] = (z, "v")
            arrows[f"delta{sep_index(i, j)}"] = (z, "w")
    for k in range(5):
        for i in range(rows):
            for j in range(p):
                ij = sep_index(i, j)
                comp = f"alpha{k}.gamma{ij}"
                arrows[comp] = (sep_vertex(i, j), f"u{k}")
                table.append((f"alpha{k}", f"gamma{ij}", comp))
                partner = sep_partner(k, i, j, p, rows)
                if partner is None:
                    other = f"beta{k}.delta{ij}"
                    arrows[other] = (sep_vertex(i, j), f"u{k}")
                    table.append((f"beta{k}", f"delta{ij}", other))
                else:
                    table.append((f"beta{k}", f"delta{sep_index(*partner)}", comp))
    return SmallCategory.from_table(objects, arrows, table, TOTAL, name=f"SEP({p},{m})")


def sep_twist(k: int) -> tuple[tuple[str, str], ...]:
    """Zigzag pairs (alpha_k, beta_k, beta_0, alpha_0) at the vertex v."""
    return ((f"alpha{k}", f"beta{k}"), ("beta0", "alpha0"))


_PATTERN = re.compile(r"^\s*([A-Za-z0-9]+)\s*(?:\(([^)]*)\))?\s*$")


def fixture(name: str):
    """Build a fixture from a name such as ``KG(4)`` or ``PAR``."""
    from . import groupmodels

    match = _PATTERN.match(name)
    if not match:
        raise ValueError(f"cannot parse fixture {name!r}")
    name = match.group(1).upper()
    args = [int(a) for a in match.group(2).split(",")] if match.group(2) else []
    builders = {
        "GROUP": cyclic_group,
        "PAR": parallel_pair,
        "KG": kg,
        "SEP": sep,
        "NAT": groupmodels.nat,
        "NSQ": groupmodels.nsq,
        "FREE2": groupmodels.free2,
        "FG": groupmodels.fg,
    }
    if name not in builders:
        raise ValueError(f"unknown fixture {name!r}")
    try:
        return builders[name](*args)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {args}") from exc


TOTAL_FIXTURES = ("GROUP(2)", "GROUP(3)", "PAR", "KG(2)", "KG(3)", "SEP(3,1)", "SEP(3,2)")
