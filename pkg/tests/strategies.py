"""Hypothesis strategies for small left cancellative categories."""

from itertools import product

from hypothesis import strategies as st

from lcsc.category import SmallCategory


def path_category(n_vertices, edges):
    """All paths in a finite acyclic graph; edge k runs from src to dst."""
    objects = [f"v{i}" for i in range(n_vertices)]
    arrows = {f"e{k}": (f"v{s}", f"v{r}") for k, (s, r) in enumerate(edges)}
    paths = {name: [name] for name in arrows}
    frontier = dict(paths)
    while frontier:
        nxt = {}
        for pid, seq in frontier.items():
            for e, (s, r) in arrows.items():
                if arrows[seq[-1]][0] == r:
                    new = seq + [e]
                    nxt[".".join(new)] = new
        paths.update(nxt)
        frontier = nxt
    morphisms = {pid: (arrows[seq[-1]][0], arrows[seq[0]][1]) for pid, seq in paths.items()}
    compose = []
    for a, b in product(paths, repeat=2):
        if morphisms[a][0] == morphisms[b][1]:
            compose.append((a, b, f"{a}.{b}"))
    return SmallCategory.from_table(objects, morphisms, compose, name="paths")


@st.composite
def path_categories(draw, max_vertices=4, max_edges=4):
    n = draw(st.integers(1, max_vertices))
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] > e[1])
    edges = draw(st.lists(pairs, max_size=max_edges)) if n > 1 else []
    return path_category(n, edges)


def product_group(m, n):
    """Z/m x Z/n as a one-object category."""
    elems = [f"{a}_{b}" for a in range(m) for b in range(n)]
    one = "0_0"
    arrows = {x: (one, one) for x in elems if x != one}
    compose = []
    for a in range(m):
        for b in range(n):
            for c in range(m):
                for d in range(n):
                    compose.append((f"{a}_{b}", f"{c}_{d}", f"{(a + c) % m}_{(b + d) % n}"))
    return SmallCategory.from_table([one], arrows, compose, name=f"Z{m}xZ{n}")


groups = st.tuples(st.integers(1, 4), st.integers(1, 3)).map(lambda mn: product_group(*mn))
