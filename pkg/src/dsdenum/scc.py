"""Strongly connected components (Tarjan), iterative so deep graphs are safe."""

from __future__ import annotations

from typing import Callable, Hashable, Iterable, TypeVar

V = TypeVar("V", bound=Hashable)


def tarjan(vertices: Iterable[V], successors: Callable[[V], Iterable[V]]) -> list[list[V]]:
    """Return SCCs in reverse topological order (sinks first).

    Only vertices listed in ``vertices`` are visited; successors outside that
    collection are ignored.
    """
    vertices = list(vertices)
    allowed = set(vertices)
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    out: list[list[V]] = []
    counter = 0

    for root in vertices:
        if root in index:
            continue
        work = [(root, iter([w for w in successors(root) if w in allowed]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([u for u in successors(w) if u in allowed])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(comp)
    return out
