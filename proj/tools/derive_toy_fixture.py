#!/usr/bin/env python3
"""Constraint search for the 11-vertex toy attributed graph used by the tests.

Searches for an edge set on vertices 1..11 whose maximal 0.6-quasi-cliques
(min size 4) are exactly the five target sets, with vertices 1 and 2 left
uncovered. Writes the edge list to stdout.
"""
import itertools
import math
import sys

N = 11
GAMMA_NUM, GAMMA_DEN = 3, 5
MIN_SIZE = 4
TARGETS = {
    frozenset({6, 7, 8, 9, 10, 11}): 3,  # set -> expected min degree
    frozenset({3, 4, 5, 6}): 3,
    frozenset({3, 4, 6, 7}): 2,
    frozenset({3, 5, 6, 7}): 2,
    frozenset({3, 6, 7, 8}): 2,
}
REQUIRED = {frozenset(e) for e in itertools.combinations([3, 4, 5, 6], 2)}


def floor_deg(size):
    return math.ceil(GAMMA_NUM * (size - 1) / GAMMA_DEN)


def dense_sets(adj):
    out = []
    for mask in range(1, 1 << N):
        members = [v + 1 for v in range(N) if mask >> v & 1]
        if len(members) < MIN_SIZE:
            continue
        need = floor_deg(len(members))
        s = set(members)
        if all(len(adj[v] & s) >= need for v in members):
            out.append(frozenset(members))
    return out


def maximal(sets):
    return {s for s in sets if not any(s < t for t in sets)}


def check(edges):
    adj = {v: set() for v in range(1, N + 1)}
    for e in edges:
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)
    found = maximal(dense_sets(adj))
    if found != set(TARGETS):
        return False
    for q, d in TARGETS.items():
        if min(len(adj[v] & q) for v in q) != d:
            return False
    return True


def main():
    # Edges forced by the target sets: the 4-clique, the two shared
    # neighbours 3 and 6 of vertex 7, and the triangle 6-7-8.
    fixed = set(REQUIRED) | {frozenset(p) for p in [(3, 7), (6, 7), (6, 8), (7, 8), (1, 2), (2, 3)]}
    block = [frozenset(p) for p in itertools.combinations(range(6, 12), 2)]
    free = [p for p in block if p not in fixed]
    for mask in range(1 << len(free)):
        edges = fixed | {p for i, p in enumerate(free) if mask >> i & 1}
        if check(edges):
            for e in sorted(tuple(sorted(e)) for e in edges):
                print(f"{e[0]} {e[1]}")
            return
    sys.exit("no edge set found")


if __name__ == "__main__":
    main()
