#!/usr/bin/env python3
# Copyright 2026 The cgraph Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes synthetic-150.graph: 150 units and 300 prerequisites.

Deterministic for a given seed. Every unit after the first gets one
prerequisite among its recent predecessors, so the graph is connected; the
remaining edges are drawn forward in id order, which keeps it acyclic.
"""
import argparse
import random

NODES = 150
EDGES = 300
GROUPS = 12
OPTIONAL = 30
CLUSTERS = ["fonetica", "morfologia_nominale", "morfologia_verbale", "sintassi", "lessico"]


def build(seed):
    rng = random.Random(seed)
    ids = [f"u{i:03d}" for i in range(NODES)]
    pairs = set()
    for j in range(1, NODES):
        pairs.add((rng.randrange(max(0, j - 12), j), j))
    while len(pairs) < EDGES:
        j = rng.randrange(1, NODES)
        i = rng.randrange(max(0, j - 30), j)
        pairs.add((i, j))

    into = {}
    for i, j in sorted(pairs):
        into.setdefault(j, []).append(i)
    kinds = {p: "required" for p in pairs}

    heads = sorted(j for j, tails in into.items() if len(tails) >= 2)
    groups = []
    for j in sorted(rng.sample(heads, GROUPS)):
        a, b = sorted(rng.sample(into[j], 2))
        gid = f"g_{ids[j]}"
        groups.append((gid, ids[j]))
        kinds[(a, j)] = f"required:{gid}"
        kinds[(b, j)] = f"alt:{gid}"

    plain = sorted(p for p, k in kinds.items() if k == "required")
    for p in rng.sample(plain, OPTIONAL):
        kinds[p] = "optional"

    lines = [
        "# Generated by gen_synthetic.py; do not edit.",
        "graph sintetico",
        "meta title Corso sintetico a scala piena",
        f"meta seed {seed}",
    ]
    for n, nid in enumerate(ids):
        cluster = CLUSTERS[n * len(CLUSTERS) // NODES]
        minutes = rng.choice([30, 45, 60, 90])
        pages = rng.choice(["2", "2.5", "3", "3.5", "4", "5"])
        lines.append(f"node {nid} | Unità {n + 1} | {cluster} | {minutes} | - | {pages}")
    for gid, head in groups:
        lines.append(f"group {gid} {head}")
    for i, j in sorted(pairs):
        lines.append(f"edge {ids[i]} -> {ids[j]} {kinds[(i, j)]}")
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=150300)
    parser.add_argument("--out", default="synthetic-150.graph")
    args = parser.parse_args()
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(build(args.seed))


if __name__ == "__main__":
    main()
