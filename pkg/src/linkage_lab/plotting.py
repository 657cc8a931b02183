"""Report rendering: delimited sweep output plus matplotlib figures.

The report subcommand runs small seeded sweeps (solver lengths against
their bounds, the cross-or-rural tally, Euler bound slack) and writes a
CSV alongside PNG figures.
"""

from __future__ import annotations

import csv
import math
import os
import random

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from . import generators
from .families import fat_star
from .society import cross_or_rural_check, euler_bound_check
from .token_game import solve_block, solve_hub, solve_simple, solve_star

FIG_STYLE = {
    "figure.figsize": (6.0, 3.8),
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


def _solver_rows(rng: random.Random, count: int):
    rows = []
    for _ in range(count):
        g, L, a, k = generators.star_instance(rng)
        m = solve_star(g, L, a)
        rows.append(("stars", k, m.length, 3 * k))
        g, L, a, v, k = generators.hub_instance(rng)
        m = solve_hub(g, L, a, v)
        rows.append(("maxdeg", k, m.length, k * (k + 2)))
        g, L, a, d, k = generators.block_instance(rng)
        m = solve_block(g, L, a, d, g.n)
        from .token_game import block_length_budget
        rows.append(("corecase", k, m.length, block_length_budget(g.n, k)))
        g, xs, ys, a = generators.simple_instance(rng)
        m = solve_simple(g, xs, ys, a)
        rows.append(("simple", len(xs), m.length, len(xs)))
    return rows


def write_report(out_dir: str, seed: int = 0, count: int = 60) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    rng = random.Random(seed)

    rows = _solver_rows(rng, count)
    csv_path = os.path.join(out_dir, "report.csv")
    with open(csv_path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["sweep", "k", "length", "bound"])
        wr.writerows(rows)
    written.append(csv_path)

    with plt.rc_context(FIG_STYLE):
        fig, ax = plt.subplots()
        markers = {"simple": "o", "stars": "s", "maxdeg": "^",
                   "corecase": "x"}
        for name, mark in markers.items():
            xs = [r[3] for r in rows if r[0] == name]
            ys = [r[2] for r in rows if r[0] == name]
            ax.scatter(xs, ys, marker=mark, label=name, alpha=0.6, s=18)
        top = max((r[3] for r in rows), default=1)
        ax.plot([0, top], [0, top], "k--", lw=0.8, label="bound")
        ax.set_xscale("symlog")
        ax.set_xlabel("guaranteed bound")
        ax.set_ylabel("movement length")
        ax.legend(fontsize=8)
        ax.set_title("solver lengths against their bounds")
        fig.tight_layout()
        p = os.path.join(out_dir, "solver_lengths.png")
        fig.savefig(p, dpi=150)
        plt.close(fig)
        written.append(p)

        tally = {"rural": 0, "cross": 0}
        slack = []
        for _ in range(count):
            s = generators.society_instance(rng, n_max=9)
            kind, _ = cross_or_rural_check(s)
            tally[kind] += 1
            r = generators.rural_society_instance(rng)
            rep = euler_bound_check(r)
            slack.append(rep.bound - rep.boundary_degree_sum)
        fig, (ax1, ax2) = plt.subplots(1, 2)
        ax1.bar(list(tally), list(tally.values()), color=["#4c72b0", "#dd8452"])
        ax1.set_title("cross-or-rural tally")
        ax2.hist(slack, bins=range(0, max(slack) + 2), color="#55a868")
        ax2.set_title("Euler bound slack")
        ax2.set_xlabel("4|boundary| - 6 - degree sum")
        fig.tight_layout()
        p = os.path.join(out_dir, "society_sweeps.png")
        fig.savefig(p, dpi=150)
        plt.close(fig)
        written.append(p)

        fs = fat_star(1, check=False)
        fig, ax = plt.subplots(figsize=(4.6, 4.6))
        pos = {}
        rings = [fs.ring_cycles[0], fs.ring_cycles[1], fs.ring_cycles[2]]
        radii = [4.0, 2.5, 1.0]
        offsets = [18.0, 18.0, 54.0]
        for ring, rad, off in zip(rings, radii, offsets):
            step = 360.0 / len(ring)
            for idx, v in enumerate(ring):
                ang = math.radians(off + step * idx)
                pos[v] = (rad * math.cos(ang), rad * math.sin(ang))
        for u, v in fs.graph.edges:
            ax.plot([pos[u][0], pos[v][0]], [pos[u][1], pos[v][1]],
                    "-", color="#444", lw=0.7)
        ax.scatter([p_[0] for p_ in pos.values()],
                   [p_[1] for p_ in pos.values()], s=26, zorder=3,
                   color="#4c72b0")
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title("the fat-star tile")
        fig.tight_layout()
        p = os.path.join(out_dir, "fat_star.png")
        fig.savefig(p, dpi=150)
        plt.close(fig)
        written.append(p)

    return written
