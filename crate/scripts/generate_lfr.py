"""Writes LFR benchmark graphs as `u v` edge lists plus `node community` files.

Usage: python scripts/generate_lfr.py [OUT_DIR]   (default: crates/core/tests/data)
"""
import os
import sys

import networkx as nx
from networkx.generators.community import LFR_benchmark_graph

N = 1000
MIXING = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6]
PARAMS = dict(tau1=2.5, tau2=1.5, average_degree=20, max_degree=50, min_community=20, max_community=100)


def generate(mu):
    # The generator fails to converge for some seeds; try the next one.
    for attempt in range(20):
        try:
            return LFR_benchmark_graph(N, mu=mu, seed=100 + attempt, **PARAMS)
        except nx.ExceededMaxIterations as e:
            print(mu, attempt, e, file=sys.stderr)
    raise SystemExit(f"no LFR graph for mu={mu}")


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join("crates", "core", "tests", "data")
    os.makedirs(out, exist_ok=True)
    for mu in MIXING:
        g = generate(mu)
        g.remove_edges_from(nx.selfloop_edges(g))
        tag = f"mu{round(mu * 10):02d}"
        with open(os.path.join(out, f"lfr_n{N}_{tag}.edges"), "w") as f:
            f.write(f"# LFR benchmark N={N} mu={mu} {PARAMS} (networkx {nx.__version__})\n")
            for u, v in sorted(g.edges()):
                f.write(f"{u} {v}\n")
        with open(os.path.join(out, f"lfr_n{N}_{tag}.communities"), "w") as f:
            for v in sorted(g.nodes()):
                f.write(f"{v} {min(g.nodes[v]['community'])}\n")
        communities = len({frozenset(g.nodes[v]["community"]) for v in g})
        print(tag, g.number_of_nodes(), g.number_of_edges(), communities)


if __name__ == "__main__":
    main()
