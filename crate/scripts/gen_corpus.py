"""Write every connected graph on 1..7 vertices (up to isomorphism) as graph6.

Source: the networkx graph atlas, which lists all 1253 graphs on 0..7 vertices.
Usage: python3 scripts/gen_corpus.py > crates/core/tests/data/connected_le7.g6
"""

import sys

import networkx as nx


def main() -> None:
    counts = {}
    lines = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or not nx.is_connected(g):
            continue
        counts[n] = counts.get(n, 0) + 1
        lines.append(nx.to_graph6_bytes(g, header=False).decode().strip())
    out = sys.stdout
    out.write("# connected graphs on 1..7 vertices, one per isomorphism class\n")
    out.write("# counts: " + " ".join(f"{n}:{c}" for n, c in sorted(counts.items())) + "\n")
    for line in lines:
        out.write(line + "\n")


if __name__ == "__main__":
    main()
