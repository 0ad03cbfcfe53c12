"""Compactified phase portraits of w' = prod (w - e_j) on the disk.

The d roots of unity give a field whose disk portrait is fully
classifiable: sources, sinks and centers inside, 2(d - 1) saddles on the
boundary circle, and a separatrix skeleton that collapses to a planar
tree with an associated chord diagram.  d = 3 is Morse; d = 4 has two
centers and is flagged non-Morse instead of receiving a tree.
"""

import warnings

from eternal_kit import portraits, scalar_ode


def describe(d):
    fld = scalar_ode.PolyField.cyclotomic(d)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        graph = portraits.trace_and_extract(fld)
    print(f"d = {d}:")
    for j, (root, kind) in enumerate(zip(graph.roots, graph.classes)):
        print(f"  root {j} at {root:+.3f}: {kind}")
    print(f"  boundary saddles: {len(graph.saddle_angles)}")
    resolved = sum(1 for s in graph.separatrices if s.resolved)
    print(f"  separatrices traced: {len(graph.separatrices)} "
          f"({resolved} resolved)")
    if graph.non_morse:
        print("  non-Morse portrait: no tree is extracted")
    else:
        degs = sorted(len(v) for v in graph.tree.neighbors.values())
        print(f"  tree degrees {degs}, chord code {graph.chord_code}")
    print()


def main():
    for d in (2, 3, 4):
        describe(d)

    print("census of distinct portraits by degree:")
    for d in range(2, 11):
        print(f"  d={d:2d}: {portraits.count_portraits(d)}")


if __name__ == "__main__":
    main()
