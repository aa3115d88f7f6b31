#!/usr/bin/env python3
"""Maximal circle actions on ruled surfaces over a genus-2 curve.

A positive-genus base admits no torus action at all, so every circle
action found here is maximal.  The minimal census entries are the
fixed-surface graphs of admissible degree; a blow-up then trades fixed
points for interior chains.  The walk prints the census with
provenance, replays one entry from its recorded origin, and pushes one
graph through an equivariant blow-up.
"""

from fractions import Fraction as Q

from torus_census import (
    ManifoldSpec,
    can_blow_up,
    extends_to_toric,
    graph_blow_up,
    graph_canonical_serialization,
    replay_circle,
    ruled_base_graph,
    run_census,
    validate,
)
from torus_census.render import census_table, graph_text


def main() -> None:
    spec = ManifoldSpec("product_ruled", 2, Q(5, 2), Q(1), ())
    result = run_census(spec)
    print(census_table(result))
    print()

    print("replaying entry [0] from its provenance:")
    provenance = result.circle_provenance[0]
    replayed = replay_circle(spec, provenance)
    assert graph_canonical_serialization(replayed) == graph_canonical_serialization(
        result.maximal_circles[0]
    )
    print(
        f"  ruled base graph of degree {provenance.degree} "
        "reproduces the stored graph exactly"
    )
    print()

    graph = ruled_base_graph(2, 2, Q(5, 2), False)
    print("degree-2 base graph before surgery:")
    print(graph_text(graph))
    print()

    delta = Q(1, 2)
    feasible, reason = can_blow_up(graph, 0, delta)
    assert feasible, reason
    blown = graph_blow_up(graph, 0, delta)
    ok, diagnostics = validate(blown)
    assert ok, diagnostics
    print(f"after a blow-up of capacity {delta} at component 0:")
    print(graph_text(blown))
    print()
    print(
        "the blown-up graph still cannot extend to a toric action:",
        not extends_to_toric(blown),
    )

    blown_spec = ManifoldSpec("product_ruled", 2, Q(5, 2), Q(1), (delta,))
    counts = run_census(blown_spec).counts
    print(
        f"census after one capacity-{delta} blow-up: "
        f"{counts.maximal_circle_count} maximal circle actions"
    )


if __name__ == "__main__":
    main()
