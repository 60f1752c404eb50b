"""Tour of the graph moves and the scripting language.

Every move takes a PU graph to a PU graph.  Moves can be applied one
call at a time or driven by a small script language; the edge-flip
macro expands into such a script, so its effect is reproducible move
by move.
"""

from __future__ import annotations

from graphlink import (
    MoveFailed,
    apply_script,
    fixture,
    flip_edge_macro,
    is_pu,
    omega2_add,
    serialize_graph,
    serialize_script,
)


def show(title, g) -> None:
    print(f"-- {title} (PU: {is_pu(g) is None})")
    print(serialize_graph(g), end="")
    print()


def main() -> None:
    g = fixture("E1")
    show("start: the one-edge graph", g)

    script = "\n".join(
        [
            "R u",
            "O1+ z 0 -",
            "O4 u v",
            "O1- z",
        ]
    )
    print("== script ==")
    print(script)
    print()
    show("after the script", apply_script(g, script))

    print("== twin addition with a guard ==")
    grown = omega2_add(g, ("a", "b"), ("+", "-"), ("v",), "o")
    show("twins over {v}", grown)

    print("== failures carry the script position ==")
    try:
        apply_script(g, "R u\nO3 u v u")
    except MoveFailed as exc:
        print(f"rejected: {exc}")
    print()

    print("== edge-flip macro ==")
    script_moves, flipped = flip_edge_macro(g, "u", "v")
    print(serialize_script(script_moves), end="")
    show("flipped", flipped)


if __name__ == "__main__":
    main()
