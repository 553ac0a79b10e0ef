"""Walls and chambers for the plane modulo GL(2).

The cocharacter lattice of the diagonal torus is Z^2. The two coordinate
weights and the root pair cut the plane into 13 cells: the origin, six
rays and six open sectors. Swapping the coordinates folds those into 8
orbits. Each cell carries two labels, the graded piece (what the ray
fixes) and the filtered piece (what it attracts), and the labels are
constant on the cell.

Run from the repository root:  python3 demos/01_rank2_walls.py
"""

import json
from pathlib import Path

from complat import stackmodel as sm
from complat.arrangement import cells, chambers, sign_vector_of
from complat.qlinalg import span

SPEC = Path(__file__).resolve().parent.parent / "specs" / "a2_gl2.json"


def label(weights, roots):
    # pretty-print a signature the way the standard picture does
    v = {(): "*", ((1, 0),): "V1", ((0, 1),): "V2", ((0, 1), (1, 0)): "V"}
    g = {
        (): "T",
        ((1, -1),): "B",
        ((-1, 1),): "Bbar",
        ((-1, 1), (1, -1)): "G",
    }
    return f"{v[tuple(sorted(weights))]}/{g[tuple(sorted(roots))]}"


def main():
    spec = sm.load_spec(json.loads(SPEC.read_text()))
    arr = sm.global_arrangement(spec)

    print("hyperplanes:", [tuple(h) for h in arr.covectors])
    print("cells:", len(cells(arr)), " chambers:", len(chambers(arr)))
    print("cell orbits under the swap:", len(sm.cell_orbits(spec)))

    faces = sm.enumerate_special_faces(spec)
    print("\nspecial face orbits:")
    for o in faces:
        basis = [tuple(str(x) for x in b) for b in o.flat.subspace.basis]
        print(f"  dim {o.dim}  orbit size {o.orbit_size}  basis {basis}")

    rays = [
        (0, 0), (1, 1), (-1, -1),
        (1, 0), (-1, 0), (0, 1), (0, -1),
        (2, 1), (1, 2), (2, -1), (-1, 2), (-1, -2), (-2, -1),
    ]
    print("\nray -> cell signs, graded label, filtered label")
    for ray in rays:
        signs = sign_vector_of(arr, ray)
        grad = sm.component_signature(spec, span([ray], 2))
        filt = sm.special_cone_closure(spec, [ray])
        print(
            f"  {str(ray):>8}  {str(signs):>12}  "
            f"Grad {label(grad.fixed_weights, grad.levi_roots):>7}   "
            f"Filt {label(filt.attractor_weights, filt.parabolic_roots):>7}"
        )

    # the two rays of the diagonal tell the whole story: up is attracting,
    # down sees nothing
    up = sm.special_cone_closure(spec, [(1, 1)])
    down = sm.special_cone_closure(spec, [(-1, -1)])
    assert len(up.attractor_weights) == 2 and not down.attractor_weights
    print("\ndiagonal up attracts everything, diagonal down nothing: ok")


if __name__ == "__main__":
    main()
