"""Walk through one step of the ten-cycle pipeline on the nested drawing.

    python3 demos/nested_cycles.py [out.dot]
"""

import sys

from kplane import dcel
from kplane import pipeline as P
from kplane.constructions import nested_drawing

D2 = list(range(10, 20))

d = nested_drawing(2)
print(f"nested G_2^-: {d.total_crossings()} crossings, {len(dcel.faces(d))} faces")

cmap = P.classify_faces(d, D2)
print("face classes with D_2 as frontier:", cmap.counts())

reduced, rmap = P.reduce_drawing(d, D2)
print(f"after cleanup: {len(rmap.walks)} faces, valid={dcel.validate(reduced, reduced=True) == []}")

# can the drawing be closed off by an uncrossable ten-cycle?
closing = P.extend_with_cycle(reduced, True, limit=1)
print(f"uncrossable extension exists: {bool(closing)}")

base = P.base_drawing()
kids = {P.process_child(c)[0] for c in P.extend_with_cycle(base, True)}
print(f"closing the plane D_1 directly: {len(kids)} class, equal to nested class: "
      f"{kids == {P.canonical_key(P.reduce_drawing(nested_drawing(2, True), D2)[0])}}")

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        fh.write(dcel.to_dot(reduced))
    print(f"wrote {sys.argv[1]}")
