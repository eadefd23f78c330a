#!/usr/bin/env python3
"""Regenerates the synthetic meshes of the anxiety fixture pack.

Each key structure is a UV ellipsoid placed in the left hemisphere of
template space (x < 0). Shapes and positions are stand-ins for atlas-derived
meshes; only their vertex counts and centroids matter to the tests.
"""
import math
import pathlib

# id: (centre mm, radii mm, rings, segments)
STRUCTURES = {
    "amygdala": ((-23.0, -5.0, -18.0), (6.0, 7.0, 6.0), 8, 16),
    "hippocampus": ((-26.0, -22.0, -12.0), (6.0, 18.0, 6.0), 10, 20),
    "striatum": ((-16.0, 10.0, 4.0), (9.0, 16.0, 10.0), 12, 24),
    "mpfc": ((-6.0, 44.0, 6.0), (7.0, 12.0, 12.0), 12, 20),
    "hypothalamus": ((-5.0, -4.0, -10.0), (4.0, 5.0, 4.0), 8, 12),
    "bnst": ((-7.0, 2.0, -1.0), (2.5, 3.0, 2.5), 6, 10),
}


def ellipsoid(centre, radii, rings, segments):
    cx, cy, cz = centre
    rx, ry, rz = radii
    verts = [(cx, cy, cz + rz)]
    for i in range(1, rings):
        theta = math.pi * i / rings
        for j in range(segments):
            phi = 2.0 * math.pi * j / segments
            verts.append((cx + rx * math.sin(theta) * math.cos(phi),
                           cy + ry * math.sin(theta) * math.sin(phi),
                           cz + rz * math.cos(theta)))
    verts.append((cx, cy, cz - rz))
    bottom = len(verts)  # 1-based index of the south pole
    faces = []
    for j in range(segments):
        faces.append((1, 2 + j, 2 + (j + 1) % segments))
    for i in range(rings - 2):
        a0 = 2 + i * segments
        b0 = a0 + segments
        for j in range(segments):
            j1 = (j + 1) % segments
            faces.append((a0 + j, b0 + j, b0 + j1))
            faces.append((a0 + j, b0 + j1, a0 + j1))
    last = 2 + (rings - 2) * segments
    for j in range(segments):
        faces.append((last + j, bottom, last + (j + 1) % segments))
    return verts, faces


def main():
    out_dir = pathlib.Path(__file__).resolve().parent / "anxiety" / "meshes"
    out_dir.mkdir(parents=True, exist_ok=True)
    for sid, (centre, radii, rings, segments) in STRUCTURES.items():
        verts, faces = ellipsoid(centre, radii, rings, segments)
        lines = [f"# synthetic stand-in mesh for {sid}"]
        lines += [f"v {x:.6f} {y:.6f} {z:.6f}" for x, y, z in verts]
        lines += [f"f {a} {b} {c}" for a, b, c in faces]
        (out_dir / f"{sid}.obj").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
