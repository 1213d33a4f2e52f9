#!/usr/bin/env python3
"""One-time generator for the disk-obstacle channel fixture.

Builds a conforming triangle mesh of the channel (-2,2)x(-1,1) containing the
rectangle obstacle (-1.1,-0.9)x(0.4,1) (grid-aligned) and the disk obstacle
centered at (1, 0.5) with radius 0.3 (ring of boundary vertices, Delaunay
fill). Writes MSH 2.2 ASCII with the canonical physical tags plus a JSON-lines
manifest with the expected entity counts.

Usage: python3 make_disk_channel_fixture.py [h] [outdir]
"""

import json
import math
import sys

import numpy as np
from scipy.spatial import Delaunay

LX0, LX1, LY0, LY1 = -2.0, 2.0, -1.0, 1.0
RECT = (-1.1, -0.9, 0.4, 1.0)  # xmin, xmax, ymin, ymax
DISK_C = (1.0, 0.5)
DISK_R = 0.3

PHYS_INFLOW, PHYS_OUTFLOW, PHYS_WALL = 1, 2, 3
PHYS_FLUID = 1
PHYS_OBS = {1: 101, 2: 102}  # 1 = rectangle, 2 = disk


def build_points(h):
    nx = round((LX1 - LX0) / h)
    ny = round((LY1 - LY0) / h)
    xs = [LX0 + i * (LX1 - LX0) / nx for i in range(nx + 1)]
    ys = [LY0 + j * (LY1 - LY0) / ny for j in range(ny + 1)]

    margin = 0.45 * h
    pts = []
    for y in ys:
        for x in xs:
            d = math.hypot(x - DISK_C[0], y - DISK_C[1])
            if abs(d - DISK_R) < margin:
                continue  # too close to the ring; the ring vertices take over
            pts.append((x, y))

    n_ring = max(16, round(2.0 * math.pi * DISK_R / h))
    for k in range(n_ring):
        theta = 2.0 * math.pi * k / n_ring
        pts.append((DISK_C[0] + DISK_R * math.cos(theta),
                    DISK_C[1] + DISK_R * math.sin(theta)))
    return np.array(pts, dtype=float)


def in_rect(x, y):
    return RECT[0] <= x <= RECT[1] and RECT[2] <= y <= RECT[3]


def in_disk(x, y, tol=0.0):
    return math.hypot(x - DISK_C[0], y - DISK_C[1]) <= DISK_R + tol


def classify(tri_pts):
    cx = sum(p[0] for p in tri_pts) / 3.0
    cy = sum(p[1] for p in tri_pts) / 3.0
    centroid_rect = in_rect(cx, cy)
    centroid_disk = in_disk(cx, cy)
    verts_rect = all(in_rect(x, y) for x, y in tri_pts)
    verts_disk = all(in_disk(x, y, 1e-9) for x, y in tri_pts)
    if centroid_rect != verts_rect or centroid_disk != verts_disk:
        raise SystemExit(f"non-conforming triangle at centroid ({cx}, {cy})")
    if centroid_rect:
        return 1
    if centroid_disk:
        return 2
    return 0


def main():
    h = float(sys.argv[1]) if len(sys.argv) > 1 else 0.1
    outdir = sys.argv[2] if len(sys.argv) > 2 else "."

    pts = build_points(h)
    tri = Delaunay(pts)

    triangles = []
    regions = []
    for simplex in tri.simplices:
        a, b, c = (pts[i] for i in simplex)
        area = 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if abs(area) < 1e-13:
            raise SystemExit("degenerate triangle from Delaunay")
        ijk = list(simplex) if area > 0 else [simplex[0], simplex[2], simplex[1]]
        triangles.append(ijk)
        regions.append(classify([pts[i] for i in ijk]))

    # Boundary edges: used by exactly one triangle.
    edge_count = {}
    for t in triangles:
        for k in range(3):
            e = tuple(sorted((t[k], t[(k + 1) % 3])))
            edge_count[e] = edge_count.get(e, 0) + 1
    boundary = sorted(e for e, n in edge_count.items() if n == 1)

    lines = []
    for a, b in boundary:
        mx = 0.5 * (pts[a][0] + pts[b][0])
        if abs(mx - LX0) < 1e-12:
            phys = PHYS_INFLOW
        elif abs(mx - LX1) < 1e-12:
            phys = PHYS_OUTFLOW
        else:
            my = 0.5 * (pts[a][1] + pts[b][1])
            if not (abs(my - LY0) < 1e-12 or abs(my - LY1) < 1e-12):
                raise SystemExit(f"boundary edge not on the channel contour: ({a},{b})")
            phys = PHYS_WALL
        lines.append((a, b, phys))

    # Euler sanity: the full channel mesh is simply connected.
    v, e, t = len(pts), len(edge_count), len(triangles)
    if v - e + t != 1:
        raise SystemExit(f"Euler check failed: V-E+T = {v - e + t}")

    name = f"disk_channel_h{h:g}.msh"
    with open(f"{outdir}/{name}", "w") as f:
        f.write("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n")
        f.write("$PhysicalNames\n6\n")
        f.write('1 1 "inflow"\n1 2 "outflow"\n1 3 "wall"\n')
        f.write('2 1 "fluid"\n2 101 "obstacle_1"\n2 102 "obstacle_2"\n')
        f.write("$EndPhysicalNames\n")
        f.write(f"$Nodes\n{v}\n")
        for i, (x, y) in enumerate(pts):
            f.write(f"{i + 1} {x:.17g} {y:.17g} 0\n")
        f.write("$EndNodes\n")
        f.write(f"$Elements\n{len(lines) + t}\n")
        eid = 1
        for a, b, phys in lines:
            f.write(f"{eid} 1 2 {phys} {phys} {a + 1} {b + 1}\n")
            eid += 1
        for ijk, region in zip(triangles, regions):
            phys = PHYS_FLUID if region == 0 else PHYS_OBS[region]
            f.write(f"{eid} 2 2 {phys} {phys} {ijk[0] + 1} {ijk[1] + 1} {ijk[2] + 1}\n")
            eid += 1
        f.write("$EndElements\n")

    record = {
        "file": name,
        "vertices": v,
        "triangles": t,
        "boundary_facets": len(lines),
        "fluid_triangles": regions.count(0),
        "obstacle_triangles": {"1": regions.count(1), "2": regions.count(2)},
    }
    with open(f"{outdir}/meshes.manifest.jsonl", "w") as f:
        f.write(json.dumps(record, sort_keys=True) + "\n")
    print(json.dumps(record, sort_keys=True))


if __name__ == "__main__":
    main()
