"""Command-line front end.

Each command writes a CSV sweep and, where meaningful, JSON reports into
``--out-dir``.  Every file starts with the schema version, the full
configuration and a SHA-256 of its data; the parallelism degree is left out
so outputs are byte-identical for any ``--jobs``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import analysis, cubic, radial
from .errors import EntanglementError

SCHEMA = 1


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format(float(v), ".12g")


def _config_json(config: dict) -> str:
    return json.dumps(config, sort_keys=True, separators=(",", ":"))


def write_csv(path: Path, config: dict, columns: list[str], rows: list[list]) -> None:
    body = ",".join(columns) + "\n" + "".join(
        ",".join(fmt(v) for v in row) + "\n" for row in rows
    )
    digest = hashlib.sha256(body.encode()).hexdigest()
    head = (f"# schema: {SCHEMA}\n# config: {_config_json(config)}\n"
            f"# content-sha256: {digest}\n")
    path.write_text(head + body)


def write_json(path: Path, config: dict, payload: dict) -> None:
    content = json.dumps(payload, sort_keys=True, indent=2, default=float)
    doc = {"schema": SCHEMA, "config": config,
           "content_sha256": hashlib.sha256(content.encode()).hexdigest(), **payload}
    path.write_text(json.dumps(doc, sort_keys=True, indent=2, default=float) + "\n")


def parse_range(text: str) -> list[int]:
    """``"a:b"`` (inclusive) or a single integer."""
    parts = text.split(":")
    if len(parts) == 1:
        return [int(parts[0])]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected a:b")
    a, b = int(parts[0]), int(parts[1])
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _policy(args) -> radial.SumPolicy:
    return radial.SumPolicy(args.l_base, args.l_per_radius, args.tail_fraction)


def _policy_config(args) -> dict:
    return {"l_base": args.l_base, "l_per_radius": args.l_per_radius,
            "tail_fraction": args.tail_fraction}


def _radial_rows(model, ns, results):
    rows = []
    for n, res in zip(ns, results):
        row = [n]
        if model.kind == radial.EINSTEIN:
            row.append(model.chi(n))
        row += [model.boundary_radius(n), model.area_over_4a2(n), res.value,
                res.metadata.get("tail_fraction", 0.0)]
        rows.append(row)
    return rows


def cmd_flat_sphere(args) -> int:
    out = Path(args.out_dir)
    model = radial.RadialModel(radial.FLAT, args.n_sites)
    ns = args.radii
    config = {"command": "flat-sphere", "n_sites": args.n_sites,
              "radii": [ns[0], ns[-1]], "min_area": args.min_area, **_policy_config(args)}
    results = radial.sphere_sweep(model, ns, _policy(args), args.jobs)
    stem = f"flat_sphere_N{args.n_sites}"
    write_csv(out / f"{stem}.csv", config,
              ["n", "r", "A_over_4a2", "S", "tail_fraction"], _radial_rows(model, ns, results))
    fit = analysis.fit_area_law([model.area_over_4a2(n) for n in ns],
                                [r.value for r in results], args.min_area)
    write_json(out / f"{stem}_fit.json", config, {"fit": fit.as_dict()})
    print(f"kappa = {fit.slope:.6f}  intercept = {fit.intercept:.4f}  points = {fit.n_points}")
    return 0


def cmd_einstein(args) -> int:
    out = Path(args.out_dir)
    N = args.n_sites
    if N < 50:
        warnings.warn(f"N={N} is small; the curvature radius is only {N + 1}/pi sites "
                      "and the flat-limit comparison is weak", stacklevel=1)
    model = radial.RadialModel(radial.EINSTEIN, N, args.curvature_coupling)
    ns = args.radii or list(range(1, N))
    config = {"command": "einstein", "n_sites": N, "radii": [ns[0], ns[-1]],
              "curvature_coupling": args.curvature_coupling, "min_area": args.min_area,
              **_policy_config(args)}
    results = radial.sphere_sweep(model, ns, _policy(args), args.jobs)
    stem = f"einstein_N{N}"
    write_csv(out / f"{stem}.csv", config,
              ["n", "chi", "r", "A_over_4a2", "S", "tail_fraction"], _radial_rows(model, ns, results))
    S = [r.value for r in results]
    sym = analysis.symmetry_report(N, ns, S)
    write_json(out / f"{stem}_symmetry.json", config, {"symmetry": sym.as_dict()})
    fit = analysis.fit_area_law([model.area_over_4a2(n) for n in ns], S, args.min_area)
    payload = fit.as_dict()
    payload["rms_over_max_S"] = fit.residual_rms / max(S)
    payload["max_area_over_4a2"] = model.max_area_over_4a2
    write_json(out / f"{stem}_fit.json", config, {"fit": payload})
    print(f"kappa = {fit.slope:.6f}  rms/maxS = {payload['rms_over_max_S']:.2e}  "
          f"asymmetry = {sym.max_asymmetry:.2e} ({'pass' if sym.passed else 'FAIL'})")
    return 0 if sym.passed else 3


def _parse_dims(text: str) -> tuple[int, int, int]:
    vals = [int(v) for v in text.split(",")]
    if len(vals) == 1:
        vals *= 3
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"dims must be X,Y,Z or a single size: {text!r}")
    return tuple(vals)


def _generated_regions(lat, spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "box":
        for s in parse_range(rest):
            yield f"box{s}", cubic.centered_box(lat, s)
    elif kind == "sphere":
        for R in parse_range(rest):
            yield f"sphere{R}", cubic.region_voxel_sphere(lat, R=R)
    else:
        raise argparse.ArgumentTypeError(f"unknown region generator {kind!r}")


def cmd_cubic(args) -> int:
    out = Path(args.out_dir)
    if args.region_file:
        mask = cubic.read_region(args.region_file)
        lat = cubic.CubicLattice(mask.shape)
        regions = [(Path(args.region_file).stem, mask)]
    else:
        lat = cubic.CubicLattice(args.dims)
        regions = list(_generated_regions(lat, args.region))
    config = {"command": "cubic", "dims": list(lat.dims), "region": args.region,
              "region_file": str(args.region_file) if args.region_file else None,
              "complement": args.complement}
    columns = ["label", "n_inside", "exposed_faces", "A_over_4a2", "S"]
    if args.complement:
        columns.append("S_complement")
    rows, status = [], 0
    for label, mask in regions:
        res = cubic.cubic_region_entropy(lat, mask)
        faces = res.metadata["exposed_faces"]
        row = [label, int(mask.sum()), faces, faces / 4.0, res.value]
        if args.complement:
            comp = cubic.cubic_region_entropy(lat, ~mask).value
            row.append(comp)
            if abs(comp - res.value) > 1e-8:
                print(f"complement mismatch for {label}: {res.value} vs {comp}", file=sys.stderr)
                status = 4
        rows.append(row)
    stem = f"cubic_{'x'.join(map(str, lat.dims))}"
    write_csv(out / f"{stem}.csv", config, columns, rows)
    if len(rows) >= 3:
        fit = analysis.fit_area_law([r[3] for r in rows], [r[4] for r in rows])
        write_json(out / f"{stem}_fit.json", config, {"fit": fit.as_dict()})
        print(f"kappa = {fit.slope:.6f}  intercept = {fit.intercept:.4f}")
    for r in rows:
        print(f"{r[0]}: faces={r[2]} S={r[4]:.10g}")
    return status


def cmd_proximity(args) -> int:
    out = Path(args.out_dir)
    if args.model == "flat":
        n = args.n
        sizes = list(range(args.n_max, n - 1, -1))
        config = {"command": "proximity", "model": "flat", "n": n, "n_max": args.n_max,
                  **_policy_config(args)}
        data = radial.ir_proximity_sweep(n, sizes, _policy(args), args.jobs)
        rows = [[N, N - n, S] for N, S in data]
        write_csv(out / f"proximity_flat_n{n}.csv", config, ["N", "gap", "S"], rows)
    else:
        lat = cubic.CubicLattice(args.dims)
        size = args.box
        config = {"command": "proximity", "model": "cubic", "dims": list(lat.dims), "box": size}
        center = (np.asarray(lat.dims) - size) // 2
        rows = []
        for gap in range(int(center[0]), -1, -1):
            corner = center.copy()
            corner[0] = gap
            S = cubic.cubic_region_entropy(lat, cubic.region_box(lat, corner, [size] * 3)).value
            rows.append([gap, S])
        write_csv(out / f"proximity_cubic_{'x'.join(map(str, lat.dims))}_box{size}.csv",
                  config, ["gap", "S"], rows)
    for row in rows:
        print(",".join(fmt(v) for v in row))
    return 0


def _add_policy_args(p):
    d = radial.SumPolicy()
    p.add_argument("--l-base", type=int, default=d.l_base)
    p.add_argument("--l-per-radius", type=int, default=d.l_per_radius)
    p.add_argument("--tail-fraction", type=float, default=d.tail_fraction)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entangle", description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default=".")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: $ENTANGLE_NUM_THREADS or all cores)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flat-sphere", help="spherical sweep in flat space")
    p.add_argument("--n-sites", type=int, default=60)
    p.add_argument("--radii", type=parse_range, default=parse_range("10:50"))
    p.add_argument("--min-area", type=float, default=0.0)
    _add_policy_args(p)
    p.set_defaults(func=cmd_flat_sphere)

    p = sub.add_parser("einstein", help="spherical sweep in the Einstein universe")
    p.add_argument("--n-sites", type=int, default=99)
    p.add_argument("--radii", type=parse_range, default=None)
    p.add_argument("--curvature-coupling", type=float, default=1 / 6)
    p.add_argument("--min-area", type=float, default=50.0)
    _add_policy_args(p)
    p.set_defaults(func=cmd_einstein)

    p = sub.add_parser("cubic", help="voxel regions on a cubic lattice")
    p.add_argument("--dims", type=_parse_dims, default=(12, 12, 12))
    p.add_argument("--region", default="box:2:8", help="box:SMIN:SMAX or sphere:RMIN:RMAX")
    p.add_argument("--region-file", default=None)
    p.add_argument("--complement", action="store_true")
    p.set_defaults(func=cmd_cubic)

    p = sub.add_parser("proximity", help="entropy as the outer boundary approaches the region")
    p.add_argument("--model", choices=["flat", "cubic"], default="flat")
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--dims", type=_parse_dims, default=(8, 8, 8))
    p.add_argument("--box", type=int, default=2)
    _add_policy_args(p)
    p.set_defaults(func=cmd_proximity)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs is None:
        args.jobs = radial.default_jobs()
    Path(args.out_dir).mkdir(parents=True, exist_ok=True)
    try:
        return args.func(args)
    except (EntanglementError, ValueError) as exc:
        record = {"schema": SCHEMA, "error": type(exc).__name__, "message": str(exc),
                  "command": args.command}
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
