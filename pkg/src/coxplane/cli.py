"""Command-line interface: ``coxplane info|project|nc|clusters|verify``."""
import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .clusters import AlmostPositiveSystem, CompatibilityOracle, enumerate_clusters, tau_orbits
from .core import (
    BudgetExceeded,
    CoxeterError,
    UnknownType,
    build_coxeter_system,
    enumerate_parabolics,
    fundamental_orbit_sizes,
    parabolic_from_mask,
    smallest_orbit,
)
from .criteria import verify_compat
from .diagrams import build_diagrams
from .noncrossing import nc_context, verify_nc
from .plane import bipartition, coxeter_plane, hyperplane_orbit_check, project_orbit

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_BUDGET = 5000

# expected exactness per (criterion, family or type); absent means no claim
CLAIMS = {
    "ncA": {"A": True, "B": True, "I": True, "F4": False},
    "ncD": {"A": True, "B": True, "I": True, "D": True, "H3": True, "F4": False},
    "cl1": {"A": True, "B": True, "I": True},
    "cl2": {"A": True, "B": True, "I": True, "H3": True},
    "cl3": {"A": True, "B": True, "I": True, "H3": True, "D": True},
    "cl4": {"F4": True, "H4": True, "E6": True},
    "cl5": {"E6": True, "E7": False, "E8": False},
}
# witnesses that must appear among the mismatches when a claim is "not exact"
WITNESSES = {("cl5", "E7"): "(-a3, a3)"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    type_label: str
    command: str
    budget: int = DEFAULT_BUDGET
    json_path: str = None
    figures: str = None
    criteria: list = field(default_factory=list)
    scale: int = 400
    show_gray_zone: bool = True
    show_axes: bool = True

    def __post_init__(self):
        if self.budget <= 0:
            raise UsageError("budget must be positive")


def claim_for(criterion, label):
    table = CLAIMS.get(criterion, {})
    if label in table:
        return table[label]
    family = label[0]
    return table.get(family)


def _system(label):
    try:
        return build_coxeter_system(label)
    except UnknownType as exc:
        raise UsageError(str(exc)) from exc


def _write_json(cfg, doc):
    if cfg.json_path:
        io.emit_json(doc, cfg.json_path)


def _figures_dir(cfg):
    if not cfg.figures:
        return None
    path = Path(cfg.figures)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _style(cfg):
    return {"size": cfg.scale, "show_gray_zone": cfg.show_gray_zone, "show_axes": cfg.show_axes}


def cmd_info(cfg, out):
    system = _system(cfg.type_label)
    n = system.rank
    sizes = fundamental_orbit_sizes(system)
    info = {
        "type": system.label,
        "rank": n,
        "coxeter_number": system.h,
        "exponents": [int(e) for e in system.exponents],
        "order": system.order,
        "reflections": system.num_positive,
        "almost_positive_roots": system.num_positive + n,
        "catalan": system.catalan,
        "smallest_orbit": min(sizes),
    }
    if n >= 2:
        bip = bipartition(system)
        config = project_orbit(system, bip, coxeter_plane(system, bip), smallest_orbit(system))
        rings, count, origin = config.structure()
        info["rings"] = rings
        info["ring_size"] = count
        info["origin_points"] = origin
    for key, value in info.items():
        if isinstance(value, list):
            value = " ".join(map(str, value))
        print(f"{key}: {value}", file=out)
    _write_json(cfg, {"schema_version": io.SCHEMA_VERSION, "info": info})
    return EXIT_OK


def cmd_project(cfg, out):
    system = _system(cfg.type_label)
    bip = bipartition(system)
    config = project_orbit(system, bip, coxeter_plane(system, bip), smallest_orbit(system))
    check = hyperplane_orbit_check(system, bip)
    rings, count, origin = config.structure()
    print(f"{system.label}: {rings} rings of {count} points, {origin} at the origin", file=out)
    print(f"hyperplane orbits: {sorted(len(o) for o in check.orbits)} ({'ok' if check.ok else 'FAILED'})", file=out)
    doc = io.new_document(
        system.label,
        io.configuration_dict(config=config),
        extra={"bipartition": {"s_plus": [s + 1 for s in bip.s_plus], "s_minus": [s + 1 for s in bip.s_minus]}},
    )
    _write_json(cfg, doc)
    fig = _figures_dir(cfg)
    if fig:
        io.emit_svg(doc, fig / "projection.svg", **_style(cfg))
    return EXIT_OK if check.ok else EXIT_INTERNAL


def _conjugation_classes(system, bip, masks):
    """Group parabolic masks into <c_+, c_->-conjugation classes."""
    N = system.num_positive
    maps = [bip.c_plus.perm[:N] % N, bip.c_minus.perm[:N] % N]

    def conj(mask, table):
        out, t = 0, 0
        while mask:
            if mask & 1:
                out |= 1 << int(table[t])
            mask >>= 1
            t += 1
        return out

    remaining = set(masks)
    classes = []
    for m in sorted(masks):
        if m not in remaining:
            continue
        orbit, stack = {m}, [m]
        while stack:
            x = stack.pop()
            for table in maps:
                y = conj(x, table)
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        remaining -= orbit
        classes.append(sorted(orbit))
    return classes


def _partition_entry(name, diag, verdict, par):
    return {
        "name": name,
        "blocks": [list(map(int, b)) for b in diag.blocks],
        "segments": [[int(a), int(b)] for a, b in diag.segments],
        "verdict": verdict,
        "reflections": sorted(int(t) + 1 for t in par.reflset),
        "rank": par.rank,
    }


def cmd_nc(cfg, out, nc_only=False):
    system = _system(cfg.type_label)
    ctx = nc_context(system)
    nc_masks = ctx.interval.nc_masks
    print(f"{system.label}: |[1,c]| = {len(ctx.interval)}, noncrossing parabolics = {len(nc_masks)}, Cat = {system.catalan}", file=out)
    if nc_only:
        pars = [parabolic_from_mask(system, m) for m in sorted(nc_masks)]
    else:
        pars = enumerate_parabolics(system, max_count=cfg.budget)
        print(f"parabolic subgroups: {len(pars)} ({len(pars) - len(nc_masks)} crossing)", file=out)
    by_mask = {p.mask: p for p in pars}
    classes = _conjugation_classes(system, ctx.bip, list(by_mask))
    entries = []
    for k, cls in enumerate(classes):
        par = by_mask[cls[0]]
        verdict = "noncrossing" if par.mask in nc_masks else "crossing"
        diag = ctx.diagram(par)
        entry = _partition_entry(f"class {k + 1}", diag, verdict, par)
        entry["class_size"] = len(cls)
        entries.append(entry)
        print(f"  class {k + 1}: rank {par.rank}, size {len(cls)}, {verdict}, reflections {entry['reflections']}", file=out)
    witnesses = []
    if not nc_only:
        for crit in ("A", "D"):
            report = verify_nc(system, crit, ctx, budget=cfg.budget)
            print(report.to_text(limit=5), file=out)
            witnesses.append(report.to_dict())
    doc = io.new_document(
        system.label,
        io.configuration_dict(config=ctx.config),
        entries,
        extra={"reports": witnesses} if witnesses else None,
    )
    _write_json(cfg, doc)
    fig = _figures_dir(cfg)
    if fig:
        for k, entry in enumerate(entries):
            io.emit_svg(doc, fig / f"nc_class_{k + 1:03d}.svg", entry, **_style(cfg))
    return EXIT_OK


def _cluster_orbits(aps, clusters):
    seen, reps = set(), []
    for c in clusters:
        if c in seen:
            continue
        orbit, stack = {c}, [c]
        while stack:
            x = stack.pop()
            for table in (aps.tau_plus, aps.tau_minus):
                y = tuple(sorted(int(table[a]) for a in x))
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        seen |= orbit
        reps.append((c, len(orbit)))
    return reps


def cmd_clusters(cfg, out):
    system = _system(cfg.type_label)
    if system.rank < 2:
        aps = AlmostPositiveSystem(system)
        clusters = enumerate_clusters(CompatibilityOracle(aps))
        print(f"{system.label}: {len(clusters)} clusters (Cat = {system.catalan})", file=out)
        return EXIT_OK if len(clusters) == system.catalan else EXIT_MISMATCH
    ds = build_diagrams(system)
    oracle = CompatibilityOracle(ds.aps)
    clusters = enumerate_clusters(oracle)
    reps = _cluster_orbits(ds.aps, clusters)
    status = "matches" if len(clusters) == system.catalan else "DOES NOT match"
    print(f"{system.label}: {len(clusters)} clusters, {status} Cat = {system.catalan}", file=out)
    print(f"tau orbits of roots: {sorted(len(o) for o in tau_orbits(ds.aps))}", file=out)
    print(f"tau orbits of clusters: {len(reps)} (sizes {sorted(s for _, s in reps)})", file=out)
    entries = []
    for a, d in ds.diagrams.items():
        entries.append({"name": ds.aps[a].label(), "root": int(a), "segments": [[int(x), int(y)] for x, y in sorted(d.segments)]})
    cluster_entries = []
    for c, size in reps:
        segs = [[int(x), int(y), i] for i, a in enumerate(c) for x, y in sorted(ds.diagrams[a].segments)]
        cluster_entries.append(
            {"name": "{" + ", ".join(ds.aps[a].label() for a in c) + "}", "roots": list(map(int, c)), "orbit_size": size, "segments": segs}
        )
    doc = io.new_document(
        system.label,
        io.configuration_dict(expanded=ds.expanded, gray=ds.gray),
        entries + cluster_entries,
        extra={"clusters": [list(map(int, c)) for c in clusters]},
    )
    _write_json(cfg, doc)
    fig = _figures_dir(cfg)
    if fig:
        for k, entry in enumerate(cluster_entries):
            io.emit_svg(doc, fig / f"cluster_{k + 1:03d}.svg", entry, **_style(cfg))
        for entry in entries:
            io.emit_svg(doc, fig / f"root_{entry['root']:03d}.svg", entry, **_style(cfg))
    return EXIT_OK if len(clusters) == system.catalan else EXIT_MISMATCH


def cmd_verify(cfg, out):
    system = _system(cfg.type_label)
    criteria = cfg.criteria or ["cl1", "cl2", "cl3", "cl4", "cl5"]
    unknown = [c for c in criteria if c not in CLAIMS]
    if unknown:
        raise UsageError(f"unknown criteria: {', '.join(unknown)}")
    ds = oracle = ctx = None
    reports, ok = [], True
    for crit in criteria:
        if crit.startswith("nc"):
            ctx = ctx or nc_context(system)
            report = verify_nc(system, crit[2:], ctx, budget=cfg.budget)
        else:
            if ds is None:
                ds = build_diagrams(system)
                oracle = CompatibilityOracle(ds.aps)
            report = verify_compat(system, crit, ds, oracle)
        claim = claim_for(crit, system.label)
        if claim is None:
            verdict = "no claim"
        else:
            match = report.exact == claim
            witness = WITNESSES.get((crit, system.label))
            if match and witness and not report.exact:
                match = any(m["object"] == witness for m in report.mismatches)
            verdict = "matches claim" if match else "CONTRADICTS claim"
            ok &= match
        report.metadata["claim"] = claim
        report.metadata["verdict"] = verdict
        print(f"{report.to_text(limit=5)}\n  -> {verdict}", file=out)
        reports.append(report.to_dict())
    _write_json(cfg, {"schema_version": io.SCHEMA_VERSION, "type": system.label, "reports": reports})
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser():
    p = argparse.ArgumentParser(prog="coxplane", description="Coxeter-plane diagrams for noncrossing partitions and clusters.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("type", help="Coxeter type, e.g. A3, B4, D5, E6, F4, H3, I2(5)")
        sp.add_argument("--json", dest="json_path", help="write a JSON document here")

    def figures(sp):
        sp.add_argument("--figures", help="directory for SVG figures")
        sp.add_argument("--scale", type=int, default=400, help="SVG canvas size in pixels")
        sp.add_argument("--no-gray-zone", action="store_true", help="omit the gray zone in figures")
        sp.add_argument("--no-axes", action="store_true", help="omit the symmetry axes in figures")

    common(sub.add_parser("info", help="basic invariants of a Coxeter type"))
    sp = sub.add_parser("project", help="projection of the smallest orbit to the Coxeter plane")
    common(sp)
    figures(sp)
    sp = sub.add_parser("nc", help="noncrossing parabolic subgroups and their diagrams")
    common(sp)
    figures(sp)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of parabolic subgroups")
    sp.add_argument("--nc-only", action="store_true", help="only the noncrossing parabolics (no full enumeration)")
    sp = sub.add_parser("clusters", help="clusters and almost-positive-root diagrams")
    common(sp)
    figures(sp)
    sp = sub.add_parser("verify", help="check criteria against the algebraic oracles")
    common(sp)
    sp.add_argument("--criteria", default="cl1,cl2,cl3,cl4,cl5", help="comma list of cl1..cl5, ncA, ncD")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum number of parabolic subgroups")
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            type_label=args.type,
            command=args.command,
            budget=getattr(args, "budget", DEFAULT_BUDGET),
            json_path=args.json_path,
            figures=getattr(args, "figures", None),
            criteria=[c.strip() for c in getattr(args, "criteria", "").split(",") if c.strip()],
            scale=getattr(args, "scale", 400),
            show_gray_zone=not getattr(args, "no_gray_zone", False),
            show_axes=not getattr(args, "no_axes", False),
        )
        if args.command == "info":
            return cmd_info(cfg, out)
        if args.command == "project":
            return cmd_project(cfg, out)
        if args.command == "nc":
            return cmd_nc(cfg, out, nc_only=args.nc_only)
        if args.command == "clusters":
            return cmd_clusters(cfg, out)
        return cmd_verify(cfg, out)
    except UsageError as exc:
        print(f"coxplane: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"coxplane: {exc}; raise --budget or use --nc-only", file=sys.stderr)
        return EXIT_USAGE
    except CoxeterError as exc:
        print(f"coxplane: internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
