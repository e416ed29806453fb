"""Command-line entry point: one subcommand per verification suite, exact
JSON/CSV/SVG reports, exit status 0 iff every asserted identity holds."""

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import engine, reports, simplex, svgplot
from .algebra import (
    character_table,
    cuspidal_classes,
    block_characters,
    parabolic_block_idempotent,
    verify_block_identities,
    verify_centrality,
    verify_partition_of_unity,
    verify_radical_vanishing,
    _all_subsets,
)
from .apartment import Apartment, make_facet
from .groups import SIZE_CAP_DEFAULT, build_group
from .roots import CartanType, build_root_system, simple_affine_roots

DEFAULT_GROUPS = ["GL2:2", "GL2:3", "SL2:3", "SL3:2", "SP4:2"]
GEOMETRY_TYPES = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4",
                  "D4", "G2", "F4"]


@dataclass
class RunConfig:
    """Resolved run parameters; echoed verbatim into every report."""

    cartan: str = "C2"
    qs: List[int] = field(default_factory=lambda: [2])
    radius: int = 6
    rho: int = 1
    r: int = 1
    size_cap: int = SIZE_CAP_DEFAULT
    seed: int = 0
    groups: List[str] = field(default_factory=lambda: list(DEFAULT_GROUPS))
    out: str = "reports"
    fmt: str = "json"
    svg: bool = False
    simplex_rank: int = 6
    mmax: int = 8
    dump: bool = False

    def validate(self):
        if self.cartan not in GEOMETRY_TYPES:
            raise ValueError(f"unsupported type {self.cartan}; choose from {GEOMETRY_TYPES}")
        if self.radius < 0 or self.rho < 0 or self.r < 1:
            raise ValueError("radius/rho must be >= 0 and r >= 1")
        for gdesc in self.groups:
            kind, _, q = gdesc.partition(":")
            if not q.isdigit():
                raise ValueError(f"group descriptor {gdesc!r} must look like SP4:2")
            _ = int(q)
            if kind.upper() not in ("SL1", "SL2", "SL3", "GL1", "GL2", "GL3", "SP4"):
                raise ValueError(f"unsupported group kind in {gdesc!r}")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")

    def to_json(self):
        return {
            "schema": reports.SCHEMA,
            "type": self.cartan,
            "q": list(self.qs),
            "radius": self.radius,
            "rho": self.rho,
            "r": self.r,
            "size_cap": self.size_cap,
            "seed": self.seed,
            "groups": list(self.groups),
            "format": self.fmt,
        }


def _apartment_for(config: RunConfig):
    ct = CartanType.parse(config.cartan)
    rs = build_root_system(ct.family, ct.rank)
    ap = Apartment(rs)
    return ap, ap.fundamental_chamber()


def _groups_for(config: RunConfig):
    out = []
    for gdesc in config.groups:
        kind, _, q = gdesc.partition(":")
        out.append(build_group(kind, int(q), size_cap=config.size_cap))
    return out


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (ok, report, extra_files)
# ---------------------------------------------------------------------------

def cmd_roots(config: RunConfig):
    ct = CartanType.parse(config.cartan)
    rs = build_root_system(ct.family, ct.rank)
    report = {
        "config": config.to_json(),
        "root_system": rs.to_json(),
        "simple_affine_roots": [str(p) for p in simple_affine_roots(rs)],
    }
    return True, report, {}


def cmd_apartment(config: RunConfig):
    ap, c0 = _apartment_for(config)
    shells = ap.shells(c0, config.radius)
    chambers = []
    for depth, shell in enumerate(shells):
        for ch in shell:
            prof = ap.height(c0, ch)
            chambers.append({
                "key": list(ch.key),
                "height": prof.total,
                "bfs_depth": depth,
                "profile": {str(list(g)): c for g, c in prof.counts},
                "barycenter": [f"{x.numerator}/{x.denominator}" for x in ch.barycenter],
            })
    ok = all(c["height"] == c["bfs_depth"] for c in chambers)
    report = {
        "config": config.to_json(),
        "chambers": chambers,
        "shell_sizes": [len(s) for s in shells],
        "height_equals_bfs_depth": ok,
    }
    extra = {}
    if config.svg and ap.rs.rank == 2:
        extra["apartment.svg"] = svgplot.render_apartment(
            ap, c0, config.radius, show_heights=True, sector_shading=True,
            title=f"{config.cartan} apartment, heights to {config.radius}")
    return ok, report, extra


def cmd_simplex(config: RunConfig):
    censuses = []
    ok = True
    for l in range(1, config.simplex_rank + 1):
        for m in range(1, l + 2):
            c = simplex.complement_census(l, m)
            censuses.append(c.to_json())
            ok = ok and c.total_complement == 2 ** (l + 1 - m)
    report = {"config": config.to_json(), "censuses": censuses, "all_match": ok}
    return ok, report, {}


def cmd_permissible(config: RunConfig):
    ap, c0 = _apartment_for(config)
    rmax = config.radius
    scans = []
    ok = True
    for psi in simple_affine_roots(ap.rs):
        _, counts_r = simplex.permissible_scan(ap, [psi], c0, rmax)
        _, counts_2r = simplex.permissible_scan(ap, [psi], c0, 2 * rmax)
        stable = sum(counts_r) == sum(counts_2r)
        ok = ok and stable
        scans.append({
            "walls": [str(psi)],
            "rmax": rmax,
            "witnesses_at_rmax": sum(counts_r),
            "witnesses_at_2rmax": sum(counts_2r),
            "stable": stable,
        })
    report = {"config": config.to_json(), "scans": scans, "all_stable": ok}
    return ok, report, {}


def cmd_group(config: RunConfig):
    from .groups import dump_fixture

    data = []
    extra = {}
    for g in _groups_for(config):
        data.append(g.to_json())
        if config.dump:
            fname = "fixture_" + g.name.replace("(", "_").replace(")", "") + ".json"
            extra[fname] = reports.canonical_json(dump_fixture(g))
    report = {"config": config.to_json(), "groups": data}
    return True, report, extra


def cmd_chars(config: RunConfig):
    extra = {}
    data = []
    for g in _groups_for(config):
        t = character_table(g)
        data.append(t.to_json())
        if config.fmt == "csv":
            extra[f"chars_{g.name.replace('(', '_').replace(')', '')}.csv"] = \
                reports.table_csv(t)
    report = {"config": config.to_json(), "tables": data}
    return True, report, extra


def cmd_blocks(config: RunConfig):
    data = []
    ok = True
    for g in _groups_for(config):
        classes = cuspidal_classes(g)
        entries = []
        simples = frozenset(g.simples)
        t = character_table(g)
        covered = set()
        for i, cls in enumerate(classes):
            taus = block_characters(g, simples, i)
            covered |= set(taus)
            e = parabolic_block_idempotent(g, simples, i)
            entries.append({
                "class": cls.label(),
                "members": [[sorted(a), s] for a, s in cls.members],
                "block_characters": sorted(taus),
                "idempotent_support": len(e.coeffs),
            })
        partition_ok = covered == set(range(len(t.values)))
        ok = ok and partition_ok
        data.append({
            "group": g.name,
            "classes": entries,
            "block_partition_covers_irr": partition_ok,
        })
    report = {"config": config.to_json(), "blocks": data}
    return ok, report, {}


def cmd_verify_ff(config: RunConfig):
    checks = []
    ok = True
    for g in _groups_for(config):
        simples = frozenset(g.simples)
        for r in _all_subsets(simples):
            for q in _all_subsets(r):
                if q != r:
                    checks.append(verify_radical_vanishing(g, r, q))
        for i in range(len(cuspidal_classes(g))):
            checks.extend(verify_block_identities(g, i))
            checks.append(verify_centrality(g, i, seed=config.seed))
        checks.extend(verify_partition_of_unity(g))
        # independent classical oracle for the cuspidality test
        if g.name.startswith("GL2"):
            t = character_table(g)
            from .algebra import is_cuspidal

            count = sum(1 for i in range(len(t.values)) if is_cuspidal(t, i))
            q = g.field.q
            rec = {
                "check": f"{g.name}: cuspidal count == q(q-1)/2",
                "exact-equal": count == q * (q - 1) // 2,
            }
            checks.append(rec)
    out = []
    for c in checks:
        j = c if isinstance(c, dict) else c.to_json()
        out.append(j)
        ok = ok and all(v for k, v in j.items() if k.startswith("exact"))
    report = {"config": config.to_json(), "identities": out, "all_ok": ok}
    return ok, report, {}


def cmd_verify_dplus(config: RunConfig):
    ap, c0 = _apartment_for(config)
    q = config.qs[0]
    scan = engine.dplus_scan(ap, c0, config.rho, config.radius, q)
    scan2 = engine.dplus_scan(ap, c0, config.rho, 2 * config.radius, q, verify=False)
    stable = scan.exceptional_keys == scan2.exceptional_keys
    ok = scan.ok() and stable
    report = {
        "config": config.to_json(),
        "scan": scan.to_json(),
        "census_stable_under_doubling": stable,
        "doubled_radius": 2 * config.radius,
    }
    extra = {}
    if config.svg and ap.rs.rank == 2:
        overlay = {}
        for depth, shell in enumerate(ap.shells(c0, config.radius)):
            for ch in shell:
                if ch == c0:
                    continue
                overlay[ch.key] = ("exceptional" if ch.key in scan.exceptional_keys
                                   else "certified")
        extra["dplus.svg"] = svgplot.render_apartment(
            ap, c0, config.radius, show_heights=False, overlay=overlay,
            title=f"{config.cartan} certified vs exceptional, rho={config.rho}")
    return ok, report, extra


def cmd_verify_depth_r(config: RunConfig):
    ap, c0 = _apartment_for(config)
    shells = ap.shells(c0, config.radius)
    checked = 0
    ok = True
    for depth in range(1, config.radius + 1):
        for d in shells[depth]:
            d_plus, star = ap.d_plus_and_star(c0, d)
            for v in star:
                if v == d_plus:
                    continue
                rep = engine.depth_r_shell_vanishing(ap, c0, d, config.r, v)
                ok = ok and rep["exact-zero"]
                checked += 1
    report = {
        "config": config.to_json(),
        "checks": checked,
        "all_zero": ok,
    }
    return ok, report, {}


def cmd_stabilize(config: RunConfig):
    ap, c0 = _apartment_for(config)
    tr = engine.truncated_sum_stabilization(
        ap, c0, "depth-r", config.mmax, rho=config.rho, r=config.r)
    traces = [tr.to_json()]
    ok = tr.stabilized()
    if ap.rs.rank == 2:
        origin = make_facet([tuple(Fraction(0) for _ in range(ap.rs.rank))])
        rd = engine.residue_datum(ap, origin, c0)
        if rd.supported():
            tz = engine.truncated_sum_stabilization(
                ap, c0, "depth-zero", config.mmax, q=config.qs[0], probe=origin)
            traces.append(tz.to_json())
            ok = ok and tz.stabilized()
    report = {"config": config.to_json(), "traces": traces, "all_stabilized": ok}
    return ok, report, {}


def cmd_peter_weyl(config: RunConfig):
    ap, c0 = _apartment_for(config)
    q = config.qs[0]
    results = []
    ok = True
    seen = set()
    for v in c0.vertices:
        rd = engine.residue_datum(ap, make_facet([v]), c0)
        if not rd.supported():
            results.append({"vertex": [str(x) for x in v],
                            "residue": rd.type_label, "skipped": True})
            continue
        model = engine.instantiate_residue(rd, q)
        if model.group.name in seen:
            continue
        seen.add(model.group.name)
        checks = [c.to_json() for c in engine.peter_weyl_partition(rd, q)]
        good = all(v for c in checks for k, v in c.items() if k.startswith("exact"))
        ok = ok and good
        results.append({"vertex": [str(x) for x in v], "residue": rd.type_label,
                        "group": model.group.name, "checks": checks, "ok": good})
    report = {"config": config.to_json(), "residues": results, "all_ok": ok}
    return ok, report, {}


SUBCOMMANDS = {
    "roots": cmd_roots,
    "apartment": cmd_apartment,
    "simplex": cmd_simplex,
    "permissible": cmd_permissible,
    "group": cmd_group,
    "chars": cmd_chars,
    "blocks": cmd_blocks,
    "verify-ff": cmd_verify_ff,
    "verify-dplus": cmd_verify_dplus,
    "verify-depth-r": cmd_verify_depth_r,
    "stabilize": cmd_stabilize,
    "peter-weyl": cmd_peter_weyl,
}

# defaults tuned so `all` finishes in a couple of minutes
ALL_OVERRIDES = {
    "apartment": {"radius": 6},
    "permissible": {"radius": 8},
    "verify-dplus": {"radius": 24},
    "verify-depth-r": {"radius": 8},
    "stabilize": {"mmax": 8},
}


def cmd_all(config: RunConfig):
    summary = {}
    all_ok = True
    files = {}
    for name, handler in SUBCOMMANDS.items():
        import dataclasses

        sub = dataclasses.replace(config)
        for k, v in ALL_OVERRIDES.get(name, {}).items():
            setattr(sub, k, v)
        ok, report, extra = handler(sub)
        summary[name] = {"ok": ok}
        all_ok = all_ok and ok
        files[f"{name}.json"] = reports.canonical_json(report)
        files.update(extra)
    report = {"config": config.to_json(), "suites": summary, "all_ok": all_ok}
    return all_ok, report, files


def build_parser():
    p = argparse.ArgumentParser(
        prog="epcheck",
        description="Exact verification suites for alcove combinatorics and "
                    "finite reductive convolution identities.",
    )
    p.add_argument("subcommand", choices=list(SUBCOMMANDS) + ["all"])
    p.add_argument("--type", default="C2", help="Cartan type, e.g. C2, A3, G2")
    p.add_argument("--q", type=int, action="append",
                   help="field size (repeatable); default 2")
    p.add_argument("--radius", type=int, default=6, help="ball radius")
    p.add_argument("--rho", type=int, default=1, help="probe depth parameter")
    p.add_argument("--r", type=int, default=1, help="positive integral depth")
    p.add_argument("--mmax", type=int, default=8, help="stabilization trace length")
    p.add_argument("--l", type=int, default=6, dest="simplex_rank",
                   help="max abstract simplex dimension for the census")
    p.add_argument("--group", action="append", dest="groups",
                   help="group descriptor KIND:q (repeatable), e.g. SP4:2")
    p.add_argument("--size-cap", type=int,
                   default=int(os.environ.get("EPCHECK_SIZE_CAP", SIZE_CAP_DEFAULT)))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="reports")
    p.add_argument("--format", default="json", choices=["json", "csv"], dest="fmt")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--dump", action="store_true",
                   help="with `group`: write element-table fixtures")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        cartan=args.type.upper(),
        qs=args.q or [2],
        radius=args.radius,
        rho=args.rho,
        r=args.r,
        size_cap=args.size_cap,
        seed=args.seed,
        groups=args.groups or list(DEFAULT_GROUPS),
        out=args.out,
        fmt=args.fmt,
        svg=args.svg,
        simplex_rank=args.simplex_rank,
        mmax=args.mmax,
        dump=args.dump,
    )
    try:
        config.validate()
    except ValueError as exc:
        print(reports.canonical_json({"error": str(exc)}), end="", file=sys.stderr)
        return 2
    handler = cmd_all if args.subcommand == "all" else SUBCOMMANDS[args.subcommand]
    try:
        ok, report, extra = handler(config)
    except ValueError as exc:
        print(reports.canonical_json({"error": str(exc)}), end="", file=sys.stderr)
        return 2
    outdir = Path(config.out)
    outdir.mkdir(parents=True, exist_ok=True)
    name = args.subcommand.replace("-", "_")
    (outdir / f"{name}.json").write_text(reports.canonical_json(report))
    for fname, content in extra.items():
        (outdir / fname).write_text(content)
    status = "ok" if ok else "FAILED"
    print(f"{args.subcommand}: {status}; reports in {outdir}/")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
