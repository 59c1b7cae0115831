"""Command-line interface.

Subcommands:
  enumerate   list all labels with dimensions, tableaux and link patterns
  order A B   closure-order test with a Bruhat witness
  hasse       Hasse diagram as DOT or JSON, singular nodes flagged
  tangent L   per-root tangent table and bounds for one label
  smooth      smoothness verdict sweep over all labels
  verify      run the self-check suites; nonzero exit on failure
  springer    orbital varieties and component counts
  blueprint   flag-chain blueprint for a label and reduced word

Labels are written like "sigma=2,4,1,3 alpha=id" (quote the space) or with
generator words, "sigma=s1.s3.s2".  Exit codes: 0 success, 1 verification
failure, 2 bad input, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import atlas, geometry, poset, tangent
from .atlas import Context, OrbitLabel
from .perms import (
    CapExceeded,
    bruhat_leq,
    compose,
    format_perm,
    format_word,
    identity,
    length,
    parse_perm,
    parse_word,
    reduced_word,
)
from .ratmat import format_matrix

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_BAD_INPUT = 2
EXIT_CAP = 3


@dataclass(frozen=True)
class RunConfig:
    ctx: Context
    fmt: str
    out: str | None
    cap: int
    samples: tuple[Fraction, ...]


def _parse_perm_or_word(text: str, n: int):
    text = text.strip()
    if text == "id":
        return identity(n)
    if text and (text[0] == "s" or "." in text):
        from .perms import evaluate_word

        return evaluate_word(n, parse_word(text))
    return parse_perm(text, n)


def parse_label_arg(ctx: Context, text: str) -> OrbitLabel:
    """Parse 'sigma=... alpha=...' (alpha optional, defaults to id)."""
    parts = text.split()
    values = {}
    for part in parts:
        if "=" not in part:
            raise ValueError(f"expected key=value, got {part!r}")
        key, _, val = part.partition("=")
        if key not in ("sigma", "alpha"):
            raise ValueError(f"unknown label key {key!r}")
        values[key] = val
    if "sigma" not in values:
        raise ValueError("label needs at least sigma=...")
    sigma = _parse_perm_or_word(values["sigma"], ctx.n)
    alpha = _parse_perm_or_word(values.get("alpha", "id"), ctx.n)
    return atlas.label(ctx, sigma, alpha)


def _label_str(lbl: OrbitLabel) -> str:
    return f"sigma={format_perm(lbl.sigma)} alpha={format_perm(lbl.alpha)}"


def _singular_indices(g: poset.BruhatGraph) -> frozenset[int]:
    return frozenset(
        i
        for i, lbl in enumerate(g.labels)
        if tangent.verdict(g.ctx, lbl).status == "singular"
    )


def cmd_enumerate(cfg: RunConfig) -> tuple[int, str]:
    labels = atlas.enumerate_labels(cfg.ctx, cfg.cap)
    if cfg.fmt == "json":
        import json

        rows = []
        for lbl in labels:
            t = atlas.tableau(cfg.ctx, lbl)
            rows.append(
                {
                    "sigma": format_perm(lbl.sigma),
                    "alpha": format_perm(lbl.alpha),
                    "dim": atlas.dimension(cfg.ctx, lbl),
                    "upper": atlas.is_upper_label(cfg.ctx, lbl),
                    "tableau": [list(t.left), list(t.right)],
                    "arcs": [list(a) for a in atlas.link_pattern(cfg.ctx, lbl).arcs],
                }
            )
        return EXIT_OK, json.dumps({"n": cfg.ctx.n, "k": cfg.ctx.k, "labels": rows}, indent=2) + "\n"
    lines = [f"# {len(labels)} labels for n={cfg.ctx.n} k={cfg.ctx.k}"]
    for lbl in labels:
        t = atlas.tableau(cfg.ctx, lbl)
        arcs = atlas.link_pattern(cfg.ctx, lbl).arcs
        lines.append(
            "  ".join(
                [
                    f"sigma={format_perm(lbl.sigma)}",
                    f"alpha={format_perm(lbl.alpha)}",
                    f"dim={atlas.dimension(cfg.ctx, lbl)}",
                    f"upper={'y' if atlas.is_upper_label(cfg.ctx, lbl) else 'n'}",
                    f"tableau={list(t.left)}|{list(t.right)}",
                    f"arcs={list(map(list, arcs))}",
                ]
            )
        )
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_order(cfg: RunConfig, a: OrbitLabel, b: OrbitLabel) -> tuple[int, str]:
    witness = poset.leq_witness(cfg.ctx, a, b)
    if witness is None:
        return EXIT_OK, "false\n"
    return EXIT_OK, f"true  witness={format_perm(witness)}\n"


def cmd_hasse(cfg: RunConfig) -> tuple[int, str]:
    g = poset.hasse(cfg.ctx, cfg.cap)
    singular = _singular_indices(g)
    if cfg.fmt == "json":
        return EXIT_OK, poset.export_json(g, singular)
    return EXIT_OK, poset.export_dot(g, singular)


def _tangent_report(ctx: Context, lbl: OrbitLabel) -> str:
    lines = [f"# tangent data for {_label_str(lbl)}  (n={ctx.n} k={ctx.k})"]
    table = tangent.t_k_table(ctx, lbl)
    for rt, in_tk, kept, witness in table:
        status = "in " if in_tk else "out"
        phi_n = "yes" if kept else "no "
        wit = format_perm(witness) if witness is not None else "-"
        lines.append(
            f"  ({rt.i},{rt.j})  {rt.family:<13} phi_n={phi_n} t_k={status}  witness={wit}"
        )
    count = sum(1 for _, in_tk, _, _ in table if in_tk)
    dim = atlas.dimension(ctx, lbl)
    lines.append(f"  |t_k| = {count} of {len(table)} roots")
    lines.append(f"  tangent lower bound = {atlas.dim_y0(ctx) + count}")
    lines.append(f"  dimension = {dim}")
    if atlas.is_upper_label(ctx, lbl):
        lines.append(f"  tangent dimension (upper label) = {tangent.tangent_dimension_upper(ctx, lbl)}")
    lines.append(f"  bracket-closure span = {tangent.bk_span(ctx, lbl)}")
    return "\n".join(lines) + "\n"


def cmd_tangent(cfg: RunConfig, lbl: OrbitLabel) -> tuple[int, str]:
    return EXIT_OK, _tangent_report(cfg.ctx, lbl)


def cmd_smooth(cfg: RunConfig) -> tuple[int, str]:
    labels = atlas.enumerate_labels(cfg.ctx, cfg.cap)
    if cfg.fmt == "json":
        import json

        return (
            EXIT_OK,
            json.dumps(
                [tangent.verdict_json(cfg.ctx, lbl) for lbl in labels], indent=2
            )
            + "\n",
        )
    lines = [f"# verdicts for n={cfg.ctx.n} k={cfg.ctx.k}"]
    for lbl in labels:
        v = tangent.verdict(cfg.ctx, lbl)
        rule = v.rule if v.rule is not None else "-"
        lines.append(
            f"  {_label_str(lbl)}  dim={atlas.dimension(cfg.ctx, lbl)}  "
            f"verdict={v.status:<8} rule={rule:<2} witness={v.witness}"
        )
    counts = {}
    for lbl in labels:
        status = tangent.verdict(cfg.ctx, lbl).status
        counts[status] = counts.get(status, 0) + 1
    lines.append(
        "# totals: "
        + " ".join(f"{status}={counts.get(status, 0)}" for status in ("smooth", "singular", "unknown"))
    )
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_springer(cfg: RunConfig) -> tuple[int, str]:
    ctx = cfg.ctx
    labels = atlas.enumerate_labels(ctx, cfg.cap)
    orbital = [lbl for lbl in labels if atlas.is_orbital_variety(ctx, lbl)]
    lines = [f"# orbital varieties for n={ctx.n} k={ctx.k}"]
    for lbl in orbital:
        v = tangent.verdict(ctx, lbl)
        t = atlas.tableau(ctx, lbl)
        lines.append(
            f"  {_label_str(lbl)}  tableau={list(t.left)}|{list(t.right)}  verdict={v.status}"
        )
    lines.append(f"# count = {len(orbital)}")
    lines.append(f"# standard tableaux (hook formula) = {atlas.count_standard_tableaux(ctx)}")
    lines.append(f"# springer component dimension = {atlas.springer_component_dim(ctx)}")
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_blueprint(cfg: RunConfig, lbl: OrbitLabel, word: tuple[int, ...]) -> tuple[int, str]:
    bp = geometry.resolution_blueprint(cfg.ctx, lbl, word)
    if cfg.fmt == "json":
        return EXIT_OK, geometry.blueprint_to_json(bp) + "\n"
    lines = [
        f"# blueprint for {_label_str(lbl)} via word {format_word(bp.moves)}",
        f"  flags: {len(bp.moves)}",
    ]
    standard = tuple(f"K{m}" for m in range(1, bp.n + 1))
    lines.append("  V0: " + " < ".join(standard) + "   (standard flag)")
    for s, row in enumerate(bp.flags, start=1):
        lines.append(f"  V{s}: " + " < ".join(row) + f"   (changed at {bp.moves[s - 1]})")
    lines.append("  matrix constraints:")
    for rel in bp.relations:
        lines.append(f"    {rel}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _verify_suites(cfg: RunConfig) -> tuple[int, str]:
    """Self-check suites for one context; any failure exits nonzero."""
    ctx = cfg.ctx
    lines = []
    status = EXIT_OK

    def report(name: str, ok: bool, detail: str):
        nonlocal status
        lines.append(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            status = EXIT_VERIFICATION

    labels = atlas.enumerate_labels(ctx, cfg.cap)

    import math

    expected = math.factorial(ctx.n) // (
        math.factorial(ctx.k) * math.factorial(ctx.n - 2 * ctx.k)
    )
    seen = set()
    coset_count = 0
    from .perms import all_perms

    for p in all_perms(ctx.n):
        if p in seen:
            continue
        coset_count += 1
        seen.update(atlas.coset_of(ctx, p).members)
    report(
        "label-count",
        len(labels) == expected == coset_count,
        f"{len(labels)} labels, {coset_count} cosets, formula {expected}",
    )

    ok = True
    for lbl in labels:
        coset = atlas.coset_of(ctx, atlas.label_perm(lbl))
        reps = atlas.min_length_reps(coset)
        if atlas.label_perm(lbl) not in reps:
            ok = False
        if length(atlas.label_perm(lbl)) != length(lbl.sigma) + length(lbl.alpha):
            ok = False
        if atlas.label_of_coset(ctx, coset) != lbl:
            ok = False
    report("minimal-representatives", ok, f"{len(labels)} labels checked")

    ok = True
    for lbl in labels:
        m = atlas.rep_matrix(ctx, lbl)
        if not geometry.is_two_nilpotent_of_rank(m, ctx.k):
            ok = False
        if atlas.is_upper_label(ctx, lbl) != m.is_strictly_upper_triangular():
            ok = False
    report("representative-matrices", ok, f"{len(labels)} labels checked")

    upper = [lbl for lbl in labels if atlas.is_upper_label(ctx, lbl)]
    invol = atlas.count_involutions(ctx.n, ctx.k)
    images = {atlas.involution_tau(ctx, lbl) for lbl in upper}
    report(
        "involution-bijection",
        len(upper) == invol == len(images),
        f"{len(upper)} upper labels, {invol} involutions",
    )

    hook = atlas.count_standard_tableaux(ctx)
    brute = atlas.count_standard_tableaux_bruteforce(ctx)
    orbital = [lbl for lbl in labels if atlas.is_orbital_variety(ctx, lbl)]
    report(
        "orbital-varieties",
        hook == brute == len(orbital),
        f"{len(orbital)} components, hook {hook}, direct {brute}",
    )

    ok = True
    for a in labels:
        for b in labels:
            if poset.leq(ctx, a, b) != poset.leq_oracle(ctx, a, b):
                ok = False
    report("closure-order-oracle", ok, f"{len(labels)}^2 ordered pairs")

    bad = 0
    for rt in tangent.phi_plus(ctx):
        if not geometry.verify_curve(ctx, rt, cfg.samples).ok:
            bad += 1
    report(
        "curves",
        bad == 0,
        f"{len(tangent.phi_plus(ctx))} roots x {len(cfg.samples)} samples",
    )

    stack_rank = geometry.tangent_stack_rank(ctx)
    report(
        "tangent-span",
        geometry.tangent_independence(ctx),
        f"rank {stack_rank}, orbit dimension {atlas.dim_orbit(ctx)}",
    )

    g = poset.hasse(ctx, cfg.cap)
    ok = True
    try:
        poset.minimum(g), poset.maximum(g)
    except ValueError:
        ok = False
    for (i, j) in g.covers:
        if g.dims[i] >= g.dims[j]:
            ok = False
    cover_set = set(g.covers)
    for (i, j, _) in g.weak:
        if (i, j) not in cover_set:
            ok = False
    report("hasse", ok, f"{len(g.covers)} covers, {len(g.weak)} weak edges")

    singular_orbital = [
        lbl for lbl in orbital if tangent.verdict(ctx, lbl).status == "singular"
    ]
    report(
        "verdicts",
        all(tangent.verdict(ctx, lbl).status in ("smooth", "singular", "unknown") for lbl in labels),
        f"{len(singular_orbital)} singular orbital varieties",
    )
    for lbl in singular_orbital:
        lines.append(_tangent_report(ctx, lbl).rstrip("\n"))

    return status, "\n".join(lines) + "\n"


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    return _verify_suites(cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="borbit",
        description="Borel orbits of 2-nilpotent matrices: labels, order, tangents.",
    )
    parser.add_argument("--n", type=int, required=True, help="matrix size")
    parser.add_argument("--k", type=int, required=True, help="orbit rank")
    parser.add_argument(
        "--format", choices=("table", "dot", "json"), default=None, dest="fmt"
    )
    parser.add_argument("--out", default=None, help="write output to a file")
    parser.add_argument(
        "--cap", type=int, default=atlas.ENUMERATION_CAP, help="enumeration size cap"
    )
    parser.add_argument(
        "--samples",
        default="1,-1,2,1/3",
        help="comma-separated rational curve samples",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate")
    p_order = sub.add_parser("order")
    p_order.add_argument("a")
    p_order.add_argument("b")
    sub.add_parser("hasse")
    p_tangent = sub.add_parser("tangent")
    p_tangent.add_argument("label")
    sub.add_parser("smooth")
    sub.add_parser("verify")
    sub.add_parser("springer")
    p_blueprint = sub.add_parser("blueprint")
    p_blueprint.add_argument("label")
    p_blueprint.add_argument("word")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = Context(args.n, args.k)
        samples = tuple(
            Fraction(part) for part in str(args.samples).split(",") if part
        )
        default_fmt = "dot" if args.command == "hasse" else "table"
        cfg = RunConfig(
            ctx=ctx,
            fmt=args.fmt or default_fmt,
            out=args.out,
            cap=args.cap,
            samples=samples,
        )
        if args.command == "enumerate":
            code, text = cmd_enumerate(cfg)
        elif args.command == "order":
            code, text = cmd_order(
                cfg, parse_label_arg(ctx, args.a), parse_label_arg(ctx, args.b)
            )
        elif args.command == "hasse":
            code, text = cmd_hasse(cfg)
        elif args.command == "tangent":
            code, text = cmd_tangent(cfg, parse_label_arg(ctx, args.label))
        elif args.command == "smooth":
            code, text = cmd_smooth(cfg)
        elif args.command == "verify":
            code, text = cmd_verify(cfg)
        elif args.command == "springer":
            code, text = cmd_springer(cfg)
        elif args.command == "blueprint":
            code, text = cmd_blueprint(
                cfg,
                parse_label_arg(ctx, args.label),
                parse_word(args.word),
            )
        else:  # pragma: no cover - argparse enforces the choices
            raise ValueError(f"unknown command {args.command!r}")
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if cfg.out is not None:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
