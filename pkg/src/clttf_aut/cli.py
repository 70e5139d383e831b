"""Command-line front end: ``clttf-aut <subcommand> [options] GRAPH``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import kernel
from .autgroup import aut_model
from .chunktree import chunk_tree, classify_edges, export_dot
from .graph import GraphParseError, InvalidGraphError, load_graph, separating_edges, \
    validate_clttf
from .isogroup import iso_group
from .presentation import PRESENTATIONS, abelianization, format_abelian, structure_report, \
    verify_presentation
from .twist import bit_string, rigidity_report, twist_class
from .words import induced_map

EXIT_OK, EXIT_VERIFY, EXIT_INVALID, EXIT_PARSE = 0, 1, 2, 3

SUBCOMMANDS = ("validate", "chunks", "tree", "class", "iso", "rigidity", "phi",
               "presentation", "verify", "report")


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clttf-aut", description=__doc__)
    p.add_argument("command", choices=SUBCOMMANDS)
    p.add_argument("graph", help="graph file")
    p.add_argument("--format", choices=("json", "text", "dot", "cas"), default="text")
    p.add_argument("--max-len", type=_positive, default=None,
                   help="word length cap for the rewriting search (default: derived per pair)")
    p.add_argument("--budget", type=_positive, default=100_000,
                   help="visited-word budget per equality check")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled cross-checks")
    p.add_argument("--group", choices=tuple(PRESENTATIONS), default="out")
    p.add_argument("--out", default=None, help="output directory for 'class'")
    return p


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _edges_text(edges) -> str:
    return "\n".join(f"{e.describe()} {e.orientation} {e.parity}" for e in edges)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        g = load_graph(args.graph)
    except (OSError, GraphParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    report = validate_clttf(g)
    if args.command == "validate":
        if args.format == "json":
            out.write(_dump(report.to_json()))
        else:
            for k, v in report.to_json().items():
                if k != "witnesses":
                    out.write(f"{k}: {v}\n")
            for k, v in report.witnesses.items():
                out.write(f"witness {k}: {v}\n")
        return EXIT_OK if report.ok else EXIT_INVALID
    if not report.ok:
        bad = ", ".join(k for k, v in report.to_json().items() if v is False)
        print(f"error: graph rejected ({bad}); witnesses {report.witnesses}", file=sys.stderr)
        return EXIT_INVALID

    try:
        return _dispatch(args, g, out)
    except InvalidGraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _dispatch(args, g, out) -> int:
    cmd, fmt = args.command, args.format
    if cmd == "chunks":
        t = chunk_tree(g)
        data = {"chunks": [sorted(c) for c in t.chunk_sets()],
                "separating_edges": [list(e) for e in separating_edges(g)]}
        if fmt == "json":
            out.write(_dump(data))
        else:
            for i, c in enumerate(data["chunks"]):
                out.write(f"C{i}: {{{','.join(c)}}}\n")
            out.write("separating edges: "
                      + " ".join(f"{{{a},{b}}}" for a, b in data["separating_edges"]) + "\n")
    elif cmd == "tree":
        t = chunk_tree(g)
        if fmt == "dot":
            out.write(export_dot(t))
        elif fmt == "json":
            out.write(_dump(t.to_json()))
        else:
            e_in, e_out, even, odd = classify_edges(t)
            out.write(f"center: {{{','.join(sorted(t.center_set))}}} ({t.center_kind})\n")
            out.write(_edges_text(t.tree_edges) + "\n")
            out.write(f"|E_in|={len(e_in)} |E_out|={len(e_out)} "
                      f"(odd {len(odd)}, even {len(even)})\n")
    elif cmd == "class":
        tc = twist_class(g)
        target = Path(args.out or Path(args.graph).with_suffix("").name + "_class")
        target.mkdir(parents=True, exist_ok=True)
        names = []
        for bits, member in sorted(tc.members.items()):
            name = (bit_string(bits) or "empty") + ".graph"
            (target / name).write_text(member.to_text(), encoding="utf-8")
            names.append(name)
        if fmt == "json":
            out.write(_dump({"directory": str(target), "members": names}))
        else:
            out.write(f"{len(names)} members written to {target}\n")
    elif cmd == "iso":
        grp = iso_group(g)
        if fmt == "json":
            out.write(_dump(grp.to_json()))
        else:
            out.write(f"|Iso| = {len(grp)}, |Aut| = {len(grp.aut_subgroup)}\n")
            for i, e in enumerate(grp.elements):
                out.write(f"a{i}: {e.alpha} eta={bit_string(e.eta)} "
                          f"order={grp.element_order(i)}\n")
    elif cmd == "rigidity":
        r = rigidity_report(g)
        if fmt == "json":
            out.write(_dump(r.to_json()))
        else:
            out.write(f"rigid: {r.rigid}\ndiscretely rigid: {r.discretely_rigid}\n")
    elif cmd == "phi":
        phi = aut_model(g).special_phi()
        images = induced_map(phi)
        if fmt == "json":
            d = phi.to_json()
            d["images"] = {v: w.to_json() for v, w in images.items()}
            out.write(_dump(d))
        else:
            out.write(f"Phi: eta={list(phi.core.eta)} alpha={phi.core.perm}\n")
            for v, w in images.items():
                out.write(f"  {v} -> {w}\n")
    elif cmd == "presentation":
        p = PRESENTATIONS[args.group](g)
        if fmt == "json":
            d = p.to_json()
            torsion, rank = abelianization(p)
            d["abelianization"] = {"torsion": torsion, "free_rank": rank}
            out.write(_dump(d))
        elif fmt == "cas":
            out.write(p.to_cas())
        else:
            out.write(p.to_text())
            out.write(f"abelianization: {format_abelian(abelianization(p))}\n")
    elif cmd == "verify":
        rep = verify_presentation(g, args.max_len, args.budget, args.seed)
        if fmt == "json":
            d = rep.to_json()
            d["kernel"] = kernel.NAME
            out.write(_dump(d))
        else:
            out.write(rep.to_text())
        return EXIT_OK if rep.ok else EXIT_VERIFY
    elif cmd == "report":
        text = structure_report(g)
        out.write(_dump({"report": text.splitlines()}) if fmt == "json" else text)
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
