"""Command line interface.

Usage::

    ncdiff report --preset matrix --param 2
    ncdiff derivations --algebra my_algebra.json --submodule gens.json --format text

JSON on stdout is the stable contract; ``--format text`` is for humans.
Exit codes: 0 success, 1 validation or domain failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from functools import cached_property

from . import __version__, formats, presets
from .algebra import Algebra, center
from .bidual import (
    CERTIFICATE_NOTE,
    dual_basis_certificate,
    ghost_biduals,
    ghost_covectors,
    reflexivity_report,
    second_dual,
)
from .derivations import VModule, derivations, z_closure
from .duality import dual, star_dual
from .errors import BadParams, NCDiffError, NotADerivation, UnknownPreset

COMMANDS = ("validate", "center", "derivations", "dual", "star-dual", "bidual", "certificate", "ghosts", "report")

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Context:
    """Lazily computed objects for one invocation."""

    def __init__(self, alg: Algebra, source: dict, generators=None):
        self.alg = alg
        self.source = source
        self.generators = generators

    @cached_property
    def vmodule(self) -> VModule:
        if self.generators is None:
            return derivations(self.alg)
        return z_closure(self.alg, self.generators)

    @cached_property
    def dagger(self):
        return dual(self.alg, self.vmodule)

    @cached_property
    def star(self):
        return star_dual(self.alg, self.vmodule)

    @cached_property
    def bidual(self):
        return second_dual(self.alg, self.dagger)

    def header(self, command: str) -> dict:
        return {
            "tool": formats.TOOL,
            "version": __version__,
            "schema": formats.REPORT_SCHEMA_ID,
            "command": command,
            "input_digest": formats.input_digest(self.alg, self.generators),
            "algebra": {**self.source, "dim": self.alg.dim, "basis": list(self.alg.labels)},
            "module": {
                "source": "derivations" if self.generators is None else "submodule",
                "generators": None if self.generators is None else len(self.generators),
            },
        }


def _matrices(items) -> list:
    return [formats.matrix(x.matrix if hasattr(x, "matrix") else x.values) for x in items]


def _certificate_doc(cert) -> dict | None:
    if cert is None:
        return None
    return {"generators": _matrices(cert.generators), "cogenerators": _matrices(cert.cogenerators)}


def cmd_validate(ctx: Context) -> dict:
    return {"valid": True, "commutative": ctx.alg.is_commutative(), "unit": formats.vector(ctx.alg.unit_coeffs)}


def cmd_center(ctx: Context) -> dict:
    z = center(ctx.alg)
    return {"dim": z.dim, "basis": [formats.vector(b) for b in z.basis]}


def cmd_derivations(ctx: Context) -> dict:
    vm = ctx.vmodule
    return {"dim": vm.dim, "basis": _matrices(vm.basis)}


def cmd_dual(ctx: Context) -> dict:
    return {"dim_v": ctx.vmodule.dim, "dim": ctx.dagger.dim, "basis": _matrices(ctx.dagger.basis)}


def cmd_star_dual(ctx: Context) -> dict:
    return {"dim_v": ctx.vmodule.dim, "dim": ctx.star.dim, "basis": _matrices(ctx.star.basis)}


def cmd_bidual(ctx: Context) -> dict:
    return {"dim_v_dagger": ctx.dagger.dim, "dim": ctx.bidual.dim, "basis": _matrices(ctx.bidual.basis)}


def cmd_certificate(ctx: Context) -> dict:
    cert = dual_basis_certificate(ctx.alg, ctx.vmodule, ctx.star)
    return {"projective": cert is not None, "note": CERTIFICATE_NOTE, "certificate": _certificate_doc(cert)}


def cmd_ghosts(ctx: Context) -> dict:
    cov_dim, cov_reps = ghost_covectors(ctx.alg, ctx.vmodule, ctx.dagger)
    bid_dim, bid_reps = ghost_biduals(ctx.vmodule, ctx.dagger, ctx.bidual)
    return {
        "ghost_covector_dim": cov_dim,
        "ghost_bidual_dim": bid_dim,
        "ghost_covectors": _matrices(cov_reps),
        "ghost_biduals": _matrices(bid_reps),
    }


def report_document(ctx: Context, bases: bool = True) -> dict:
    r = reflexivity_report(ctx.alg, ctx.vmodule)
    doc = {
        "dims": {
            "algebra": r.dim_algebra,
            "center": r.dim_center,
            "v": r.dim_v,
            "v_star": r.dim_v_star,
            "v_dagger": r.dim_v_dagger,
            "v_bidual": r.dim_v_bidual,
        },
        "embedding_rank": r.embedding_rank,
        "injective": r.injective,
        "reflexive": r.reflexive,
        "nondegenerate": r.nondegenerate,
        "leibniz_differentials": r.leibniz_differentials,
        "projective": r.projective,
        "certificate_note": CERTIFICATE_NOTE,
        "ghost_covector_dim": r.ghost_covector_dim,
        "ghost_bidual_dim": r.ghost_bidual_dim,
    }
    if bases:
        doc["bases"] = {
            "center": [formats.vector(b) for b in r.center.basis],
            "v": _matrices(r.vmodule.basis),
            "v_star": _matrices(r.star.basis),
            "v_dagger": _matrices(r.dagger.basis),
            "v_bidual": _matrices(r.bidual.basis),
            "certificate": _certificate_doc(r.certificate),
            "ghost_covectors": _matrices(r.ghost_covector_reps),
            "ghost_biduals": _matrices(r.ghost_bidual_reps),
        }
    return doc


def cmd_report(ctx: Context, summary: bool = False) -> dict:
    return report_document(ctx, bases=not summary)


HANDLERS = {
    "validate": cmd_validate,
    "center": cmd_center,
    "derivations": cmd_derivations,
    "dual": cmd_dual,
    "star-dual": cmd_star_dual,
    "bidual": cmd_bidual,
    "certificate": cmd_certificate,
    "ghosts": cmd_ghosts,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--algebra", metavar="PATH", help="algebra definition (JSON)")
    src.add_argument("--preset", choices=presets.PRESETS, help="bundled algebra")
    common.add_argument("--param", type=int, help="preset parameter, e.g. matrix size")
    common.add_argument("--submodule", metavar="PATH", help="JSON list of n x n matrices generating V")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")

    parser = argparse.ArgumentParser(prog="ncdiff", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "report":
            p.add_argument("--summary", action="store_true", help="omit basis listings")
    return parser


def _load(args) -> Context:
    if args.algebra is None and args.preset is None:
        raise UsageError("one of --algebra or --preset is required")
    if args.algebra is not None:
        if args.param is not None:
            raise UsageError("--param only applies to --preset")
        alg = formats.parse_algebra_file(args.algebra)
        source = {"source": "file", "name": alg.name}
    else:
        try:
            alg = presets.preset(args.preset, args.param)
        except (UnknownPreset, BadParams) as exc:
            raise UsageError(str(exc)) from exc
        source = {"source": "preset", "name": presets.corpus_name(args.preset, args.param)}
    generators = None
    if args.submodule is not None:
        generators = formats.parse_submodule_file(args.submodule, alg.dim)
    ctx = Context(alg, source, generators)
    if generators is not None:
        ctx.vmodule  # noqa: B018 - surfaces NotADerivation before any output
    return ctx


def _error_doc(command: str, exc: Exception) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc), "location": getattr(exc, "location", None)}
    if isinstance(exc, NotADerivation):
        err["location"] = f"$[{exc.index}]"
        err["pair"] = list(exc.pair) if exc.pair else None
    return {"tool": formats.TOOL, "version": __version__, "command": command, "error": err}


def _text(doc: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key, value in doc.items():
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}: {len(value)} item(s)")
            for k, item in enumerate(value):
                lines.append(f"{pad}  [{k}] {_flat(item)}")
        else:
            lines.append(f"{pad}{key}: {_flat(value)}")
    return "\n".join(x for x in lines if x)


def _flat(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_flat(v) for v in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        ctx = _load(args)
        if args.command == "report":
            body = cmd_report(ctx, args.summary)
        else:
            body = HANDLERS[args.command](ctx)
        doc = {**ctx.header(args.command), **body}
        code = EXIT_OK
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ncdiff: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NCDiffError as exc:
        doc = _error_doc(args.command, exc)
        code = EXIT_FAILURE
    text = formats.dumps(doc) if args.format == "json" else _text(doc) + "\n"
    _emit(text, args.output)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
