"""Command-line surface.

Structured output is line-delimited key/value text (tab separated), with a
machine-readable JSON mode behind --json; certificates are always written
in the JSON certificate format.  Exit codes: 0 success, 1 mathematical
failure (failed verification, non-regular system, method disagreement),
2 usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, borel as bl, cache, catalog as cat, certfile
from . import grading as gr
from .dynkin import DatumInvalidError
from .exactlin import vdot
from .relroot import classification_label, classify_type
from .rootsys import UnsupportedTypeError, build_root_system

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2


class _Output:
    def __init__(self, as_json):
        self.as_json = as_json
        self.data = {}

    def emit(self, key, value):
        if key in self.data:
            existing = self.data[key]
            if not isinstance(existing, list):
                self.data[key] = [existing]
            self.data[key].append(value)
        else:
            self.data[key] = value

    def flush(self, stream=sys.stdout):
        if self.as_json:
            stream.write(json.dumps(self.data, sort_keys=True, indent=2) + "\n")
        else:
            for key, value in self.data.items():
                values = value if isinstance(value, list) else [value]
                for v in values:
                    stream.write("%s\t%s\n" % (key, _fmt(v)))


def _fmt(value):
    if isinstance(value, (tuple, list)):
        return " ".join(str(x) for x in value)
    if isinstance(value, Fraction):
        return str(value)
    return str(value)


def _root_str(coords):
    return " ".join(str(c) for c in coords)


def _parse_coords(text):
    parts = text.replace(",", " ").split()
    return tuple(int(p) for p in parts)


def _add_entry_args(parser):
    parser.add_argument("entry", nargs="+",
                        help="catalog entry name, or SERIES RANK")
    parser.add_argument("--gamma", default="trivial",
                        choices=["trivial", "flip", "triality"],
                        help="diagram automorphism subgroup (with SERIES RANK form)")
    parser.add_argument("--J", default="all",
                        help="'all' or comma-separated node indices")


def _resolve_entry(args) -> cat.CatalogEntry:
    tokens = args.entry
    if len(tokens) == 1:
        return cat.lookup(tokens[0])
    if len(tokens) == 2:
        series, rank = tokens[0], int(tokens[1])
        J_spec = "all" if args.J == "all" else tuple(
            int(x) for x in args.J.replace(",", " ").split())
        return cat.entry_for(series, rank, args.gamma, J_spec)
    raise _usage("entry must be a catalog name or SERIES RANK")


class _UsageError(Exception):
    pass


def _usage(message):
    return _UsageError(message)


def _borel_family(entry, rel, strategy="projection", cache_dir=None):
    """Enumerate (or load from cache) the Borel family for an entry."""
    fingerprint = gr.system_fingerprint(rel)
    key = "borel-%s-v%s-%s-%s" % (entry.key, __version__, strategy, fingerprint[:16])
    payload = cache.load(key, cache_dir)
    if payload is not None:
        try:
            return bl.family_from_payload(rel, payload)
        except (bl.InvalidInputError, KeyError, TypeError):
            pass  # corrupt or stale: fall through and recompute
    family = bl.enumerate_borel_subsets(rel, strategy)
    cache.store(key, bl.family_to_payload(family), cache_dir)
    return family


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_build(args):
    out = _Output(args.json)
    system = build_root_system(args.series, args.rank)
    out.emit("system", system.label)
    out.emit("rank", system.rank)
    out.emit("root_count", len(system.roots))
    out.emit("positive_count", len(system.positive_roots))
    for r in system.simple_roots:
        out.emit("simple_root", _root_str(r))
    for r in system.roots:
        out.emit("root", _root_str(r))
    out.flush()
    return EXIT_OK


def cmd_project(args):
    entry = _resolve_entry(args)
    proj, rel = cat.resolve(entry)
    out = _Output(args.json)
    out.emit("entry", entry.name)
    out.emit("ambient", "%s%d" % (entry.series, entry.rank))
    out.emit("relative_rank", rel.rank)
    out.emit("relative_root_count", len(rel.elements))
    out.emit("classification", classification_label(rel))
    for i, ct in enumerate(classify_type(rel)):
        out.emit("component_%d" % i, "%s (%d roots)" % (ct.label, len(ct.component)))
    for r in rel.elements:
        out.emit("relative_root", _root_str(r))
    for r in rel.elements:
        out.emit("fiber[%s]" % _root_str(r),
                 "; ".join(_root_str(x) for x in rel.fiber(r)))
    out.emit("zero_fiber_size", len(proj.zero_fiber))
    out.flush()
    return EXIT_OK


def cmd_borel(args):
    entry = _resolve_entry(args)
    proj, rel = cat.resolve(entry)
    strategy = args.strategy
    if strategy == "auto":
        strategy = ("separability"
                    if len(rel.lines()) <= bl.SEPARABILITY_LINE_BUDGET
                    else "projection")
    if strategy == "projection":
        family = _borel_family(entry, rel, "projection", args.cache_dir)
    else:
        family = bl.enumerate_borel_subsets(rel, strategy)
    out = _Output(args.json)
    out.emit("entry", entry.name)
    out.emit("strategy", family.strategy)
    out.emit("borel_count", len(family))
    for b in family:
        out.emit("borel[%d].positive" % b.id,
                 "; ".join(_root_str(r) for r in b.positive_roots))
        out.emit("borel[%d].witness" % b.id, _root_str(b.witness))
        out.emit("borel[%d].origin" % b.id, b.origin)
    out.flush()
    return EXIT_OK


def cmd_core(args):
    entry = _resolve_entry(args)
    proj, rel = cat.resolve(entry)
    family = _borel_family(entry, rel, "projection", args.cache_dir)
    if not 0 <= args.borel < len(family):
        raise _usage("borel id out of range (0..%d)" % (len(family) - 1))
    b = family.get(args.borel)
    out = _Output(args.json)
    out.emit("entry", entry.name)
    out.emit("borel_id", b.id)
    out.emit("positive", "; ".join(_root_str(r) for r in b.positive_roots))
    status = EXIT_OK
    results = {}
    if args.method in ("definitional", "all"):
        results["definitional"] = bl.core_definitional(b, family).members
    if args.method in ("sufficient", "all"):
        core, witnesses = bl.core_sufficient(b)
        results["sufficient"] = core.members
        for root, combo in sorted(witnesses.items()):
            out.emit("combination[%s]" % _root_str(root),
                     " + ".join("%s * (%s)" % (c, _root_str(g)) for g, c in combo))
    if args.method in ("formula", "all"):
        core = bl.core_formula(b)
        results["formula"] = core.members
        for root, img in core.complement_decomposition:
            out.emit("multiple_of[%s]" % _root_str(root), _root_str(img))
    for method, members in results.items():
        out.emit("core_%s" % method, "; ".join(_root_str(r) for r in members) or "(empty)")
    if args.method == "all":
        agree = len({members for members in results.values()}) == 1
        out.emit("methods_agree", agree)
        if not agree:
            status = EXIT_MATH
    out.flush()
    return status


def cmd_regular(args):
    entry = _resolve_entry(args)
    proj, rel = cat.resolve(entry)
    flag, witness = bl.is_regular(rel)
    out = _Output(args.json)
    out.emit("entry", entry.name)
    out.emit("regular", flag)
    if witness is not None:
        out.emit("witness", _root_str(witness))
    out.flush()
    return EXIT_OK if flag else EXIT_MATH


def cmd_support(args):
    entry = _resolve_entry(args)
    proj, rel = cat.resolve(entry)
    alpha = _parse_coords(args.alpha)
    beta = _parse_coords(args.beta)
    out = _Output(args.json)
    out.emit("entry", entry.name)
    out.emit("alpha", _root_str(alpha))
    out.emit("beta", _root_str(beta))
    sup = gr.commutator_support(rel, alpha, beta, bound=args.bound)
    out.emit("support_size", len(sup.support))
    for i, j, root in sup.support:
        out.emit("support[%d,%d]" % (i, j), _root_str(root))
    out.flush()
    return EXIT_OK


def cmd_certify(args):
    entry = _resolve_entry(args)
    proj, rel = cat.resolve(entry)
    family = _borel_family(entry, rel, "projection", args.cache_dir)
    cert = gr.certify_strong(rel, family)
    text = certfile.dumps(cert, entry.name)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    ok, detail = gr.verify_certificate(cert, rel, family)
    if not ok:
        sys.stderr.write("self-verification failed: %s\n" % detail)
        return EXIT_MATH
    if args.out:
        out = _Output(args.json)
        out.emit("entry", entry.name)
        out.emit("certificate", args.out)
        out.emit("borel_count", len(cert.per_borel))
        out.emit("delegations", len(cert.delegations))
        out.emit("self_verified", True)
        out.flush()
    return EXIT_OK


def cmd_verify(args):
    try:
        cert, entry_name = certfile.read(args.file)
    except certfile.CertificateFormatError as err:
        sys.stderr.write("invalid certificate: %s\n" % err)
        return EXIT_MATH
    try:
        entry = cat.lookup(entry_name)
    except cat.UnknownEntryError:
        sys.stderr.write("certificate names unknown entry %r\n" % entry_name)
        return EXIT_MATH
    proj, rel = cat.resolve(entry)
    family = _borel_family(entry, rel, "projection", args.cache_dir)
    ok, detail = gr.verify_certificate(cert, rel, family)
    out = _Output(args.json)
    out.emit("entry", entry_name)
    out.emit("verified", ok)
    if detail:
        out.emit("detail", detail)
    out.flush()
    return EXIT_OK if ok else EXIT_MATH


def cmd_catalog(args):
    out = _Output(args.json)
    for entry in cat.entries():
        info = cat.describe(entry)
        out.emit(entry.name, "%s gamma=%s J=%s -> %s (%d roots)" % (
            info["ambient"], info["gamma"],
            info["J"] if isinstance(info["J"], str) else ",".join(map(str, info["J"])),
            info["relative_type"], info["relative_roots"]))
    out.flush()
    return EXIT_OK


def cmd_report(args):
    from . import report
    entry = _resolve_entry(args)
    files = report.render_report(entry, args.out_dir)
    out = _Output(args.json)
    out.emit("entry", entry.name)
    for f in files:
        out.emit("written", f)
    out.flush()
    return EXIT_OK


def cmd_selftest(args):
    failures = []

    def check(name, fn):
        try:
            fn()
        except Exception as err:  # noqa: BLE001 - report and continue
            failures.append((name, err))
            print("FAIL  %s: %s" % (name, err))
        else:
            print("ok    %s" % name)

    small = [e for e in cat.entries()
             if len(cat.relative_system(e).lines()) <= bl.SEPARABILITY_LINE_BUDGET]
    for entry in small:
        proj, rel = cat.resolve(entry)

        def dual_strategies(rel=rel):
            a = bl.enumerate_borel_subsets(rel, "separability")
            b = bl.enumerate_borel_subsets(rel, "projection")
            assert [x.mask for x in a] == [x.mask for x in b], "families differ"

        def cores_agree(rel=rel):
            fam = bl.enumerate_borel_subsets(rel, "projection")
            for b in fam:
                d = bl.core_definitional(b, fam).members
                f = bl.core_formula(b).members
                s = bl.core_sufficient(b)[0].members
                assert d == f == s, "core mismatch on borel %d" % b.id

        def fibers(rel=rel, proj=proj):
            total = len(proj.zero_fiber) + sum(len(rel.fiber(a)) for a in rel.elements)
            assert total == len(rel.system.roots)

        def regularity(rel=rel):
            flag, _ = bl.is_regular(rel)
            from rootgrading.exactlin import span_rank
            by_rank = all(span_rank(c) >= 2 for c in rel.components())
            assert flag == by_rank

        check("%s: dual-strategy agreement" % entry.name, dual_strategies)
        check("%s: three core methods agree" % entry.name, cores_agree)
        check("%s: fiber partition" % entry.name, fibers)
        check("%s: regularity criterion" % entry.name, regularity)

    def bc2_roundtrip():
        entry = cat.lookup("BC2-from-A4")
        proj, rel = cat.resolve(entry)
        fam = bl.enumerate_borel_subsets(rel, "projection")
        cert = gr.certify_strong(rel, fam)
        ok, detail = gr.verify_certificate(cert, rel, fam)
        assert ok, detail

    def g2_delegation():
        entry = cat.lookup("G2-from-D4")
        proj, rel = cat.resolve(entry)
        fam = bl.enumerate_borel_subsets(rel, "projection")
        cert = gr.certify_strong(rel, fam)
        assert len(cert.delegations) == 1
        assert all(bc.groups == () for bc in cert.per_borel)
        ok, detail = gr.verify_certificate(cert, rel, fam)
        assert ok, detail

    check("BC2 certify/verify round trip", bc2_roundtrip)
    check("G2 fold delegates", g2_delegation)
    print("%d checks, %d failures" % (len(small) * 4 + 2, len(failures)))
    return EXIT_MATH if failures else EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog="rootgrading",
        description="Relative root systems, Borel subsets and cores, and "
                    "machine-checkable strong-grading certificates.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--json", action="store_true",
                        help="machine-readable JSON output")
    parser.add_argument("--cache-dir", default=None,
                        help="cache directory (default: %s or $%s)"
                             % (cache.default_dir(), cache.ENV_VAR))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a root system and list its roots")
    p.add_argument("series", choices=["A", "B", "C", "D", "E", "F", "G", "BC"])
    p.add_argument("rank", type=int)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("project", help="relative root system with fibers and type")
    _add_entry_args(p)
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("borel", help="enumerate Borel subsets")
    _add_entry_args(p)
    p.add_argument("--strategy", default="auto",
                   choices=["auto", "separability", "projection"])
    p.set_defaults(fn=cmd_borel)

    p = sub.add_parser("core", help="core of one Borel subset")
    _add_entry_args(p)
    p.add_argument("--borel", type=int, required=True, help="Borel subset id")
    p.add_argument("--method", default="all",
                   choices=["definitional", "sufficient", "formula", "all"])
    p.set_defaults(fn=cmd_core)

    p = sub.add_parser("regular", help="regularity test with witness")
    _add_entry_args(p)
    p.set_defaults(fn=cmd_regular)

    p = sub.add_parser("support", help="commutator support of a root pair")
    _add_entry_args(p)
    p.add_argument("--alpha", required=True, help="coordinates, e.g. '1,0'")
    p.add_argument("--beta", required=True)
    p.add_argument("--bound", type=int, default=6)
    p.set_defaults(fn=cmd_support)

    p = sub.add_parser("certify", help="generate a strong-grading certificate")
    _add_entry_args(p)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("verify", help="verify a certificate file")
    p.add_argument("file")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("catalog", help="list built-in entries")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("report", help="delimited report plus figures")
    _add_entry_args(p)
    p.add_argument("--out-dir", default=".", help="where to write the files")
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("selftest", help="run the cross-validation suite")
    p.set_defaults(fn=cmd_selftest)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        # argparse exits 2 on usage errors and 0 on --help; pass through.
        return err.code if err.code is not None else EXIT_USAGE
    try:
        return args.fn(args)
    except _UsageError as err:
        sys.stderr.write("usage error: %s\n" % err)
        return EXIT_USAGE
    except gr.RegularityError as err:
        sys.stderr.write("not certifiable: %s\n" % err)
        return EXIT_MATH
    except (cat.UnknownEntryError, UnsupportedTypeError, DatumInvalidError,
            bl.BudgetExceededError, bl.MissingOriginError, ValueError) as err:
        sys.stderr.write("error: %s\n" % err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
