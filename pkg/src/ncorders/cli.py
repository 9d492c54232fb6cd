"""Command line entry point: ``ncorders {all,check,list,export-shell}``.

Exit codes: 0 all checks pass, 1 an oracle mismatch, 2 an internal
inconsistency, 3 a usage error.
"""
from __future__ import annotations

import argparse
import os
import sys

EXIT_PASS, EXIT_MISMATCH, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="output directory for certificates")
    common.add_argument("--workers", type=int, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--witnesses", choices=("none", "summary", "full"), default="summary")
    p = _Parser(prog="ncorders", description="Exact verification pipeline for golden and integral orders.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("all", parents=[common], help="run every check and write the manifest")
    c = sub.add_parser("check", parents=[common], help="run one check")
    c.add_argument("check_id")
    sub.add_parser("list", help="list check ids, orders and models")
    e = sub.add_parser("export-shell", help="print the unit shell of an order or model")
    e.add_argument("order")
    e.add_argument("--out", help="write <order>.shell into this directory")
    e.add_argument("--workers", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("ncorders: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE

    from .certify import CHECK_IDS, InternalInconsistency, run_all, run_check
    from .orders import catalog, catalog_names

    if args.command == "list":
        print("checks: " + " ".join(CHECK_IDS))
        print("orders: " + " ".join(catalog_names()))
        print("models: h2 h3 h4")
        return EXIT_PASS

    if args.command == "export-shell":
        from .shells import ShellDivergence, enumerate_unit_shell, model_shell, shell_listing

        if args.order in ("h2", "h3", "h4"):
            S = model_shell(args.order)
        elif args.order in catalog_names():
            try:
                S = enumerate_unit_shell(catalog(args.order), args.workers)
            except ShellDivergence as exc:
                print(f"ncorders: {exc}", file=sys.stderr)
                return EXIT_INTERNAL
        else:
            print(f"ncorders: unknown order {args.order!r}", file=sys.stderr)
            return EXIT_USAGE
        text = shell_listing(S)
        if args.out:
            os.makedirs(args.out, exist_ok=True)
            with open(os.path.join(args.out, f"{args.order}.shell"), "w", encoding="ascii") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return EXIT_PASS

    try:
        if args.command == "check":
            if args.check_id not in CHECK_IDS:
                print(f"ncorders: unknown check {args.check_id!r}; try 'ncorders list'", file=sys.stderr)
                return EXIT_USAGE
            cert = run_check(args.check_id, args.workers, args.witnesses)
            certs = [cert]
            if args.out:
                os.makedirs(args.out, exist_ok=True)
                with open(os.path.join(args.out, f"{cert.check_id}.cert"), "wb") as fh:
                    fh.write(cert.to_bytes())
            else:
                sys.stdout.write(cert.to_bytes().decode("ascii"))
        else:
            manifest = run_all(args.out, args.workers, args.witnesses)
            certs = manifest.certificates
            if args.out is None:
                sys.stdout.write(manifest.to_bytes().decode("ascii"))
    except InternalInconsistency as exc:
        print(f"ncorders: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    status = EXIT_PASS
    for cert in certs:
        print(f"{cert.check_id}: {cert.status}", file=sys.stderr)
        for m in cert.mismatches:
            print(f"  {m['key']}: expected {m['expected']!r}, computed {m['computed']!r}", file=sys.stderr)
        if cert.status != "PASS":
            status = EXIT_MISMATCH
    return status


if __name__ == "__main__":
    sys.exit(main())
