"""Command-line front end over the JSON schemas.

Subcommands: encode, decode, roundtrip, congruent, dims, bench. All
randomness flows from --seed, so outputs are byte-identical across runs with
equal flags (bench timing lines excepted). Diagnostics verbosity comes from
the PERMCODEC_LOG environment variable (DEBUG/INFO/WARNING).

Exit codes: 0 success, 1 unexpected error, 2 parse/schema problems,
3 decode verification failure, 4 identifier collision / not identifiable.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import bench, jsonio, kernels
from .errors import (
    DecodeVerificationFailed,
    IdentifierCollision,
    NotIdentifiable,
    PermcodecError,
    SchemaError,
)
from .ident_codec import decode_ident, decode_variable_ident, encode_ident, shift_encode_ident
from .multiset import matching_distance
from .poly_decoder import decode_poly, decode_variable
from .poly_encoder import encode_poly, shift_encode
from .tensor_codec import congruent, latent_dims

log = logging.getLogger("permcodec")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_SCHEMA = 2
EXIT_DECODE = 3
EXIT_IDENT = 4


def _setup_logging() -> None:
    level = os.environ.get("PERMCODEC_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_out(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permcodec",
        description="Injective permutation-invariant multiset/tensor codecs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_encoder=True):
        if with_encoder:
            p.add_argument("--encoder", choices=("poly", "ident"), default="poly")
            p.add_argument("-N", "--capacity", type=int, default=None,
                           help="encoder capacity (defaults to the multiset size)")
            p.add_argument("--box", nargs=2, type=float, metavar=("LO", "HI"), default=None,
                           help="data bounds; enables the variable-size sentinel codec")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    p = sub.add_parser("encode", help="multiset JSON -> latent JSON")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("decode", help="latent JSON -> multiset JSON")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("roundtrip", help="print d_M(X, decode(encode(X))); exit 1 above --tol")
    p.add_argument("input")
    common(p)

    p = sub.add_parser("congruent", help="print true/false for two tensor JSON files")
    p.add_argument("first")
    p.add_argument("second")
    common(p, with_encoder=False)

    p = sub.add_parser("dims", help="print the nested-encoder latent dimension table")
    p.add_argument("-K", "--order", type=int, required=True)
    p.add_argument("-N", "--capacity", type=int, required=True)
    p.add_argument("-M", "--label-dim", type=int, default=1)
    p.add_argument("-D", "--dim", type=int, required=True)
    p.add_argument("--mode", choices=("rational", "real"), default="rational")
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("bench", help="time both kernel backends on a seeded corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("-o", "--output", default=None)
    return parser


def _cmd_encode(args) -> int:
    x = jsonio.multiset_from_json(_read(args.input))
    capacity = args.capacity if args.capacity is not None else x.size
    if args.encoder == "poly":
        latent = shift_encode(x, capacity, args.box) if args.box else encode_poly(x, capacity)
        _write_out(jsonio.poly_latent_to_json(latent), args.output)
    else:
        latent = (
            shift_encode_ident(x, capacity, args.box) if args.box else encode_ident(x, capacity)
        )
        _write_out(jsonio.ident_latent_to_json(latent), args.output)
    return EXIT_OK


def _cmd_decode(args) -> int:
    text = _read(args.input)
    if args.encoder == "poly":
        latent = jsonio.poly_latent_from_json(text)
        if latent.shifted:
            decoded = decode_variable(latent, seed=args.seed, box=args.box)
        else:
            decoded = decode_poly(latent, seed=args.seed)
    else:
        latent = jsonio.ident_latent_from_json(text)
        if latent.shifted:
            decoded = decode_variable_ident(latent, box=args.box)
        else:
            decoded = decode_ident(latent)
    _write_out(jsonio.multiset_to_json(decoded), args.output)
    return EXIT_OK


def _cmd_roundtrip(args) -> int:
    x = jsonio.multiset_from_json(_read(args.input))
    capacity = args.capacity if args.capacity is not None else x.size
    if args.encoder == "poly":
        if args.box:
            decoded = decode_variable(shift_encode(x, capacity, args.box), seed=args.seed)
        else:
            decoded = decode_poly(encode_poly(x, capacity), seed=args.seed)
    else:
        if args.box:
            decoded = decode_variable_ident(shift_encode_ident(x, capacity, args.box))
        else:
            decoded = decode_ident(encode_ident(x, capacity))
    err = matching_distance(x, decoded)
    _write_out(f"{err:.17g}\n", args.output)
    return EXIT_OK if err <= args.tol else EXIT_ERROR


def _cmd_congruent(args) -> int:
    a = jsonio.tensor_from_json(_read(args.first))
    b = jsonio.tensor_from_json(_read(args.second))
    _write_out("true\n" if congruent(a, b) else "false\n", args.output)
    return EXIT_OK


def _cmd_dims(args) -> int:
    dims = latent_dims(args.order, args.capacity, args.label_dim, args.dim, args.mode)
    lines = [
        f"mode={args.mode} K={args.order} N={args.capacity} M={args.label_dim} D={args.dim}"
    ]
    for k, value in enumerate(dims, start=1):
        lines.append(f"D_{k} = {value}")
    _write_out("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_bench(args) -> int:
    lines: list = []
    bench.run(seed=args.seed, count=args.count, out=lines.append)
    lines.append(f"active backend at start: {kernels.backend_name()}")
    _write_out("\n".join(str(line) for line in lines) + "\n", args.output)
    return EXIT_OK


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "roundtrip": _cmd_roundtrip,
    "congruent": _cmd_congruent,
    "dims": _cmd_dims,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    _setup_logging()
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (SchemaError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except DecodeVerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except (IdentifierCollision, NotIdentifiable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IDENT
    except PermcodecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
