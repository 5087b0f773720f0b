"""Command-line front end.

Subcommands: curve-info, generate, test, encrypt, decrypt, analyze. Curve
parameters come from flags or a ``key=value`` config file (flags win); with
no curve flags the default curve y^2 = x^3 + 4x + 1 over F_503 with
G = (283, 315) of order 129 is used.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import secrets
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import curve as ec
from .imagecipher import analyze, decrypt, encrypt, image_seed
from .imagecipher.pgm import PGMError, read_pgm_with_comments, write_pgm
from .prbg import DEFAULT_TRUNC_BITS, DIGEST_BITS, BitStream, generate, instantiate
from .stattests import run_battery

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARAMS = 3
EXIT_IO = 4
EXIT_TEST_FAILED = 5

PLAIN_DIGEST_TAG = "ecprbg-plain-sha256"
ASCII_LINE_BITS = 64

_CONFIG_KEYS = ("p", "a", "b", "gx", "gy", "order", "seed", "trunc_bits")
_INT_KEYS = ("p", "a", "b", "gx", "gy", "order", "trunc_bits")


class ParameterError(Exception):
    pass


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    p: int | None = None
    a: int | None = None
    b: int | None = None
    gx: int | None = None
    gy: int | None = None
    order: int | None = None
    seed: str | None = None
    trunc_bits: int = DEFAULT_TRUNC_BITS

    @property
    def uses_default_curve(self) -> bool:
        return self.p is None and self.a is None and self.b is None

    def curve(self) -> ec.Curve:
        if self.uses_default_curve:
            return ec.Curve(ec.DEFAULT_P, ec.DEFAULT_A, ec.DEFAULT_B)
        missing = [k for k in ("p", "a", "b") if getattr(self, k) is None]
        if missing:
            raise ParameterError(f"curve parameters missing: {', '.join(missing)}")
        try:
            return ec.Curve(self.p, self.a, self.b)
        except ec.SingularCurveError as exc:
            raise ParameterError(f"singular curve: {exc}") from exc
        except (ValueError, TypeError) as exc:
            raise ParameterError(f"invalid field modulus: {exc}") from exc

    def has_generator(self) -> bool:
        return self.uses_default_curve or None not in (self.gx, self.gy, self.order)

    def generator(self) -> ec.GeneratorSpec:
        if not 1 <= self.trunc_bits <= DIGEST_BITS:
            raise ParameterError(f"trunc_bits must be in [1, {DIGEST_BITS}], got {self.trunc_bits}")
        E = self.curve()
        if self.uses_default_curve:
            gx = ec.DEFAULT_G[0] if self.gx is None else self.gx
            gy = ec.DEFAULT_G[1] if self.gy is None else self.gy
            order = ec.DEFAULT_ORDER if self.order is None else self.order
        else:
            if None in (self.gx, self.gy, self.order):
                raise ParameterError("a custom curve needs --gx, --gy and --order")
            gx, gy, order = self.gx, self.gy, self.order
        try:
            G = E.point(gx, gy)
        except ec.PointNotOnCurveError as exc:
            raise ParameterError(f"base point not on curve: ({gx}, {gy})") from exc
        actual = E.point_order(G)
        if actual != order:
            raise ParameterError(f"order mismatch: ({gx}, {gy}) has order {actual}, not {order}")
        return ec.GeneratorSpec(E, G, order)

    def seed_bytes(self) -> bytes:
        if self.seed is None:
            raise UsageError("a seed is required: pass --seed <hex> or --random-seed")
        text = self.seed.strip()
        if text.lower().startswith("0x"):
            text = text[2:]
        try:
            data = bytes.fromhex(text)
        except ValueError as exc:
            raise UsageError(f"seed must be a hex string, got {self.seed!r}") from exc
        if not data:
            raise UsageError("seed must be non-empty")
        return data

    def describe(self) -> dict:
        spec = self.generator()
        return {
            "p": spec.curve.p,
            "a": spec.curve.a,
            "b": spec.curve.b,
            "gx": spec.G.x.value,
            "gy": spec.G.y.value,
            "order": spec.order,
        }


def load_config_file(path) -> dict:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are ignored."""
    values: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in _CONFIG_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                values[key] = int(value, 0)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: {key} must be an integer") from None
        else:
            values[key] = value
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    values = load_config_file(args.config) if args.config else {}
    for key in _CONFIG_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    if getattr(args, "random_seed", False):
        values["seed"] = secrets.token_hex(32)
        print(f"seed: {values['seed']}", file=sys.stderr)
    return RunConfig(**values)


# -- subcommands --------------------------------------------------------------


def cmd_curve_info(args) -> int:
    cfg = build_config(args)
    E = cfg.curve()
    report: dict = {
        "p": E.p,
        "a": E.a,
        "b": E.b,
        "discriminant": E.discriminant(),
        "nonsingular": True,
    }
    if E.p <= ec.ENUMERATION_LIMIT:
        report["cardinality"] = E.order()
    if cfg.has_generator():
        spec = cfg.generator()
        report["generator"] = {"x": spec.G.x.value, "y": spec.G.y.value}
        report["generator_order"] = spec.order
        report["generator_order_verified"] = True
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(f"curve        y^2 = x^3 + {E.a}x + {E.b} over F_{E.p}")
        print(f"4a^3 + 27b^2 = {E.discriminant()} (mod {E.p}), non-singular")
        if "cardinality" in report:
            print(f"#E(F_p)      {report['cardinality']}")
        else:
            print("#E(F_p)      not computed (p above enumeration limit)")
        if "generator" in report:
            g = report["generator"]
            print(f"generator    ({g['x']}, {g['y']}), order {report['generator_order']} (verified)")
    return EXIT_OK


def _write_bits(path: Path, bits: BitStream, fmt: str) -> None:
    if fmt == "raw":
        path.write_bytes(bits.to_bytes())
    else:
        text = bits.to_string()
        lines = [text[i : i + ASCII_LINE_BITS] for i in range(0, len(text), ASCII_LINE_BITS)]
        path.write_text("\n".join(lines) + "\n")


def cmd_generate(args) -> int:
    cfg = build_config(args)
    spec = cfg.generator()
    seed = cfg.seed_bytes()
    if args.bits < 1:
        raise UsageError("--bits must be positive")
    _, bits = generate(instantiate(spec, seed, cfg.trunc_bits), args.bits)
    out = Path(args.out)
    _write_bits(out, bits, args.format)
    meta = {
        "curve": cfg.describe(),
        "seed_sha256": hashlib.sha256(seed).hexdigest(),
        "trunc_bits": cfg.trunc_bits,
        "length": len(bits),
        "format": args.format,
        "padding_bits": bits.padding if args.format == "raw" else 0,
    }
    Path(str(out) + ".json").write_text(json.dumps(meta, indent=2) + "\n")
    print(f"wrote {len(bits)} bits to {out}", file=sys.stderr)
    return EXIT_OK


def read_bitstream(path: Path, fmt: str = "auto", length: int | None = None) -> BitStream:
    """Load a stream written by ``generate`` (sidecar metadata used when present)."""
    sidecar = Path(str(path) + ".json")
    if sidecar.exists():
        meta = json.loads(sidecar.read_text())
        if fmt == "auto":
            fmt = meta.get("format", "auto")
        if length is None:
            length = meta.get("length")
    data = path.read_bytes()
    if fmt == "auto":
        fmt = "ascii" if data and set(data) <= set(b"01 \t\r\n") else "raw"
    if fmt == "ascii":
        bits = BitStream.from_string(data.decode("ascii"))
        return bits[:length] if length is not None else bits
    return BitStream.from_bytes(data, length)


def cmd_test(args) -> int:
    path = Path(args.input)
    bits = read_bitstream(path, args.format, args.bits)
    overrides = {
        "block_frequency": {"m": args.block_m},
        "serial": {"m": args.serial_m},
        "approximate_entropy": {"m": args.apen_m},
        "nonoverlapping_template": {"template": args.template},
        "linear_complexity": {"M": args.lc_m},
    }
    report = run_battery(bits, overrides)
    print(report.to_text())
    report_path = Path(args.report) if args.report else Path(str(path) + ".report.json")
    report_path.write_text(report.to_json() + "\n")
    if args.strict and not report.all_passed:
        return EXIT_TEST_FAILED
    return EXIT_OK


def _digest_from_comments(comments: list[str]) -> bytes | None:
    for c in comments:
        if c.startswith(PLAIN_DIGEST_TAG):
            try:
                return bytes.fromhex(c.split()[1])
            except (IndexError, ValueError):
                raise PGMError(f"malformed {PLAIN_DIGEST_TAG} comment") from None
    return None


def cmd_encrypt(args) -> int:
    cfg = build_config(args)
    spec = cfg.generator()
    seed = cfg.seed_bytes()
    image, _ = read_pgm_with_comments(args.input)
    comments = []
    material = seed
    if args.per_image_key:
        material = image_seed(seed, image)
        comments.append(f"{PLAIN_DIGEST_TAG} {image.digest().hex()}")
    cipher, _ = encrypt(image, instantiate(spec, material, cfg.trunc_bits))
    write_pgm(args.output, cipher, comments)
    return EXIT_OK


def cmd_decrypt(args) -> int:
    cfg = build_config(args)
    spec = cfg.generator()
    seed = cfg.seed_bytes()
    image, comments = read_pgm_with_comments(args.input)
    digest = _digest_from_comments(comments)
    material = seed if digest is None else seed + digest
    plain, _ = decrypt(image, instantiate(spec, material, cfg.trunc_bits))
    write_pgm(args.output, plain)
    return EXIT_OK


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"cannot serialise {type(value).__name__}")


def cmd_analyze(args) -> int:
    plain, _ = read_pgm_with_comments(args.plain)
    cipher, _ = read_pgm_with_comments(args.cipher)
    second = read_pgm_with_comments(args.second_cipher)[0] if args.second_cipher else None
    try:
        metrics = analyze(plain, cipher, second)
    except ValueError as exc:
        raise ParameterError(str(exc)) from exc
    text = json.dumps(metrics.to_dict(), indent=2, default=_json_default)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _add_curve_flags(sub: argparse.ArgumentParser, seeded: bool) -> None:
    g = sub.add_argument_group("curve and generator")
    g.add_argument("--config", help="key=value file with p, a, b, gx, gy, order, seed, trunc_bits")
    for name in ("p", "a", "b", "gx", "gy", "order"):
        g.add_argument(f"--{name}", type=lambda s: int(s, 0), default=None)
    g.add_argument("--trunc-bits", dest="trunc_bits", type=int, default=None,
                   help=f"low digest bits kept per step (default {DEFAULT_TRUNC_BITS})")
    if seeded:
        g.add_argument("--seed", help="seed material as hex")
        g.add_argument("--random-seed", action="store_true",
                       help="draw a 32-byte seed from the OS and print it to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecprbg", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("curve-info", help="validate a curve and generator, print its order")
    _add_curve_flags(p, seeded=False)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_curve_info)

    p = subs.add_parser("generate", help="write a pseudorandom bit stream")
    _add_curve_flags(p, seeded=True)
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("raw", "ascii"), default="raw")
    p.set_defaults(func=cmd_generate)

    p = subs.add_parser("test", help="run the randomness battery on a stream file")
    p.add_argument("input")
    p.add_argument("--format", choices=("auto", "raw", "ascii"), default="auto")
    p.add_argument("--bits", type=int, default=None, help="use only the first N bits")
    p.add_argument("--report", help="JSON report path (default: <input>.report.json)")
    p.add_argument("--strict", action="store_true", help=f"exit {EXIT_TEST_FAILED} if any test fails")
    p.add_argument("--block-m", type=int, default=100)
    p.add_argument("--serial-m", type=int, default=16)
    p.add_argument("--apen-m", type=int, default=10)
    p.add_argument("--template", default="000000001")
    p.add_argument("--lc-m", type=int, default=500)
    p.set_defaults(func=cmd_test)

    for name, func, helptext in (
        ("encrypt", cmd_encrypt, "XOR-encrypt a PGM image"),
        ("decrypt", cmd_decrypt, "decrypt a PGM image"),
    ):
        p = subs.add_parser(name, help=helptext)
        p.add_argument("input")
        p.add_argument("output")
        _add_curve_flags(p, seeded=True)
        if name == "encrypt":
            p.add_argument("--per-image-key", action="store_true",
                           help="mix the plain image digest into the seed (stored as a PGM comment)")
        p.set_defaults(func=func)

    p = subs.add_parser("analyze", help="cipher-quality metrics as JSON")
    p.add_argument("plain")
    p.add_argument("cipher")
    p.add_argument("--second-cipher", help="cipher of the plain image with one pixel changed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (OSError, PGMError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
