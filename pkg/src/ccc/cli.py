"""Command-line front end.

    ccc <segre|chern|csm|euler|euler-complement>
        --ring x,y,z,w (--ideal "g1, g2, ..." | --ideal-file PATH)
        [--ideal2 "..."] [--prime P] [--seed S] [--retries R] [--verify]
        [--format list|poly|json] [--singular-locus] [--jobs N]

Exit codes: 0 success, 2 parse or validation failure, 3 genericity retries
exhausted, 4 internal invariant violation.  Diagnostics (seed, retry count,
wall time) go to stderr so stdout stays byte-stable for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field

from .classes import (ClassReport, RandomPolicy, chern_class, csm_class,
                      euler_characteristic, euler_complement, segre_class)
from .errors import CccError, GenericityError, InvariantError, ParseError, ValidationError
from .ideals import Ideal, jacobian_ideal
from .polynomials import DEFAULT_PRIME, PolynomialRing

COMMANDS = ("segre", "chern", "csm", "euler", "euler-complement")


@dataclass
class Request:
    command: str
    ring: PolynomialRing
    ideal: Ideal
    second_ideal: Ideal | None
    policy: RandomPolicy
    format: str
    jobs: int = 1


@dataclass
class Response:
    command: str
    n: int
    prime: int
    report: object  # ClassReport, or an int for the euler commands
    diagnostics: dict = field(default_factory=dict)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccc",
        description="Degrees of Segre, Chern(-Fulton) and CSM classes and Euler "
                    "characteristics of projective schemes over a prime field.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--ring", help="comma-separated variable names, e.g. x,y,z,w")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--ideal", help="comma-separated homogeneous generators")
    group.add_argument("--ideal-file", help="file with ring:/prime:/ideal: sections")
    parser.add_argument("--ideal2", help="second ideal (euler-complement only)")
    parser.add_argument("--prime", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--retries", type=int, default=5)
    parser.add_argument("--verify", action="store_true",
                        help="recompute with an independent derived seed and compare")
    parser.add_argument("--format", choices=("list", "poly", "json"), default="list")
    parser.add_argument("--singular-locus", action="store_true",
                        help="replace a single-generator ideal by its jacobian ideal")
    parser.add_argument("--jobs", type=int, default=1)
    return parser


def _read_ideal_file(path: str):
    variables = None
    prime = None
    gens = []
    in_ideal = False
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            if in_ideal:
                gens.append(line)
            elif line.startswith("ring:"):
                variables = line[len("ring:"):].strip()
            elif line.startswith("prime:"):
                prime = int(line[len("prime:"):].strip())
            elif line.startswith("ideal:"):
                in_ideal = True
                rest = line[len("ideal:"):].strip()
                if rest:
                    gens.append(rest)
            else:
                raise ParseError("unexpected line in ideal file", lineno, 1)
    if not in_ideal:
        raise ParseError("ideal file has no 'ideal:' section", 1, 1)
    return variables, prime, gens


def _parse_generators(ring: PolynomialRing, texts):
    gens = []
    for i, text in enumerate(texts):
        f = ring.parse(text)
        if not f.is_homogeneous():
            raise ValidationError("generator %d is not homogeneous" % (i + 1))
        gens.append(f)
    return gens


def parse_request(argv=None) -> Request:
    args = build_parser().parse_args(argv)

    texts = None
    file_vars = file_prime = None
    if args.ideal_file is not None:
        file_vars, file_prime, texts = _read_ideal_file(args.ideal_file)
    else:
        texts = [chunk.strip() for chunk in args.ideal.split(",")]

    ring_spec = args.ring if args.ring is not None else file_vars
    if ring_spec is None:
        raise ValidationError("no ring given: pass --ring or a 'ring:' line in the file")
    prime = args.prime if args.prime is not None else (
        file_prime if file_prime is not None else DEFAULT_PRIME)
    ring = PolynomialRing(ring_spec, prime)

    gens = _parse_generators(ring, texts)
    if args.singular_locus:
        if len(gens) != 1:
            raise ValidationError("--singular-locus needs exactly one generator, got %d"
                                  % len(gens))
        ideal = jacobian_ideal(gens[0])
    else:
        ideal = Ideal(ring, gens)

    second = None
    if args.command == "euler-complement":
        if args.ideal2 is None:
            raise ValidationError("euler-complement needs --ideal2")
        second = Ideal(ring, _parse_generators(
            ring, [chunk.strip() for chunk in args.ideal2.split(",")]))
    elif args.ideal2 is not None:
        raise ValidationError("--ideal2 is only meaningful for euler-complement")

    if args.retries < 0:
        raise ValidationError("--retries must be >= 0")
    if args.jobs < 1:
        raise ValidationError("--jobs must be >= 1")
    seed = args.seed if args.seed is not None else random.SystemRandom().getrandbits(63)
    policy = RandomPolicy(seed, max_retries=args.retries, verify=args.verify)
    return Request(args.command, ring, ideal, second, policy, args.format,
                   jobs=args.jobs)


def run(request: Request) -> Response:
    start = time.perf_counter()
    policy = request.policy
    if request.command == "segre":
        report = segre_class(request.ideal, policy)
    elif request.command == "chern":
        report = chern_class(request.ideal, policy)
    elif request.command == "csm":
        report = csm_class(request.ideal, policy, jobs=request.jobs)
    elif request.command == "euler":
        report = euler_characteristic(request.ideal, policy, jobs=request.jobs)
    else:
        report = euler_complement(request.ideal, request.second_ideal, policy,
                                  jobs=request.jobs)
    wall = time.perf_counter() - start
    return Response(request.command, request.ring.nvars - 1, request.ring.field.p,
                    report, {"seed": policy.seed, "retries": policy.stats.retries,
                             "wall": wall})


def format_output(response: Response, fmt: str) -> str:
    report = response.report
    if isinstance(report, int):
        if fmt == "json":
            payload = {
                "command": response.command,
                "n": response.n,
                "euler": report,
                "seed": response.diagnostics["seed"],
                "retries": response.diagnostics["retries"],
                "prime": response.prime,
            }
            return json.dumps(payload, separators=(",", ":"))
        return str(report)

    if fmt == "list":
        return "{%s}" % ", ".join(str(a) for a in report.degrees)
    if fmt == "poly":
        return str(report.chow)
    payload = {"command": response.command, "n": report.n, "k": report.k}
    if report.d is not None:
        payload["d"] = report.d
    payload["degrees"] = list(report.degrees)
    payload["poly"] = str(report.chow)
    if report.euler is not None:
        payload["euler"] = report.euler
    payload["seed"] = response.diagnostics["seed"]
    payload["retries"] = response.diagnostics["retries"]
    payload["prime"] = response.prime
    return json.dumps(payload, separators=(",", ":"))


def main(argv=None) -> int:
    try:
        request = parse_request(argv)
    except (ParseError, ValidationError) as exc:
        print("ccc: error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("ccc: error: %s" % exc, file=sys.stderr)
        return 2
    try:
        response = run(request)
    except GenericityError as exc:
        print("ccc: genericity failure: %s" % exc, file=sys.stderr)
        return 3
    except InvariantError as exc:
        print("ccc: internal invariant violated: %s" % exc, file=sys.stderr)
        return 4
    print(format_output(response, request.format))
    diag = response.diagnostics
    print("ccc: seed=%d retries=%d wall=%.2fs"
          % (diag["seed"], diag["retries"], diag["wall"]), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
