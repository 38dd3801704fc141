"""Command-line front end: ``homfly41 {sweep,volume,poles,verify}``.

Data goes to --out or standard output; progress and errors go to standard
error.  Exit status: 0 success, 1 some row (or criterion) failed, 2 bad input.
"""

import argparse
import logging
import sys

from .errors import Homfly41Error, InvalidArgument
from .harness import MODES, VOLUME_41, SweepSpec, pole_domain_check, run_sweep, volume_evidence, write_rows
from .quadrature import DEFAULT_CONFIG

log = logging.getLogger("homfly41")


def parse_values(text, kind):
    """'1,2,5' or 'start:stop:step' (stop inclusive) or a mix, e.g. '10,100:400:100'."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            bits = part.split(":")
            if len(bits) != 3:
                raise InvalidArgument(f"range must be start:stop:step, got {part!r}")
            start, stop, step = (kind(b) for b in bits)
            if step <= 0:
                raise InvalidArgument(f"range step must be positive, got {part!r}")
            k = 0
            while start + k * step <= stop + (1e-12 * abs(step) if kind is float else 0):
                out.append(kind(start + k * step))
                k += 1
        else:
            out.append(kind(part))
    if not out:
        raise InvalidArgument(f"empty value list {text!r}")
    return out


def _int(text):
    v = float(text)
    if v != int(v):
        raise ValueError(f"not an integer: {text!r}")
    return int(v)


def _open_out(path):
    return open(path, "w", newline="") if path and path != "-" else sys.stdout


def _config(args):
    if args.tol_override is None:
        return DEFAULT_CONFIG
    t = args.tol_override
    if not t > 0:
        raise InvalidArgument("--tol-override must be positive")
    return DEFAULT_CONFIG.with_(abs_tol=t, rel_tol=t)


def cmd_sweep(args):
    spec = SweepSpec(parse_values(args.N, _int), parse_values(args.n, _int),
                     parse_values(args.u, float), args.mode)
    log.info("sweeping %d points in mode %s", len(spec.points()), spec.mode)
    rows = run_sweep(spec, jobs=args.jobs, timing=not args.no_timing, cfg=_config(args))
    fh = _open_out(args.out)
    try:
        write_rows(rows, args.format, fh)
    finally:
        if fh is not sys.stdout:
            fh.close()
    failed = [r for r in rows if r.status != "ok"]
    for r in failed:
        log.error("n=%d u=%g N=%d: %s %s", r.n, r.u, r.N, r.status, r.message)
    return 1 if failed else 0


def cmd_volume(args):
    fh = _open_out(args.out)
    try:
        fh.write("n,N,value,relative_error\n")
        for n in parse_values(args.n, _int):
            for N in parse_values(args.N, _int):
                v = volume_evidence(n, N)
                fh.write(f"{n},{N},{v:.17g},{(v - VOLUME_41) / VOLUME_41:.17g}\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def cmd_poles(args):
    fh = _open_out(args.out)
    status = 0
    try:
        fh.write("n,a,N,u,total,inside\n")
        for n in parse_values(args.n, _int):
            avals = range(n - 1) if args.a is None else parse_values(args.a, _int)
            for a in avals:
                for N in parse_values(args.N, _int):
                    for u in parse_values(args.u, float):
                        try:
                            total, inside = pole_domain_check(N, n, a, u)
                        except Homfly41Error as exc:
                            log.error("n=%d a=%d N=%d u=%g: %s", n, a, N, u, exc)
                            status = 1
                            continue
                        fh.write(f"{n},{a},{N},{u:.17g},{total},{inside}\n")
    finally:
        if fh is not sys.stdout:
            fh.close()
    return status


def cmd_verify(args):
    from .acceptance import run_all
    numbers = parse_values(args.criteria, _int) if args.criteria else None
    results = run_all(numbers)
    for r in results:
        print(r.line())
    return 0 if all(r.passed for r in results) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="homfly41", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sweep", help="evaluate a grid of (N, n, u) points")
    s.add_argument("--N", required=True)
    s.add_argument("--n", default="2")
    s.add_argument("--u", default="0.5")
    s.add_argument("--mode", choices=MODES, default="both")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.add_argument("--out", default="-")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--tol-override", type=float, default=None,
                   help="absolute and relative quadrature tolerance")
    s.add_argument("--no-timing", action="store_true", help="leave walltime_s empty")
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("volume", help="2 pi log|J_N(e^{2 pi i/(N+n-2)})| / N")
    v.add_argument("--N", default="2000")
    v.add_argument("--n", default="2")
    v.add_argument("--out", default="-")
    v.set_defaults(func=cmd_volume)

    q = sub.add_parser("poles", help="count tan-poles inside the strip domain")
    q.add_argument("--N", default="20")
    q.add_argument("--n", default="4")
    q.add_argument("--a", default=None, help="default: 0..n-2")
    q.add_argument("--u", default="0.5")
    q.add_argument("--out", default="-")
    q.set_defaults(func=cmd_poles)

    c = sub.add_parser("verify", help="run the acceptance criteria")
    c.add_argument("--criteria", default=None, help="subset, e.g. 1,3:5:1")
    c.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (InvalidArgument, ValueError) as exc:
        log.error("%s", exc)
        return 2
    except OSError as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
