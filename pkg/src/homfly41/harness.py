"""Parameter sweeps, volume evidence, the pole-domain diagnostic and report export.

Every sweep point is independent, so points may run in a process pool; rows
come back sorted by (n, u, N) whatever order the workers finish in.
"""

import csv
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction

from .asymptotics import asymptotic_report, growth_rate, log_rhs_theorem_main
from .errors import Homfly41Error, InvalidArgument, UndefinedDomain
from .invariant import (U_MAX, ModelParams, homfly_exact, homfly_qdilog_form,
                        residue_reconstruction)
from .quadrature import DEFAULT_CONFIG

MODES = ("exact", "asymptotic", "both", "residue-check", "qdilog-check", "pole-domain")
COLUMNS = ("n", "u", "N", "exact_logmag", "exact_phase", "rhs_logmag", "rhs_phase",
           "ratio_mag", "ratio_phase", "growth_exact", "growth_predicted", "walltime_s", "status")
VOLUME_41 = 2.029883212819307


@dataclass(frozen=True)
class SweepSpec:
    N_list: tuple
    n_list: tuple
    u_list: tuple
    mode: str = "both"

    def __post_init__(self):
        for name in ("N_list", "n_list", "u_list"):
            vals = tuple(getattr(self, name))
            if not vals:
                raise InvalidArgument(f"{name} must be nonempty")
            object.__setattr__(self, name, vals)
        for N in self.N_list:
            if isinstance(N, bool) or int(N) != N or N < 1:
                raise InvalidArgument(f"N must be a positive integer, got {N!r}")
        for n in self.n_list:
            if isinstance(n, bool) or int(n) != n or n < 2 or n % 2:
                raise InvalidArgument(f"n must be an even integer >= 2, got {n!r}")
        for u in self.u_list:
            if not 0 <= u < U_MAX:
                raise InvalidArgument(f"u must lie in [0, {U_MAX}), got {u!r}")
        if self.mode not in MODES:
            raise InvalidArgument(f"mode must be one of {MODES}, got {self.mode!r}")

    def points(self):
        return sorted({(int(n), float(u), int(N))
                       for n in self.n_list for u in self.u_list for N in self.N_list})


@dataclass(frozen=True)
class ReportRow:
    """One sweep point.  Missing quantities are None; ``status`` is "ok" or an error code.

    In the check modes the rhs columns hold the alternative representation
    (residue sum or S_gamma form) and the ratio is exact / alternative.  In
    pole-domain mode ratio_mag is inside/total for a = n - 2.
    """

    n: int
    u: float
    N: int
    exact_logmag: float = None
    exact_phase: float = None
    rhs_logmag: float = None
    rhs_phase: float = None
    ratio_mag: float = None
    ratio_phase: float = None
    growth_exact: float = None
    growth_predicted: float = None
    walltime_s: float = None
    status: str = "ok"
    message: str = ""


def _wrap(x):
    return math.remainder(x, 2 * math.pi)


def _log_of(z):
    return complex(math.log(abs(z)), math.atan2(z.imag, z.real))


def _row_from_logs(p, ex, alt, growth=True):
    row = ReportRow(p.n, p.u, p.N)
    if ex is not None:
        row = replace(row, exact_logmag=ex.real, exact_phase=_wrap(ex.imag),
                      growth_exact=ex.real / p.N)
    if alt is not None:
        row = replace(row, rhs_logmag=alt.real, rhs_phase=_wrap(alt.imag))
    if ex is not None and alt is not None:
        r = ex - alt
        row = replace(row, ratio_mag=math.exp(r.real), ratio_phase=_wrap(r.imag))
    if growth:
        row = replace(row, growth_predicted=growth_rate(p.u) * p.M / p.N)
    return row


def _evaluate(point, mode, cfg):
    n, u, N = point
    p = ModelParams(N, n, u)
    if mode == "pole-domain":
        total, inside = pole_domain_check(N, n, n - 2, u)
        return replace(ReportRow(n, u, N), ratio_mag=inside / total)
    if mode in ("exact", "asymptotic", "both"):
        rep = asymptotic_report(p, exact=mode != "asymptotic", asymptotic=mode != "exact")
        return _row_from_logs(p, rep.exact_log, rep.rhs_log)
    ex = homfly_exact(p).log_value
    if mode == "residue-check":
        alt = _log_of(residue_reconstruction(p, cfg))
    else:
        alt = _log_of(homfly_qdilog_form(p, cfg))
    return _row_from_logs(p, ex, alt)


def _run_point(args):
    point, mode, cfg, timing = args
    t0 = time.perf_counter()
    try:
        row = _evaluate(point, mode, cfg)
    except (Homfly41Error, ArithmeticError, ValueError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        row = ReportRow(*point, status=code, message=str(exc))
    return replace(row, walltime_s=time.perf_counter() - t0 if timing else None)


def run_sweep(spec, jobs=1, timing=True, cfg=DEFAULT_CONFIG):
    """One row per (N, n, u), ordered by (n, u, N).

    A failing point becomes an error-tagged row.  With ``timing=False`` the
    walltime column is left empty so repeated runs give identical output.
    """
    tasks = [(pt, spec.mode, cfg, timing) for pt in spec.points()]
    if spec.mode in ("asymptotic", "both"):
        # warm the calibration cache once instead of in every worker
        log_rhs_theorem_main(ModelParams(1, 2, 0.5))
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_point, tasks))


def volume_evidence(n, N_max):
    """2 pi log|J_N^{(n)}(e^{2 pi i/(N+n-2)})| / N at N = N_max."""
    if N_max < 50:
        raise InvalidArgument("N_max must be at least 50")
    p = ModelParams(N_max, n, 0.0)
    return 2 * math.pi * homfly_exact(p).log_abs / N_max


def pole_domain_check(N, n, a, u):
    """(total, inside) for the poles (2k+1)/(2(N+a)) against the four strips of D_{N+a}.

    On the real axis (y = 0) each strip

        -2pi/u (x + c) - Re(gamma)/u < y < 2pi/u - 2pi/u (x + c) + Re(gamma)/u,

    with Re(gamma) = pi/(N+a), becomes -1/(2(N+a)) < x + c < 1 + 1/(2(N+a))
    after multiplying by u/(2 pi) > 0.  The shifts are c = a/(N+a), 0,
    (n-2-a)/(N+a) and (n-2)/(N+a).  Everything is rational, so the count is
    exact, including the boundary case a = n - 3.
    """
    if not 0 <= a <= n - 2:
        raise InvalidArgument(f"a must lie in [0, n-2], got {a!r}")
    ModelParams(N, n, u)
    if u == 0:
        raise UndefinedDomain("the strips of D_{N+a} degenerate at u = 0")
    K = N + a
    margin = Fraction(1, 2 * K)
    shifts = [Fraction(a, K), Fraction(0), Fraction(n - 2 - a, K), Fraction(n - 2, K)]
    inside = 0
    for k in range(N):
        x = Fraction(2 * k + 1, 2 * K)
        if all(-margin < x + c < 1 + margin for c in shifts):
            inside += 1
    return N, inside


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def export(rows, format, path):
    """Write rows as CSV (fixed column order, 17 significant digits) or JSON."""
    try:
        with open(path, "w", newline="") as fh:
            write_rows(rows, format, fh)
    except OSError as exc:
        raise OSError(f"cannot write report to {path}: {exc}") from exc


def write_rows(rows, format, fh):
    if format == "csv":
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(COLUMNS)
        for r in rows:
            w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])
    elif format == "json":
        json.dump([asdict(r) for r in rows], fh, indent=1)
        fh.write("\n")
    else:
        raise InvalidArgument(f"format must be csv or json, got {format!r}")


def load_json(path):
    with open(path) as fh:
        data = json.load(fh)
    names = {f.name for f in fields(ReportRow)}
    return [ReportRow(**{k: v for k, v in d.items() if k in names}) for d in data]
