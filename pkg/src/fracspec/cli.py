"""Command-line front end.

Subcommands: kernel, coeffs, difference, simulate, spectrum, response,
estimate, acf.  Every run writes exactly one CSV artifact (file or stdout),
numbers at 12 significant digits, metadata as '#'-prefixed header lines.
Errors go to stderr as a single line; exit codes: 0 success, 1
usage/validation, 2 input parse, 3 numeric-consistency failure.
"""

import argparse
import math
import sys

import numpy as np

from . import arfima, exactops, glops, spectral
from .errors import ConsistencyError, CsvParseError

__all__ = ["main"]


def _fmt(x) -> str:
    return format(float(x), ".12g")


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the contract wants 1
    def error(self, message):
        raise _UsageError(message)


class _UsageError(ValueError):
    pass


def _read_text(path: str | None) -> tuple[str, str]:
    if path is None or path == "-":
        try:
            return sys.stdin.read(), "<stdin>"
        except OSError as exc:
            raise CsvParseError(f"<stdin>: cannot read input: {exc}") from exc
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read(), path
    except OSError as exc:
        raise CsvParseError(f"{path}: cannot read input: {exc.strerror}") from exc


def parse_series_csv(text: str, name: str) -> tuple[glops.Series, dict]:
    """Parse a series CSV (header ``t,value``) into a Series plus metadata."""
    meta = {}
    times = []
    values = []
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            for part in body.split(","):
                if "=" in part:
                    k, v = part.split("=", 1)
                    meta[k.strip()] = v.strip()
            continue
        if not header_seen:
            if line.replace(" ", "") != "t,value":
                raise CsvParseError(f"{name}:{lineno}:1: expected header 't,value'")
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 2:
            raise CsvParseError(f"{name}:{lineno}:1: expected 2 fields, got {len(fields)}")
        for col, field in enumerate(fields, start=1):
            try:
                parsed = float(field)
            except ValueError:
                raise CsvParseError(
                    f"{name}:{lineno}:{col}: not a number: {field.strip()!r}"
                ) from None
            (times if col == 1 else values).append(parsed)
    if not header_seen:
        raise CsvParseError(f"{name}:1:1: missing header 't,value'")
    if not values:
        raise CsvParseError(f"{name}:1:1: no data rows")
    t = np.asarray(times)
    if t.size > 1:
        steps = np.diff(t)
        step = float(steps[0])
        if step <= 0 or np.abs(steps - step).max() > 1e-9 * max(abs(step), 1.0):
            raise ValueError("series time column must be uniformly spaced and increasing")
    else:
        step = 1.0
    return glops.Series(np.asarray(values), step=step, start=float(t[0])), meta


def _series_csv(series: glops.Series, meta_lines: list[str]) -> str:
    lines = [f"# {m}" for m in meta_lines]
    lines.append("t,value")
    times = series.times
    lines.extend(f"{_fmt(t)},{_fmt(v)}" for t, v in zip(times, series.values))
    return "\n".join(lines) + "\n"


def _cmd_kernel(args) -> str:
    window = exactops.exact_kernel_window(args.order, args.half_width)
    lines = [f"# order={_fmt(args.order)}, half_width={args.half_width}", "m,weight"]
    lines.extend(
        f"{m},{_fmt(w)}" for m, w in zip(window.offsets, window.weights)
    )
    return "\n".join(lines) + "\n"


def _cmd_coeffs(args) -> str:
    coeffs = glops.gl_coefficients(args.order, args.truncation)
    lines = [f"# order={_fmt(args.order)}, truncation={args.truncation}", "m,coefficient"]
    lines.extend(f"{m},{_fmt(c)}" for m, c in enumerate(coeffs.coefficients))
    return "\n".join(lines) + "\n"


def _cmd_difference(args) -> str:
    text, name = _read_text(args.input)
    series, _ = parse_series_csv(text, name)
    if args.family == "gl":
        truncation = args.truncation
        if truncation is None:
            truncation = min(len(series), 4096)
        out = glops.gl_difference(series, args.order, truncation)
        meta = [f"family=gl, order={_fmt(args.order)}, truncation={truncation}"]
    else:
        half_width = args.half_width
        if half_width is None:
            half_width = min(len(series), 4096)
        window = exactops.exact_kernel_window(args.order, half_width)
        out = exactops.exact_difference(series, window, boundary=args.boundary)
        meta = [
            f"family=exact, order={_fmt(args.order)}, half_width={half_width}, "
            f"boundary={args.boundary}"
        ]
    return _series_csv(out, meta)


def _cmd_simulate(args) -> str:
    ar = _parse_coeff_list(args.ar)
    ma = _parse_coeff_list(args.ma)
    truncation = args.truncation
    if truncation is None:
        truncation = min(args.n + args.burn_in, 4096)
    spec = arfima.ArfimaSpec(
        d=args.d, n=args.n, ar=ar, ma=ma, burn_in=args.burn_in, truncation=truncation
    )
    noise = arfima.NoiseSpec(sigma=args.sigma, seed=args.seed)
    series = arfima.simulate_arfima(spec, noise)
    meta = [
        f"d={_fmt(args.d)}, p={len(ar)}, q={len(ma)}, sigma={_fmt(args.sigma)}, "
        f"seed={args.seed}, truncation={truncation}",
        f"burn_in={args.burn_in}, stationary={'true' if spec.classical_stationary else 'false'}",
    ]
    return _series_csv(series, meta)


def _cmd_spectrum(args) -> str:
    text, name = _read_text(args.input)
    series, _ = parse_series_csv(text, name)
    omega, power = spectral.periodogram(series)
    lines = [
        "# periodogram, normalization S = |dft|^2 / n_fft",
        f"# n={len(series)}, n_fft={2 * len(omega)}, step={_fmt(series.step)}",
        "omega,S",
    ]
    lines.extend(f"{_fmt(w)},{_fmt(s)}" for w, s in zip(omega, power))
    return "\n".join(lines) + "\n"


def _cmd_response(args) -> str:
    grid = np.arange(1, args.grid + 1) * (math.pi / args.grid)
    report = spectral.response_report(args.order, args.family, args.truncation, grid)
    lines = [
        f"# family={args.family}, order={_fmt(args.order)}, truncation={args.truncation}, "
        f"grid={args.grid}",
        "omega_T,measured_re,measured_im,target_re,target_im,rel_error",
    ]
    for s in report.samples:
        lines.append(
            ",".join(
                (
                    _fmt(s.omega_T),
                    _fmt(s.measured.real),
                    _fmt(s.measured.imag),
                    _fmt(s.target.real),
                    _fmt(s.target.imag),
                    _fmt(s.rel_error),
                )
            )
        )
    return "\n".join(lines) + "\n"


def _cmd_estimate(args) -> str:
    text, name = _read_text(args.input)
    series, _ = parse_series_csv(text, name)
    estimate = arfima.estimate_memory(series, args.bandwidth)
    lines = [
        "d_hat,std_err,bandwidth,n,classification",
        f"{_fmt(estimate.d_hat)},{_fmt(estimate.std_err)},{estimate.bandwidth},"
        f"{estimate.n},{estimate.classification}",
    ]
    return "\n".join(lines) + "\n"


def _cmd_acf(args) -> str:
    if args.input is not None and args.d is not None:
        raise ValueError("acf takes either --input (sample ACF) or --d (theoretical), not both")
    if args.d is not None:
        truncation = args.truncation
        if truncation is None:
            truncation = 100 * args.max_lag
        gammas = arfima.theoretical_acf(args.d, args.sigma, args.max_lag, truncation)
        meta = (
            f"# theoretical, d={_fmt(args.d)}, sigma={_fmt(args.sigma)}, "
            f"truncation={truncation}"
        )
    else:
        text, name = _read_text(args.input)
        series, _ = parse_series_csv(text, name)
        gammas = spectral.sample_autocovariance(series, args.max_lag)
        meta = f"# sample, n={len(series)}"
    lines = [meta, "k,acov"]
    lines.extend(f"{k},{_fmt(g)}" for k, g in enumerate(gammas))
    return "\n".join(lines) + "\n"


def _parse_coeff_list(text: str | None) -> tuple[float, ...]:
    if not text:
        return ()
    try:
        return tuple(float(p) for p in text.split(","))
    except ValueError:
        raise _UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _build_parser() -> _Parser:
    parser = _Parser(prog="fracspec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output(p):
        p.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    p = sub.add_parser("kernel", help="dump an exact-difference kernel window")
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--half-width", type=int, required=True)
    add_output(p)
    p.set_defaults(handler=_cmd_kernel)

    p = sub.add_parser("coeffs", help="dump Grunwald-Letnikov coefficients")
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--truncation", type=int, required=True)
    add_output(p)
    p.set_defaults(handler=_cmd_coeffs)

    p = sub.add_parser("difference", help="fractionally difference a series CSV")
    p.add_argument("--input", default=None, help="series CSV (default stdin)")
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--family", choices=("gl", "exact"), default="gl")
    p.add_argument("--truncation", type=int, default=None, help="GL lag cap (default min(n, 4096))")
    p.add_argument("--half-width", type=int, default=None, help="exact-kernel half width")
    p.add_argument("--boundary", choices=("zero", "periodic"), default="zero")
    add_output(p)
    p.set_defaults(handler=_cmd_difference)

    p = sub.add_parser("simulate", help="simulate an ARFIMA(p, d, q) series")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ar", default=None, help="comma-separated AR coefficients")
    p.add_argument("--ma", default=None, help="comma-separated MA coefficients")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", type=int, default=0)
    p.add_argument("--truncation", type=int, default=None)
    add_output(p)
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("spectrum", help="periodogram of a series CSV")
    p.add_argument("--input", default=None)
    add_output(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("response", help="frequency-response verification report")
    p.add_argument("--family", choices=("gl", "exact"), required=True)
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--truncation", type=int, required=True,
                   help="GL lag cap or exact-kernel half width")
    p.add_argument("--grid", type=int, default=256, help="number of omega*T points on (0, pi]")
    add_output(p)
    p.set_defaults(handler=_cmd_response)

    p = sub.add_parser("estimate", help="log-periodogram memory estimate")
    p.add_argument("--input", default=None)
    p.add_argument("--bandwidth", type=int, default=None, help="default floor(sqrt(n))")
    add_output(p)
    p.set_defaults(handler=_cmd_estimate)

    p = sub.add_parser("acf", help="sample or theoretical autocovariance")
    p.add_argument("--input", default=None, help="series CSV for the sample ACF")
    p.add_argument("--d", type=float, default=None, help="theoretical ARFIMA(0,d,0) ACF")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--max-lag", type=int, required=True)
    p.add_argument("--truncation", type=int, default=None,
                   help="psi-weight truncation (default 100 * max_lag)")
    add_output(p)
    p.set_defaults(handler=_cmd_acf)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        text = args.handler(args)
    except _UsageError as exc:
        print(f"fracspec: usage error: {exc}", file=sys.stderr)
        return 1
    except CsvParseError as exc:
        print(f"fracspec: parse error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"fracspec: consistency error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OverflowError) as exc:
        print(f"fracspec: {exc}", file=sys.stderr)
        return 1
    if args.output is None or args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
