"""``graylap`` command line: Trotter sweeps, circuit export, adiabatic runs and HO scans.

Exit status is 0 on success, 2 for invalid arguments and 1 for anything else.
Every output starts with a metadata header carrying the tool version, the
resolved bit-order and control-polarity conventions, and the echoed flags.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
import traceback

from . import __version__
from .adiabatic import (
    Evolver,
    Potential,
    Ramp,
    Schedule,
    commutator_TV_norm,
    evolve,
    relative_errors,
    write_trace_csv,
)
from .builders import (
    POLARITY_MAP,
    BuilderConfig,
    build_binary_step,
    build_brgc_multicontrol_reference,
    build_brgc_step,
    build_qft,
    multicontrol_units,
)
from .circuit import cancel_adjacent_inverses, decompose_ccx_to_two_qubit, metrics, to_json_dict, to_qasm3
from .encoding import CodeKind, check_n, conventions_record
from .ho import ho_scan, write_scan_csv
from .laplacian import LatticeSpec
from .numerics import InvalidInput, PhysicalUnits
from .trotter import default_lambdas, thread_count, trotter_error_sweep, write_sweep_csv

T_THRESHOLD = 7e-4
V_THRESHOLD = 1.6e-4


def parse_float_list(text: str) -> list[float]:
    """``"a,b,c"`` or a log range ``"lo:hi:count"``."""
    try:
        if ":" in text:
            lo, hi, count = text.split(":")
            return default_lambdas(int(count), float(lo), float(hi))
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"cannot parse number list {text!r}") from exc


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"cannot parse integer list {text!r}") from exc


def metadata(command: str, args: argparse.Namespace) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    return {
        "tool": "graylap",
        "version": __version__,
        "command": command,
        "bit_order": conventions_record(),
        "polarity": {k: v if isinstance(v, int) else list(v) for k, v in POLARITY_MAP.items()},
        "config": config,
    }


def header_lines(meta: dict) -> list[str]:
    return [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in meta.items()]


@contextlib.contextmanager
def _open_out(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _info_stream(path: str | None):
    return sys.stderr if path in (None, "-") else sys.stdout


# -- commands -----------------------------------------------------------------

def cmd_trotter_sweep(args) -> int:
    code = CodeKind(args.code)
    if args.n_min > args.n_max:
        raise InvalidInput("--n-min exceeds --n-max")
    lams = parse_float_list(args.lambdas) if args.lambdas else default_lambdas()
    reports = trotter_error_sweep(code, range(args.n_min, args.n_max + 1), lams, threads=thread_count())
    with _open_out(args.out) as fh:
        write_sweep_csv(reports, fh, header_lines(metadata("trotter-sweep", args)))
    return 0


def _build(args):
    if args.encoding == "qft":
        check_n(args.n, lo=1)
        return build_qft(args.n)
    cfg = BuilderConfig(args.n, args.lam)
    if args.encoding == "brgc":
        return build_brgc_step(cfg)
    if args.encoding == "brgc-multicontrol":
        return build_brgc_multicontrol_reference(cfg)
    return build_binary_step(args.n, args.lam, simplify=False)


def cmd_build_circuit(args) -> int:
    circ = _build(args)
    if args.cancel:
        circ = cancel_adjacent_inverses(circ)
    if args.decompose_ccx:
        circ = decompose_ccx_to_two_qubit(circ)
    meta = metadata("build-circuit", args)
    if args.format == "qasm":
        body = to_qasm3(circ)
        text = "".join(f"// {line}\n" for line in header_lines(meta)) + body
    else:
        text = json.dumps({"metadata": meta, "circuit": to_json_dict(circ)}, indent=1, sort_keys=True) + "\n"
    m = metrics(circ).as_dict()
    if args.encoding == "brgc-multicontrol":
        m["multicontrol_units"] = multicontrol_units(circ)
    sidecar = {"metadata": meta, "metrics": m}
    with _open_out(args.out) as fh:
        fh.write(text)
    side_text = json.dumps(sidecar, indent=1, sort_keys=True) + "\n"
    if args.out in (None, "-"):
        sys.stderr.write(side_text)
    else:
        with open(args.metrics_out or f"{args.out}.metrics.json", "w") as fh:
            fh.write(side_text)
    return 0


def cmd_adiabatic(args) -> int:
    units = PhysicalUnits(args.mass_mev, args.a_fm)
    spec = LatticeSpec(args.n, units)
    pot = Potential.step_well(spec, args.v0_mev, args.L_fm)
    schedule = Schedule(args.t_mevinv, args.steps, Ramp(args.ramp))
    try:
        requested = [Evolver(e.strip()) for e in args.evolvers.split(",") if e.strip()]
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    needed = {Evolver.EXACT, *requested}
    if Evolver.QFT in needed:
        needed.add(Evolver.EXACT_QUADRATIC)
    traces = {ev: evolve(spec, pot, schedule, ev) for ev in sorted(needed, key=lambda e: e.value)}
    with _open_out(args.out) as fh:
        write_trace_csv(traces.values(), fh, header_lines(metadata("adiabatic", args)))

    info = _info_stream(args.out)
    print("summary", file=info)
    print(f"  ||[T,V]|| = {commutator_TV_norm(spec, pot):.6g} MeV^2", file=info)
    print(f"  finite-difference scale 2*hopping^2 = {2 * spec.hopping**2:.6g} MeV^2", file=info)
    for ev, tr in traces.items():
        t, v = tr.final
        line = f"  {ev.value:16s} <T> = {t:.10g} MeV  <V> = {v:.10g} MeV"
        if ev in (Evolver.BRGC, Evolver.BINARY, Evolver.QFT):
            ref = traces[Evolver.EXACT_QUADRATIC if ev is Evolver.QFT else Evolver.EXACT]
            et, evv = relative_errors(tr, ref)
            ok = "below" if et < T_THRESHOLD and evv < V_THRESHOLD else "above"
            line += f"  rel.err T {et:.4e} V {evv:.4e} ({ok} {T_THRESHOLD:g}/{V_THRESHOLD:g})"
        print(line, file=info)
    return 0


def cmd_ho_scan(args) -> int:
    rows = ho_scan(parse_int_list(args.lambdas))
    with _open_out(args.out) as fh:
        write_scan_csv(rows, fh, header_lines(metadata("ho-scan", args)))
    return 0


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graylap", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"graylap {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("trotter-sweep", help="spectral-norm error of one Trotter step")
    s.add_argument("--code", choices=["brgc", "binary"], default="brgc")
    s.add_argument("--n-min", type=int, default=3)
    s.add_argument("--n-max", type=int, default=8)
    s.add_argument("--lambdas", help="comma list or lo:hi:count log range (default 1e-3:1e-1:13)")
    s.add_argument("--out", help="output CSV (default stdout)")
    s.set_defaults(func=cmd_trotter_sweep)

    s = sub.add_parser("build-circuit", help="emit one kinetic Trotter step as a circuit")
    s.add_argument("--encoding", choices=["brgc", "brgc-multicontrol", "binary", "qft"], default="brgc")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", type=float, default=0.1)
    s.add_argument("--format", choices=["json", "qasm"], default="json")
    s.add_argument("--decompose-ccx", action="store_true")
    s.add_argument("--cancel", action="store_true", help="run the adjacent-inverse cancellation pass")
    s.add_argument("--out", help="circuit file (default stdout; metrics then go to stderr)")
    s.add_argument("--metrics-out", help="metrics sidecar path (default <out>.metrics.json)")
    s.set_defaults(func=cmd_build_circuit)

    s = sub.add_parser("adiabatic", help="ramped step-well evolution with several evolvers")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--a-fm", type=float, default=5.0)
    s.add_argument("--mass-mev", type=float, default=140.0)
    s.add_argument("--v0-mev", type=float, default=-10.0)
    s.add_argument("--L-fm", dest="L_fm", type=float, default=None, help="step position scale (default N*a)")
    s.add_argument("--t-mevinv", "--t", dest="t_mevinv", type=float, default=10.0)
    s.add_argument("--steps", type=int, default=2000)
    s.add_argument("--evolvers", default="brgc,binary,qft")
    s.add_argument("--ramp", choices=["sin2", "linear"], default="sin2")
    s.add_argument("--out", help="trace CSV (default stdout; summary then goes to stderr)")
    s.set_defaults(func=cmd_adiabatic)

    s = sub.add_parser("ho-scan", help="oscillator commutator norm versus quanta cutoff")
    s.add_argument("--lambdas", default="10,30,100,300,1000")
    s.add_argument("--out", help="output CSV (default stdout)")
    s.set_defaults(func=cmd_ho_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"graylap {args.command}: {exc}", file=sys.stderr)
        return 2
    except Exception:  # noqa: BLE001
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
