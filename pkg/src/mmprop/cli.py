"""Command-line entry point: ``mmprop <subcommand> ...``.

Exit codes: 0 ok, 2 usage, 3 schema/validation, 4 degenerate fit,
5 below sensitivity, 6 I/O.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import math
import sys
import warnings
from typing import Sequence

from . import campaign_io, linkbudget, penetration, plfit, rfmath, sounder, verify
from .errors import MmpropError, NoiseLimitedWarning, ReportIOError, SchemaError

EXIT_OK, EXIT_USAGE, EXIT_IO = 0, 2, 6
# direct-path loss given to synthesized channels when none is requested
DEFAULT_SYNTH_PL_DB = 100.0


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _output(rows, fmt: str, out: str | None) -> None:
    if out:
        campaign_io.emit_report(rows, fmt if fmt != "table" else "csv", out)
        print(f"wrote {out}")
        return
    if fmt == "table":
        print(_table(rows))
    else:
        sys.stdout.write(campaign_io.render_report(rows, fmt))


def _table(rows: list[dict]) -> str:
    keys: list[str] = []
    for r in rows:
        keys += [k for k in r if k not in keys]
    cells = [[campaign_io._csv_cell(k, r.get(k)) for k in keys] for r in rows]
    widths = [max(len(k), *(len(c[i]) for c in cells)) for i, k in enumerate(keys)]
    lines = ["  ".join(k.rjust(w) for k, w in zip(keys, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines)


def cmd_fspl(args) -> int:
    table = rfmath.AtmosTable.from_csv(args.atmos) if args.atmos else rfmath.DEFAULT_ATMOS_TABLE
    rows = []
    for f in args.freq_ghz:
        for d in args.dist_m:
            row = {"freq_ghz": f, "distance_m": d, "fspl_db": rfmath.fspl_db(f * 1e9, d)}
            if args.atmosphere:
                row["atmos_excess_db"] = rfmath.atmospheric_excess_db(f * 1e9, d / 1e3, table)
            rows.append(row)
    _output(rows, args.format, args.out)
    return EXIT_OK


def cmd_budget(args) -> int:
    cfg = campaign_io.load_config(args.config) if args.config else campaign_io.CampaignConfig()
    b = cfg.budget
    f = args.freq_ghz * 1e9 if args.freq_ghz else (cfg.frequency_hz or sounder.rf_center_frequency(cfg.sounder))
    pl_max = linkbudget.max_measurable_pl(b)
    print(f"max measurable path loss: {pl_max:.2f} dB")
    print(f"rx sensitivity: {b.rx_sensitivity:.2f} dBm, processing gain {b.processing_gain:.2f} dB")
    rows = []
    for n in args.ple:
        row = {"freq_ghz": f / 1e9, "ple": n, "max_pl_db": pl_max}
        row["max_distance_m"] = linkbudget.max_distance(pl_max, f, n, cfg.d0_m)
        rows.append(row)
    _output(rows, args.format, args.out)
    return EXIT_OK


def cmd_fit(args) -> int:
    cfg = campaign_io.load_config(args.config) if args.config else campaign_io.CampaignConfig()
    records = campaign_io.parse_records(args.records)
    samples = campaign_io.to_pl_samples(records)
    models = tuple(m.upper() for m in args.models.split(",")) if args.models else cfg.models
    f0 = args.f0_ghz * 1e9 if args.f0_ghz else cfg.f0_override_hz
    d0 = args.d0 if args.d0 is not None else cfg.d0_m
    cmp = plfit.compare_models(samples, models, d0, f0, bootstrap=args.bootstrap, seed=args.seed)
    for name, why in cmp.skipped.items():
        print(f"skipped {name}: {why}", file=sys.stderr)
    _output([r.as_dict() for r in cmp.rows], args.format, args.out)
    return EXIT_OK


def cmd_penetrate(args) -> int:
    records = campaign_io.parse_records(args.records)
    meas = campaign_io.to_penetration_measurements(records)
    if not meas:
        raise SchemaError("no records with a material under test")
    results = penetration.aggregate_by_material(meas)
    ref = {(r.frequency_hz, r.material_name): r for r in penetration.reference_table()}
    rows = []
    for r in results:
        row = campaign_io.material_row(r)
        match = ref.get((r.frequency_hz, r.material_name))
        if match is not None:
            row["reference_db_per_cm"] = match.loss_per_cm
            row["delta_db_per_cm"] = r.loss_per_cm - match.loss_per_cm
        rows.append(row)
    _output(rows, args.format, args.out)
    for e in penetration.frequency_trend(results):
        if e.skipped:
            continue
        verdict = "increasing" if e.monotone_increasing else "not monotone"
        pts = ", ".join(f"{f:g} GHz: {v:.2f}" for f, v in e.points)
        print(f"trend {e.material_class}: {pts} dB/cm -> {verdict}")
    return EXIT_OK


def cmd_sound(args) -> int:
    cfg_all = campaign_io.load_config(args.config) if args.config else campaign_io.CampaignConfig()
    cfg = cfg_all.sounder
    if args.slide_factor:
        cfg = dataclasses.replace(cfg, slide_factor=args.slide_factor)
    if args.channel:
        channel = sounder.ChannelSpec.load(args.channel)
    else:
        channel = sounder.synth_channel(args.seed, path_loss_db=DEFAULT_SYNTH_PL_DB)
    if args.path_loss_db is not None:
        channel = sounder.ChannelSpec(channel.taps, args.path_loss_db)
    noise = args.noise_dbm
    if noise is None:
        noise = cfg_all.noise_power_dbm
    if noise is None and not args.noiseless:
        noise = sounder.noise_power_for_sensitivity(cfg)
    pdp = sounder.simulate(channel, cfg, noise_power=noise, seed=args.seed)
    if args.pdp_out:
        try:
            pdp.save(args.pdp_out)
        except OSError as exc:
            raise ReportIOError(f"cannot write {args.pdp_out}: {exc}") from exc
        print(f"wrote {args.pdp_out}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NoiseLimitedWarning)
        taps = sounder.extract_multipath(pdp, args.threshold_db)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(f"noise floor {pdp.noise_floor_dbm:.2f} dBm, {len(taps)} tap(s):")
    for delay, power in taps:
        print(f"  {delay * 1e9:9.3f} ns  {power:8.2f} dBm")
    pl = sounder.measured_path_loss(pdp, cfg, args.threshold_db)
    total_gain = sum(10.0 ** (t.gain_db / 10.0) for t in channel.taps)
    expected = channel.path_loss_db - 10.0 * math.log10(total_gain)
    print(f"recovered path loss {pl:.2f} dB")
    print(f"direct-path loss {channel.path_loss_db:.2f} dB, all-tap expectation {expected:.2f} dB")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_checks()
    print(verify.format_results(results))
    return EXIT_OK if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mmprop", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt_opts(sp, default="table"):
        sp.add_argument("--format", choices=("table", "csv", "json"), default=default)
        sp.add_argument("--out", help="write the report to this file instead of stdout")

    sp = sub.add_parser("fspl", help="free-space path loss over a frequency/distance grid")
    sp.add_argument("--freq-ghz", type=_floats, required=True)
    sp.add_argument("--dist-m", type=_floats, required=True)
    sp.add_argument("--atmosphere", action="store_true", help="add gaseous excess attenuation")
    sp.add_argument("--atmos", help="frequency_ghz,excess_db_per_km table to use")
    fmt_opts(sp)
    sp.set_defaults(func=cmd_fspl)

    sp = sub.add_parser("budget", help="maximum measurable path loss and distance")
    sp.add_argument("--config")
    sp.add_argument("--freq-ghz", type=float)
    sp.add_argument("--ple", type=_floats, default=[2.0, 3.0, 4.3])
    fmt_opts(sp)
    sp.set_defaults(func=cmd_budget)

    sp = sub.add_parser("fit", help="fit CI/FI/CIF/ABG path loss models")
    sp.add_argument("records")
    sp.add_argument("--config")
    sp.add_argument("--models", help="comma list from CI,FI,CIF,ABG")
    sp.add_argument("--d0", type=float)
    sp.add_argument("--f0-ghz", type=float)
    sp.add_argument("--bootstrap", type=int, default=0, metavar="N")
    sp.add_argument("--seed", type=int, default=0)
    fmt_opts(sp)
    sp.set_defaults(func=cmd_fit)

    sp = sub.add_parser("penetrate", help="material penetration loss and reference comparison")
    sp.add_argument("records")
    fmt_opts(sp)
    sp.set_defaults(func=cmd_penetrate)

    sp = sub.add_parser("sound", help="simulate a sliding-correlator measurement")
    sp.add_argument("--config")
    sp.add_argument("--channel", help="channel file (delay_ns,gain_db,phase_rad,cluster_id)")
    sp.add_argument("--seed", type=int, default=0, help="synthesis and noise seed")
    sp.add_argument(
        "--path-loss-db", type=float,
        help=f"direct-path loss (default: the channel file's, or {DEFAULT_SYNTH_PL_DB:g} dB when synthesized)",
    )
    noise = sp.add_mutually_exclusive_group()
    noise.add_argument("--noise-dbm", type=float, help="default: derived from rx sensitivity")
    noise.add_argument("--noiseless", action="store_true")
    sp.add_argument("--slide-factor", type=int)
    sp.add_argument("--threshold-db", type=float, default=30.0)
    sp.add_argument("--pdp-out")
    sp.set_defaults(func=cmd_sound)

    sp = sub.add_parser("verify", help="run the built-in replication checks")
    sp.set_defaults(func=cmd_verify)
    return p


def cli_dispatch(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except MmpropError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
