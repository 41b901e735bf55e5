"""Command-line front end.

Subcommands: ``detect`` (single circle), ``detect-multi``, ``synth``
(generate a synthetic edge map with ground truth) and ``bench`` (trial
statistics over generated images).  Exit codes: 0 success (including "no
circle detected"), 2 argument errors, 3 I/O or format errors.
"""

import argparse
import json
import sys

import numpy as np

from . import bench as bench_mod
from . import imaging
from .detector import DetectorConfig, detect_multi, detect_single
from .harmony import HsaConfig
from .raster import rasterize_circle

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


def _add_detector_flags(p):
    g = p.add_argument_group("detector options")
    g.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    g.add_argument("--hms", type=int, default=100, help="harmony memory size")
    g.add_argument("--hmcr", type=float, default=0.7, help="memory consideration rate")
    g.add_argument("--par", type=float, default=0.3, help="pitch adjusting rate")
    g.add_argument("--bw", type=float, default=2.0, help="pitch bandwidth (index steps)")
    g.add_argument("--ni", type=int, default=200, help="number of improvisations")
    g.add_argument("--mth", type=float, default=0.1, help="acceptance ceiling on j")
    g.add_argument("--max-circles", type=int, default=8, help="multi-detection budget")
    g.add_argument("--mask-band", type=float, default=2.0, help="masking half-width (px)")
    g.add_argument("--rmin", type=float, default=5.0, help="minimum candidate radius (px)")
    g.add_argument("--eta", type=float, default=0.05, help="error-score center weight")
    g.add_argument("--mu", type=float, default=0.1, help="error-score radius weight")
    g.add_argument(
        "--print-config",
        action="store_true",
        help="print the effective configuration as JSON and exit",
    )


def _add_input_flags(p):
    p.add_argument("input", nargs="?", help="input image (PGM P5, or PNG with pillow)")
    p.add_argument(
        "--edges",
        action="store_true",
        help="input is a precomputed binary {0,255} edge map; skip Canny",
    )
    p.add_argument("--canny-low", type=float, default=imaging.DEFAULT_LOW)
    p.add_argument("--canny-high", type=float, default=imaging.DEFAULT_HIGH)
    p.add_argument("--canny-sigma", type=float, default=imaging.DEFAULT_SIGMA)
    p.add_argument("--json", metavar="PATH", help="write the detection report as JSON")
    p.add_argument("--overlay", metavar="PATH", help="write an overlay image (PGM/PNG)")
    p.add_argument(
        "--timing",
        action="store_true",
        help="include wall-clock timing in the JSON report (breaks byte-for-byte "
        "reproducibility of the output file)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hscircles",
        description="Circle detection on edge maps by harmony-search optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_detect = sub.add_parser("detect", help="detect a single circle")
    _add_input_flags(p_detect)
    _add_detector_flags(p_detect)

    p_multi = sub.add_parser("detect-multi", help="detect multiple circles")
    _add_input_flags(p_multi)
    _add_detector_flags(p_multi)

    p_synth = sub.add_parser("synth", help="generate a synthetic edge map")
    p_synth.add_argument("output", help="output PGM path")
    p_synth.add_argument("--circles", type=int, default=1)
    p_synth.add_argument("--size", type=int, default=256, help="square image side")
    p_synth.add_argument("--noise", type=float, default=0.0, help="noise pixel density")
    p_synth.add_argument(
        "--radius-range", type=int, nargs=2, default=(20, 100), metavar=("LO", "HI")
    )
    p_synth.add_argument("--truth", metavar="PATH", help="write ground truth as JSON")
    p_synth.add_argument("--seed", type=int, default=0)

    p_bench = sub.add_parser("bench", help="run seeded detection trials")
    p_bench.add_argument("--images", type=int, default=10, help="number of test images")
    p_bench.add_argument("--repeats", type=int, default=5, help="runs per image")
    p_bench.add_argument("--circles", type=int, default=1)
    p_bench.add_argument("--size", type=int, default=256)
    p_bench.add_argument("--noise", type=float, default=0.0)
    p_bench.add_argument(
        "--radius-range", type=int, nargs=2, default=(20, 100), metavar=("LO", "HI")
    )
    p_bench.add_argument("--multi", action="store_true", help="use multi-circle detection")
    p_bench.add_argument("--json", metavar="PATH", help="write statistics as JSON")
    p_bench.add_argument("--jobs", type=int, default=1, help="parallel trial workers")
    _add_detector_flags(p_bench)
    return parser


def _detector_config(args) -> DetectorConfig:
    hsa = HsaConfig(
        hms=args.hms,
        hmcr=args.hmcr,
        par=args.par,
        bw=args.bw,
        ni=args.ni,
        seed=args.seed,
    )
    return DetectorConfig(
        hsa=hsa,
        m_th=args.mth,
        max_circles=args.max_circles,
        mask_band=args.mask_band,
        r_min=args.rmin,
    )


def _print_config(args):
    cfg = {
        "schema_version": 1,
        "hms": args.hms,
        "hmcr": args.hmcr,
        "par": args.par,
        "bw": args.bw,
        "ni": args.ni,
        "seed": args.seed,
        "m_th": args.mth,
        "max_circles": args.max_circles,
        "mask_band": args.mask_band,
        "r_min": args.rmin,
        "eta": args.eta,
        "mu": args.mu,
    }
    print(json.dumps(cfg, indent=2, sort_keys=True))


def _load_edges(args) -> imaging.EdgeMap:
    if args.edges:
        return imaging.load_edge_map(args.input)
    img = imaging.load_gray(args.input)
    return imaging.canny_edges(
        img, low=args.canny_low, high=args.canny_high, sigma=args.canny_sigma
    )


def _write_overlay(args, edges, report):
    if args.edges:
        base = imaging.render_edge_map(edges).pixels
    else:
        base = imaging.load_gray(args.input).pixels
    # compress the image into [0, 180] so the rings at 255 stand out
    canvas = (base.astype(np.float64) * (180.0 / 255.0)).astype(np.uint8)
    for c in report.circles:
        ps = rasterize_circle(c.params, edges.width, edges.height)
        canvas[ps.points[:, 1], ps.points[:, 0]] = 255
    imaging.save_gray(imaging.GrayImage(pixels=canvas), args.overlay)


def _run_detect(args, multi: bool) -> int:
    if args.print_config:
        _print_config(args)
        return EXIT_OK
    if args.input is None:
        print("error: an input image is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _detector_config(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        edges = _load_edges(args)
    except (OSError, imaging.FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    report = detect_multi(edges, cfg) if multi else detect_single(edges, cfg)

    if report.status == "found":
        for c in report.circles:
            print(
                f"circle {c.rank}: x0={c.params.x0:.2f} y0={c.params.y0:.2f} "
                f"r={c.params.r:.2f} j={c.j_value:.4f}"
            )
    else:
        print("no circle detected")

    if args.json:
        doc = report.to_dict(include_timing=args.timing)
        try:
            with open(args.json, "w", encoding="ascii") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    if args.overlay:
        try:
            _write_overlay(args, edges, report)
        except (OSError, imaging.FormatError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _run_synth(args) -> int:
    try:
        edges, truth = bench_mod.generate_synthetic(
            width=args.size,
            height=args.size,
            n_circles=args.circles,
            r_range=tuple(args.radius_range),
            noise_density=args.noise,
            seed=args.seed,
        )
    except (ValueError, bench_mod.GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        imaging.save_edge_map(edges, args.output)
        if args.truth:
            doc = {
                "circles": [
                    {"x0": c.x0, "y0": c.y0, "r": c.r} for c in truth.circles
                ]
            }
            with open(args.truth, "w", encoding="ascii") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {args.output} ({edges.count} edge pixels, {args.circles} circles)")
    return EXIT_OK


def _run_bench(args) -> int:
    if args.print_config:
        _print_config(args)
        return EXIT_OK
    try:
        cfg = _detector_config(args)
        weights = bench_mod.ErrorWeights(eta=args.eta, mu=args.mu)
        images = [
            bench_mod.generate_synthetic(
                width=args.size,
                height=args.size,
                n_circles=args.circles,
                r_range=tuple(args.radius_range),
                noise_density=args.noise,
                seed=args.seed + 1000 + i,
            )
            for i in range(args.images)
        ]
    except (ValueError, bench_mod.GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.jobs > 1:
        stats = _parallel_trials(images, cfg, args.repeats, args.multi, weights, args.jobs)
    else:
        stats = bench_mod.run_trials(
            images, cfg, repeats=args.repeats, multi=args.multi, weights=weights
        )

    rows = []
    for i in range(args.images):
        sl = slice(i * args.repeats, (i + 1) * args.repeats)
        rows.append(
            (
                f"synthetic {i}",
                bench_mod.TrialStats.from_results(
                    stats.es_values[sl], stats.times[sl]
                ),
            )
        )
    rows.append(("overall", stats))
    print(bench_mod.format_stats_table(rows))

    if args.json:
        doc = {
            "schema_version": 1,
            "overall": stats.summarize(),
            "per_image": [st.summarize() for _, st in rows[:-1]],
        }
        try:
            with open(args.json, "w", encoding="ascii") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK


def _one_trial(payload):
    image, cfg, multi, weights = payload
    single = bench_mod.run_trials([image], cfg, repeats=1, multi=multi, weights=weights)
    return single.es_values[0], single.times[0]


def _parallel_trials(images, cfg, repeats, multi, weights, jobs):
    """Fan trials out to worker processes; results keep image-major order.

    Each payload carries the trial's derived seed, so the statistics match a
    sequential run exactly."""
    from concurrent.futures import ProcessPoolExecutor
    from dataclasses import replace as _replace

    payloads = []
    for i, image in enumerate(images):
        for k in range(repeats):
            seeded = _replace(
                cfg, hsa=_replace(cfg.hsa, seed=cfg.hsa.seed + i * repeats + k)
            )
            payloads.append((image, seeded, multi, weights))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_one_trial, payloads))
    return bench_mod.TrialStats.from_results(
        [r[0] for r in results], [r[1] for r in results]
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "detect":
        return _run_detect(args, multi=False)
    if args.command == "detect-multi":
        return _run_detect(args, multi=True)
    if args.command == "synth":
        return _run_synth(args)
    return _run_bench(args)


if __name__ == "__main__":
    sys.exit(main())
