"""Command-line driver.

Subcommands: polarize, select, simulate, oracle-check, bench, export-circuit.
Global flags: --seed, --threads, --out, --format, --config (flat key=value file;
command-line flags override file values). Exit codes: 0 ok, 1 internal failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
from pathlib import Path

import numpy as np

from tncodes.channels import parse_channel
from tncodes.circuits import build_bmera, build_polar
from tncodes.decoder import brute_force_marginal, decision_marginal, schedule
from tncodes.erasure import exhaustive_erasure_genie
from tncodes.harness import (
    ExperimentConfig,
    ber_csv,
    config_hash,
    run_bench,
    run_polarize,
    run_simulate,
)
from tncodes.pauli import LeafTensor
from tncodes.polarization import (
    ChannelStats,
    FrozenMap,
    bec_channel_stats,
    bec_density_evolution,
    degenerate_bound,
    select_channels,
    union_bound,
)


def _version() -> str:
    try:
        out = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            cwd=Path(__file__).parent,
            timeout=5,
        )
        if out.returncode == 0:
            return out.stdout.strip()
    except OSError:
        pass
    return "unknown"


def _build(family: str, L: int):
    if family == "polar":
        return build_polar(L)
    if family == "bmera":
        return build_bmera(L)
    raise SystemExit(2)


def _config_overrides(path: str | None) -> dict:
    if not path:
        return {}
    out = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Apply --config file values underneath explicitly given flags."""
    overrides = _config_overrides(getattr(args, "config", None))
    sub = getattr(args, "subparser", parser)
    for key, value in overrides.items():
        if not hasattr(args, key):
            parser.error(f"unknown config key {key!r}")
        default = sub.get_default(key)
        if getattr(args, key) == default:  # flag not given explicitly
            cast = type(default) if default is not None else str
            setattr(args, key, cast(value))


def cmd_polarize(args) -> int:
    cfg = ExperimentConfig(
        args.family, args.L, args.channel, args.decoder, args.trials,
        args.seed, args.threads,
    )
    if args.exact or args.decoder == "erasure-exact":
        channel = parse_channel(args.channel)
        if channel.kind != "erasure" or args.family != "polar":
            print("exact mode requires --family polar and an erasure channel", file=sys.stderr)
            return 2
        cfg = ExperimentConfig(
            args.family, args.L, args.channel, "erasure-exact", 0, args.seed
        )
        stats = bec_channel_stats(channel.erasure_rate, args.L)
    else:
        stats = run_polarize(cfg)
    digest = config_hash(cfg)
    out = Path(args.out or f"polarize_{cfg.family}_L{cfg.L}.csv")
    out.write_text(stats.to_csv(comments=[f"config_hash={digest}"]))
    out.with_suffix(".json").write_text(
        json.dumps(
            {
                "family": cfg.family,
                "L": cfg.L,
                "channel": cfg.channel,
                "decoder": cfg.decoder,
                "trials": cfg.trials,
                "seed": cfg.seed,
                "config_hash": digest,
                "version": _version(),
            },
            indent=2,
        )
    )
    print(f"wrote {out}")
    return 0


def cmd_select(args) -> int:
    text = Path(args.stats).read_text()
    stats = ChannelStats.from_csv(text)
    digest = next(
        (
            line.strip()[2:].partition("=")[2]
            for line in text.splitlines()
            if line.startswith("# config_hash=")
        ),
        "",
    )
    if not 0 <= args.k <= stats.n:
        print("k out of range", file=sys.stderr)
        return 2
    fmap = select_channels(stats, args.k)
    raw, clamped = union_bound(stats, fmap)
    degen = degenerate_bound(stats)
    out = Path(args.out or "frozen_map.json")
    obj = json.loads(fmap.to_json())
    obj["config_hash"] = digest
    out.write_text(json.dumps(obj, indent=2))
    print(f"union_bound={raw:.9g} degenerate_bound={degen:.9g}")
    return 0


def cmd_simulate(args) -> int:
    fmap = FrozenMap.from_json(Path(args.map).read_text())
    cfg = ExperimentConfig(
        fmap.family or args.family,
        fmap.n.bit_length() - 1,
        args.channel,
        args.decoder,
        args.trials,
        args.seed,
        args.threads,
        k=fmap.k,
    )
    record = run_simulate(cfg, fmap)
    out = Path(args.out or "ber.csv")
    comments = [] if out.exists() else [f"config_hash={config_hash(cfg)}"]
    text = ber_csv([record], comments=comments)
    if out.exists():  # append rows under the existing header
        text = text.splitlines()[-1] + "\n"
        with out.open("a") as fh:
            fh.write(text)
    else:
        out.write_text(text)
    print(f"ber={record.ber:.6g} [{record.wilson95_low:.6g}, {record.wilson95_high:.6g}]")
    return 0


def cmd_oracle_check(args) -> int:
    n = 2 ** args.L
    if n > 8:
        print("oracle check requires L <= 3", file=sys.stderr)
        return 2
    channel = parse_channel(args.channel)
    if channel.kind == "erasure":
        from fractions import Fraction

        eps = Fraction(channel.erasure_rate).limit_denominator(10**6)
        ex, ez = exhaustive_erasure_genie(n, args.family, eps, args.decoder)
        de_x, de_z = bec_density_evolution(eps, args.L)
        if args.family != "polar":
            print("erasure oracle check compares against DE: polar only", file=sys.stderr)
            return 2
        ok = all(2 * a == b for a, b in zip(ex, de_x)) and all(
            2 * a == b for a, b in zip(ez, de_z)
        )
        print("PASS" if ok else "FAIL", "erasure genie vs density evolution")
        return 0 if ok else 1
    circuit = _build(args.family, args.L)
    rng = np.random.default_rng(args.seed)
    priors = channel.prior()
    worst = 0.0
    sched = schedule(args.decoder, n)
    for _ in range(args.trials):
        state = int(rng.integers(0, len(sched)))
        leaves: dict[int, LeafTensor] = {}
        known: dict[str, dict[int, int]] = {"x": {}, "z": {}}
        for quad, w in sched[:state]:
            known[quad][w] = int(rng.integers(0, 2))
        for w in range(n):
            kx, kz = known["x"].get(w), known["z"].get(w)
            if kx is not None and kz is not None:
                label = [[0, 3], [1, 2]][kx][kz]
                leaves[w] = LeafTensor("point", label=label)
            elif kx is not None:
                leaves[w] = LeafTensor("bimodal_x", bit=kx)
            elif kz is not None:
                leaves[w] = LeafTensor("bimodal_z", bit=kz)
        quad, w = sched[state]
        try:
            got = decision_marginal(circuit, priors, leaves, w, quad)
            want = brute_force_marginal(circuit, priors, leaves, w, quad)
        except ValueError:
            continue  # randomly inconsistent evidence
        worst = max(worst, abs(got[0] - want[0]), abs(got[1] - want[1]))
    ok = worst <= 1e-9
    print(f"{'PASS' if ok else 'FAIL'} worst deviation {worst:.3g}")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    Ls = [int(s) for s in args.Ls.split(",")]
    rows = []
    for family in ("polar", "bmera"):
        times = dict(run_bench(family, args.decoder, Ls, args.trials, args.seed))
        rows.append((family, times))
        for L, t in times.items():
            print(f"{family} L={L} {t:.6f} s/trial")
    verdict = 0
    for family, times in rows:
        if len(Ls) >= 2:
            ratio = times[max(Ls)] / times[min(Ls)]
            bound = 25 if max(Ls) - min(Ls) == 4 else None
            note = ""
            if bound is not None:
                ok = ratio <= bound
                note = f" ({'ok' if ok else 'EXCEEDS'} bound {bound})"
                verdict = verdict or (0 if ok else 1)
            print(f"{family} time(2^{max(Ls)})/time(2^{min(Ls)}) = {ratio:.2f}{note}")
    if args.out:
        lines = ["family,L,seconds_per_trial"]
        for family, times in rows:
            lines += [f"{family},{L},{t:.9g}" for L, t in times.items()]
        Path(args.out).write_text("\n".join(lines) + "\n")
    return verdict


def cmd_export_circuit(args) -> int:
    circuit = _build(args.family, args.L)
    text = circuit.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tncodes")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, channel=True):
        p.add_argument("--family", choices=["polar", "bmera"], default="polar")
        p.add_argument("--L", type=int, default=4)
        if channel:
            p.add_argument("--channel", default="depol:0.05")
        p.add_argument(
            "--decoder",
            choices=["standard", "symmetric", "erasure-exact"],
            default="standard",
        )
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--config", default=None)

    p = sub.add_parser("polarize", help="genie per-channel error rates")
    common(p)
    p.add_argument("--exact", action="store_true", help="erasure density evolution")
    p.set_defaults(func=cmd_polarize, subparser=p)

    p = sub.add_parser("select", help="build a frozen map from stats")
    p.add_argument("--stats", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_select, subparser=p)

    p = sub.add_parser("simulate", help="honest block-error simulation")
    common(p)
    p.add_argument("--map", required=True)
    p.set_defaults(func=cmd_simulate, subparser=p)

    p = sub.add_parser("oracle-check", help="compare decoder against brute force")
    common(p)
    p.set_defaults(func=cmd_oracle_check, subparser=p)

    p = sub.add_parser("bench", help="decode-time scaling")
    p.add_argument("--Ls", default="8,10")
    p.add_argument("--decoder", choices=["standard", "symmetric"], default="standard")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--config", default=None)
    p.set_defaults(func=cmd_bench, subparser=p)

    p = sub.add_parser("export-circuit", help="dump a circuit as JSON")
    p.add_argument("--family", choices=["polar", "bmera"], default="polar")
    p.add_argument("--L", type=int, default=4)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_circuit, subparser=p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    _merge_config(args, parser)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
