"""Command-line entry point: train, eval, play, replay, report.

Every command is deterministic given its flags and config file.  Exit
codes: 0 success, 1 verification or match failure, 2 usage/config error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, build_match_config, find_config
from .controllers import MlpPolicy, MlpTopology, read_genome, write_genome
from .evaluation import evaluate_all, render_report, report_from_json, report_to_json
from .evolution import (
    Aggregation,
    EvoConfig,
    Generalist,
    Individual,
    MultiObjective,
    evolve,
    history_from_jsonl,
    history_to_jsonl,
)
from .replay import (
    VerifyStatus,
    load_replay,
    replay_to_json,
    verify_replay,
)


def _parse_bosses(text: str) -> list[int]:
    try:
        bosses = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad boss list: {text!r}")
    if not bosses:
        raise argparse.ArgumentTypeError("empty boss list")
    return bosses


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoman",
        description="Deterministic boss-fight arena and neuroevolution toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="evolve a controller genome")
    p.add_argument("--mode", choices=("individual", "generalist", "multi"),
                   default="generalist")
    p.add_argument("--bosses", type=_parse_bosses, default=[1, 2, 3, 4],
                   help="comma-separated boss ids (training set)")
    p.add_argument("--hidden", type=int, choices=(0, 10, 50), default=10)
    p.add_argument("--pop", type=int, help="population size")
    p.add_argument("--gens", type=int, help="number of generations")
    p.add_argument("--seed", type=int, help="run seed")
    p.add_argument("--reps", type=int, help="repetitions per boss per evaluation")
    p.add_argument("--agg", choices=("mean", "harmonic"), default="harmonic",
                   help="generalist fitness aggregation")
    p.add_argument("--jobs", type=int, help="parallel evaluation workers")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--config", help="config file (or $EVOMAN_CONFIG)")

    p = sub.add_parser("eval", help="run a genome through the 8-boss gauntlet")
    p.add_argument("--genome", type=Path, required=True)
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name", default=None, help="agent name in the report")
    p.add_argument("--out", type=Path, help="write the structured report here")
    p.add_argument("--config", help="config file (or $EVOMAN_CONFIG)")

    p = sub.add_parser("play", help="start the step server for the web client")
    p.add_argument("--boss", type=int, default=1)
    p.add_argument("--port", type=int, default=8808)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--timeout", type=float, default=None,
                   help="per-action timeout in seconds (default: none, human play)")
    p.add_argument("--static", type=Path, default=None,
                   help="directory with the built web client")
    p.add_argument("--config", help="config file (or $EVOMAN_CONFIG)")

    p = sub.add_parser("replay", help="verify or export replay files")
    p.add_argument("action", choices=("verify", "export-json"))
    p.add_argument("path", type=Path)
    p.add_argument("--out", type=Path, help="output path for export-json")
    p.add_argument("--config", help="config file (or $EVOMAN_CONFIG)")

    p = sub.add_parser("report", help="merge structured reports into one table")
    p.add_argument("--inputs", type=Path, nargs="+", required=True)
    p.add_argument("--out-dir", type=Path, default=Path("."),
                   help="where report.csv and gains.png go")
    return parser


def _load_configs(args) -> tuple:
    file_cfg = find_config(getattr(args, "config", None))
    return build_match_config(file_cfg["match"]), file_cfg["evolution"]


def _fail(message: str, code: int = 2) -> "int":
    print(f"evoman: {message}", file=sys.stderr)
    return code


def cmd_train(args) -> int:
    match_config, evo_file = _load_configs(args)
    n_bosses = len(match_config.roster) if match_config.roster else 8
    if not all(1 <= b <= n_bosses for b in args.bosses):
        return _fail(f"--bosses must be within 1..{n_bosses}")
    if args.mode == "individual":
        if len(args.bosses) != 1:
            return _fail("individual mode takes exactly one boss")
        mode = Individual(args.bosses[0])
    elif args.mode == "generalist":
        mode = Generalist(tuple(args.bosses), Aggregation(args.agg))
    else:
        mode = MultiObjective(tuple(args.bosses))

    evo_kwargs = dict(evo_file)
    for flag, name in (("pop", "population_size"), ("gens", "generations"),
                       ("seed", "seed"), ("reps", "repetitions_per_boss"),
                       ("jobs", "n_jobs")):
        v = getattr(args, flag)
        if v is not None:
            evo_kwargs[name] = v
    cfg = EvoConfig(mode=mode, match_config=match_config, **evo_kwargs)

    try:
        best, history = evolve(cfg, MlpTopology(hidden=args.hidden))
    except ValueError as exc:
        return _fail(str(exc))

    for r in history.records:
        print(f"gen {r.generation:4d}  best {r.best:8.2f}  mean {r.mean:8.2f}")

    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    write_genome(best, out / "genome.json")
    history_text = history_to_jsonl(history)
    (out / "history.jsonl").write_text(history_text, encoding="utf-8")
    if history.front:
        front_lines = []
        for weights, objectives in history.front:
            import json as _json
            front_lines.append(_json.dumps({
                "objectives": list(objectives),
                "weights": [float(format(float(w), ".9g")) for w in weights],
            }, separators=(",", ":")))
        (out / "front.jsonl").write_text("\n".join(front_lines) + "\n", encoding="utf-8")
    from .reporting import save_history_chart
    save_history_chart(history_from_jsonl(history_text), out / "history.png")
    print(f"wrote {out / 'genome.json'}, history.jsonl, history.png")
    return 0


def cmd_eval(args) -> int:
    match_config, _ = _load_configs(args)
    try:
        genome = read_genome(args.genome)
    except (OSError, ValueError) as exc:
        return _fail(f"cannot load genome: {exc}")
    policy = MlpPolicy(genome, match_config)
    name = args.name or args.genome.stem
    report = evaluate_all(policy, match_config, repetitions=args.reps,
                          seed=args.seed, agent_name=name)
    sys.stdout.write(render_report([report]))
    print(f"wins: {report.wins}/{len(report.per_boss_gains)}  "
          f"harmonic mean: {report.harmonic:.2f}")
    if args.out:
        args.out.write_text(report_to_json(report), encoding="utf-8")
        print(f"wrote {args.out}")
    return 0


def cmd_play(args) -> int:
    match_config, _ = _load_configs(args)
    n_bosses = len(match_config.roster) if match_config.roster else 8
    if not 1 <= args.boss <= n_bosses:
        return _fail(f"--boss must be within 1..{n_bosses}")
    from .server import serve_forever

    where = f"ws://{args.host}:{args.port}"
    if args.static:
        print(f"serving web client at http://{args.host}:{args.port}/?boss={args.boss}")
    print(f"step server listening on {where} (boss {args.boss}; Ctrl-C to stop)")
    try:
        serve_forever(args.host, args.port, match_config,
                      action_timeout=args.timeout, static_dir=args.static)
    except OSError as exc:
        return _fail(f"cannot bind {where}: {exc}")
    except KeyboardInterrupt:
        pass
    return 0


def cmd_replay(args) -> int:
    match_config, _ = _load_configs(args)
    try:
        replay = load_replay(args.path)
    except (OSError, ValueError) as exc:
        print(f"evoman: corrupt replay: {exc}", file=sys.stderr)
        return 1
    if args.action == "verify":
        verdict = verify_replay(replay, match_config)
        if verdict.status is VerifyStatus.VERIFIED:
            print("Verified")
            return 0
        where = f" at tick {verdict.tick}" if verdict.tick is not None else ""
        print(f"{verdict.status.value}{where}: {verdict.detail}", file=sys.stderr)
        return 1
    out = args.out or args.path.with_suffix(".json")
    out.write_text(replay_to_json(replay), encoding="utf-8")
    print(f"wrote {out}")
    return 0


def cmd_report(args) -> int:
    reports = []
    for path in args.inputs:
        try:
            reports.append(report_from_json(path.read_text(encoding="utf-8")))
        except (OSError, ValueError, KeyError) as exc:
            return _fail(f"cannot load report {path}: {exc}")
    sys.stdout.write(render_report(reports))
    from .reporting import reports_to_csv, save_gain_chart

    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.csv").write_text(reports_to_csv(reports), encoding="utf-8")
    save_gain_chart(reports, out_dir / "gains.png")
    print(f"wrote {out_dir / 'report.csv'} and {out_dir / 'gains.png'}")
    return 0


_COMMANDS = {
    "train": cmd_train,
    "eval": cmd_eval,
    "play": cmd_play,
    "replay": cmd_replay,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
