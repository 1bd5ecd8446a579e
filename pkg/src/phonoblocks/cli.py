"""The `phonoblocks` command: every module's CLI under one umbrella."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from phonoblocks import __version__


def _load_lexicon(args):
    from phonoblocks.lexicon.lexicon import Lexicon

    artifacts = getattr(args, "artifacts", None)
    if artifacts:
        return Lexicon.load_artifacts(artifacts)
    print("note: no --artifacts dir given, training from the bundled "
          "dictionary (slower)", file=sys.stderr)
    return Lexicon.build()


def _add_artifacts_arg(p):
    p.add_argument("--artifacts", help="directory produced by build-lexicon")


def cmd_build_lexicon(args):
    from phonoblocks.lexicon import load_bundled_dictionary
    from phonoblocks.lexicon.parser import load_dictionary_file
    from phonoblocks.lexicon.lexicon import Lexicon

    if args.dict == "bundled":
        entries = load_bundled_dictionary()
    else:
        entries = load_dictionary_file(args.dict)
    excluded: list = []
    lexicon = Lexicon.build(entries, max_chunk=args.max_chunk,
                            max_iterations=args.max_iterations,
                            tolerance=args.tolerance, top_n=args.top,
                            excluded=excluded)
    lexicon.save_artifacts(args.out)
    print(f"built lexicon: {len(lexicon)} words, "
          f"{sum(len(r) for r in lexicon.model.probs.values())} pairs, "
          f"{len(excluded)} entries excluded from training")
    print(f"artifacts written to {args.out}")


def cmd_render(args):
    from phonoblocks.wordplay import render_phonemes_detail

    lexicon = _load_lexicon(args)
    phonemes = args.phonemes.split()
    detail = render_phonemes_detail(phonemes, lexicon)
    out = {"phonemes": phonemes, "chunks": list(detail.chunks),
           "text": "".join(detail.chunks), "word": detail.word,
           "homophones": list(detail.homophones)}
    print(json.dumps(out, indent=None if args.json else 1))


def cmd_pronounce(args):
    from phonoblocks.wordplay import pronounce_letters

    lexicon = _load_lexicon(args)
    phonemes = pronounce_letters(args.word, lexicon)
    print(json.dumps({"word": args.word.upper(),
                      "phonemes": list(phonemes)}))


def cmd_interpret(args):
    from phonoblocks.wordplay import Block, interpret

    lexicon = _load_lexicon(args)
    blocks = [Block(i + 1, "letter", ch, ch)
              for i, ch in enumerate(args.letters.upper())]
    results = interpret(blocks, lexicon, args.top)
    print(json.dumps([{"word": r.word, "phonemes": list(r.phonemes),
                       "score": round(r.score, 4), "channel": r.channel}
                      for r in results], indent=1))


def cmd_scaffold_sim(args):
    from phonoblocks.scaffold import LearnerPolicy, ScaffoldConfig, plan, simulate

    lexicon = _load_lexicon(args)
    cfg = ScaffoldConfig(seed=args.seed)
    policy = LearnerPolicy(default_knowledge=args.knowledge, seed=args.seed)
    transcript = simulate(plan(args.word, lexicon, cfg), policy, lexicon)
    if args.json:
        sys.stdout.write(transcript.to_json_lines())
    else:
        for s in transcript.steps:
            print(f"{s.action} ({s.latency_seconds:.2f}s) -> "
                  + ", ".join(e.kind for e in s.events))
        print(f"built: {''.join(transcript.final_state.placed)}")


def cmd_layout(args):
    from phonoblocks.layout import mds_2d, phoneme_keyboard, similarity

    rows, cols = (int(x) for x in args.grid.lower().split("x"))
    grid = phoneme_keyboard(rows, cols, method=args.method, seed=args.seed)
    if args.json:
        print(json.dumps(grid.to_json()))
        return
    board = [["." for _ in range(grid.cols)] for _ in range(grid.rows)]
    for sym, (r, c) in grid.cells.items():
        board[r][c] = sym
    for row in board:
        print(" ".join(f"{s:>2s}" for s in row))


def cmd_minigame_sim(args):
    from phonoblocks.study import (default_gen_params, design_trials,
                                   simulate_minigame)
    from phonoblocks.study.types import GenParams

    children = [f"c{i:02d}" for i in range(args.children)]
    specs = design_trials(children, seed=args.seed) * args.replicates
    times = default_gen_params("times")
    errors = default_gen_params("errors")
    if args.params:
        doc = json.loads(Path(args.params).read_text())
        if "times" in doc:
            times = GenParams(**doc["times"])
        if "errors" in doc:
            errors = GenParams(**doc["errors"])
    records = simulate_minigame(specs, times=times, errors=errors,
                                seed=args.seed)
    lines = [json.dumps({**r.to_json(), "seed": args.seed, "source": "sim"})
             for r in records]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {len(records)} trials to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _read_trials(path):
    from phonoblocks.study.types import TrialRecord

    records = []
    for line in Path(path).read_text().splitlines():
        if line.strip():
            records.append(TrialRecord.from_json(json.loads(line)))
    return records


def cmd_descriptives(args):
    from phonoblocks.study import descriptives, descriptives_text

    print(descriptives_text(descriptives(_read_trials(getattr(args, "in")))))


def cmd_fit(args):
    from phonoblocks.study import McmcConfig, fit_error_model, fit_time_model

    records = _read_trials(getattr(args, "in"))
    cfg = McmcConfig(chains=args.chains, iterations=args.iters,
                     warmup=args.warmup, seed=args.seed)
    fit_fun = fit_time_model if args.model == "times" else fit_error_model
    fit = fit_fun(records, cfg)
    csv = fit.to_csv()
    if args.out:
        Path(args.out).write_text(csv)
    else:
        sys.stdout.write(csv)
    print(f"converged: {fit.converged}", file=sys.stderr)
    for name, value in fit.rhat.items():
        flag = "" if value < 1.05 else "  <-- above 1.05"
        print(f"  rhat[{name}] = {value:.4f}{flag}", file=sys.stderr)
    if not fit.converged:
        print("warning: chains have not converged; rerun with more "
              "iterations", file=sys.stderr)


def cmd_fractions(args):
    from phonoblocks.study import ModelFit, virtual_population

    fit = ModelFit.from_csv(Path(args.fit).read_text(), args.model)
    table = virtual_population(fit, M=args.M, seed=args.seed,
                               max_draws=args.max_draws)
    if args.json:
        print(json.dumps(table.to_json(), indent=1))
    else:
        print(table.to_text())


def cmd_serve(args):
    import uvicorn

    from phonoblocks.service.app import build_app_from_config
    from phonoblocks.service.config import ServiceConfig, load_config
    from phonoblocks.service.app import create_app
    from phonoblocks.lexicon.lexicon import Lexicon

    if args.artifacts:
        config = load_config(args.config)
        config = config.model_copy(update={"artifacts_dir": args.artifacts})
        if args.playground:
            config = config.model_copy(update={"playground_dir": args.playground})
        lexicon = Lexicon.load_artifacts(args.artifacts)
        app = create_app(lexicon, config)
    else:
        app = build_app_from_config(args.config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phonoblocks")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-lexicon", help="train alignment, write artifacts")
    p.add_argument("--dict", default="bundled",
                   help="CMU-format dictionary path, or 'bundled'")
    p.add_argument("--out", required=True)
    p.add_argument("--max-chunk", type=int, default=4)
    p.add_argument("--max-iterations", type=int, default=25)
    p.add_argument("--tolerance", type=float, default=1.0)
    p.add_argument("--top", type=int, default=80)
    p.set_defaults(func=cmd_build_lexicon)

    p = sub.add_parser("render", help="spell a phoneme sequence")
    p.add_argument("--phonemes", required=True, help='e.g. "T R AH K"')
    p.add_argument("--json", action="store_true")
    _add_artifacts_arg(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("pronounce", help="phonemes for a letter string")
    p.add_argument("--word", required=True)
    _add_artifacts_arg(p)
    p.set_defaults(func=cmd_pronounce)

    p = sub.add_parser("interpret", help="guess words behind letter blocks")
    p.add_argument("--letters", required=True)
    p.add_argument("--top", type=int, default=5)
    _add_artifacts_arg(p)
    p.set_defaults(func=cmd_interpret)

    p = sub.add_parser("scaffold-sim", help="simulate a scaffolded build")
    p.add_argument("--word", required=True)
    p.add_argument("--knowledge", type=float, default=0.7)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--json", action="store_true")
    _add_artifacts_arg(p)
    p.set_defaults(func=cmd_scaffold_sim)

    p = sub.add_parser("layout", help="build the phoneme keyboard grid")
    p.add_argument("--grid", default="8x6")
    p.add_argument("--method", choices=["classical", "smacof"],
                   default="classical")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("minigame-sim", help="simulate minigame trials")
    p.add_argument("--children", type=int, default=26)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--replicates", type=int, default=1)
    p.add_argument("--params", help="JSON with 'times'/'errors' GenParams")
    p.add_argument("--out")
    p.set_defaults(func=cmd_minigame_sim)

    p = sub.add_parser("descriptives", help="summary table for trial logs")
    p.add_argument("--in", required=True)
    p.set_defaults(func=cmd_descriptives)

    p = sub.add_parser("fit", help="fit a Bayesian mixed-effects model")
    p.add_argument("--model", choices=["errors", "times"], required=True)
    p.add_argument("--in", required=True, help="trials JSONL")
    p.add_argument("--chains", type=int, default=4)
    p.add_argument("--iters", type=int, default=4000)
    p.add_argument("--warmup", type=int, default=1000)
    p.add_argument("--seed", type=int, default=11)
    p.add_argument("--out", help="posterior draws CSV")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fractions", help="virtual-population preference table")
    p.add_argument("--fit", required=True, help="posterior draws CSV")
    p.add_argument("--model", choices=["errors", "times"], default="errors")
    p.add_argument("--M", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-draws", type=int, default=2000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fractions)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--config", help="config JSON path")
    p.add_argument("--artifacts", help="lexicon artifacts directory")
    p.add_argument("--playground", help="static playground directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
