"""Argument parsing, logging setup and exit-code mapping."""

import argparse
import json
import logging
import sys
from typing import List, Optional

from src.cli.commands import cmd_eval, cmd_extract, cmd_inspect, cmd_prepare, cmd_synth, cmd_tag, cmd_train
from src.cli.config import load_run_config
from src.errors import HazardError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2

# train flags that override RunConfig keys of the same name
TRAIN_OVERRIDES = (
    "corpus", "embeddings", "model", "output", "split_dir", "split", "min_freq",
    "epochs", "seed", "learning_rate", "hidden_size", "embedding_dim", "clip", "shuffle",
)


def _int_at_least(minimum: int):
    """argparse type: an integer no smaller than `minimum`."""

    def parse(text: str) -> int:
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hazard_extract",
        description="Arabic food-hazard entity tagging and event extraction.",
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    verbosity.add_argument("--quiet", action="store_true", help="log warnings and errors only")
    sub = parser.add_subparsers(dest="command", required=True)

    prepare = sub.add_parser("prepare", help="tokenize raw documents into sentence records")
    prepare.add_argument("--in", dest="in_path", required=True)
    prepare.add_argument("--out", dest="out_path", required=True)

    train = sub.add_parser("train", help="train a tagger from a config file")
    train.add_argument("--config")
    train.add_argument("--corpus")
    train.add_argument("--embeddings")
    train.add_argument("--model")
    train.add_argument("--output")
    train.add_argument("--split-dir", dest="split_dir")
    train.add_argument("--split")
    train.add_argument("--min-freq", dest="min_freq")
    train.add_argument("--epochs")
    train.add_argument("--seed")
    train.add_argument("--learning-rate", dest="learning_rate")
    train.add_argument("--hidden-size", dest="hidden_size")
    train.add_argument("--embedding-dim", dest="embedding_dim")
    train.add_argument("--clip")
    train.add_argument("--shuffle")

    tag = sub.add_parser("tag", help="tag sentence records with a trained model")
    tag.add_argument("--model", required=True)
    tag.add_argument("--in", dest="in_path", required=True)
    tag.add_argument("--out", dest="out_path", required=True)

    extract = sub.add_parser("extract", help="fill hazard event templates")
    extract.add_argument("--model", help="tag with this model; otherwise use the input's own tags")
    extract.add_argument("--in", dest="in_path", required=True)
    extract.add_argument("--out", dest="out_path", required=True)
    extract.add_argument("--skip-empty", action="store_true", help="drop events with nothing filled")

    evaluate = sub.add_parser("eval", help="score predicted tags against gold tags")
    evaluate.add_argument("--gold", required=True)
    evaluate.add_argument("--pred", required=True)
    evaluate.add_argument("--out", dest="out_path", help="write the flat metrics record as JSON")

    inspect = sub.add_parser("inspect", help="describe a model and top chi-square n-grams")
    inspect.add_argument("--model", required=True)
    inspect.add_argument("--corpus")
    inspect.add_argument("--top", type=_int_at_least(0), default=10)
    inspect.add_argument("--ngram", type=_int_at_least(1), default=1)
    inspect.add_argument("--stem-rules", dest="stem_rules")

    synth = sub.add_parser("synth", help="write the synthetic training corpus")
    synth.add_argument("--out", dest="out_path", required=True)
    synth.add_argument("--count", type=_int_at_least(0), default=300)
    synth.add_argument("--seed", type=int, default=7)
    return parser


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "prepare":
        print(cmd_prepare(args.in_path, args.out_path).format())
    elif args.command == "train":
        overrides = {key: getattr(args, key) for key in TRAIN_OVERRIDES}
        config = load_run_config(args.config, overrides)
        result = cmd_train(config)
        if config.output is None:
            sys.stdout.write(result.format_log())
    elif args.command == "tag":
        cmd_tag(args.model, args.in_path, args.out_path)
    elif args.command == "extract":
        cmd_extract(args.in_path, args.out_path, args.model, args.skip_empty)
    elif args.command == "eval":
        sys.stdout.write(cmd_eval(args.gold, args.pred, args.out_path).format_table())
    elif args.command == "inspect":
        sys.stdout.write(cmd_inspect(args.model, args.corpus, args.top, args.ngram, args.stem_rules))
    elif args.command == "synth":
        cmd_synth(args.out_path, args.count, args.seed)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command.

    Returns:
        0 on success, 1 on runtime failure, 2 on usage or input errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr, force=True)

    try:
        _dispatch(args)
    except HazardError as e:
        logger.error(f"❌ {e}", exc_info=args.verbose)
        return e.exit_code
    except (FileNotFoundError, IsADirectoryError) as e:
        logger.error(f"❌ Cannot open {e.filename}: {e.strerror}")
        return EXIT_USAGE
    except json.JSONDecodeError as e:
        logger.error(f"❌ Invalid JSON: {e}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"❌ Unexpected error: {e}", exc_info=True)
        return EXIT_RUNTIME
    return EXIT_OK
