"""Command implementations behind the CLI; each returns data, the app prints it."""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

from src.arabic.normalizer import normalize
from src.arabic.stemmer import load_stem_rules
from src.cli.config import RunConfig
from src.corpus.loader import (
    dump_records,
    load_corpus,
    load_documents,
    load_sentences,
    load_tagged,
    save_corpus,
    save_sentences,
)
from src.corpus.splitter import split_corpus
from src.corpus.synthetic import generate_synthetic_corpus
from src.corpus.tagset import ENTITY_LABELS
from src.errors import CorpusFormatError
from src.evaluation.metrics import MetricsReport, evaluate
from src.extraction.pipeline import fill_events, preprocess, tag_sentences
from src.extraction.report import write_report
from src.features.embeddings import load_pretrained
from src.features.selection import chi_square_select, ngram_presence
from src.features.vocab import UNK_INDEX, tf_vector
from src.tagger.model import init_model, vocab_from_corpus
from src.tagger.serialization import load_model, save_model
from src.tagger.trainer import TrainResult, train

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class PrepareSummary:
    documents: int
    sentences: int
    tokens: int

    def format(self) -> str:
        return f"documents {self.documents} sentences {self.sentences} tokens {self.tokens}"


def cmd_prepare(in_path: PathLike, out_path: PathLike) -> PrepareSummary:
    """Normalize, sentence-split and tokenize raw documents into sentence records."""
    documents = load_documents(in_path)
    sentences = preprocess(documents)
    save_sentences(sentences, out_path)
    summary = PrepareSummary(len(documents), len(sentences), sum(len(s.tokens) for s in sentences))
    logger.info(f"✅ Prepared {summary.format()}")
    return summary


def cmd_train(config: RunConfig) -> TrainResult:
    """
    Split the corpus, train the tagger and save it.

    The epoch log goes to config.output when set; the caller prints it
    otherwise.
    """
    corpus_path = config.require("corpus")
    model_path = config.require("model")
    corpus = load_corpus(corpus_path)
    if not corpus:
        raise CorpusFormatError("corpus has no sentences", str(corpus_path))
    split = split_corpus(corpus, config.split, config.train.seed)

    if config.split_dir is not None:
        config.split_dir.mkdir(parents=True, exist_ok=True)
        for name, part in (("train", split.train), ("dev", split.dev), ("test", split.test)):
            save_corpus(part, config.split_dir / f"{name}.jsonl")
        logger.info(f"Wrote split files to {config.split_dir}")

    vocab = vocab_from_corpus((s.tokens for s in split.train), config.min_freq)
    embeddings = None
    if config.embeddings is not None:
        embeddings = load_pretrained(
            config.embeddings,
            vocab,
            dim=config.train.embedding_dim,
            seed=config.train.seed,
            scale=config.train.embedding_scale,
        )
    else:
        logger.info("No pretrained embeddings configured, using seeded random vectors")

    initial = init_model(vocab, config.train, embeddings=embeddings)
    result = train(split.train, split.dev, config.train, initial)
    save_model(result.model, model_path)
    if config.output is not None:
        Path(config.output).write_text(result.format_log(), encoding="utf-8")
    return result


def cmd_tag(model_path: PathLike, in_path: PathLike, out_path: PathLike) -> int:
    """Tag every sentence record; returns the number written."""
    model = load_model(model_path)
    tagged = tag_sentences(load_sentences(in_path), model)
    Path(out_path).write_text(dump_records(tagged), encoding="utf-8")
    return len(tagged)


def cmd_extract(
    in_path: PathLike,
    out_path: PathLike,
    model_path: Optional[PathLike] = None,
    skip_empty: bool = False,
) -> int:
    """
    Fill one event per sentence and write the event report.

    Without a model the input must be an annotated corpus and its own tags
    are used.
    """
    if model_path is not None:
        tagged = tag_sentences(load_sentences(in_path), load_model(model_path))
    else:
        tagged = tag_sentences(load_corpus(in_path))
    return write_report(fill_events(tagged, skip_empty), out_path)


def cmd_eval(gold_path: PathLike, pred_path: PathLike, out_path: Optional[PathLike] = None) -> MetricsReport:
    """
    Score predicted tags against gold; optionally write the flat record as JSON.

    Gold must be a valid corpus; predictions may contain stray I- tags.
    """
    report = evaluate(load_corpus(gold_path), load_tagged(pred_path))
    if out_path is not None:
        Path(out_path).write_text(
            json.dumps(report.to_record(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    return report


def cmd_inspect(
    model_path: PathLike,
    corpus_path: Optional[PathLike] = None,
    top: int = 10,
    ngram: int = 1,
    stem_rules: Optional[PathLike] = None,
) -> str:
    """Describe a model and, given a labelled corpus, its coverage and top chi-square n-grams."""
    model = load_model(model_path)
    lines: List[str] = [
        f"vocab {len(model.vocab)} embedding_dim {model.embeddings.dim} "
        f"hidden_size {model.hidden_size} tags {len(model.tagset)}",
        "tagset " + " ".join(model.tagset.tags),
    ]
    if corpus_path is not None:
        corpus = load_corpus(corpus_path)
        tf = tf_vector((normalize(t) for s in corpus for t in s.tokens), model.vocab)
        unknown = tf[UNK_INDEX]
        share = unknown / tf.total if tf.total else 0.0
        lines.append(f"coverage tokens {tf.total} unk {unknown} unk_share {share:.4f}")
        rules = load_stem_rules(stem_rules) if stem_rules is not None else None
        for label in ENTITY_LABELS:
            presence, labels = ngram_presence(corpus, ngram, label, rules)
            best = chi_square_select(presence, labels, top)
            features = " ".join(f"{s.feature}={s.chi2:.3f}" for s in best)
            lines.append(f"chi2 {label} {features}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_synth(out_path: PathLike, count: int = 300, seed: int = 7) -> int:
    """Write the synthetic template-grammar corpus."""
    sentences = generate_synthetic_corpus(count, seed)
    save_corpus(sentences, out_path)
    logger.info(f"✅ Wrote {len(sentences)} synthetic sentences to {out_path}")
    return len(sentences)
