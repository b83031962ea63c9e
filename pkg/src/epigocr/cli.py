"""Command-line entry point.

Exit status: 0 when everything succeeded, 2 when some batch entries failed,
1 on configuration or usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import evalkit, pipeline, raster, segment
from .ocrgate import boxes as boxmod
from .ocrgate import engine as enginemod
from .ocrgate import training

log = logging.getLogger("epigocr")

EXIT_OK, EXIT_CONFIG, EXIT_PARTIAL = 0, 1, 2


class ManifestError(ValueError):
    pass


@dataclass(frozen=True)
class Manifest:
    """``(image, ground truth)`` path pairs, relative to ``base_dir``."""

    entries: tuple[tuple[str, str], ...] = ()
    base_dir: str = ""

    def resolve(self, path: str) -> str:
        return os.path.join(self.base_dir, path)


def parse_manifest(text: str, base_dir: str = "") -> Manifest:
    """Tab-separated ``image<TAB>ground truth`` records; ``#`` starts a comment."""
    entries = []
    seen: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ManifestError(f"line {lineno}: expected 2 tab-separated fields, got {len(fields)}")
        image, gt = (f.strip() for f in fields)
        if not image or not gt:
            raise ManifestError(f"line {lineno}: empty path")
        key = os.path.normpath(image)
        if key in seen:
            raise ManifestError(f"line {lineno}: duplicate image {image} (first on line {seen[key]})")
        seen[key] = lineno
        entries.append((image, gt))
    return Manifest(tuple(entries), base_dir)


def load_manifest(path: str) -> Manifest:
    with open(path, encoding="utf-8") as fh:
        return parse_manifest(fh.read(), os.path.dirname(os.path.abspath(path)))


def make_engine(name: str, timeout: float = enginemod.DEFAULT_TIMEOUT):
    """``external`` or ``mock:<fixtures.json>``."""
    if name == "external":
        return enginemod.ExternalEngine(timeout=timeout)
    if name.startswith("mock:"):
        return enginemod.MockEngine.from_file(name[len("mock:") :])
    raise ValueError(f"unknown engine {name!r}; use 'external' or 'mock:<fixtures.json>'")


def spaced_text(raw: str, lex: segment.Lexicon | None) -> str:
    """Word-break each recognized line after dropping whatever spaces it had."""
    lines = []
    for line in raw.splitlines():
        joined = "".join(line.split())
        if not joined:
            continue
        if lex is None:
            lines.append(joined)
        else:
            seq = segment.split_graphemes(joined)
            lines.append(segment.render_spaced(segment.word_break(seq, lex), seq))
    return "\n".join(lines) + ("\n" if lines else "")


def cmd_pipeline(
    manifest: Manifest,
    cfg: pipeline.PipelineConfig,
    model: str,
    lexicon: segment.Lexicon | None,
    out_dir: str,
    engine,
    psm: int = enginemod.DEFAULT_PSM,
    jobs: int = 1,
    dump_dir: str | None = None,
    normalize: bool = True,
    keep_spaces: bool = False,
) -> evalkit.EvalReport:
    """Preprocess, recognize, word-break and score every manifest entry.

    A failing entry is recorded in the report and the batch continues.
    Outputs are named after the entry's position so reruns are identical.
    """
    os.makedirs(out_dir, exist_ok=True)

    def process(index_entry):
        index, (image_path, gt_path) = index_entry
        stem = os.path.splitext(os.path.basename(image_path))[0]
        name = f"{index:03d}_{stem}"
        try:
            img = raster.read_image(manifest.resolve(image_path))
            with open(manifest.resolve(gt_path), encoding="utf-8") as fh:
                gt = fh.read()
            result = pipeline.run_pipeline(img, cfg)
            if dump_dir:
                pipeline.dump_intermediates(result, os.path.join(dump_dir, name))
            page = result.binary if result.binary is not None else result.gray
            req = enginemod.OcrRequest(page, model=model, psm=psm, image_id=stem)
            raw = enginemod.recognize(req, engine).text
            text = spaced_text(raw, lexicon)
            with open(os.path.join(out_dir, name + ".txt"), "w", encoding="utf-8") as fh:
                fh.write(text)
            return evalkit.score_image(text, gt, normalize, image_path, keep_spaces), None
        except Exception as exc:  # noqa: BLE001 - batch is fail-soft by contract
            log.warning("entry %s failed: %s", image_path, exc)
            return None, (image_path, f"{type(exc).__name__}: {exc}")

    items = list(enumerate(manifest.entries))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(process, items))
    else:
        outcomes = [process(item) for item in items]

    scores = [s for s, _ in outcomes if s is not None]
    failures = [f for _, f in outcomes if f is not None]
    if scores:
        report = evalkit.aggregate(scores, failures, normalize=normalize)
    else:
        report = evalkit.EvalReport([], 0.0, 0, failures, {"accuracy_definition": evalkit.ACCURACY_DEFINITION})
    report.metadata.update({"model": model, "psm": psm})
    with open(os.path.join(out_dir, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(report.to_table())
    with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    return report


# --------------------------------------------------------------------------- #
# argparse plumbing
# --------------------------------------------------------------------------- #


def _load_cfg(path):
    return pipeline.load_config(path) if path else pipeline.default_config()


def _load_lexicon(path):
    return segment.load_lexicon(path) if path else None


def _run_preprocess(args) -> int:
    cfg = _load_cfg(args.config)
    os.makedirs(args.out_dir, exist_ok=True)
    status = EXIT_OK
    for path in args.images:
        stem = os.path.splitext(os.path.basename(path))[0]
        try:
            result = pipeline.run_pipeline(raster.read_image(path), cfg)
        except (OSError, ValueError, pipeline.PipelineError) as exc:
            log.error("%s: %s", path, exc)
            status = EXIT_PARTIAL
            continue
        final = result.binary if result.binary is not None else result.gray
        raster.write_image(os.path.join(args.out_dir, stem + ".pgm"), final)
        if args.dump_intermediates:
            pipeline.dump_intermediates(result, os.path.join(args.dump_intermediates, stem))
    return status


def _run_ocr(args) -> int:
    engine = make_engine(args.engine, args.timeout)
    stem = os.path.splitext(os.path.basename(args.image))[0]
    req = enginemod.OcrRequest(args.image, model=args.model, psm=args.psm, image_id=stem)
    try:
        result = enginemod.recognize(req, engine)
    except (enginemod.EngineError, OSError) as exc:
        log.error("%s", exc)
        for line in getattr(exc, "diagnostics", []):
            log.error("  %s", line)
        return EXIT_PARTIAL
    sys.stdout.write(result.text)
    return EXIT_OK


def _run_segment(args) -> int:
    lex = segment.load_lexicon(args.lexicon)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    sys.stdout.write(spaced_text(text, lex))
    return EXIT_OK


def _run_eval(args) -> int:
    manifest = load_manifest(args.manifest)
    scores, failures = [], []
    for pred_path, gt_path in manifest.entries:
        try:
            with open(manifest.resolve(pred_path), encoding="utf-8") as fh:
                pred = fh.read()
            with open(manifest.resolve(gt_path), encoding="utf-8") as fh:
                gt = fh.read()
            scores.append(evalkit.score_image(pred, gt, not args.no_normalize, pred_path, args.keep_spaces))
        except (OSError, ValueError) as exc:
            failures.append((pred_path, str(exc)))
    if not scores:
        log.error("no entry could be scored")
        return EXIT_PARTIAL
    report = evalkit.aggregate(scores, failures, normalize=not args.no_normalize)
    sys.stdout.write(report.to_json() if args.json else report.to_table())
    return EXIT_PARTIAL if failures else EXIT_OK


def _run_pipeline(args) -> int:
    manifest = load_manifest(args.manifest)
    cfg = _load_cfg(args.config)
    lex = _load_lexicon(args.lexicon)
    engine = make_engine(args.engine, args.timeout)
    if isinstance(engine, enginemod.ExternalEngine) and not engine.available():
        log.error("OCR engine %r not found (set %s)", engine.binary, enginemod.ENGINE_BIN_ENV)
        return EXIT_CONFIG
    report = cmd_pipeline(
        manifest, cfg, args.model, lex, args.out_dir, engine,
        psm=args.psm, jobs=args.jobs, dump_dir=args.dump_intermediates,
        normalize=not args.no_normalize, keep_spaces=args.keep_spaces,
    )
    sys.stdout.write(report.to_table())
    return EXIT_PARTIAL if report.failures else EXIT_OK


def _run_train_plan(args) -> int:
    plan = training.plan_training(args.box_dir, args.lang, args.font_props)
    if args.json:
        doc = {
            "steps": [
                {"stage": s.stage, "invocations": [[p, *a] for p, a in s.invocations], "outputs": list(s.outputs)}
                for s in plan.steps
            ],
            "produced_artifacts": list(plan.produced_artifacts),
        }
        sys.stdout.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
    else:
        for cmd in plan.commands():
            sys.stdout.write(" ".join(cmd) + "\n")
    if args.execute:
        training.execute_plan(plan)
    return EXIT_OK


def _run_boxes(args) -> int:
    with open(args.box_file, encoding="utf-8") as fh:
        records = boxmod.parse_box_file(fh.read(), args.image_height)
    if args.action == "merge":
        records = boxmod.merge_compound_boxes(records, args.ratio)
    elif args.action == "resolve":
        report = boxmod.resolve_overlaps(records)
        for line in report.diagnostics:
            log.warning("%s", line)
        records = report.boxes
    sys.stdout.write(boxmod.write_box_file(records))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="epigocr", description="Inscription OCR toolkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def engine_opts(p):
        p.add_argument("--model", default="atam")
        p.add_argument("--psm", type=int, default=enginemod.DEFAULT_PSM, choices=range(14), metavar="N")
        p.add_argument("--engine", default="external", help="'external' or 'mock:<fixtures.json>'")
        p.add_argument("--timeout", type=float, default=enginemod.DEFAULT_TIMEOUT)

    p = sub.add_parser("preprocess", help="run the preprocessing chain on images")
    p.add_argument("images", nargs="+")
    p.add_argument("--config")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--dump-intermediates", metavar="DIR")
    p.set_defaults(func=_run_preprocess)

    p = sub.add_parser("ocr", help="recognize one image")
    p.add_argument("image")
    engine_opts(p)
    p.set_defaults(func=_run_ocr)

    p = sub.add_parser("segment", help="insert word breaks into space-less text")
    p.add_argument("input", nargs="?")
    p.add_argument("--lexicon", required=True)
    p.set_defaults(func=_run_segment)

    p = sub.add_parser("eval", help="score predictions listed in a manifest against ground truth")
    p.add_argument("--manifest", required=True, help="TSV of prediction<TAB>ground-truth paths")
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--keep-spaces", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_run_eval)

    p = sub.add_parser("pipeline", help="preprocess, recognize, segment and score a dataset")
    p.add_argument("manifest")
    p.add_argument("--config")
    p.add_argument("--lexicon")
    p.add_argument("--out-dir", default="epigocr-out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dump-intermediates", metavar="DIR")
    p.add_argument("--no-normalize", action="store_true")
    p.add_argument("--keep-spaces", action="store_true")
    engine_opts(p)
    p.set_defaults(func=_run_pipeline)

    p = sub.add_parser("train-plan", help="print the training command sequence")
    p.add_argument("box_dir")
    p.add_argument("--lang", default="atam")
    p.add_argument("--font-props", default="font_properties")
    p.add_argument("--json", action="store_true")
    p.add_argument("--execute", action="store_true", help="also run the planned commands")
    p.set_defaults(func=_run_train_plan)

    p = sub.add_parser("boxes", help="box-file utilities")
    p.add_argument("action", choices=("parse", "merge", "resolve"))
    p.add_argument("box_file")
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--image-height", type=int)
    p.set_defaults(func=_run_boxes)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (
        pipeline.ConfigError,
        ManifestError,
        training.TrainingPlanError,
        boxmod.BoxFormatError,
        OSError,
        ValueError,
    ) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
