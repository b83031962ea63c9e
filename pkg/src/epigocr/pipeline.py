"""Configurable preprocessing chain.

A configuration is a line-oriented document of bracketed stage headers,
each followed by ``key = value`` lines for that stage::

    # comments start with '#' or ';'
    [grayscale]
    [median_blur]
    k = 3
    [adaptive_threshold]
    window = 31
    constant_c = 10
    weighting = gaussian

Stages run in file order and a stage may appear more than once. Omitted
keys take their defaults; unknown stages or keys are rejected.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

import numpy as np

from . import binarize, deskew, enhance, raster


class ConfigError(ValueError):
    """Invalid pipeline configuration."""


class PipelineError(RuntimeError):
    """A stage could not be applied to the image it received."""


def _choice(*options):
    def parse(text):
        if text not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return text

    return parse


# stage name -> {key: (parser, default)}
STAGES: dict[str, dict[str, tuple[Any, Any]]] = {
    "resize": {"max_dim": (int, 1600)},
    "grayscale": {},
    "equalize": {},
    "median_blur": {"k": (int, 3)},
    "box_blur": {"k": (int, 3)},
    "bilateral": {"d": (int, 9), "sigma_color": (float, 75.0), "sigma_space": (float, 75.0)},
    "adaptive_threshold": {
        "window": (int, 31),
        "constant_c": (float, 10.0),
        "weighting": (_choice(*binarize.WEIGHTINGS), "gaussian"),
    },
    "otsu_threshold": {},
    "deskew": {"max_angle": (float, 15.0), "coarse_step": (float, 1.0), "fine_step": (float, 0.1)},
    "erode": {"k": (int, 3)},
    "remove_small": {"min_area": (int, 12), "connectivity": (_choice("4", "8"), "8")},
    "eliminate_border": {"band": (int, 2)},
}
THRESHOLD_STAGES = frozenset({"adaptive_threshold", "otsu_threshold"})
BINARY_STAGES = frozenset({"deskew", "erode", "remove_small", "eliminate_border"})


@dataclass(frozen=True)
class Stage:
    name: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PipelineConfig:
    stages: tuple[Stage, ...] = ()

    def to_text(self) -> str:
        lines = []
        for stage in self.stages:
            lines.append(f"[{stage.name}]")
            lines.extend(f"{k} = {v}" for k, v in stage.params.items())
        return "\n".join(lines) + ("\n" if lines else "")


def _check_params(name: str, params: dict) -> None:
    """Range checks delegated to the parameter types of each module."""
    if name in ("median_blur", "box_blur", "erode"):
        if params["k"] < 3 or params["k"] % 2 == 0:
            raise ValueError("k must be odd and >= 3")
    elif name == "bilateral":
        enhance.BilateralParams(params["d"], params["sigma_color"], params["sigma_space"])
    elif name == "adaptive_threshold":
        binarize.AdaptiveParams(params["window"], params["constant_c"], params["weighting"])
    elif name == "deskew":
        deskew.SkewSearchParams(params["max_angle"], params["coarse_step"], params["fine_step"])
    elif name == "resize" and params["max_dim"] < 1:
        raise ValueError("max_dim must be >= 1")
    elif name == "remove_small" and params["min_area"] < 0:
        raise ValueError("min_area must be >= 0")
    elif name == "eliminate_border" and params["band"] < 0:
        raise ValueError("band must be >= 0")


def parse_config(text: str) -> PipelineConfig:
    """Parse and validate a pipeline configuration document."""
    stages: list[tuple[str, dict, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "#;":
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {lineno}: malformed stage header {line!r}")
            name = line[1:-1].strip()
            if name not in STAGES:
                raise ConfigError(f"line {lineno}: unknown stage {name!r}")
            stages.append((name, {}, lineno))
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        if not stages:
            raise ConfigError(f"line {lineno}: parameter outside of any stage")
        key, value = (part.strip() for part in line.split("=", 1))
        name, params, _ = stages[-1]
        if key not in STAGES[name]:
            raise ConfigError(f"line {lineno}: unknown key {key!r} for stage {name!r}")
        if key in params:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            params[key] = STAGES[name][key][0](value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value {value!r} for {name}.{key}: {exc}") from None

    result = []
    thresholded = False
    for name, params, lineno in stages:
        full = {k: params.get(k, default) for k, (_, default) in STAGES[name].items()}
        try:
            _check_params(name, full)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: invalid {name} parameters: {exc}") from None
        if name in THRESHOLD_STAGES:
            if thresholded:
                raise ConfigError(f"line {lineno}: only one thresholding stage is allowed")
            thresholded = True
        elif name in BINARY_STAGES and not thresholded:
            raise ConfigError(f"line {lineno}: stage {name!r} needs a preceding threshold stage")
        result.append(Stage(name, full))
    return PipelineConfig(tuple(result))


def load_config(path: str | os.PathLike) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def default_config_text() -> str:
    return resources.files("epigocr").joinpath("default_pipeline.cfg").read_text(encoding="utf-8")


def default_config() -> PipelineConfig:
    return parse_config(default_config_text())


@dataclass
class PipelineResult:
    """Outcome of a run.

    ``binary`` is ``None`` when no thresholding stage ran. ``intermediates``
    starts with the input and holds one ``(stage name, image)`` entry per
    stage, binary once thresholding has happened.
    """

    binary: np.ndarray | None
    gray: np.ndarray
    intermediates: list[tuple[str, np.ndarray]]


def _gray_op(name: str, p: dict):
    if name == "resize":
        return lambda g: raster.resize(g, p["max_dim"])
    if name == "equalize":
        return enhance.equalize_histogram
    if name == "median_blur":
        return lambda g: enhance.median_blur(g, p["k"])
    if name == "box_blur":
        return lambda g: enhance.box_blur(g, p["k"])
    if name == "bilateral":
        params = enhance.BilateralParams(p["d"], p["sigma_color"], p["sigma_space"])
        return lambda g: enhance.bilateral_filter(g, params)
    return None


def _threshold(name: str, p: dict, gray: np.ndarray) -> np.ndarray:
    if name == "otsu_threshold":
        return binarize.otsu_binarize(gray)
    params = binarize.AdaptiveParams(p["window"], p["constant_c"], p["weighting"])
    return binarize.adaptive_threshold(gray, params)


def run_pipeline(img: np.ndarray, cfg: PipelineConfig) -> PipelineResult:
    """Apply the configured stages in order.

    Gray-domain stages listed after thresholding act on the black/white
    rendering of the binary image, which is then cut again at mid-gray.
    """
    img = np.asarray(img)
    current = img
    binary = None
    intermediates: list[tuple[str, np.ndarray]] = [("input", img)]

    def need_gray(stage):
        if current.ndim != 2:
            raise PipelineError(f"stage {stage!r} needs a gray image; add a grayscale stage first")

    for stage in cfg.stages:
        name, p = stage.name, stage.params
        op = _gray_op(name, p)
        if name == "grayscale":
            if current.ndim == 3:
                current = raster.to_grayscale(current)
        elif op is not None:
            need_gray(name)
            if binary is None:
                current = op(current)
            else:
                binary = op(raster.binary_to_gray(binary)) < 128
        elif name in THRESHOLD_STAGES:
            need_gray(name)
            binary = _threshold(name, p, current)
        elif name == "deskew":
            params = deskew.SkewSearchParams(p["max_angle"], p["coarse_step"], p["fine_step"])
            angle = deskew.estimate_skew(binary, params).angle
            if current.shape == binary.shape:
                current = raster.rotate(current, angle, fill=255)
            binary = deskew.rotate_binary(binary, angle)
        elif name == "erode":
            binary = binarize.erode(binary, p["k"])
        elif name == "remove_small":
            binary = binarize.remove_small_components(binary, p["min_area"], int(p["connectivity"]))
        elif name == "eliminate_border":
            binary = binarize.eliminate_border(binary, p["band"])
        else:  # pragma: no cover - parse_config guards the stage set
            raise PipelineError(f"unknown stage {name!r}")
        intermediates.append((name, current if binary is None else binary))

    return PipelineResult(binary, current, intermediates)


def dump_intermediates(result: PipelineResult, out_dir: str | os.PathLike) -> list[str]:
    """Write every intermediate as ``<index>_<stage>.pgm`` (``.png`` for colour)."""
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for index, (name, image) in enumerate(result.intermediates):
        ext = "png" if image.ndim == 3 else "pgm"
        path = os.path.join(out_dir, f"{index:02d}_{name}.{ext}")
        raster.write_image(path, image)
        written.append(path)
    return written
