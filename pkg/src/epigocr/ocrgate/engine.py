"""Recognition through an external OCR engine, or an in-memory stand-in."""

from __future__ import annotations

import hashlib
import json
import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from typing import Protocol, Union

import numpy as np

from .. import raster
from .boxes import BoxRecord

ENGINE_BIN_ENV = "EPIG_ENGINE_BIN"
MODEL_DIR_ENV = "EPIG_MODEL_DIR"
DEFAULT_ENGINE_BIN = "tesseract"
DEFAULT_TIMEOUT = 120.0
DEFAULT_PSM = 6


class EngineError(RuntimeError):
    """The engine ran but failed; ``diagnostics`` keeps its output lines."""

    def __init__(self, message: str, diagnostics: list[str] | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class EngineNotFoundError(EngineError):
    pass


class ModelNotFoundError(EngineError):
    pass


class EngineTimeoutError(EngineError):
    pass


ImageInput = Union[str, os.PathLike, np.ndarray]


@dataclass(frozen=True)
class OcrRequest:
    """One recognition job.

    ``image_id`` is an optional caller label (e.g. the source file stem)
    used only by :class:`MockEngine` for fixture lookup.
    """

    image: ImageInput
    model: str = "atam"
    psm: int = DEFAULT_PSM
    image_id: str | None = None

    def __post_init__(self):
        if not self.model:
            raise ValueError("model identifier must be non-empty")
        if not 0 <= int(self.psm) <= 13:
            raise ValueError(f"psm must be in [0, 13], got {self.psm}")


@dataclass
class OcrResult:
    text: str
    boxes: list[BoxRecord] | None = None
    engine_diagnostics: list[str] = field(default_factory=list)


class OcrEngine(Protocol):
    def run(
        self, image_path: str, model: str, psm: int, scratch: str, image_id: str | None = None
    ) -> OcrResult: ...


def image_fingerprint(img: np.ndarray) -> str:
    """sha256 over shape, dtype and pixel bytes; binary images hash as 0/255 gray."""
    img = np.asarray(img)
    if img.dtype == np.bool_:
        img = raster.binary_to_gray(img)
    h = hashlib.sha256()
    h.update(repr((img.shape, str(img.dtype))).encode())
    h.update(np.ascontiguousarray(img).tobytes())
    return h.hexdigest()


class ExternalEngine:
    """Runs ``<bin> <image> <out-base> -l <model> --psm <n>`` in a subprocess."""

    def __init__(self, binary: str | None = None, model_dir: str | None = None, timeout: float = DEFAULT_TIMEOUT):
        self.binary = binary or os.environ.get(ENGINE_BIN_ENV) or DEFAULT_ENGINE_BIN
        self.model_dir = model_dir or os.environ.get(MODEL_DIR_ENV)
        self.timeout = timeout

    def command(self, image_path: str, out_base: str, model: str, psm: int) -> list[str]:
        cmd = [self.binary, image_path, out_base, "-l", model, "--psm", str(psm)]
        if self.model_dir:
            cmd += ["--tessdata-dir", self.model_dir]
        return cmd

    def available(self) -> bool:
        return shutil.which(self.binary) is not None

    def run(self, image_path: str, model: str, psm: int, scratch: str, image_id: str | None = None) -> OcrResult:
        out_base = os.path.join(scratch, "out")
        cmd = self.command(image_path, out_base, model, psm)
        try:
            proc = subprocess.run(cmd, capture_output=True, timeout=self.timeout, check=False)
        except FileNotFoundError:
            raise EngineNotFoundError(f"OCR engine binary not found: {self.binary}") from None
        except PermissionError:
            raise EngineNotFoundError(f"OCR engine binary is not executable: {self.binary}") from None
        except subprocess.TimeoutExpired as exc:
            diag = _lines(exc.stderr)
            raise EngineTimeoutError(f"OCR engine timed out after {self.timeout} s", diag) from None

        diagnostics = _lines(proc.stderr) + _lines(proc.stdout)
        if proc.returncode != 0:
            stderr = "\n".join(diagnostics)
            if "Failed loading language" in stderr or "Error opening data file" in stderr:
                raise ModelNotFoundError(f"model {model!r} not found", diagnostics)
            raise EngineError(f"OCR engine exited with status {proc.returncode}", diagnostics)
        try:
            with open(out_base + ".txt", encoding="utf-8") as fh:
                text = fh.read()
        except FileNotFoundError:
            raise EngineError("OCR engine produced no text output", diagnostics) from None
        return OcrResult(text=text, engine_diagnostics=diagnostics)


def _lines(data) -> list[str]:
    if not data:
        return []
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    return data.splitlines()


class MockEngine:
    """Fixture-backed engine for tests and offline runs.

    ``fixtures`` maps an image fingerprint, an image file name, or a file
    stem to the text to return. ``models`` restricts which model names are
    accepted; ``None`` accepts any. Every call is recorded in ``calls``.
    """

    def __init__(self, fixtures: dict[str, str], models: set[str] | None = None):
        self.fixtures = dict(fixtures)
        self.models = set(models) if models is not None else None
        self.calls: list[dict] = []

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "MockEngine":
        """Load ``{"fixtures": {...}, "models": [...]}`` or a bare key->text map."""
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        if "fixtures" in doc and isinstance(doc["fixtures"], dict):
            models = doc.get("models")
            return cls(doc["fixtures"], set(models) if models is not None else None)
        return cls(doc)

    def run(self, image_path: str, model: str, psm: int, scratch: str, image_id: str | None = None) -> OcrResult:
        self.calls.append({"image": image_path, "model": model, "psm": psm, "image_id": image_id})
        if self.models is not None and model not in self.models:
            msg = f"Error opening data file {model}.traineddata\nFailed loading language '{model}'"
            raise ModelNotFoundError(f"model {model!r} not found", msg.splitlines())
        keys = [image_fingerprint(raster.read_image(image_path))]
        if image_id:
            keys.append(image_id)
        keys += [os.path.basename(image_path), os.path.splitext(os.path.basename(image_path))[0]]
        for key in keys:
            if key in self.fixtures:
                return OcrResult(text=self.fixtures[key], engine_diagnostics=[f"mock: matched {key}"])
        raise EngineError(f"mock engine has no fixture for {keys[1] if len(keys) > 1 else keys[0]}")


def recognize(req: OcrRequest, engine: OcrEngine) -> OcrResult:
    """Run ``engine`` on the request image and return its text verbatim.

    In-memory images are written to a per-call scratch directory, which is
    removed on every exit path.
    """
    with tempfile.TemporaryDirectory(prefix="epigocr-") as scratch:
        if isinstance(req.image, np.ndarray):
            image_path = os.path.join(scratch, "input.png")
            raster.write_image(image_path, req.image)
        else:
            image_path = os.fspath(req.image)
            if not os.path.isfile(image_path):
                raise FileNotFoundError(image_path)
        return engine.run(image_path, req.model, int(req.psm), scratch, req.image_id)
