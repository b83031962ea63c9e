"""External OCR engine access, box files and the training planner."""

from .boxes import (
    BoxFormatError,
    BoxRecord,
    OverlapReport,
    merge_compound_boxes,
    parse_box_file,
    resolve_overlaps,
    write_box_file,
)
from .engine import (
    EngineError,
    EngineNotFoundError,
    EngineTimeoutError,
    ExternalEngine,
    MockEngine,
    ModelNotFoundError,
    OcrEngine,
    OcrRequest,
    OcrResult,
    image_fingerprint,
    recognize,
)
from .training import PlanStep, TrainingPlan, TrainingPlanError, execute_plan, plan_training

__all__ = [
    "BoxFormatError",
    "BoxRecord",
    "EngineError",
    "EngineNotFoundError",
    "EngineTimeoutError",
    "ExternalEngine",
    "MockEngine",
    "ModelNotFoundError",
    "OcrEngine",
    "OcrRequest",
    "OcrResult",
    "OverlapReport",
    "PlanStep",
    "TrainingPlan",
    "TrainingPlanError",
    "execute_plan",
    "image_fingerprint",
    "merge_compound_boxes",
    "parse_box_file",
    "plan_training",
    "recognize",
    "resolve_overlaps",
    "write_box_file",
]
