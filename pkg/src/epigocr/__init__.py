"""Preprocessing, OCR orchestration, word-break and evaluation for inscription images."""

from .binarize import (
    AdaptiveParams,
    OtsuStats,
    adaptive_threshold,
    apply_threshold,
    eliminate_border,
    erode,
    otsu_threshold,
    remove_small_components,
)
from .deskew import SkewEstimate, SkewSearchParams, estimate_skew, skew_score
from .enhance import BilateralParams, bilateral_filter, box_blur, equalize_histogram, median_blur
from .evalkit import EvalReport, ImageScore, aggregate, edit_distance, score_image
from .pipeline import PipelineConfig, default_config, parse_config, run_pipeline
from .raster import (
    IntensityHistogram,
    intensity_histogram,
    read_image,
    resize,
    rotate,
    row_projection,
    to_grayscale,
    write_image,
)
from .segment import (
    GraphemeSeq,
    Lexicon,
    Segmentation,
    build_lexicon,
    normalize_base,
    render_spaced,
    split_graphemes,
    word_break,
)

__version__ = "0.1.0"
