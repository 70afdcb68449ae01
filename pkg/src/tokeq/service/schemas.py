"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str


class EncodeRequest(BaseModel):
    tokenizer: str = Field(description="byte | codepoint | bpe:<dir> | fair:<dir>")
    text: str


class EncodeResponse(BaseModel):
    ids: list[int]
    length: int
    unk_codepoints: int
    total_codepoints: int


class DecodeRequest(BaseModel):
    tokenizer: str
    ids: list[int]


class DecodeResponse(BaseModel):
    text: str


class TrainRequest(BaseModel):
    documents: list[str]
    vocab_size: int
    boundary_mode: str = "whitespace"
    out_dir: str | None = Field(
        default=None, description="server-side directory to persist the model"
    )


class TrainResponse(BaseModel):
    merges: int
    vocab_size: int
    out_dir: str | None


class ParityRequest(BaseModel):
    corpus_dir: str
    pivot: str
    tokenizer: str
    aggregation: str = "total-ratio"
    unk_threshold: float = 0.10
    nfc: bool = False


class PremiumRowModel(BaseModel):
    token_total: int
    premium: float
    unk_fraction: float
    included: bool
    char_total: int


class ParityResponse(BaseModel):
    pivot: str
    aggregation: str
    unk_threshold: float | None
    dropped_pairs: int
    rows: dict[str, PremiumRowModel]


class MergeRequest(BaseModel):
    corpus_dir: str
    per_lang_vocab: int
    target_vocab: int
    reference: str = "auto"
    boundary_mode: str = "whitespace"
    jobs: int = 1
    out_dir: str | None = None


class MergeResponse(BaseModel):
    vocab_size: int
    premiums: dict[str, float]
    max_premium: float
    provenance_counts: dict[str, int]
    out_dir: str | None


class AblateRequest(BaseModel):
    model_dir: str
    documents: list[str]
    fractions: list[float]


class AblatePoint(BaseModel):
    fraction: float
    tokens: int
    length_ratio: float


class AblateResponse(BaseModel):
    points: list[AblatePoint]


class CostRequest(BaseModel):
    report: ParityResponse
    pricing: str = Field(description="per-token | per-character")
    unit_price: float
    window: int | None = None
    seconds_per_token: float | None = None


class CostRowModel(BaseModel):
    units: int
    cost: float
    cost_premium: float
    effective_tokens: float | None = None
    estimated_seconds: float | None = None


class CostResponse(BaseModel):
    rows: dict[str, CostRowModel]
