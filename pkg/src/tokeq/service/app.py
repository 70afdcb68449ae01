"""FastAPI service exposing the toolkit over HTTP.

Every endpoint is a thin wrapper over the core package; file-path fields
refer to paths on the server host.  Run with:

    uvicorn tokeq.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__, ablation, fairmerge, model_io, parity
from ..corpus import load_parallel
from ..errors import TokeqError
from ..tokenizers import bpe_train
from . import schemas

app = FastAPI(title="tokeq", version=__version__)


def _fail(exc: Exception) -> HTTPException:
    cause: BaseException | None = exc
    while cause is not None:
        if isinstance(cause, (FileNotFoundError, NotADirectoryError)):
            return HTTPException(status_code=404, detail=str(exc))
        cause = cause.__cause__
    return HTTPException(status_code=400, detail=str(exc))


def _report_response(report: parity.PremiumReport) -> schemas.ParityResponse:
    return schemas.ParityResponse(
        pivot=report.pivot,
        aggregation=report.aggregation,
        unk_threshold=report.unk_threshold,
        dropped_pairs=report.dropped_pairs,
        rows={
            code: schemas.PremiumRowModel(
                token_total=row.token_total,
                premium=row.premium,
                unk_fraction=row.unk_fraction,
                included=row.included,
                char_total=row.char_total,
            )
            for code, row in sorted(report.rows.items())
        },
    )


def _report_from_response(payload: schemas.ParityResponse) -> parity.PremiumReport:
    return parity.PremiumReport(
        pivot=payload.pivot,
        aggregation=payload.aggregation,
        rows={
            code: parity.PremiumRow(
                token_total=row.token_total,
                premium=row.premium,
                unk_fraction=row.unk_fraction,
                included=row.included,
                char_total=row.char_total,
            )
            for code, row in payload.rows.items()
        },
        dropped_pairs=payload.dropped_pairs,
        unk_threshold=payload.unk_threshold,
    )


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(version=__version__)


@app.post("/encode", response_model=schemas.EncodeResponse)
def encode(request: schemas.EncodeRequest) -> schemas.EncodeResponse:
    try:
        tokenizer = model_io.resolve_tokenizer(request.tokenizer)
        encoding = tokenizer.encode(request.text)
    except (TokeqError, OSError) as exc:
        raise _fail(exc) from exc
    return schemas.EncodeResponse(
        ids=list(encoding.ids),
        length=encoding.length,
        unk_codepoints=encoding.unk_codepoints,
        total_codepoints=encoding.total_codepoints,
    )


@app.post("/decode", response_model=schemas.DecodeResponse)
def decode_ids(request: schemas.DecodeRequest) -> schemas.DecodeResponse:
    try:
        tokenizer = model_io.resolve_tokenizer(request.tokenizer)
        text = tokenizer.decode(request.ids)
    except (TokeqError, OSError) as exc:
        raise _fail(exc) from exc
    return schemas.DecodeResponse(text=text)


@app.post("/train", response_model=schemas.TrainResponse)
def train(request: schemas.TrainRequest) -> schemas.TrainResponse:
    try:
        model = bpe_train(request.documents, request.vocab_size, request.boundary_mode)
        if request.out_dir is not None:
            model_io.save_model(model, request.out_dir)
    except (TokeqError, OSError) as exc:
        raise _fail(exc) from exc
    return schemas.TrainResponse(
        merges=len(model.merges),
        vocab_size=len(model.vocab),
        out_dir=request.out_dir,
    )


@app.post("/parity", response_model=schemas.ParityResponse)
def parity_report(request: schemas.ParityRequest) -> schemas.ParityResponse:
    try:
        corpus = load_parallel(request.corpus_dir, nfc=request.nfc)
        tokenizer = model_io.resolve_tokenizer(request.tokenizer)
        report = parity.corpus_premiums(
            tokenizer, corpus, request.pivot, request.aggregation
        )
        report = parity.apply_unk_filter(report, request.unk_threshold)
    except (TokeqError, OSError) as exc:
        raise _fail(exc) from exc
    return _report_response(report)


@app.post("/merge", response_model=schemas.MergeResponse)
def merge(request: schemas.MergeRequest) -> schemas.MergeResponse:
    try:
        corpus = load_parallel(request.corpus_dir)
        models = fairmerge.train_monolingual_all(
            corpus, request.per_lang_vocab, request.boundary_mode
        )
        state = fairmerge.run_fair_merge(
            corpus, models, request.target_vocab, request.reference, jobs=request.jobs
        )
        tokenizer = fairmerge.FairTokenizer(
            vocab=state.shared_vocab, provenance=dict(state.provenance)
        )
        if request.out_dir is not None:
            model_io.save_fair_tokenizer(tokenizer, request.out_dir)
    except (TokeqError, OSError) as exc:
        raise _fail(exc) from exc
    counts: dict[str, int] = {}
    for lang in tokenizer.provenance.values():
        counts[lang] = counts.get(lang, 0) + 1
    return schemas.MergeResponse(
        vocab_size=len(tokenizer.vocab),
        premiums=dict(sorted(state.premiums.items())),
        max_premium=max(state.premiums.values()),
        provenance_counts=dict(sorted(counts.items())),
        out_dir=request.out_dir,
    )


@app.post("/ablate", response_model=schemas.AblateResponse)
def ablate(request: schemas.AblateRequest) -> schemas.AblateResponse:
    try:
        model = model_io.load_model(request.model_dir)
        curve = ablation.ablate(model, request.documents, request.fractions)
    except (TokeqError, OSError) as exc:
        raise _fail(exc) from exc
    return schemas.AblateResponse(
        points=[
            schemas.AblatePoint(fraction=f, tokens=total, length_ratio=ratio)
            for f, total, ratio in zip(
                curve.fractions, curve.token_totals, curve.length_ratios
            )
        ]
    )


@app.post("/cost", response_model=schemas.CostResponse)
def cost(request: schemas.CostRequest) -> schemas.CostResponse:
    try:
        report = _report_from_response(request.report)
        pricing = parity.PricingScheme(request.pricing, request.unit_price)
        chars = {code: row.char_total for code, row in report.rows.items()}
        costs = parity.cost_table(report, pricing, chars)
        included = [c for c in report.codes() if report.rows[c].included]
        capacity = (
            parity.context_capacity(report, request.window, included)
            if request.window is not None
            else None
        )
        latency = (
            parity.latency_table(report, request.seconds_per_token)
            if request.seconds_per_token is not None
            else None
        )
    except TokeqError as exc:
        raise _fail(exc) from exc
    rows = {}
    for code in included:
        rows[code] = schemas.CostRowModel(
            units=costs[code].units,
            cost=costs[code].cost,
            cost_premium=costs[code].cost_premium,
            effective_tokens=None if capacity is None else capacity[code],
            estimated_seconds=None if latency is None else latency[code],
        )
    return schemas.CostResponse(rows=rows)
