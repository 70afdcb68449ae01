"""Two-stage construction of a multilingually balanced vocabulary.

Stage one trains an independent BPE model per language.  Stage two starts
from the 256 byte tokens and repeatedly adds the most frequent unconsumed
candidate of the language whose premium is currently highest, re-encoding
every language with greedy longest-match after each addition.  The result
is a dictionary tokenizer: merged vocabularies from different languages
have no consistent shared merge ranks, so rank-based encoding would be
ill-defined.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .corpus import ParallelCorpus
from .errors import (
    CandidatesExhaustedError,
    DegenerateDenominatorError,
    InvalidArgumentError,
    ValidationError,
)
from .parity import TOTAL_RATIO, PremiumReport, corpus_premiums
from .tokenizers import (
    BOUNDARY_WHITESPACE,
    BYTE_BASE_SIZE,
    BpeModel,
    Encoding,
    Vocabulary,
    bpe_train,
    decode,
    longest_match_encode,
)

AUTO_REFERENCE = "auto"


@dataclass(frozen=True)
class MonolingualModel:
    """One language's trained model plus its candidate ordering.

    The candidate queue holds the model's merge-result token ids, most
    frequent first; frequency is the token's non-overlapping occurrence
    count in the language's own corpus bytes, with ties broken by merge
    rank.
    """

    lang: str
    model: BpeModel
    candidate_queue: tuple[int, ...]
    frequencies: dict[bytes, int]


@dataclass(frozen=True)
class MergeState:
    """Snapshot after ``step`` token additions."""

    shared_vocab: Vocabulary
    per_lang_token_totals: dict[str, int]
    premiums: dict[str, float]
    step: int
    reference: str
    queue_pos: dict[str, int]
    provenance: dict[int, str]
    sentence_counts: dict[str, tuple[int, ...]]


@dataclass(frozen=True)
class FairTokenizer:
    """Greedy longest-match tokenizer over the merged vocabulary."""

    vocab: Vocabulary
    provenance: dict[int, str]

    @property
    def name(self) -> str:
        return f"fair[{len(self.vocab)}]"

    def encode(self, text: str) -> Encoding:
        return longest_match_encode(self.vocab, text)

    def decode(self, ids) -> str:
        return decode(self.vocab, ids)


def train_monolingual_all(
    corpus: ParallelCorpus,
    per_lang_vocab_size: int,
    boundary_mode: str = BOUNDARY_WHITESPACE,
) -> dict[str, MonolingualModel]:
    """Train one BPE model per language on that language's sentences only."""
    models: dict[str, MonolingualModel] = {}
    for lang in corpus.codes:
        model = bpe_train(corpus.sentences(lang), per_lang_vocab_size, boundary_mode)
        lines = corpus.utf8_lines(lang)
        frequencies: dict[bytes, int] = {}
        for rule in model.merges:
            token = model.vocab.token_bytes(rule.result)
            frequencies[token] = sum(line.count(token) for line in lines)
        queue = sorted(
            (rule.result for rule in model.merges),
            key=lambda tid: (-frequencies[model.vocab.token_bytes(tid)], tid),
        )
        models[lang] = MonolingualModel(
            lang=lang,
            model=model,
            candidate_queue=tuple(queue),
            frequencies=frequencies,
        )
    return models


def _premiums(totals: dict[str, int], reference: str) -> dict[str, float]:
    if reference == AUTO_REFERENCE:
        denominator = min(totals.values())
    else:
        if reference not in totals:
            raise ValidationError(f"reference language {reference!r} not in corpus")
        denominator = totals[reference]
    if denominator == 0:
        raise DegenerateDenominatorError("reference token total is zero")
    return {lang: totals[lang] / denominator for lang in totals}


def _count_lines(vocab: Vocabulary, lines, indices) -> tuple[int, ...]:
    return tuple(longest_match_encode(vocab, lines[i]).length for i in indices)


def initial_merge_state(
    corpus: ParallelCorpus, models, reference: str = AUTO_REFERENCE
) -> MergeState:
    """Byte-base starting point: every language counted in raw UTF-8 bytes."""
    if reference != AUTO_REFERENCE and reference not in corpus.languages:
        raise ValidationError(f"reference language {reference!r} not in corpus")
    kept = corpus.kept_indices
    counts = {
        lang: tuple(len(corpus.utf8_lines(lang)[i]) for i in kept)
        for lang in corpus.codes
    }
    totals = {lang: sum(c) for lang, c in counts.items()}
    return MergeState(
        shared_vocab=Vocabulary.byte_base(),
        per_lang_token_totals=totals,
        premiums=_premiums(totals, reference),
        step=0,
        reference=reference,
        queue_pos={lang: 0 for lang in models},
        provenance={},
        sentence_counts=counts,
    )


def merge_step(
    state: MergeState, models, corpus: ParallelCorpus, jobs: int = 1
) -> MergeState:
    """Add one token and recompute every language's totals and premiums.

    The token comes from the queue of the language with the highest current
    premium (ties broken by ascending language code); candidates whose
    byte-string is already shared are skipped without counting as a step.
    """
    pos = dict(state.queue_pos)
    while True:
        eligible = [
            lang
            for lang in sorted(models)
            if pos[lang] < len(models[lang].candidate_queue)
        ]
        if not eligible:
            raise CandidatesExhaustedError("every candidate queue is exhausted")
        chosen = eligible[0]
        for lang in eligible[1:]:
            if state.premiums[lang] > state.premiums[chosen]:
                chosen = lang
        mono = models[chosen]
        candidate_id = mono.candidate_queue[pos[chosen]]
        pos[chosen] += 1
        token = mono.model.vocab.token_bytes(candidate_id)
        if token not in state.shared_vocab:
            break

    new_vocab = state.shared_vocab.extended(token)
    new_id = len(new_vocab) - 1
    kept = corpus.kept_indices

    def recount(lang: str) -> tuple[int, ...]:
        lines = corpus.utf8_lines(lang)
        previous = state.sentence_counts[lang]
        # longest-match output can change only where the new token can occur
        counts = list(previous)
        for slot, i in enumerate(kept):
            if token in lines[i]:
                counts[slot] = longest_match_encode(
                    new_vocab, corpus.sentences(lang)[i]
                ).length
        return tuple(counts)

    codes = list(corpus.codes)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            recounted = list(pool.map(recount, codes))
    else:
        recounted = [recount(lang) for lang in codes]
    sentence_counts = dict(zip(codes, recounted))
    totals = {lang: sum(c) for lang, c in sentence_counts.items()}

    provenance = dict(state.provenance)
    provenance[new_id] = chosen
    return MergeState(
        shared_vocab=new_vocab,
        per_lang_token_totals=totals,
        premiums=_premiums(totals, state.reference),
        step=state.step + 1,
        reference=state.reference,
        queue_pos=pos,
        provenance=provenance,
        sentence_counts=sentence_counts,
    )


def run_fair_merge(
    corpus: ParallelCorpus,
    models,
    target_vocab_size: int,
    reference: str = AUTO_REFERENCE,
    jobs: int = 1,
) -> MergeState:
    """Grow the shared vocabulary to ``target_vocab_size`` (or exhaustion)."""
    if target_vocab_size < BYTE_BASE_SIZE:
        raise InvalidArgumentError(
            f"target_vocab_size must be at least {BYTE_BASE_SIZE} "
            f"(the byte base), got {target_vocab_size}"
        )
    state = initial_merge_state(corpus, models, reference)
    while len(state.shared_vocab) < target_vocab_size:
        try:
            state = merge_step(state, models, corpus, jobs=jobs)
        except CandidatesExhaustedError:
            break
    return state


def fair_merge(
    corpus: ParallelCorpus,
    models,
    target_vocab_size: int,
    reference: str = AUTO_REFERENCE,
    jobs: int = 1,
) -> FairTokenizer:
    """The merged tokenizer for :func:`run_fair_merge`'s final state."""
    state = run_fair_merge(corpus, models, target_vocab_size, reference, jobs)
    return FairTokenizer(vocab=state.shared_vocab, provenance=dict(state.provenance))


def evaluate(
    tokenizer: FairTokenizer,
    corpus: ParallelCorpus,
    pivot: str,
    aggregation: str = TOTAL_RATIO,
) -> PremiumReport:
    """Premium report for the merged tokenizer over a parallel corpus."""
    return corpus_premiums(tokenizer, corpus, pivot, aggregation)
