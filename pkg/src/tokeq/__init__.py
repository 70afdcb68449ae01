"""tokeq: measure and mitigate cross-language tokenization length disparities."""

from .ablation import AblationCurve, ablate
from .corpus import ParallelCorpus, char_counts, load_parallel, save_parallel
from .errors import TokeqError
from .fairmerge import (
    FairTokenizer,
    MergeState,
    MonolingualModel,
    evaluate,
    fair_merge,
    initial_merge_state,
    merge_step,
    run_fair_merge,
    train_monolingual_all,
)
from .model_io import (
    load_fair_tokenizer,
    load_model,
    resolve_tokenizer,
    save_fair_tokenizer,
    save_model,
)
from .parity import (
    PremiumReport,
    PremiumRow,
    PricingScheme,
    apply_unk_filter,
    context_capacity,
    corpus_premiums,
    cost_table,
    latency_table,
    sentence_premium,
)
from .tokenizers import (
    BpeModel,
    BpeTokenizer,
    ByteTokenizer,
    ClosedCodepointTokenizer,
    CodepointTokenizer,
    Encoding,
    LongestMatchTokenizer,
    MergeRule,
    Vocabulary,
    bpe_encode,
    bpe_train,
    codepoint_encode,
    decode,
    longest_match_encode,
    rank_prefix,
    unk_fraction,
    utf8_byte_encode,
)

__version__ = "0.1.0"

__all__ = [
    "AblationCurve",
    "BpeModel",
    "BpeTokenizer",
    "ByteTokenizer",
    "ClosedCodepointTokenizer",
    "CodepointTokenizer",
    "Encoding",
    "FairTokenizer",
    "LongestMatchTokenizer",
    "MergeRule",
    "MergeState",
    "MonolingualModel",
    "ParallelCorpus",
    "PremiumReport",
    "PremiumRow",
    "PricingScheme",
    "TokeqError",
    "Vocabulary",
    "ablate",
    "apply_unk_filter",
    "bpe_encode",
    "bpe_train",
    "char_counts",
    "codepoint_encode",
    "context_capacity",
    "corpus_premiums",
    "cost_table",
    "decode",
    "evaluate",
    "fair_merge",
    "initial_merge_state",
    "latency_table",
    "load_fair_tokenizer",
    "load_model",
    "load_parallel",
    "longest_match_encode",
    "merge_step",
    "rank_prefix",
    "resolve_tokenizer",
    "run_fair_merge",
    "save_fair_tokenizer",
    "save_model",
    "save_parallel",
    "sentence_premium",
    "train_monolingual_all",
    "unk_fraction",
    "utf8_byte_encode",
]
