"""Text-side toolkit for Sanskrit/Indic ASR pipelines.

Script <-> SLP1 transliteration, vowel segmentation and syllable weights,
BPE subword models, LM/AM lexicon generation, sandhi-tolerant scoring,
and corpus statistics. See the `aksara` CLI for the scriptable surface.
"""

__version__ = "0.1.0"

from .bpe import BpeModel, train as train_bpe
from .errors import AksaraError
from .lexicon import PronunciationDict, UnitScheme, build_lexicon, build_tokens, vocab_census
from .metrics import align, cer, msd_align, oov_report, score, score_utterances
from .phonology import Coarse, PhoneCategory, classify, coarse, validate_slp1
from .script import from_slp1, get_table, to_slp1
from .segmentation import syllable_weights, vowel_segment, vowel_segment_text
from .stats import consonant_run_stats, rare_word_rate, word_length_stats

__all__ = [
    "AksaraError",
    "BpeModel",
    "Coarse",
    "PhoneCategory",
    "PronunciationDict",
    "UnitScheme",
    "align",
    "build_lexicon",
    "build_tokens",
    "cer",
    "classify",
    "coarse",
    "consonant_run_stats",
    "from_slp1",
    "get_table",
    "msd_align",
    "oov_report",
    "rare_word_rate",
    "score",
    "score_utterances",
    "syllable_weights",
    "to_slp1",
    "train_bpe",
    "validate_slp1",
    "vocab_census",
    "vowel_segment",
    "vowel_segment_text",
    "word_length_stats",
]
