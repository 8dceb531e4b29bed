from harmonic_ctc.corpus.examples import (
    CONVEX,
    STARLIKE,
    BUILTIN_CORPUS,
    CorpusEntry,
    RandomMap,
    corpus_entry,
    example_one_family,
    example_one_margin,
    random_sufficient_maps,
)
