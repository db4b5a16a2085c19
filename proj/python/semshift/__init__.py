"""Lexical semantic change detection over token embedding stores."""

from ._semshift import (
    Detector,
    SemshiftError,
    Store,
    agglomerate,
    ami,
    detect,
    jsd,
    load_store,
    make_benchmark,
    pca2,
    purity,
    rank_words,
    rectification_vector,
    set_thread_count,
    solve_assignment,
    spearman,
    thread_count,
    token_labels,
    tune,
    two_pass,
)

__all__ = [
    "Detector",
    "SemshiftError",
    "Store",
    "agglomerate",
    "ami",
    "detect",
    "jsd",
    "load_store",
    "make_benchmark",
    "pca2",
    "purity",
    "rank_words",
    "rectification_vector",
    "set_thread_count",
    "solve_assignment",
    "spearman",
    "thread_count",
    "token_labels",
    "tune",
    "two_pass",
]
