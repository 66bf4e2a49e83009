"""Toolkit for identifying bigram noun-noun multiword expressions.

Pipeline: raw text -> sentence segmentation -> candidate extraction from
NP chunks and surface heuristics -> statistical / lexical-semantic /
syntactic features -> random forest classification -> k-fold evaluation.
"""

__version__ = "0.1.0"
