"""narrastyle: stylometric profiling and scoring of narrative texts.

The pipeline reads dependency-parsed documents (CoNLL-U), extracts a
33-dimension linguistic feature vector per document (lexical, syntactic
and semantic families), normalizes by mean-scaling against a baseline
corpus, and either clusters documents over a Pearson similarity network
(Louvain) or scores candidates against a gold-standard baseline with a
differential polarity index validated against human ratings.
"""

from ._kernels import BACKEND
from .conllu import parse_conllu, parse_conllu_file
from .model import Document, Sentence, Token
from .pipeline import extract_document
from .registry import default_registry
from .resources import load_resources

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Document", "Sentence", "Token", "__version__",
    "default_registry", "extract_document", "load_resources",
    "parse_conllu", "parse_conllu_file",
]
