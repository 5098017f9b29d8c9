"""Good presentations, cyclic covers and free-quotient certificates for
finitely presented groups with deficiency at least two."""

from .word import Word, MalformedInput, parse_word, format_word
from .nielsen import Automorphism, Inv, RightMult, Swap
from .presentation import Presentation, parse, serialize, is_bp
from .goodpres import make_good, verify_good, NotBP
from .cover import cover, reidemeister_schreier, zk_coset_table, CosetTable
from .freequot import certify_large, verify_certificate, search_certificate, NotFound
from .lowindex import low_index_subgroups, refute_largeness_at_index, smith_normal_form, abelianization

__all__ = [
    "Word", "MalformedInput", "parse_word", "format_word",
    "Automorphism", "Inv", "RightMult", "Swap",
    "Presentation", "parse", "serialize", "is_bp",
    "make_good", "verify_good", "NotBP",
    "cover", "reidemeister_schreier", "zk_coset_table", "CosetTable",
    "certify_large", "verify_certificate", "search_certificate", "NotFound",
    "low_index_subgroups", "refute_largeness_at_index", "smith_normal_form", "abelianization",
]

__version__ = "0.1.0"
