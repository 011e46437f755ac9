"""Term rewriting analysis: positions and replacement, substitutions and
unification, one-step and parallel reduction, critical pairs and
confluence verdicts."""

from .errors import InputError, ParseError, ResourceError, RwkitError
from .parser import format_trs, parse_term, parse_trs
from .rewriting import TRS, Redex, RewriteRule
from .substitution import Substitution
from .terms import App, Position, Term, Var, const

__version__ = "0.1.0"
