from .cyclo import CycNum as CycNum
from .gf import build_field as build_field
from .gf import extend as extend
from .gf import FieldDesc as FieldDesc
from .lfun import l_polynomial as l_polynomial
from .lfun import LPolynomial as LPolynomial
from .mpoly import MultiPoly as MultiPoly
from .pipeline import cmd_verify as cmd_verify
from .problem import parse_problem as parse_problem
from .sums import CharacterSpec as CharacterSpec
from .sums import exponential_sum as exponential_sum

__version__ = "0.1.0.dev0"
