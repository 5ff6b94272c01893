"""Perfect tilings of 3-graphs by the generalised triangle T = {abc, abd, cde}.

The exact search, the rational LP and the structure checks all work on
``ThreeGraph`` values from :mod:`tiling.hypergraph`; generators build the
named constructions and seeded random instances used by the experiments.
"""

from tiling.config import Settings
from tiling.copies import TCopy, count_copies, enumerate_copies, supports_T
from tiling.errors import Infeasible, InvalidArgument, NotFound, TilingError, Unknown
from tiling.exact import Tiling, max_tiling, perfect_tiling
from tiling.fractional import FarkasCertificate, FractionalTiling, frac_perfect, verify_certificate
from tiling.hypergraph import FiveGraph, ThreeGraph, parse_three_graph

__all__ = [
    "FarkasCertificate",
    "FiveGraph",
    "FractionalTiling",
    "Infeasible",
    "InvalidArgument",
    "NotFound",
    "Settings",
    "TCopy",
    "ThreeGraph",
    "Tiling",
    "TilingError",
    "Unknown",
    "count_copies",
    "enumerate_copies",
    "frac_perfect",
    "max_tiling",
    "parse_three_graph",
    "perfect_tiling",
    "supports_T",
    "verify_certificate",
]
