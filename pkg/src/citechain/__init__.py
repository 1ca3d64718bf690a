"""Trial-chain distribution family and citation analytics.

Layout:

- `specfun`: self-contained special functions (log-gamma, zeta,
  terminating 2F1, truncated power series) tuned for the ranges the
  distribution code needs.
- `trial_chain`: first-success laws with success probability p/k^gamma,
  their tails, asymptotic shapes, improper mass, samplers, and the
  growing-probability variant.
- `author_model`: compound law of total citations for an author whose
  paper count follows the gamma = 1 chain.
- `hirsch`: analytic h-index distribution under the chain model plus
  event-level simulation.
- `scientometrics`: citation-table statistics (kappa, correlations) with
  embedded reference listings.
- `cli`: `citechain` command-line interface over all of the above.
"""

from .author_model import AuthorParams, author_pmf, author_pmf_series
from .hirsch import HirschMode, HirschParams, hirsch_pmf, simulate_hirsch
from .scientometrics import AuthorRecord, ReportTable, load_dataset, report
from .tables import PmfTable
from .trial_chain import (
    GrowingChainParams,
    Regime,
    TrialChainParams,
    classify_regime,
    estimate_constant,
    growing_pmf,
    improper_mass,
    log_pmf,
    log_tail,
    pmf,
    pmf_table,
    sample,
    sample_many,
    sibuya_tail_closed,
    tail,
)

__version__ = "0.1.0"

__all__ = [
    "AuthorParams",
    "AuthorRecord",
    "GrowingChainParams",
    "HirschMode",
    "HirschParams",
    "PmfTable",
    "Regime",
    "ReportTable",
    "TrialChainParams",
    "__version__",
    "author_pmf",
    "author_pmf_series",
    "classify_regime",
    "estimate_constant",
    "growing_pmf",
    "hirsch_pmf",
    "improper_mass",
    "load_dataset",
    "log_pmf",
    "log_tail",
    "pmf",
    "pmf_table",
    "report",
    "sample",
    "sample_many",
    "sibuya_tail_closed",
    "simulate_hirsch",
    "tail",
]
