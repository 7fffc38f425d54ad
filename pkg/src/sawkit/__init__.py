"""sawkit: verification and search toolkit for t-saw set families.

A family F of subsets of [n] is t-saw when every member A contains at most
sum_{j<=t} C(|A|, j) members of F as subsets (itself included); "saw" alone
means t = 1.  The package constructs the extremal families, checks every
defining property exactly, reproduces the small-ground-set classifications
by exhaustive and pruned search, and probes the even-ground-set intersecting
maximum.
"""

from ._kernels import kernel_name
from .chains import (
    ChainLemmaReport,
    ChainStats,
    MaximalChain,
    chain_maximal_elements,
    chain_stats,
    check_chain_lemma,
    expected_weight,
    lym_sum,
    monte_carlo_chain_stats,
    sample_chain,
)
from .constructions import (
    conjectured_max_intersecting_saw,
    consecutive_layers,
    extremal_intersecting_saw_families_odd,
    extremal_t_saw_families,
    intersecting_saw_even_upper_bound,
    lightning,
    max_t_saw_size,
    middle_layers,
    odd_intersecting_extremal,
    power_set_minus_one,
    star,
)
from .families import (
    DENSE_CAP,
    Family,
    MuTable,
    SawViolation,
    bubble_up,
    elements_of,
    family_from_sets,
    first_disjoint_pair,
    first_saw_violation,
    is_antichain,
    is_intersecting,
    is_t_saw,
    mask_of,
    min_saw_t,
    mu_all,
    mu_single,
    saw_threshold,
)
from .familyio import (
    FamilyDocument,
    FamilyParseError,
    document_from_family,
    emit_family,
    parse_family,
)
from .search import (
    ClassificationReport,
    Mode,
    ProbeReport,
    SearchOutcome,
    SearchProblem,
    SearchStatus,
    conjecture_probe,
    exhaustive_oracle,
    expand_orbits,
    search_max,
    verify_classification,
)
from .sunflowers import (
    OddSearchResult,
    OddSearchStatus,
    SunflowerCertificate,
    find_even_sunflower,
    find_odd_sunflower,
    is_even_sunflower,
    is_odd_sunflower,
    is_sunflower,
)
from .transforms import (
    Gf2Basis,
    binomial,
    gf2_dependency,
    mobius_subset,
    zeta_subset,
    zeta_superset,
)

__version__ = "0.1.0"
