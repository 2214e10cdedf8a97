"""Computational toolkit for the union-closed sets conjecture.

Set families and their closure structure, exact entropy certificates,
rigorous interval verification of the governing inequalities, the extremal
constructions, and exhaustive small-case enumeration.
"""

from .analytic import (
    PHI,
    PSI,
    ProofCertificate,
    h_interval,
    psi_k,
    replay_certificate,
    two_variate_scan,
    verify_gilmer_refinement,
    verify_key_lemma,
)
from .clauses import Clause, ClauseFamily
from .constructions import (
    abundance_inequality,
    approx_uc_experiment,
    make_binomial,
    make_Fm,
    make_S12_4,
    make_Snk,
)
from .entropy import (
    CertificateReport,
    SubsetDistribution,
    Verdict,
    entropy_gain_scan,
    gilmer_certificate,
    gilmer_ratio,
    perturbed_distribution,
    power_corollary_check,
    shannon_entropy,
    uniform_distribution,
    union_distribution,
)
from .enumerate import certificate_coverage, enumerate_union_closed
from .errors import DomainError, ParseError, ResourceError, UCLabError
from .family import (
    BlockPartition,
    FrequencyProfile,
    SetFamily,
    abundant_elements,
    blocks,
    frequency_profile,
    generate_closure,
    is_union_closed,
    parse_family,
    serialize_family,
    union_closure_step,
)
from .interval import Interval

__version__ = "0.1.0"
