"""Sieved integer sets, admissible patterns, entropy, and certified symmetry
search for hereditary {0,1} subshifts built from pairwise coprime moduli."""

__version__ = "0.1.0"

from .admissibility import (
    AdmissibilityVerdict,
    DensityEstimate,
    FinitePattern,
    PeriodicityCertificate,
    Word,
    bfree_window,
    density_estimate,
    format_pattern,
    is_admissible,
    occupied_residues,
    parse_pattern,
    parse_word,
    periodic_extension_window,
    periodicity_certificate,
    reflect,
)
from .blockcodes import (
    BlockCodeFamily,
    SingletonProfile,
    admissible_windows,
    apply_family,
    apply_to_pattern,
    canonicalize,
    commutes_with_shift_k,
    compose,
    injective_on_language,
    parity_family,
    reflect_family,
    shift_family,
    singleton_profile,
    windex_of_offsets,
    window_offsets,
)
from .centralizer import (
    CollisionPair,
    H2Report,
    ParityMap,
    ReversingElement,
    SearchReport,
    Survivor,
    apply_reversing,
    classify_survivor,
    reversing_elements,
    search,
    verify_collision,
    verify_h2_example,
)
from .errors import (
    BFreeError,
    CapExceeded,
    ContainsOne,
    DegenerateCase,
    LengthTooLarge,
    ModuliNotCoprime,
    NotCoprime,
    NotFoundInTruncation,
    OddTranslation,
    Overflow,
    RadiusTooSmall,
    RepeatedOrUnordered,
    WindowTooShort,
)
from .language import (
    EntropyReport,
    closed_form_entropy,
    count_admissible_words,
    entropy_ratio,
    entropy_report,
    enumerate_admissible_words,
)
from .numtheory import (
    BSpec,
    bspec_from_config,
    bspec_from_shorthand,
    bspec_to_config,
    crt_solve,
    find_coprime_element,
    load_bspec,
    prime_powers_bspec,
    primes_upto,
    save_bspec,
    validate_bspec,
)
from .witnesses import (
    WitnessCertificate,
    verify_certificate,
    witness_noextra,
    witness_periodic,
    witness_trans1,
    witness_trans3,
)
