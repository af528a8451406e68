from .audit import (
    EXACT,
    OBSERVATIONAL,
    AuditReport,
    AuditStep,
    harmonic_bound_check,
    harmonic_chain_table,
    inequality_audit,
    run_audit,
)
from .buckets import BucketProfile, abel_identity_check, bucket_profile
from .collisions import (
    CollisionHistogram,
    collision_histogram,
    collision_pairs,
    verify_cross_representations,
)
from .constants import (
    ConstantsTable,
    constants_table,
    corollary3_bound,
    gamma_complement_constant,
    optimal_K,
    theorem1_constant,
    theorem2_constant,
    van_doorn_upper,
)
