"""Prime-field NTT variants, modular-arithmetic kernels, and a bank model."""

from .errors import (
    BadFactorization,
    InvalidSize,
    NotPowerOfTwo,
    NotPrime,
    NttError,
    SearchBudgetExceeded,
    SizeMismatch,
    SizeNotSupported,
    UnsupportedVariant,
)
from .modmath import (
    DEFAULT_PRIME,
    FieldParams,
    bit_reverse_index,
    bit_reverse_permute,
    find_primitive_root,
    mod_add,
    mod_mul_wide,
    mod_pow,
    mod_sub,
    shoup_mul,
    shoup_precompute,
)
from .twiddle import FORWARD, INVERSE, TwiddleTable, build_table, root_of_unity
from .algorithms import (
    VARIANTS,
    NttPlan,
    intt,
    make_plan,
    naive_dft,
    ntt,
    ntt_dif,
    ntt_dit,
    ntt_flat,
    ntt_pease,
    ntt_pease_nc,
    ntt_sixstep,
    ntt_stockham,
    run_plan,
)
from .polymul import cyclic_mul_ntt, pointwise_mul, schoolbook_cyclic
from .bankmodel import (
    AccessTrace,
    BankConfig,
    BankMap,
    ConflictReport,
    bank_of,
    blocksize,
    conflict_graph,
    explicit,
    feasible_partition,
    gen_trace,
    interleave,
    pease_nc_partition_check,
    schedule,
    separation_partners,
)
from .estimator import NttTransform

__version__ = "0.1.0"
