"""Fast algebraic degree of Boolean functions given by truth tables."""
from .anft import anf_oracle, anft_bitwise, anft_bytewise
from .core import (
    AnfVector,
    ByteTable,
    TruthTable,
    from_bitstring,
    pack,
    parity_check,
    parity_check_bytes,
    unpack,
    weight_bytes,
    weight_words,
)
from .degree import (
    NEG_INF,
    Degree,
    NegInfinity,
    PipelineKind,
    Tail,
    deg_cb_wlo,
    deg_es,
    deg_oracle,
    deg_wlo_bitwise,
    deg_wlo_bytewise,
    method_bitwise,
    method_bytewise,
)
from .distribution import count_formula, enumerate_distribution, high_degree_fraction
from .wlo import MaskSet, WloSequence, masks_direct, masks_from_wlo, wlo_bucket, wlo_recursive

__version__ = "0.1.0"
