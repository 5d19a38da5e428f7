"""Alignment-free sequence comparison with minimal absent words."""
from .compare import LwResult, lw_between, lw_distance, lw_distance_circular
from .io_formats import DistanceMatrix, Sequence, parse_fasta, read_phylip, write_fasta, write_phylip
from .matrix_driver import pairwise_matrix
from .maw_core import DNA, Alphabet, MawSet, MawTuple, circular_maws, compute_maws
from .suffix_structures import SuffixStructures, build_suffix_structures

__version__ = "0.1.0"
