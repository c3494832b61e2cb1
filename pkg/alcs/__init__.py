"""Approximate longest common substring over an LZ77-compressed text index."""
from .errors import (
    AlcsError,
    BadMagicError,
    ChecksumMismatchError,
    FingerprintCollisionError,
    IndexFormatError,
    IndexIOError,
    ParameterError,
    TruncatedIndexError,
    UnsupportedVersionError,
)
from .index_builder import AlcsIndex, LengthSet, build_index, length_set
from .index_io import load, load_path, loads, dumps, read_header, save, save_path
from .kr_fingerprint import KrParams, draw_params
from .lz_parse import Lz77Parse, Phrase, lz77_parse
from .oracle import LcsAnswer, exact_lcs
from .query_engine import Algo, QueryResult, QueryStats, query, query_many, query_naive, query_pruned, verify_result
from .range_grid import BoundaryGrid, grid_build, report_any

__version__ = "0.1.0"
