# index_io.py
"""
Binary index files. All integers little-endian; see docs/INDEX_FORMAT.md.

FILE    := MAGIC version HEADER LENGTHS MAP MAP GRID crc32
MAGIC   := "ALCS"
version := u32 (1: modulus 2^61 - 1)
HEADER  := epsilon f64, n u64, z u64, kr.base u64, kr.seed u64
LENGTHS := max_len u32, count u32, count * u32
MAP     := count u64, count * (length u32, fingerprint u64, lo u32, hi u32),
           sorted by (length, fingerprint); left map first
GRID    := z * u32 (y_of_x), z * u64 (boundary_of_x)
crc32   := u32, CRC-32 of every preceding byte

Wavelet levels are rebuilt on load.
"""
from __future__ import annotations

import logging
import struct
import zlib
from dataclasses import dataclass
from typing import BinaryIO, Dict, Tuple

import numpy as np

from .errors import (
    BadMagicError,
    ChecksumMismatchError,
    IndexFormatError,
    IndexIOError,
    ParameterError,
    TruncatedIndexError,
    UnsupportedVersionError,
)
from .index_builder import AlcsIndex, FingerprintRangeMap, LengthSet
from .kr_fingerprint import MODULUS, KrParams
from .range_grid import BoundaryGrid

logger = logging.getLogger(__name__)

MAGIC = b"ALCS"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<dQQQQ")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
ENTRY_DTYPE = np.dtype([("length", "<u4"), ("fp", "<u8"), ("lo", "<u4"), ("hi", "<u4")])


@dataclass(frozen=True)
class IndexHeader:
    version: int
    epsilon: float
    n: int
    z: int
    base: int
    seed: int
    max_len: int
    lengths: Tuple[int, ...]
    left_entries: int
    right_entries: int
    file_bytes: int


def _encode_map(fmap: FingerprintRangeMap) -> bytes:
    items = fmap.sorted_items()
    arr = np.array(
        [(length, fp, lo, hi) for (length, fp), (lo, hi) in items], dtype=ENTRY_DTYPE
    )
    return _U64.pack(len(items)) + arr.tobytes()


def dumps(index: AlcsIndex) -> bytes:
    parts = [
        MAGIC,
        _U32.pack(FORMAT_VERSION),
        _HEADER.pack(index.epsilon, index.n, index.z, index.kr.base, index.kr.seed),
        _U32.pack(index.lengths.max_len),
        _U32.pack(len(index.lengths)),
        np.asarray(index.lengths.lengths, dtype="<u4").tobytes(),
        _encode_map(index.map_left),
        _encode_map(index.map_right),
        index.grid.y_of_x.astype("<u4").tobytes(),
        index.grid.boundary_of_x.astype("<u8").tobytes(),
    ]
    body = b"".join(parts)
    return body + _U32.pack(zlib.crc32(body) & 0xFFFFFFFF)


def save(index: AlcsIndex, stream: BinaryIO) -> int:
    data = dumps(index)
    try:
        stream.write(data)
        stream.flush()
    except OSError as exc:
        raise IndexIOError(f"writing index ({len(data)} bytes) failed: {exc}") from exc
    logger.info("saved index: %d bytes", len(data))
    return len(data)


class _Reader:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def take(self, count: int) -> bytes:
        if count < 0 or self.pos + count > len(self.data):
            raise TruncatedIndexError(
                f"unexpected end of index at byte {self.pos} (wanted {count} more)"
            )
        chunk = self.data[self.pos:self.pos + count]
        self.pos += count
        return chunk

    def unpack(self, fmt: struct.Struct) -> tuple:
        return fmt.unpack(self.take(fmt.size))

    def array(self, dtype: np.dtype, count: int) -> np.ndarray:
        dtype = np.dtype(dtype)
        return np.frombuffer(self.take(dtype.itemsize * count), dtype=dtype)


@dataclass
class _RawIndex:
    header: IndexHeader
    left: np.ndarray
    right: np.ndarray
    y_of_x: np.ndarray
    boundary_of_x: np.ndarray


def _parse(data: bytes) -> _RawIndex:
    if len(data) < len(MAGIC) or data[:len(MAGIC)] != MAGIC:
        raise BadMagicError(f"not an index file (magic {data[:len(MAGIC)]!r})")
    reader = _Reader(data)
    reader.take(len(MAGIC))
    (version,) = reader.unpack(_U32)
    if version != FORMAT_VERSION:
        raise UnsupportedVersionError(f"index format version {version}, expected {FORMAT_VERSION}")

    epsilon, n, z, base, seed = reader.unpack(_HEADER)
    (max_len,) = reader.unpack(_U32)
    (count,) = reader.unpack(_U32)
    lengths = tuple(int(v) for v in reader.array("<u4", count))
    (left_count,) = reader.unpack(_U64)
    left = reader.array(ENTRY_DTYPE, left_count)
    (right_count,) = reader.unpack(_U64)
    right = reader.array(ENTRY_DTYPE, right_count)
    y_of_x = reader.array("<u4", z)
    boundary_of_x = reader.array("<u8", z)

    body_end = reader.pos
    (stored_crc,) = reader.unpack(_U32)
    if reader.pos != len(data):
        raise IndexFormatError(f"{len(data) - reader.pos} trailing bytes after checksum")
    actual_crc = zlib.crc32(data[:body_end]) & 0xFFFFFFFF
    if stored_crc != actual_crc:
        raise ChecksumMismatchError(f"checksum {stored_crc:#010x} != computed {actual_crc:#010x}")

    header = IndexHeader(
        version=version,
        epsilon=epsilon,
        n=n,
        z=z,
        base=base,
        seed=seed,
        max_len=max_len,
        lengths=lengths,
        left_entries=left_count,
        right_entries=right_count,
        file_bytes=len(data),
    )
    return _RawIndex(header, left, right, y_of_x, boundary_of_x)


def _decode_map(arr: np.ndarray) -> FingerprintRangeMap:
    entries: Dict[Tuple[int, int], Tuple[int, int]] = {}
    for length, fp, lo, hi in arr.tolist():
        entries[(length, fp)] = (lo, hi)
    return FingerprintRangeMap(entries=entries)


def loads(data: bytes) -> AlcsIndex:
    raw = _parse(bytes(data))
    h = raw.header
    try:
        if not 2 <= h.base <= MODULUS - 2:
            raise ParameterError(f"fingerprint base {h.base} outside [2, 2^61-3]")
        kr = KrParams(base=h.base, seed=h.seed, modulus=MODULUS)
        if not np.array_equal(np.sort(raw.y_of_x), np.arange(1, h.z + 1)):
            raise ParameterError("y_of_x is not a permutation of [1..z]")
        grid = BoundaryGrid(raw.y_of_x.astype(np.uint32), raw.boundary_of_x.astype(np.uint64))
    except ParameterError as exc:
        logger.warning("index failed validation: %s", exc)
        raise IndexFormatError(f"inconsistent index contents: {exc}") from exc
    return AlcsIndex(
        kr=kr,
        epsilon=h.epsilon,
        n=h.n,
        z=h.z,
        lengths=LengthSet(lengths=h.lengths, epsilon=h.epsilon, max_len=h.max_len),
        map_left=_decode_map(raw.left),
        map_right=_decode_map(raw.right),
        grid=grid,
    )


def _read_all(stream: BinaryIO) -> bytes:
    try:
        return stream.read()
    except OSError as exc:
        raise IndexIOError(f"reading index failed: {exc}") from exc


def load(stream: BinaryIO) -> AlcsIndex:
    index = loads(_read_all(stream))
    logger.info("loaded index: n=%d z=%d", index.n, index.z)
    return index


def read_header(stream: BinaryIO) -> IndexHeader:
    """Parse and checksum a file without rebuilding the grid."""
    return _parse(_read_all(stream)).header


def save_path(index: AlcsIndex, path: str) -> int:
    try:
        with open(path, "wb") as f:
            return save(index, f)
    except OSError as exc:
        raise IndexIOError(f"cannot write {path}: {exc}") from exc


def load_path(path: str) -> AlcsIndex:
    try:
        with open(path, "rb") as f:
            return load(f)
    except OSError as exc:
        raise IndexIOError(f"cannot read {path}: {exc}") from exc


def header_path(path: str) -> IndexHeader:
    try:
        with open(path, "rb") as f:
            return read_header(f)
    except OSError as exc:
        raise IndexIOError(f"cannot read {path}: {exc}") from exc
