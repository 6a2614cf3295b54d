"""Byte formats for keys, ciphertexts and messages.

Every file starts with a 16-byte header:

    offset  size  field
    0       4     magic b"GRLW"
    4       1     version (0x01)
    5       1     kind (0x01 pk, 0x02 sk, 0x03 ct, 0x04 msg)
    6       4     n, little-endian
    10      4     q, little-endian
    14      2     reserved, zero

Ring elements follow as n little-endian uint32 residues, rotation block then
reflection block.  pk = a, b; sk = s, e; ct = u, v.  A message is ceil(n/8)
bytes with bits packed least-significant first.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import BadMagic, CoefficientOutOfRange, ParamMismatch, TruncatedBody, UnsupportedVersion
from .group_ring import RingElement
from .params import ParamSet, is_power_of_two, params_for
from .pke import Ciphertext, Plaintext, PublicKey, SecretKey

MAGIC = b"GRLW"
VERSION = 0x01
HEADER = struct.Struct("<4sBBII2s")
HEADER_SIZE = HEADER.size  # 16

KIND_PK, KIND_SK, KIND_CT, KIND_MSG = 0x01, 0x02, 0x03, 0x04
KIND_NAMES = {KIND_PK: "pk", KIND_SK: "sk", KIND_CT: "ct", KIND_MSG: "msg"}


def body_size(kind: int, n: int) -> int:
    if kind == KIND_MSG:
        return (n + 7) // 8
    return 2 * n * 4


def encoded_size(kind: int, n: int) -> int:
    return HEADER_SIZE + body_size(kind, n)


def _header(kind: int, n: int, q: int) -> bytes:
    return HEADER.pack(MAGIC, VERSION, kind, n, q, b"\x00\x00")


def _element_bytes(x: RingElement) -> bytes:
    return x.embed().astype("<u4").tobytes()


def serialize(obj, params: ParamSet | None = None) -> bytes:
    """Encode a PublicKey, SecretKey, Ciphertext or Plaintext.

    Plaintexts carry no modulus, so ``params`` supplies q for their header
    (0 when omitted).
    """
    if isinstance(obj, PublicKey):
        p = obj.params
        return _header(KIND_PK, p.n, p.q) + _element_bytes(obj.a) + _element_bytes(obj.b)
    if isinstance(obj, SecretKey):
        p = obj.params
        return _header(KIND_SK, p.n, p.q) + _element_bytes(obj.s) + _element_bytes(obj.e)
    if isinstance(obj, Ciphertext):
        return _header(KIND_CT, obj.u.n, obj.u.q) + _element_bytes(obj.u) + _element_bytes(obj.v)
    if isinstance(obj, Plaintext):
        q = params.q if params is not None else 0
        return _header(KIND_MSG, obj.n, q) + np.packbits(obj.bits, bitorder="little").tobytes()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def read_header(data: bytes) -> tuple[int, int, int]:
    if len(data) < HEADER_SIZE:
        if not MAGIC.startswith(bytes(data[:4])):
            raise BadMagic("not a GRLW file")
        raise TruncatedBody(f"header needs {HEADER_SIZE} bytes, got {len(data)}")
    magic, version, kind, n, q, reserved = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise BadMagic(f"bad magic {magic!r}")
    if version != VERSION:
        raise UnsupportedVersion(f"version {version:#04x} not supported")
    if kind not in KIND_NAMES:
        raise BadMagic(f"unknown object kind {kind:#04x}")
    if reserved != b"\x00\x00":
        raise ParamMismatch("reserved header bytes must be zero")
    if not is_power_of_two(n) or n < 4:
        raise ParamMismatch(f"n={n} is not a power of two >= 4")
    return kind, n, q


def _resolve_params(n: int, q: int, params: ParamSet | None) -> ParamSet:
    if params is not None:
        if (params.n, params.q) != (n, q):
            raise ParamMismatch(f"file has (n={n}, q={q}), expected (n={params.n}, q={params.q})")
        return params
    try:
        return params_for(n, q)
    except LookupError:
        raise ParamMismatch(f"(n={n}, q={q}) is not a known parameter set") from None


def _elements(body: bytes, n: int, q: int) -> tuple[RingElement, RingElement]:
    words = np.frombuffer(body, dtype="<u4").astype(np.int64)
    if (words >= q).any():
        raise CoefficientOutOfRange(f"coefficient >= q={q}")
    return RingElement.from_embedding(words[:n], q), RingElement.from_embedding(words[n:], q)


def deserialize(data: bytes, expected_kind: int | None = None, params: ParamSet | None = None):
    """Decode any object; ``expected_kind`` and ``params`` pin what the caller wants."""
    data = bytes(data)
    kind, n, q = read_header(data)
    if expected_kind is not None and kind != expected_kind:
        raise ParamMismatch(f"expected {KIND_NAMES[expected_kind]}, file holds {KIND_NAMES[kind]}")
    body = data[HEADER_SIZE:]
    need = body_size(kind, n)
    if len(body) < need:
        raise TruncatedBody(f"{KIND_NAMES[kind]} body needs {need} bytes, got {len(body)}")
    if len(body) > need:
        raise ParamMismatch(f"{len(body) - need} trailing bytes after {KIND_NAMES[kind]} body")

    if kind == KIND_MSG:
        if q != 0:
            _resolve_params(n, q, params)
        bits = np.unpackbits(np.frombuffer(body, dtype=np.uint8), bitorder="little")
        if bits[n:].any():
            raise CoefficientOutOfRange("padding bits beyond n must be zero")
        return Plaintext(bits[:n])

    p = _resolve_params(n, q, params)
    x, y = _elements(body, n, q)
    if kind == KIND_PK:
        return PublicKey(x, y, p)
    if kind == KIND_SK:
        return SecretKey(x, y, p)
    return Ciphertext(x, y)
