from __future__ import annotations

import numpy as np
from typing import Iterable, List

WORD_BITS = 64


class BitVector(object):
    """
    Immutable fixed-width bit-vector stored as little-endian 64-bit words.

    Bit `q` lives in word `q // 64` at position `q % 64`; this layout is the one written to
    instance files and must not change.

    :param num_bits: width of the vector
    :type num_bits: int

    :param words: optional word array of length `ceil(num_bits / 64)`
    :type words: Optional[np.ndarray]
    """

    __slots__ = ("num_bits", "words", "_hash")

    def __init__(self, num_bits: int, words: np.ndarray = None):
        assert num_bits >= 0, "`num_bits` must be non-negative."

        num_words = max((num_bits + WORD_BITS - 1) // WORD_BITS, 1)
        if words is None:
            words = np.zeros([num_words], dtype = np.uint64)
        else:
            words = np.ascontiguousarray(words, dtype = np.uint64)
            assert words.shape[0] == num_words, f"Expected {num_words} words but got `{words.shape[0]}`."

        words.setflags(write = False)
        self.num_bits = num_bits
        self.words = words
        self._hash = None

    @classmethod
    def from_indices(cls, num_bits: int, indices: Iterable[int]):
        words = np.zeros([max((num_bits + WORD_BITS - 1) // WORD_BITS, 1)], dtype = np.uint64)
        for q in indices:
            assert 0 <= q < num_bits, f"Bit index `{q}` out of range for width {num_bits}."
            words[q // WORD_BITS] ^= np.uint64(1) << np.uint64(q % WORD_BITS)

        return cls(num_bits, words)

    @classmethod
    def from_array(cls, arr: np.ndarray):
        arr = np.asarray(arr).astype(np.uint8) & 1
        return cls.from_indices(arr.shape[0], np.nonzero(arr)[0].tolist())

    @classmethod
    def from_int(cls, num_bits: int, value: int):
        num_words = max((num_bits + WORD_BITS - 1) // WORD_BITS, 1)
        words = np.array([(value >> (WORD_BITS * i)) & 0xFFFFFFFFFFFFFFFF for i in range(num_words)], dtype = np.uint64)
        return cls(num_bits, words)

    def to_list(self) -> List[int]:
        return [q for q in self]

    def to_array(self) -> np.ndarray:
        arr = np.zeros([self.num_bits], dtype = np.uint8)
        for q in self:
            arr[q] = 1

        return arr

    def to_int(self) -> int:
        value = 0
        for i in range(self.words.shape[0]):
            value |= int(self.words[i]) << (WORD_BITS * i)

        return value

    def hasitem(self, q: int) -> bool:
        if q < 0 or q >= self.num_bits:
            return False

        return bool((int(self.words[q // WORD_BITS]) >> (q % WORD_BITS)) & 1)

    def parity(self) -> int:
        return len(self) & 1

    def is_zero(self) -> bool:
        return not np.any(self.words)

    def _check_width(self, other: BitVector):
        assert self.num_bits == other.num_bits, f"Width mismatch: {self.num_bits} vs `{other.num_bits}`."

    def __xor__(self, other: BitVector):
        self._check_width(other)
        return BitVector(self.num_bits, np.bitwise_xor(self.words, other.words))

    def __and__(self, other: BitVector):
        self._check_width(other)
        return BitVector(self.num_bits, np.bitwise_and(self.words, other.words))

    def __or__(self, other: BitVector):
        self._check_width(other)
        return BitVector(self.num_bits, np.bitwise_or(self.words, other.words))

    def __eq__(self, other):
        if not isinstance(other, BitVector):
            return NotImplemented

        return self.num_bits == other.num_bits and bool(np.all(self.words == other.words))

    def __iter__(self):
        for i in range(self.words.shape[0]):
            w = int(self.words[i])
            while w:
                low = w & (-w)
                yield i * WORD_BITS + low.bit_length() - 1
                w ^= low

    def __len__(self):
        return sum(bin(int(w)).count("1") for w in self.words)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num_bits, self.words.tobytes()))

        return self._hash

    def __repr__(self):
        ones = self.to_list()
        if len(ones) <= 16:
            return "BitVector(" + str(self.num_bits) + ", [" + ",".join([str(v) for v in ones]) + "])"
        else:
            return "BitVector({}, num_ones={})".format(self.num_bits, len(ones))
