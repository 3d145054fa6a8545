import sys
from pathlib import Path
from typing import Iterator

from src.exceptions import DocumentError


def bits(mask: int) -> Iterator[int]:
    """Yields the indices of the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def subsets(mask: int) -> Iterator[int]:
    """Yields every submask of mask, starting with the empty set."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def read_text(path: str) -> str:
    """Reads a document argument, where `-` denotes stdin."""
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise DocumentError(f"{path} is not valid UTF-8: {e.reason} at byte {e.start}")
