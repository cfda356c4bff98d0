"""Closed registry of the 69 Devanagari primitive-stroke classes.

Names are ASCII transliteration-style labels. The registry is versioned and
closed: labels outside this list are rejected at parse time everywhere in the
package. Case is significant ("i" and "I" are different primitives).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownPrimitiveError

REGISTRY_VERSION = 1

# 50 character-shaped primitives followed by 19 mark/symbol primitives.
PRIMITIVE_NAMES: tuple[str, ...] = (
    # vowel-derived strokes
    "a", "aa", "i", "ii", "u", "uu", "e", "ai", "o", "au",
    # consonant-derived strokes
    "k", "kh", "g", "gh", "ng", "c", "ch", "j", "jh", "ny",
    "T", "Th", "D", "Dh", "N", "t", "th", "d", "dh", "n",
    "p", "ph", "b", "bh", "m", "y", "r", "l", "v", "sh",
    "Sh", "s", "h", "L", "x", "jn", "R", "ou", "A", "Ab",
    # additional stroke primitives seen in running script
    "I", "K", "Y", "hk", "aM", "aH", "halant", "danda", "candra", "bindu",
    "ukar", "uukar", "rkar", "ekar", "okar", "bar", "hook", "arc", "tick",
)

assert len(PRIMITIVE_NAMES) == 69
assert len(set(PRIMITIVE_NAMES)) == 69

PRIMITIVE_COUNT = len(PRIMITIVE_NAMES)


@dataclass(frozen=True, order=True)
class PrimitiveId:
    """One of the 69 primitive stroke classes.

    index is the 1-based position in the closed registry; name is the
    transliterated label used in stroke files and CLI flags.
    """

    index: int
    name: str

    def __post_init__(self):
        if not 1 <= self.index <= 69:
            raise UnknownPrimitiveError(f"primitive index {self.index} outside 1..69")
        if PRIMITIVE_NAMES[self.index - 1] != self.name:
            raise UnknownPrimitiveError(
                f"name {self.name!r} does not match registry slot {self.index}"
            )


_ALL: tuple[PrimitiveId, ...] = tuple(
    PrimitiveId(i + 1, name) for i, name in enumerate(PRIMITIVE_NAMES)
)
_BY_NAME = {p.name: p for p in _ALL}


def all_primitives() -> tuple[PrimitiveId, ...]:
    """The full registry in index order."""
    return _ALL


def primitive_by_name(name: str) -> PrimitiveId:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownPrimitiveError(
            f"unknown primitive {name!r}; valid names: {', '.join(PRIMITIVE_NAMES)}"
        ) from None


def primitive_by_index(index: int) -> PrimitiveId:
    if not 1 <= index <= 69:
        raise UnknownPrimitiveError(f"primitive index {index} outside 1..69")
    return _ALL[index - 1]
