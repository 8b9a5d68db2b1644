"""Set families over [n]: intersection predicates, ordered indexings, size bounds.

A subset of the ground set [n] = {1, ..., n} is stored as a bitmask with bit
i-1 representing element i.  Element n is the *apex* element.  An indexing
F_1, ..., F_m of a family is *ordered* when the apex-containing sets form a
prefix and cardinalities never decrease along the index.  A family is
L-intersecting when every pairwise intersection size lies in the prescribed
set L.

The classical size bound for L-intersecting families is sum(C(n, i)) for
i = 0..s; for families admitting an ordered indexing it tightens to
sum(C(n-1, i)).  Both are computed exactly as big integers, and the two
generators below produce families meeting the tighter bound with equality.

Note on r = 0: an ordered indexing comes with the count r of apex-containing
sets.  We allow r = 0 (no set contains the apex), which is what the all
apex-free extremal family requires.
"""

from __future__ import annotations

import itertools
import json
import math
import os
import warnings
from dataclasses import dataclass

MAX_GROUND_SET_DEFAULT = 62  # single-word masks elsewhere; LINTERSECT_MAX_N overrides


def ground_set_cap() -> int:
    env = os.environ.get("LINTERSECT_MAX_N")
    return int(env) if env else MAX_GROUND_SET_DEFAULT


# ---------------------------------------------------------------------------
# bitmask helpers
# ---------------------------------------------------------------------------

def mask_from_elements(elements) -> int:
    """Pack 1-based elements into a bitmask."""
    mask = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"element {e} out of range (elements are 1-based)")
        mask |= 1 << (e - 1)
    return mask


def mask_elements(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into ascending 1-based elements."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionSpec:
    """The set L of allowed pairwise intersection sizes, strictly increasing."""

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        for k, v in enumerate(self.values):
            if v < 0:
                raise ValueError(f"intersection size {v} is negative")
            if k > 0 and v <= self.values[k - 1]:
                raise ValueError("intersection sizes must be strictly increasing")

    @classmethod
    def from_values(cls, values) -> "IntersectionSpec":
        return cls(tuple(sorted(set(values))))

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, size: int) -> bool:
        return size in self.values

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class SetFamily:
    """An indexed family of pairwise distinct subsets of [n], kept in order."""

    n: int
    sets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        cap = ground_set_cap()
        if not 1 <= self.n <= cap:
            raise ValueError(f"ground-set size {self.n} outside 1..{cap}")
        full = (1 << self.n) - 1
        seen: dict[int, int] = {}
        for k, s in enumerate(self.sets, 1):
            if s < 0:
                raise ValueError(f"set {k} has a negative mask")
            if s & ~full:
                raise ValueError(f"set {k} is not a subset of [{self.n}]")
            if s in seen:
                raise ValueError(f"sets {seen[s]} and {k} are identical")
            seen[s] = k

    def __len__(self) -> int:
        return len(self.sets)

    @classmethod
    def from_sets(cls, n: int, sets_of_elements) -> "SetFamily":
        return cls(n, tuple(mask_from_elements(s) for s in sets_of_elements))

    def to_element_lists(self) -> list[list[int]]:
        return [list(mask_elements(s)) for s in self.sets]


@dataclass(frozen=True)
class IntersectionVerdict:
    """Outcome of the L-intersecting check; carries the first violating pair."""

    ok: bool
    violation: tuple[int, int, int] | None = None  # (i, j, |F_i & F_j|), 1-based

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class OrderingWitness:
    """A valid ordered indexing: apex prefix length r plus the source permutation.

    permutation[k] is the 1-based index, in the family the witness was derived
    from, of the set placed at position k+1.
    """

    r: int
    permutation: tuple[int, ...]


@dataclass(frozen=True)
class OrderingFailure:
    """Why a given indexing is not ordered: the broken condition and position."""

    condition: str  # "apex-prefix" or "cardinality"
    index: int      # 1-based position at which the condition broke

    def __bool__(self) -> bool:
        return False


class NotOrderableError(ValueError):
    """No ordered indexing exists; names an offending pair of sets."""

    def __init__(self, apex_set: tuple[int, ...], free_set: tuple[int, ...]):
        self.apex_set = apex_set
        self.free_set = free_set
        super().__init__(
            f"set {{{','.join(map(str, apex_set))}}} (size {len(apex_set)}) contains "
            f"the apex element but set {{{','.join(map(str, free_set))}}} "
            f"(size {len(free_set)}) does not and is smaller; no ordered indexing exists")


# ---------------------------------------------------------------------------
# predicates and witnesses
# ---------------------------------------------------------------------------

def intersection_profile(family: SetFamily) -> list[tuple[int, int, int]]:
    """All pairwise intersection sizes as (i, j, size), i < j, 1-based, ascending."""
    out = []
    sets = family.sets
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            out.append((i + 1, j + 1, (sets[i] & sets[j]).bit_count()))
    return out


def is_l_intersecting(family: SetFamily, spec: IntersectionSpec) -> IntersectionVerdict:
    """Check that every pairwise intersection size lies in the allowed set."""
    if spec.values and spec.values[-1] >= family.n:
        unreachable = [v for v in spec.values if v >= family.n]
        warnings.warn(
            f"allowed intersection sizes {unreachable} can never occur for "
            f"ground-set size n={family.n}",
            UserWarning, stacklevel=2)
    allowed = set(spec.values)
    sets = family.sets
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            size = (sets[i] & sets[j]).bit_count()
            if size not in allowed:
                return IntersectionVerdict(False, (i + 1, j + 1, size))
    return IntersectionVerdict(True)


def check_ordered_indexing(family: SetFamily) -> OrderingWitness | OrderingFailure:
    """Verify the given index order is ordered; return r or the first break."""
    apex = 1 << (family.n - 1)
    r = 0
    seen_free = False
    prev_card = -1
    for pos, s in enumerate(family.sets, 1):
        if s & apex:
            if seen_free:
                return OrderingFailure("apex-prefix", pos)
            r = pos
        else:
            seen_free = True
        card = s.bit_count()
        if card < prev_card:
            return OrderingFailure("cardinality", pos)
        prev_card = card
    return OrderingWitness(r, tuple(range(1, len(family.sets) + 1)))


def make_ordered(family: SetFamily) -> tuple[SetFamily, OrderingWitness]:
    """Reindex into canonical ordered form, or raise NotOrderableError.

    An ordered indexing exists iff the largest apex-containing set is no bigger
    than the smallest apex-free one.  Canonical order sorts by (cardinality,
    apex-containing first, ascending bit pattern).
    """
    apex = 1 << (family.n - 1)
    apex_members = [s for s in family.sets if s & apex]
    free_members = [s for s in family.sets if not s & apex]
    if apex_members and free_members:
        worst_apex = max(apex_members, key=lambda s: (s.bit_count(), s))
        worst_free = min(free_members, key=lambda s: (s.bit_count(), s))
        if worst_apex.bit_count() > worst_free.bit_count():
            raise NotOrderableError(mask_elements(worst_apex), mask_elements(worst_free))
    order = sorted(
        range(len(family.sets)),
        key=lambda k: (family.sets[k].bit_count(),
                       0 if family.sets[k] & apex else 1,
                       family.sets[k]))
    reindexed = SetFamily(family.n, tuple(family.sets[k] for k in order))
    witness = OrderingWitness(len(apex_members), tuple(k + 1 for k in order))
    return reindexed, witness


# ---------------------------------------------------------------------------
# extremal generators and bounds
# ---------------------------------------------------------------------------

def _check_gen_params(n: int, s: int) -> None:
    if n < 1:
        raise ValueError(f"ground-set size {n} must be >= 1")
    if not 1 <= s <= n - 1:
        raise ValueError(f"level s={s} outside 1..{n - 1}")


def _canonical_sorted(n: int, masks) -> tuple[int, ...]:
    apex = 1 << (n - 1)
    return tuple(sorted(masks, key=lambda s: (s.bit_count(), 0 if s & apex else 1, s)))


def _subsets_below_apex(n: int, max_card: int):
    """All subsets of [n-1] with cardinality <= max_card."""
    for k in range(min(max_card, n - 1) + 1):
        for combo in itertools.combinations(range(n - 1), k):
            mask = 0
            for b in combo:
                mask |= 1 << b
            yield mask


def gen_sharp_no_apex(n: int, s: int) -> tuple[SetFamily, IntersectionSpec]:
    """Extremal family with no apex sets: all A avoiding n with |A| <= s.

    Meets the ordered-family bound with equality for L = {0, ..., s-1}.
    """
    _check_gen_params(n, s)
    masks = list(_subsets_below_apex(n, s))
    family = SetFamily(n, _canonical_sorted(n, masks))
    return family, IntersectionSpec(tuple(range(s)))


def gen_sharp_mixed(n: int, s: int) -> tuple[SetFamily, IntersectionSpec]:
    """Extremal family mixing apex sets of size <= s with apex-free sets of size s.

    Also meets the ordered-family bound with equality for L = {0, ..., s-1};
    here the apex prefix is genuinely nonempty.
    """
    _check_gen_params(n, s)
    apex = 1 << (n - 1)
    masks = [t | apex for t in _subsets_below_apex(n, s - 1)]
    masks.extend(t for t in _subsets_below_apex(n, s) if t.bit_count() == s)
    family = SetFamily(n, _canonical_sorted(n, masks))
    return family, IntersectionSpec(tuple(range(s)))


def bound_general(n: int, s: int) -> int:
    """Size bound for any L-intersecting family with |L| = s: sum C(n, i), i<=s."""
    if n < 1:
        raise ValueError(f"ground-set size {n} must be >= 1")
    if s < 0:
        raise ValueError(f"level s={s} must be >= 0")
    return sum(math.comb(n, i) for i in range(min(s, n) + 1))


def bound_ordered(n: int, s: int) -> int:
    """Size bound for ordered L-intersecting families: sum C(n-1, i), i<=s."""
    if n < 1:
        raise ValueError(f"ground-set size {n} must be >= 1")
    if s < 0:
        raise ValueError(f"level s={s} must be >= 0")
    return sum(math.comb(n - 1, i) for i in range(min(s, n - 1) + 1))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

class FamilyFormatError(ValueError):
    """Malformed family file; message carries position diagnostics."""


def family_to_json(family: SetFamily) -> str:
    return json.dumps({"n": family.n, "sets": family.to_element_lists()})


def family_from_json(text: str) -> SetFamily:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FamilyFormatError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(data, dict):
        raise FamilyFormatError("top level must be an object with keys 'n' and 'sets'")
    for key in ("n", "sets"):
        if key not in data:
            raise FamilyFormatError(f"missing key '{key}'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise FamilyFormatError("'n' must be an integer")
    raw = data["sets"]
    if not isinstance(raw, list):
        raise FamilyFormatError("'sets' must be a list of element lists")
    masks = []
    for k, entry in enumerate(raw):
        if not isinstance(entry, list):
            raise FamilyFormatError(f"sets[{k}] must be a list of elements")
        masks.append(_elements_to_mask(entry, n, f"sets[{k}]"))
    try:
        return SetFamily(n, tuple(masks))
    except ValueError as e:
        raise FamilyFormatError(str(e)) from None


def family_to_text(family: SetFamily) -> str:
    lines = [f"n {family.n}"]
    for s in family.sets:
        lines.append(" ".join(map(str, mask_elements(s))) if s else "-")
    return "\n".join(lines) + "\n"


def family_from_text(text: str) -> SetFamily:
    lines = text.splitlines()
    if not lines:
        raise FamilyFormatError("line 1: empty input, expected 'n <int>' header")
    header = lines[0].split()
    if len(header) != 2 or header[0] != "n":
        raise FamilyFormatError("line 1: expected header 'n <int>'")
    try:
        n = int(header[1])
    except ValueError:
        raise FamilyFormatError(f"line 1: ground-set size {header[1]!r} is not an integer") from None
    masks = []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        if line.strip() == "-":
            masks.append(0)
            continue
        elems = []
        for tok in line.split():
            try:
                elems.append(int(tok))
            except ValueError:
                raise FamilyFormatError(f"line {lineno}: element {tok!r} is not an integer") from None
        masks.append(_elements_to_mask(elems, n, f"line {lineno}"))
    try:
        return SetFamily(n, tuple(masks))
    except ValueError as e:
        raise FamilyFormatError(str(e)) from None


def _elements_to_mask(elems, n: int, where: str) -> int:
    mask = 0
    for e in elems:
        if not isinstance(e, int) or isinstance(e, bool):
            raise FamilyFormatError(f"{where}: element {e!r} is not an integer")
        if not 1 <= e <= n:
            raise FamilyFormatError(f"{where}: element {e} out of range 1..{n}")
        bit = 1 << (e - 1)
        if mask & bit:
            raise FamilyFormatError(f"{where}: element {e} repeated")
        mask |= bit
    return mask


def parse_family(text: str) -> SetFamily:
    """Parse either the JSON or the plain-text family format."""
    if text.lstrip().startswith("{"):
        return family_from_json(text)
    return family_from_text(text)


def load_family(path) -> SetFamily:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_family(fh.read())


def save_family(family: SetFamily, path, fmt: str = "json") -> None:
    if fmt not in ("json", "text"):
        raise ValueError(f"unknown family format {fmt!r}")
    payload = family_to_json(family) + "\n" if fmt == "json" else family_to_text(family)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)
