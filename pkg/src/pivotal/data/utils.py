"""
Utils for turning user-supplied element references into indices
"""

from collections.abc import Iterable, Sequence
from typing import Union

from pivotal.data.types.subset import SubsetSpec
from pivotal.data.types.weights import WeightVector
from pivotal.errors import IndexOutOfRange, InvalidPermutation

ElementRef = Union[str, int]


def process_ref(ref: ElementRef, wv: WeightVector) -> int:
    if isinstance(ref, bool):
        raise IndexOutOfRange(f"invalid element reference {ref!r}")
    if isinstance(ref, int):
        index = ref
    elif isinstance(ref, str):
        if wv.ids is not None and ref in wv.ids:
            return wv.index_of(ref)
        if ref.strip().lstrip("-").isdigit():
            index = int(ref)
        else:
            raise IndexOutOfRange(f"unknown element id {ref!r}")
    else:
        raise IndexOutOfRange(f"invalid element reference {ref!r}")
    if not 0 <= index < wv.n:
        raise IndexOutOfRange(
            f"index {index} is out of range for a population of size {wv.n}",
            index=index,
        )
    return index


def resolve_subset(members: Iterable[ElementRef], wv: WeightVector) -> SubsetSpec:
    return SubsetSpec(frozenset(process_ref(ref, wv) for ref in members))


def check_permutation(order: Sequence[int], n: int) -> tuple[int, ...]:
    """
    Validates that ``order`` is a bijection on [0, n) and returns it as a tuple.
    """
    order = tuple(int(i) for i in order)
    if len(order) != n:
        raise InvalidPermutation(f"order has length {len(order)}, expected {n}")
    if sorted(order) != list(range(n)):
        raise InvalidPermutation("order is not a permutation of [0, n)")
    return order


def resolve_order(entries: Sequence[ElementRef], wv: WeightVector) -> tuple[int, ...]:
    try:
        indices = [process_ref(ref, wv) for ref in entries]
    except IndexOutOfRange as error:
        raise InvalidPermutation(str(error)) from error
    return check_permutation(indices, wv.n)
