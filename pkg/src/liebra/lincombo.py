"""Finite integer linear combinations keyed by monomials or graphs."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Callable, Hashable, Iterable

from .monomials import print_monomial


def format_key(key) -> str:
    if isinstance(key, (int, tuple)):
        return print_monomial(key)
    return str(key)


class LinCombo(Mapping):
    """Map from keys to nonzero integer coefficients; zero terms are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def single(cls, key: Hashable, coeff: int = 1) -> "LinCombo":
        return cls({key: coeff})

    def __getitem__(self, key):
        return self._terms[key]

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def coeff(self, key) -> int:
        return self._terms.get(key, 0)

    def __add__(self, other: "LinCombo") -> "LinCombo":
        out = dict(self._terms)
        for k, c in other.items():
            out[k] = out.get(k, 0) + c
        return LinCombo(out)

    def __neg__(self) -> "LinCombo":
        return LinCombo({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LinCombo") -> "LinCombo":
        return self + (-other)

    def __mul__(self, scalar: int) -> "LinCombo":
        return LinCombo({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Mapping):
            return self._terms == {k: c for k, c in other.items() if c}
        return NotImplemented

    __hash__ = None

    def map_keys(self, fn: Callable) -> "LinCombo":
        return LinCombo((fn(k), c) for k, c in self._terms.items())

    def sorted_terms(self, fmt: Callable = format_key) -> list[tuple[str, int, Hashable]]:
        return sorted((fmt(k), c, k) for k, c in self._terms.items())

    def to_text(self, fmt: Callable = format_key) -> str:
        if not self._terms:
            return "0"
        return " ".join(f"{c:+d}*{s}" for s, c, _ in self.sorted_terms(fmt))

    def __repr__(self) -> str:
        return f"LinCombo({self.to_text()})"


def linear_extend(fn: Callable[[Hashable], LinCombo], combo: Iterable) -> LinCombo:
    """sum_k c_k * fn(k) for a mapping or (key, coeff) pairs."""
    items = combo.items() if isinstance(combo, Mapping) else combo
    acc: dict = {}
    for k, c in items:
        for k2, c2 in fn(k).items():
            acc[k2] = acc.get(k2, 0) + c * c2
    return LinCombo(acc)
