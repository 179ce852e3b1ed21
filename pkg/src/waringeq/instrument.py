"""Bit-size instrumentation for exact intermediates.

Inside ``with bit_probe() as probe:`` every ``Matrix`` and ``UniPoly`` built
reports its size, and ``probe.max_bits`` holds the largest
``numerator.bit_length() + denominator.bit_length()`` seen.  Outside a probe
``observe`` costs one context-variable lookup.
"""

from contextlib import contextmanager
from contextvars import ContextVar

_active = ContextVar("waringeq_bit_probe", default=None)


class BitProbe:
    __slots__ = ("max_bits", "count")

    def __init__(self):
        self.max_bits = 0
        self.count = 0

    def update(self, bits):
        self.count += 1
        if bits > self.max_bits:
            self.max_bits = bits


def active():
    return _active.get()


def observe_bits(bits):
    probe = _active.get()
    if probe is not None:
        probe.update(bits)


@contextmanager
def bit_probe():
    probe = BitProbe()
    token = _active.set(probe)
    try:
        yield probe
    finally:
        _active.reset(token)
