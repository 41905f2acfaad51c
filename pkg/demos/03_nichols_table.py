#! /usr/bin/env python3
# Hilbert series of the finite Nichols algebras and witnesses for the infinite ones.

from hopf12.nichols import PRESETS, hilbert, infinite_certificate
from hopf12.repmod import TwoDim, catalog
from hopf12.ydbraid import INFINITE_PAIRS, braiding, dual_yd, yd_from_dmod


def braid(label):
    return braiding(yd_from_dmod(catalog(label)))


print(f"{'module':10} {'total':>6}  ranks")
for name, P in PRESETS.items():
    h = hilbert(braid(P.label), 12)
    print(f'{name:10} {h.total:>6}  {h.ranks}')

print('\nInfinite labels, each with a primitive fixed vector in degree two or three:')
for i, j in INFINITE_PAIRS:
    Y = yd_from_dmod(catalog(TwoDim(i, j)))
    w = infinite_certificate(braiding(Y), dual=braiding(dual_yd(Y)))
    print(f'  V_{i},{j}:', 'witness found' if w is not None else 'none')
