#! /usr/bin/env python3
# Deformations of the bosonization of the 36-dimensional Nichols algebra.

from hopf12.exactmath import ONE, XI, ZERO
from hopf12.hopfcore import verify_hopf
from hopf12.liftings import BOSONIZATION_FAMILIES, bosonize, build_lifting, lifting_to_bosonization
from hopf12.nichols import preset_label

for name, dim in BOSONIZATION_FAMILIES.values():
    print(f'bosonization of {name}: dimension {bosonize(preset_label(name)).dim} (expected {dim})')

for j in (1, 5):
    print(f'\nj = {j}')
    for mu in (ZERO, ONE, XI):
        L = build_lifting(j, mu)
        print(f'  mu = {mu}: dim {L.hopf.dim}, axioms {verify_hopf(L.hopf).ok}')
    print('  mu = 0 is the bosonization:', lifting_to_bosonization(j)[3].ok)
