#! /usr/bin/env python3
# The 12-dimensional algebra C, its dual, the 144-dimensional double and its simple modules.

from hopf12.hopfcore import build_A1, build_C, build_double, verify_hopf
from hopf12.repmod import SIMPLE_LABELS, catalog, is_simple

spacer = '_' * 60

C = build_C()
print('C has basis', C.labels)
terms = [f'({c}) {C.labels[p]} (x) {C.labels[q]}' for (p, q), c in C.comult[C.index('a')].items()]
print('Delta(a) =', ' + '.join(terms))
print('axioms on C:', verify_hopf(C).ok)

A1 = build_A1()
print('\nThe dual side A1 has dimension', A1.dim, 'and axioms', verify_hopf(A1).ok)
print(spacer)

D = build_double()
print('\nThe double has', D.dim, 'basis words; axioms checked on generators:', verify_hopf(D).ok)
print(spacer)

print('\nSimple modules of the double, by dimension:')
dims = {}
for L in SIMPLE_LABELS:
    M = catalog(L)
    assert is_simple(M)
    dims[M.dim] = dims.get(M.dim, 0) + 1
for d, n in sorted(dims.items()):
    print(f'  {n} of dimension {d}')
squares = sum(n * d * d for d, n in dims.items())
print(f'sum of squares {squares} < {D.dim}, so the double is not semisimple')
