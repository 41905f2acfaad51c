#! /usr/bin/env python3
# Tensor products of two-dimensional simples split as predicted.

from hopf12.repmod import LAMBDA_PAIRS, Proj, TwoDim, fusion, predicted_tensor

V = [TwoDim(i, j) for i, j in LAMBDA_PAIRS]
print('two-dimensional simples:', len(V))

A, B = V[0], V[1]
print(f'\n{A} (x) {B} =', ' + '.join(map(str, fusion(A, B))))

agree = sum(fusion(X, Y) == predicted_tensor(X, Y) for X in V for Y in V)
print(f'\nall {len(V) ** 2} products agree with the closed rule:', agree == len(V) ** 2)

print('\nprojective times projective:')
for j in range(3):
    print(f'  {Proj(0)} (x) {Proj(j)} =', ' + '.join(map(str, fusion(Proj(0), Proj(j)))))
