#!/usr/bin/env python3
"""Sieving integers free of a coprime modulus family, and their density.

The density of the sieved set approaches the product of (1 - 1/b); with the
prime squares the limit is 6/pi^2.
"""

import math

from bfreeshift import bfree_window, density_estimate, prime_powers_bspec, validate_bspec

print("=== a small explicit modulus list ===")
spec = validate_bspec([4, 9, 25, 49])
window = bfree_window(spec, 1, 40)
print("moduli:", spec.elements)
print("free integers in [1,40]:", window.support)
print("word form:", window.to_word())

print()
print("=== prime squares: squarefree integers ===")
squares = prime_powers_bspec(2, 10_000)
for half_width in (10**3, 10**4, 10**5):
    est = density_estimate(squares, half_width)
    print(
        f"  [-{half_width:>6},{half_width:>6}]  observed {est.observed:.6f}"
        f"   truncated product {est.product:.6f}"
    )
print(f"  6/pi^2 = {6 / math.pi**2:.6f}")

print()
print("=== the truncation only matters up to the window size ===")
for bound in (10, 100, 1000):
    trunc = prime_powers_bspec(2, bound)
    est = density_estimate(trunc, 10**4)
    print(f"  primes up to {bound:>4}: observed {est.observed:.6f} product {est.product:.6f}")
