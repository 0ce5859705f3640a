#!/usr/bin/env python3
"""Brute-force value of || A1 A2 A3 (f3 ⊗ f2) || in the free product of
three copies of (M_2, tr/2) over C.

Vectors are dictionaries from alternating index tuples to arrays of shape
(2, 2) * n, one 2x2 slot per tensor factor of E_i° = {x : tr x = 0}. The
inner product on each slot is tr(x* y) / 2. A letter of index k acts as
W_k^* (a ⊗ Id) W_k: it creates in front of chains starting below k, acts on
the first slot of chains starting at k and kills chains starting above k.
"""

import json
import sys

import numpy as np


def state(x):
    return np.trace(x) / 2


def add(vec, key, arr):
    if key in vec:
        vec[key] = vec[key] + arr
    else:
        vec[key] = arr


def apply_letter(k, a, vec):
    out = {}
    for key, arr in vec.items():
        if key and key[0] == k:
            # a x_1 = state(a x_1) 1 + (a x_1)°
            ax = np.tensordot(a, arr, axes=([1], [0]))
            scalar = np.trace(ax, axis1=0, axis2=1) / 2
            add(out, key[1:], scalar)
            centered = ax - np.multiply.outer(np.eye(2), scalar)
            add(out, key, centered)
        elif key and key[0] > k:
            # W_k kills chains that start above k
            continue
        else:
            # a xi = state(a) xi + a°, tensored with the old vector
            mean = state(a)
            add(out, key, mean * arr)
            add(out, (k,) + key, np.multiply.outer(a - mean * np.eye(2), arr))
    return out


def norm(vec):
    total = 0.0
    for key, arr in vec.items():
        total += float(np.sum(np.abs(arr) ** 2).real) / 2 ** len(key)
    return np.sqrt(total)


def main():
    a1 = np.array([[1, 2], [0.5, -1]], dtype=complex)
    a2 = np.array([[0, 1 + 1j], [0.5, 0]], dtype=complex) / np.sqrt(1.125)
    a3 = np.array([[0.3, -1j], [2, -0.3]], dtype=complex)
    i1, i2, i3 = 1, 3, 2
    for a in (a1, a2, a3):
        assert abs(state(a)) < 1e-15

    f2 = a2.conj().T
    c = state(f2.conj().T @ f2)
    f3 = c * a3.conj().T
    start = {(i3, i2): np.multiply.outer(f3, f2)}

    after3 = apply_letter(i3, a3, start)
    rhs = apply_letter(i1, a1, apply_letter(i2, a2, after3))
    lhs = apply_letter(i1, a1, {key: state(a2) * arr for key, arr in after3.items()})
    head = {key: arr for key, arr in rhs.items() if key == (i1,)}
    json.dump({"f2_inner": float(c.real), "lhs_norm": norm(lhs), "rhs_norm": norm(rhs),
               "component_norm": norm(head)}, sys.stdout, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
