#!/usr/bin/env python3
"""Regenerates the bundled scenario files under scenarios/."""

import json
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "scenarios"


def cmat(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def density(rng, d):
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    w = g @ g.conj().T + 0.2 * np.eye(d)
    return w / np.trace(w).real


def inv_sqrt(t):
    vals, vecs = np.linalg.eigh(t)
    return vecs @ np.diag(vals ** -0.5) @ vecs.conj().T


def unital_kraus(rng, d_in, d_out, rank):
    ks = [rng.normal(size=(d_out, d_in)) + 1j * rng.normal(size=(d_out, d_in)) for _ in range(rank)]
    s = inv_sqrt(sum(k @ k.conj().T for k in ks))
    return [s @ k for k in ks]


def write(name, doc):
    OUT.mkdir(exist_ok=True)
    (OUT / name).write_text(json.dumps(doc, separators=(",", ":")) + "\n")


def main():
    rng = np.random.default_rng(20240611)
    algebras = []
    for i in (1, 2, 3):
        algebras.append({
            "index": i,
            "basis": {"kind": "full", "dim": 2},
            "phi": cmat(density(rng, 2)),
            "psi": cmat(density(rng, 2)),
        })
    thetas = {
        "target": {"kind": "full", "dim": 2},
        "maps": [{"index": i, "kraus": [cmat(k) for k in unital_kraus(rng, 2, 2, 2)]} for i in (1, 2, 3)],
    }
    write("default.json", {"B": {"kind": "scalars"}, "algebras": algebras, "thetas": thetas})

    diag = []
    for a in algebras:
        diag.append({"index": a["index"], "basis": a["basis"], "psi": {"kind": "diagonal"}})
    write("default_diag.json", {"B": {"kind": "diagonal", "dim": 2}, "algebras": diag})

    # Centered letters for trace states; a2 is scaled so that <f2, f2> = 1.
    a1 = np.array([[1, 2], [0.5, -1]], dtype=complex)
    a2 = np.array([[0, 1 + 1j], [0.5, 0]], dtype=complex) / np.sqrt(1.125)
    a3 = np.array([[0.3, -1j], [2, -0.3]], dtype=complex)
    half = cmat(np.eye(2) / 2)
    write("remark45.json", {
        "B": {"kind": "scalars"},
        "algebras": [{"index": i, "basis": {"kind": "full", "dim": 2}, "phi": half, "psi": half} for i in (1, 2, 3)],
        "remark45": {"letters": [
            {"index": 1, "element": cmat(a1)},
            {"index": 3, "element": cmat(a2)},
            {"index": 2, "element": cmat(a3)},
        ]},
    })

    # Unital nesting: A_i = {x (+) u x u*} inside M_4 over C 1_4, extended to
    # M_2 (+) M_2 over C 1_2 (+) C 1_2 with the block states phi and phi(u* . u).
    rho = density(rng, 2)
    u = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
    basis = []
    for p in range(2):
        for q in range(2):
            e = np.zeros((2, 2), dtype=complex)
            e[p, q] = 1
            basis.append(cmat(np.block([[e, np.zeros((2, 2))], [np.zeros((2, 2)), u @ e @ u.conj().T]])))
    rho4 = np.zeros((4, 4), dtype=complex)
    rho4[:2, :2] = rho
    rho2 = u @ rho @ u.conj().T
    write("nested_unital.json", {
        "B": {"kind": "scalars", "dim": 4},
        "algebras": [{"index": i, "basis": basis, "psi": {"kind": "block_states", "blocks": [cmat(rho4)]}}
                     for i in (1, 2, 3)],
        "Btilde": {"kind": "block_scalars", "blocks": [2, 2]},
        "nesting": {
            "algebras": [{"index": i, "basis": {"kind": "block_full", "blocks": [2, 2]},
                          "psi": {"kind": "block_states", "blocks": [cmat(rho), cmat(rho2)]}}
                         for i in (1, 2, 3)],
        },
    })

    # Non-unital nesting: M_2 over C sitting in the corner of M_2 (+) M_2 over
    # C 1_2 (+) C 1_2.
    small = []
    tilde = []
    v = np.zeros((4, 2))
    v[0, 0] = v[1, 1] = 1
    for i in (1, 2, 3):
        r1 = density(rng, 2)
        r2 = density(rng, 2)
        small.append({"index": i, "basis": {"kind": "full", "dim": 2}, "psi": cmat(r1)})
        tilde.append({"index": i, "basis": {"kind": "block_full", "blocks": [2, 2]},
                      "psi": {"kind": "block_states", "blocks": [cmat(r1), cmat(r2)]}})
    write("nested_nonunital.json", {
        "B": {"kind": "scalars"},
        "algebras": small,
        "Btilde": {"kind": "block_scalars", "blocks": [2, 2]},
        "nesting": {
            "algebras": tilde,
            "kappa": [{"index": i, "kraus": [cmat(v)]} for i in (1, 2, 3)],
            "iota": {"kraus": [cmat(v[:, :1]), cmat(v[:, 1:])]},
        },
    })


if __name__ == "__main__":
    main()
