#!/usr/bin/env python3
# Copyright 2026 The AnsatzForge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Bootstraps the committed molecule-bundle fixtures under fixtures/.

Requires pyscf. This is a one-off fixture generator, not part of the C++
build; the engine only ever reads the JSON it writes.
"""

import argparse
import json
import math
import os
from collections import defaultdict

import numpy as np
from pyscf import ao2mo, fci, gto, mcscf, scf

DROP_TOL = 1e-12


# ----------------------------------------------------------------------------
# Jordan-Wigner mapping. Operators are dicts {(xmask, zmask): coeff} standing
# for coeff * X^x Z^z (X applied after Z on every qubit).


def _mul(a, b):
    out = defaultdict(complex)
    for (x1, z1), c1 in a.items():
        for (x2, z2), c2 in b.items():
            sign = -1.0 if bin(z1 & x2).count("1") & 1 else 1.0
            out[(x1 ^ x2, z1 ^ z2)] += sign * c1 * c2
    return out


def _ladder(p, create):
    below = (1 << p) - 1
    bit = 1 << p
    s = 0.5 if create else -0.5
    return {(bit, below): 0.5 + 0j, (bit, below | bit): s + 0j}


def _to_words(op, n_qubits):
    terms = defaultdict(complex)
    for (x, z), c in op.items():
        ny = bin(x & z).count("1")
        # X Z = -i Y on each overlapping qubit
        coeff = c * ((-1j) ** ny)
        if abs(coeff) < DROP_TOL:
            continue
        letters = []
        for q in range(n_qubits):
            xb, zb = (x >> q) & 1, (z >> q) & 1
            if xb and zb:
                letters.append(f"Y{q}")
            elif xb:
                letters.append(f"X{q}")
            elif zb:
                letters.append(f"Z{q}")
        terms[" ".join(letters)] += coeff
    return terms


def jw_hamiltonian(e_core, h1, eri, n_orb):
    """Qubit Hamiltonian for alpha orbitals 0..n-1 and beta orbitals n..2n-1.

    eri is in chemist notation (pq|rs) over spatial orbitals.
    """
    n_so = 2 * n_orb
    cre = [_ladder(p, True) for p in range(n_so)]
    ann = [_ladder(p, False) for p in range(n_so)]
    total = defaultdict(complex)
    total[(0, 0)] += e_core

    def spatial(p):
        return p % n_orb

    def spin(p):
        return p // n_orb

    for p in range(n_so):
        for q in range(n_so):
            if spin(p) != spin(q):
                continue
            v = h1[spatial(p), spatial(q)]
            if abs(v) < DROP_TOL:
                continue
            for k, c in _mul(cre[p], ann[q]).items():
                total[k] += v * c
    # 1/2 sum <pq|rs> a+_p a+_q a_s a_r, <pq|rs> = (pr|qs)
    pair_cache = {}
    for p in range(n_so):
        for q in range(n_so):
            if p == q:
                continue
            pair_cache[(p, q)] = _mul(cre[p], cre[q])
    ann_cache = {}
    for s in range(n_so):
        for r in range(n_so):
            if r == s:
                continue
            ann_cache[(s, r)] = _mul(ann[s], ann[r])
    for p in range(n_so):
        for q in range(n_so):
            if p == q:
                continue
            for r in range(n_so):
                if spin(r) != spin(p):
                    continue
                for s in range(n_so):
                    if s == r or spin(s) != spin(q):
                        continue
                    v = 0.5 * eri[spatial(p), spatial(r), spatial(q), spatial(s)]
                    if abs(v) < DROP_TOL:
                        continue
                    for k, c in _mul(pair_cache[(p, q)], ann_cache[(s, r)]).items():
                        total[k] += v * c
    words = _to_words(total, n_so)
    out = []
    for word, c in words.items():
        if abs(c) < DROP_TOL:
            continue
        assert abs(c.imag) < 1e-10, (word, c)
        out.append([c.real, word])
    out.sort(key=lambda t: t[1])
    return out


# ----------------------------------------------------------------------------
# Excitations and MP2 amplitudes over spin orbitals.


def excitations(n_occ, n_orb):
    """Spin-conserving singles (p,q) and doubles (p,q,r,s), virtuals first."""
    so = range(2 * n_orb)

    def occ(p):
        return (p % n_orb) < n_occ

    singles = []
    for q in so:
        for p in so:
            if occ(q) and not occ(p) and p // n_orb == q // n_orb:
                singles.append((p, q))
    doubles = []
    for p in so:
        for q in so:
            if occ(p) or occ(q) or p == q:
                continue
            for r in so:
                for s in so:
                    if not occ(r) or not occ(s) or r == s:
                        continue
                    if sorted([p // n_orb, q // n_orb]) != sorted([r // n_orb, s // n_orb]):
                        continue
                    doubles.append((p, q, r, s))
    return singles, doubles


def mp2_amplitudes(eri, mo_energy, n_occ, n_orb):
    n_so = 2 * n_orb

    def g(p, q, r, s):
        # <pq|rs> in spin orbitals
        if p // n_orb != r // n_orb or q // n_orb != s // n_orb:
            return 0.0
        return eri[p % n_orb, r % n_orb, q % n_orb, s % n_orb]

    def eps(p):
        return mo_energy[p % n_orb]

    singles, doubles = excitations(n_occ, n_orb)
    amps = {}
    for (p, q) in singles:
        amps[f"({p},{q})"] = 0.0
    for (p, q, r, s) in doubles:
        # a+_p a+_q a_r a_s: virtuals p,q and occupied s,r
        num = g(p, q, s, r) - g(p, q, r, s)
        den = eps(s) + eps(r) - eps(p) - eps(q)
        amps[f"({p},{q},{r},{s})"] = num / den
    return amps


# ----------------------------------------------------------------------------


def geometry(system, d):
    if system in ("h4", "h6"):
        n = 4 if system == "h4" else 6
        return [("H", (0.0, 0.0, i * d)) for i in range(n)]
    if system == "lih":
        return [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, d))]
    if system == "beh2":
        return [("Be", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, d)), ("H", (0.0, 0.0, -d))]
    if system == "h2":
        return [("H", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, d))]
    if system == "h2o":
        half = math.radians(104.5) / 2.0
        return [
            ("O", (0.0, 0.0, 0.0)),
            ("H", (d * math.sin(half), 0.0, d * math.cos(half))),
            ("H", (-d * math.sin(half), 0.0, d * math.cos(half))),
        ]
    raise ValueError(system)


SYSTEMS = {
    # name: (active electrons, active orbitals, basis)
    "h2": (2, 2, "sto-3g"),
    "h4": (4, 4, "sto-3g"),
    "lih": (4, 6, "sto-3g"),
    "beh2_4e5o": (4, 5, "sto-3g"),
    "beh2_4e6o": (4, 6, "sto-3g"),
    "h6": (6, 6, "sto-3g"),
    "h2o": (10, 7, "sto-3g"),
}


def build(system, d, label):
    n_elec, n_orb, basis = SYSTEMS[system]
    geo_name = system.split("_")[0]
    mol = gto.M(atom=geometry(geo_name, d), basis=basis, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    assert mf.converged, (system, d)
    mc = mcscf.CASCI(mf, n_orb, n_elec)
    h1, e_core = mc.get_h1eff()
    eri = ao2mo.restore(1, mc.get_h2eff(), n_orb)
    n_core = mc.ncore
    mo_energy = mf.mo_energy[n_core:n_core + n_orb]
    n_occ = n_elec // 2

    ham = jw_hamiltonian(e_core, h1, eri, n_orb)
    occupation = "".join(
        "1" if (q % n_orb) < n_occ else "0" for q in range(2 * n_orb)
    )
    # HF energy in the active space
    e_hf = e_core
    for i in range(n_occ):
        e_hf += 2.0 * h1[i, i]
        for j in range(n_occ):
            e_hf += 2.0 * eri[i, i, j, j] - eri[i, j, j, i]
    e_fci, _ = fci.direct_spin1.kernel(h1, eri, n_orb, n_elec, ecore=e_core, conv_tol=1e-14)

    return {
        "schema_version": 1,
        "name": f"{system}",
        "geometry_label": label,
        "n_electrons": n_elec,
        "n_spatial_orbitals": n_orb,
        "hamiltonian": ham,
        "hf_occupation": occupation,
        "hf_energy": e_hf,
        "mp2_amplitudes": mp2_amplitudes(eri, mo_energy, n_occ, n_orb),
        "fci_energy": float(e_fci),
        "basis": basis,
    }


def write(bundle, path):
    bundle = dict(bundle)
    bundle.pop("basis", None)
    with open(path, "w") as f:
        json.dump(bundle, f, indent=1, sort_keys=True, default=float)
        f.write("\n")


GRID = {
    "h4": [0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.2, 1.5, 2.0, 2.5],
    "lih": [1.0, 1.3, 1.5, 1.8, 2.0, 2.2, 2.5],
    "beh2_4e5o": [1.0, 1.3, 1.6, 2.0, 2.5],
    "beh2_4e6o": [1.0, 1.3, 1.6, 2.0, 2.5],
    "h6": [0.5, 0.7, 1.0, 1.5],
    "h2o": [0.7, 1.0, 1.5, 2.0],
    "h2": [0.74],
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for system, grid in GRID.items():
        if args.only and system not in args.only:
            continue
        for d in grid:
            label = f"{d:.2f}"
            b = build(system, d, label)
            path = os.path.join(args.out, f"{system}_{label}.json")
            write(b, path)
            print(f"{path}: {len(b['hamiltonian'])} terms, HF {b['hf_energy']:.8f}, FCI {b['fci_energy']:.8f}")


if __name__ == "__main__":
    main()
