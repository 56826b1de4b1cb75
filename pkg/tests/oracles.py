"""Independent reference implementations used as test oracles.

Nothing here imports the package under test.  The torsion oracle goes
through Fox calculus on a Wirtinger-style presentation of the closure
complement (Wada's formula), which shares no code path with the Burau
matrices.  The quantum-group oracle rebuilds modules, tensor products and
braiding images directly from the defining formulas.
"""

from __future__ import annotations

import itertools

import numpy as np

I2 = np.eye(2, dtype=complex)


# free group and colors -----------------------------------------------------------


def _reduce(word):
    out = []
    for t in word:
        if out and out[-1][0] == t[0] and out[-1][1] == -t[1]:
            out.pop()
        else:
            out.append(t)
    return out


def _inverse(word):
    return [(a, -e) for a, e in reversed(word)]


def act_free(letters, n):
    """Images of x_1..x_n (0-based generator labels) under the braid word."""
    w = [[(j, 1)] for j in range(n)]
    for letter in letters:
        i = abs(letter) - 1
        a, b = w[i], w[i + 1]
        if letter > 0:
            w[i], w[i + 1] = _reduce(_inverse(a) + b + a), a
        else:
            w[i], w[i + 1] = b, _reduce(b + a + _inverse(b))
    return w


def evaluate(word, gs):
    m = np.eye(2, dtype=complex)
    for a, e in word:
        m = m @ (gs[a] if e > 0 else np.linalg.inv(gs[a]))
    return m


def act_colors(letters, gs):
    gs = list(gs)
    for letter in letters:
        i = abs(letter) - 1
        a, b = gs[i], gs[i + 1]
        if letter > 0:
            gs[i], gs[i + 1] = np.linalg.inv(a) @ b @ a, a
        else:
            gs[i], gs[i + 1] = b, b @ a @ np.linalg.inv(b)
    return gs


# Fox calculus torsion ------------------------------------------------------------


def _fox(word, j, gs):
    total = np.zeros((2, 2), complex)
    prefix = np.eye(2, dtype=complex)
    for a, e in word:
        g = gs[a] if e > 0 else np.linalg.inv(gs[a])
        if a == j:
            total += prefix if e > 0 else -prefix @ g
        prefix = prefix @ g
    return total


def wada_torsion(letters, gs):
    """det of the Fox Jacobian of r_i = (x_i . beta) x_i^-1, i < n, over det(rho(x_n) - 1)."""
    n = len(gs)
    if n == 1:
        return 1 / np.linalg.det(gs[0] - I2)
    images = act_free(letters, n)
    jac = np.zeros((2 * (n - 1), 2 * (n - 1)), complex)
    for i in range(n - 1):
        rel = images[i] + [(i, -1)]
        for j in range(n - 1):
            jac[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = _fox(rel, j, gs)
    return np.linalg.det(jac) / np.linalg.det(gs[n - 1] - I2)


# dual group coordinates ------------------------------------------------------------


def psi(k, e, f):
    return np.array([[k, -e], [f, (1 - e * f) / k]], complex)


def biquandle(c1, c2):
    """Closed-form positive crossing on (kappa, epsilon, phi) triples."""
    k1, e1, f1 = c1
    k2, e2, f2 = c2
    d = e1 * f2 + k2
    k4, f4 = d, k1 * f2
    k3, e3 = k1 * k2 / d, e1 / d
    e4 = (e1 * k2**2 + e2 * k2 + (e1**2 * k2 + e1 * e2) * f2 - e1) / (k1 * k2)
    f3 = (k2**2 * f1 + e1 * f2**2 + (e1 * k2 * f1 - (k1**2 - 1) * k2) * f2) / d
    return (k4, e4, f4), (k3, e3, f3)


def plus_minus(k, e, f):
    return np.array([[k, 0], [f, 1]], complex), np.array([[1, e], [0, k]], complex)


# quantum group at q = i -------------------------------------------------------------


def simple(k, e, f, mu):
    w = mu - 1 / mu
    if abs(e) > 1e-9 and abs(f) > 1e-9:
        s = np.sqrt(complex(k))
        kk = np.diag([s, -s])
        ee = np.array([[0, e], [1, 0]], complex)
        ff = np.array([[0, -1j * (w + s - 1 / s)], [-1j * (w - s + 1 / s) / e, 0]])
        return kk, ee, ff
    s = np.sqrt(complex(k))
    if abs((s - 1 / s) - w) > abs((-s + 1 / s) - w):
        s = -s
    a = -2j * w
    return np.diag([s, -s]), np.array([[0, e], [1, 0]], complex), np.array([[0, a], [f / (k * a), 0]])


def relations(k, e, f):
    ki = np.linalg.inv(k)
    return max(
        np.abs(k @ e + e @ k).max(),
        np.abs(k @ f + f @ k).max(),
        np.abs(e @ f - f @ e - 2j * (k - ki)).max(),
    )


def casimir(k, e, f):
    return 1j * e @ f + k - np.linalg.inv(k)


def dual(k, e, f):
    ki = np.linalg.inv(k)
    return ki.T, (-e @ ki).T, (-k @ f).T


def tensor(r1, r2):
    k1, e1, f1 = r1
    k2, e2, f2 = r2
    i1, i2 = np.eye(len(k1)), np.eye(len(k2))
    return (
        np.kron(k1, k2),
        np.kron(i1, e2) + np.kron(e1, k2),
        np.kron(np.linalg.inv(k1), f2) + np.kron(f1, i2),
    )


def tensor_op(r1, r2):
    k1, e1, f1 = r1
    k2, e2, f2 = r2
    i1, i2 = np.eye(len(k1)), np.eye(len(k2))
    return (
        np.kron(k1, k2),
        np.kron(e1, i2) + np.kron(k1, e2),
        np.kron(f1, np.linalg.inv(k2)) + np.kron(i1, f2),
    )


def exterior_supertrace(a):
    """sum_k (-1)^k tr(Lambda^k A) from explicit k x k minors."""
    n = a.shape[0]
    total = 0j
    for k in range(n + 1):
        for rows in itertools.combinations(range(n), k):
            sub = a[np.ix_(rows, rows)] if k else np.zeros((0, 0))
            total += (-1) ** k * (np.linalg.det(sub) if k else 1.0)
    return total
