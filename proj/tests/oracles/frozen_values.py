"""Independent numpy computations for the constants frozen into the C++ tests.

Run: python3 tests/oracles/frozen_values.py
"""
import itertools
import math

import numpy as np

np.set_printoptions(precision=17)


def omega(m):
    w = np.zeros((2 * m, 2 * m))
    for j in range(m):
        w[2 * j, 2 * j + 1] = 1.0
        w[2 * j + 1, 2 * j] = -1.0
    return w


def ca(lam, nu):
    g = np.zeros((4, 4))
    g[:2, :2] = lam * np.eye(2)
    g[2:, 2:] = lam * np.eye(2)
    g[:2, 2:] = np.diag([nu, -nu])
    g[2:, :2] = np.diag([nu, -nu])
    return g


def min_herm_eig(g):
    m = g.shape[0] // 2
    return np.linalg.eigvalsh(g + 1j * omega(m)).min()


print("CA(2,2) min eig of cov+i*Omega:", repr(min_herm_eig(ca(2.0, 2.0))))
print("CA(2,1) min eig of cov+i*Omega:", repr(min_herm_eig(ca(2.0, 1.0))))
print("TMSV(2) min eig of cov-I:", repr(np.linalg.eigvalsh(ca(2.0, math.sqrt(3)) - np.eye(4)).min()))

# Q1 by brute force over linear operators: complex Gram whitening.
def mu_linear(g):
    G = 0.5 * (g + 1j * omega(2))
    ga, gb, c = G[:2, :2], G[2:, 2:], G[:2, 2:]
    def isqrt(h):
        w, v = np.linalg.eigh(h)
        return v @ np.diag(w ** -0.5) @ v.conj().T
    return np.linalg.svd(isqrt(ga) @ c @ isqrt(gb), compute_uv=False)[0]

print("mu_linear CA(2,1):", repr(mu_linear(ca(2.0, 1.0))), "1/sqrt3:", repr(1 / math.sqrt(3)))


def q1(la, lb, n1, n2):
    return 0.5 * np.array([
        [(n1 + n2) / math.sqrt((la + 1) * (lb + 1)), (n1 - n2) / math.sqrt((la + 1) * (lb - 1))],
        [(n1 - n2) / math.sqrt((la - 1) * (lb + 1)), (n1 + n2) / math.sqrt((la - 1) * (lb - 1))],
    ])


def s_matrix(t):
    s = np.zeros((t + 1, 2 ** t))
    for b in range(2 ** t):
        l = bin(b).count("1")
        s[l, b] = math.sqrt(math.factorial(l) * math.factorial(t - l) / math.factorial(t))
    return s


def kron_pow(q, t):
    out = np.array([[1.0]])
    for _ in range(t):
        out = np.kron(out, q)
    return out


q = q1(2.0, 2.0, 1.0, -1.0)
for t in (2, 3):
    s = s_matrix(t)
    print(f"Q^({t}) for CA(2,1) via S Q^(x)t S^T:\n", repr(s @ kron_pow(q, t) @ s.T))

q = q1(3.0, 1.5, 0.9, 0.4)
s = s_matrix(2)
print("Q^(2) for (3,1.5,0.9,0.4):\n", repr(s @ kron_pow(q, 2) @ s.T))

# Lossy CA(2,1) tau=(0.5,0.5): mu_G of shared state.
lam, nu, ta, tb = 2.0, 1.0, 0.5, 0.5
print("lossy mu_G:", repr(math.sqrt(ta * tb) * nu / math.sqrt((ta * lam + 1 - ta) * (tb * lam + 1 - tb))))
lam, nu, ta, tb = 2.0, 1.0, 0.3, 0.8
print("lossy mu_G (0.3,0.8):", repr(math.sqrt(ta * tb) * nu / math.sqrt((ta * lam + 1 - ta) * (tb * lam + 1 - tb))))

# Ribbon boundary for mu = 1/sqrt3 on the diagonal.
print("theta* CA(2,1):", repr(1 / (1 + 1 / math.sqrt(3))))
# Gaussian ribbon: CC(2,1) boundary theta with mu_G = 0.5.
print("theta_G* CC(2,1):", repr(1 / (1 + 0.5)))
