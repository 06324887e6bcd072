"""
Brute-force reference dynamics: the JCM Hamiltonian as an explicit matrix,
integrated with fixed-step fourth-order Runge-Kutta.

Shares nothing with :mod:`transcoherent.jcm` beyond the amplitude layout, so
it can serve as an independent check of the closed-form propagator.
"""

import numpy as np


def hamiltonian(n_levels, omega0=1.0, omega=0.0):
    """Dense ``H`` on ``|g,0>, |e,0>, |g,1>, |e,1>, ...`` with ``n_levels`` photon levels."""
    dim = 2 * n_levels
    h = np.zeros((dim, dim), dtype=complex)
    for n in range(n_levels):
        h[2 * n, 2 * n] = omega * n
        h[2 * n + 1, 2 * n + 1] = omega * (n + 1)
    # (W0/2)(a s+ + a^dag s-): |g,n> <-> |e,n-1> with matrix element W0 sqrt(n)/2
    for n in range(1, n_levels):
        h[2 * (n - 1) + 1, 2 * n] = 0.5 * omega0 * np.sqrt(n)
        h[2 * n, 2 * (n - 1) + 1] = 0.5 * omega0 * np.sqrt(n)
    return h


def rk4_evolve(g, e, t, omega0=1.0, omega=0.0, dt=1e-4):
    """Integrate ``i d psi/dt = H psi`` for time ``t``; returns ``(g, e)``.

    One extra photon level is appended so ``|e, N>`` keeps its partner; the
    returned arrays include it.
    """
    g = np.append(np.asarray(g, dtype=complex), 0.0)
    e = np.append(np.asarray(e, dtype=complex), 0.0)
    n_levels = g.size
    h = hamiltonian(n_levels, omega0, omega)
    psi = np.empty(2 * n_levels, dtype=complex)
    psi[0::2], psi[1::2] = g, e
    steps = max(1, int(np.ceil(abs(t) / dt)))
    step = t / steps
    a = -1j * h
    for _ in range(steps):
        k1 = a @ psi
        k2 = a @ (psi + 0.5 * step * k1)
        k3 = a @ (psi + 0.5 * step * k2)
        k4 = a @ (psi + step * k3)
        psi = psi + (step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi[0::2].copy(), psi[1::2].copy()
