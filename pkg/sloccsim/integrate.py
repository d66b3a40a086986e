"""Intégrateur Runge-Kutta d'ordre 4 à pas fixe."""
import numpy as np


def rk4_step(f, t, y, h):
    """Pas RK4 générique. Implémentation de référence : le code de production passe par rk4_linear."""
    k1 = f(t, y)
    k2 = f(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(t + h, y + h * k3)
    return y + h * (k1 + 2.0 * (k2 + k3) + k4) / 6.0


def rk4_integrate(f, y0, t0, t1, steps):
    """Intégration pas à pas de référence, comparée à rk4_linear dans les tests."""
    y = np.asarray(y0, dtype=float)
    h = (t1 - t0) / steps
    t = t0
    for _ in range(steps):
        y = rk4_step(f, t, y, h)
        t += h
    return y


def rk4_propagator(a, h):
    """Matrice d'un pas RK4 pour y' = A y : I + hA + (hA)²/2 + (hA)³/6 + (hA)⁴/24."""
    ha = h * np.asarray(a, dtype=float)
    eye = np.eye(ha.shape[0])
    ha2 = ha @ ha
    return eye + ha + ha2 / 2.0 + ha2 @ ha / 6.0 + ha2 @ ha2 / 24.0


def rk4_linear(a, y0, t, steps):
    """Mêmes itérés que `steps` pas de rk4_step sur y' = A y, en O(log steps) produits."""
    y0 = np.asarray(y0, dtype=float)
    if steps <= 0 or t == 0:
        return y0.copy()
    step = rk4_propagator(a, t / steps)
    return np.linalg.matrix_power(step, steps) @ y0
