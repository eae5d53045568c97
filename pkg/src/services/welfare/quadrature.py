from typing import Callable, Tuple


def integrate_adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-10,
    max_depth: int = 50,
) -> Tuple[float, float]:
    """Adaptive Simpson's rule with Richardson extrapolation.

    :param f: Integrand, finite on [a, b]
    :param tol: Absolute error tolerance, halved at each subdivision
    :param max_depth: Recursion limit per branch
    :returns: (integral, error estimate)
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = integrate_adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    def simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 3.0 * (fa + 4.0 * fm + fb)

    def adaptive(
        lo: float, hi: float, f_lo: float, f_mid: float, f_hi: float, whole: float, depth: int, tol: float
    ) -> Tuple[float, float]:
        mid = (lo + hi) / 2.0
        h = (hi - lo) / 2.0
        f_left = f((lo + mid) / 2.0)
        f_right = f((mid + hi) / 2.0)
        left = simpson(f_lo, f_left, f_mid, h / 2.0)
        right = simpson(f_mid, f_right, f_hi, h / 2.0)
        error = (left + right - whole) / 15.0
        if depth >= max_depth or abs(error) < tol:
            return left + right + error, abs(error)
        left_value, left_error = adaptive(lo, mid, f_lo, f_left, f_mid, left, depth + 1, tol / 2.0)
        right_value, right_error = adaptive(mid, hi, f_mid, f_right, f_hi, right, depth + 1, tol / 2.0)
        return left_value + right_value, left_error + right_error

    fa, fm, fb = f(a), f((a + b) / 2.0), f(b)
    return adaptive(a, b, fa, fm, fb, simpson(fa, fm, fb, (b - a) / 2.0), 0, tol)
