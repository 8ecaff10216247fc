"""Least-squares fit of a function by building blocks, in estimator form.

``X`` holds sample points of the complex plane (complex array, or two real
columns ``re, im``) and ``y`` the target values there. The fitted model is
``sum_j coef_[j] f_{alpha_j}`` with residuals weighted by the ``Exp(K)`` norm
weight ``exp(-H_K(z) - |z|/n)``.
"""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ._validation import as_complex, check_int, check_positive
from .expfun import block
from .expk import ConditioningError, ExpKNorm, solve_ridge
from .geometry import ConvexCompact, segment_on_imaginary_axis, support_function


def _points(X):
    X = np.asarray(X)
    if X.ndim == 2 and X.shape[1] == 2 and X.dtype.kind in "iuf":
        z = X[:, 0] + 1j * X[:, 1]
    elif X.ndim == 1 or (X.ndim == 2 and X.shape[1] == 1):
        z = X.ravel().astype(complex)
    else:
        raise ValueError("X must be a complex vector or an (n, 2) array of real and imaginary parts")
    if not np.all(np.isfinite(z)):
        raise ValueError("X contains non-finite points")
    return z


class BlockSpanRegressor(BaseEstimator):
    """Weighted ridge regression on the span of ``f_alpha``, ``alpha`` in ``alphas``.

    Parameters
    ----------
    alphas : sequence of complex
        Block parameters; pairwise distinct and nonzero.
    K : ConvexCompact or None
        Diagram of the weight; ``None`` means ``[-i, i]``.
    n : int
        Index of the weight.
    ridge : float
        Tikhonov parameter.
    max_condition : float
        Fits whose regularised normal matrix is worse conditioned raise
        :class:`ConditioningError`.
    """

    def __init__(self, alphas=(0.25j, -0.25j), K=None, n=1, ridge=1e-12, max_condition=1e16):
        self.alphas = alphas
        self.K = K
        self.n = n
        self.ridge = ridge
        self.max_condition = max_condition

    def _norm(self):
        K = segment_on_imaginary_axis(1.0, 0.0) if self.K is None else self.K
        if not isinstance(K, ConvexCompact):
            raise TypeError("K must be a ConvexCompact")
        return ExpKNorm(K, check_int(self.n, "n"))

    def _blocks(self):
        alphas = [as_complex(a, "alpha") for a in self.alphas]
        if not alphas or len(set(alphas)) != len(alphas) or 0 in alphas:
            raise ValueError("alphas must be nonempty, pairwise distinct and nonzero")
        return [block(a) for a in alphas]

    def _design(self, z, norm):
        shift = support_function(norm.K, z) + np.abs(z) / norm.n
        cols = []
        for g in self._blocks():
            m, s = g.scaled(z)
            cols.append(m * np.exp(s - shift))
        return np.column_stack(cols), np.exp(-shift)

    def fit(self, X, y):
        z = _points(X)
        y = np.asarray(y, dtype=complex).ravel()
        if y.shape != z.shape:
            raise ValueError(f"X has {z.size} points but y has {y.size} values")
        check_positive(self.ridge, "ridge", strict=False)
        norm = self._norm()
        A, w = self._design(z, norm)
        coef, cond = solve_ridge(A, y * w, self.ridge)
        if cond > self.max_condition:
            raise ConditioningError(f"normal matrix condition {cond:.3g} exceeds {self.max_condition:.1g}")
        self.coef_ = coef
        self.condition_ = cond
        self.n_features_in_ = len(self.alphas)
        return self

    def predict(self, X):
        check_is_fitted(self, "coef_")
        z = _points(X)
        out = np.zeros(z.shape, dtype=complex)
        for c, g in zip(self.coef_, self._blocks()):
            out += c * g(z)
        return out

    def score(self, X, y):
        """Negative RMS of the weighted residual (larger is better)."""
        check_is_fitted(self, "coef_")
        z = _points(X)
        y = np.asarray(y, dtype=complex).ravel()
        A, w = self._design(z, self._norm())
        r = A @ self.coef_ - y * w
        return -float(np.sqrt(np.mean(np.abs(r) ** 2)))
