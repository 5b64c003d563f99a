"""Scikit-learn style wrapper around the forward/inverse transforms."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .algorithms import VARIANTS, make_plan, run_plan
from .errors import UnsupportedVariant
from .modmath import DEFAULT_PRIME, FieldParams, find_primitive_root
from .twiddle import FORWARD, INVERSE


class NttTransform(TransformerMixin, BaseEstimator):
    """Row-wise number theoretic transform over Z_p.

    ``fit`` fixes the transform size from the data width and precomputes the
    twiddle tables; ``transform`` maps rows of residues to the evaluation
    domain and ``inverse_transform`` maps them back exactly.

    Parameters
    ----------
    variant : str, default="dit"
        One of {"naive", "dit", "dif", "flat", "pease", "pease_nc",
        "stockham", "sixstep"}.  All produce identical outputs.
    prime : int, default=3221225473
        NTT-friendly modulus; the number of columns must divide prime - 1.
    generator : int or None, default=None
        Primitive root of ``prime``; discovered automatically when None.
    """

    def __init__(self, variant: str = "dit", prime: int = DEFAULT_PRIME,
                 generator: int | None = None):
        self.variant = variant
        self.prime = prime
        self.generator = generator

    def fit(self, X, y=None):
        if self.variant not in VARIANTS:
            raise UnsupportedVariant(f"unknown variant {self.variant!r}")
        X = self._validate(X)
        g = self.generator if self.generator is not None else find_primitive_root(self.prime)
        self.params_ = FieldParams(self.prime, g)
        n = X.shape[1]
        self.n_features_in_ = n
        self.forward_plan_ = make_plan(self.params_, self.variant, n, FORWARD)
        self.inverse_plan_ = make_plan(self.params_, self.variant, n, INVERSE)
        return self

    def transform(self, X):
        check_is_fitted(self, "forward_plan_")
        X = self._validate(X, n_cols=self.n_features_in_)
        return self._apply(self.forward_plan_, X)

    def inverse_transform(self, X):
        check_is_fitted(self, "inverse_plan_")
        X = self._validate(X, n_cols=self.n_features_in_)
        return self._apply(self.inverse_plan_, X)

    def _apply(self, plan, X):
        out = np.empty_like(X)
        for i, row in enumerate(X):
            out[i] = run_plan(plan, [int(v) for v in row])
        return out

    def _validate(self, X, n_cols=None):
        X = check_array(X, dtype=np.int64, ensure_2d=True)
        if np.any(X < 0) or np.any(X >= self.prime):
            raise ValueError(f"entries must be residues in [0, {self.prime})")
        n = X.shape[1]
        if n_cols is not None and n != n_cols:
            raise ValueError(f"X has {n} columns, expected {n_cols}")
        if n < 2 or n & (n - 1):
            raise ValueError("number of columns must be a power of two >= 2")
        if (self.prime - 1) % n:
            raise ValueError(f"{n} does not divide prime - 1")
        return X
