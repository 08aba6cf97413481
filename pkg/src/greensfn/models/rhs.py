"""Single-valued and box-valued right-hand sides F(t, x) with their metadata."""
from typing import Callable, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from greensfn.core.grid import Grid

# f0(t, x): t has shape (k,), x has shape (k, N); returns (k, N)
FieldFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
# rho(t, x) -> (k,)
RadiusFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
ScalarFn = Callable[[np.ndarray], np.ndarray]


def _const(value: float) -> ScalarFn:
    v = float(value)
    return lambda t: np.full(np.shape(t), v)


def _as_fn(value: "float | ScalarFn | None") -> Optional[ScalarFn]:
    if value is None or callable(value):
        return value
    return _const(value)


class RightHandSide(BaseModel):
    """F(t, x) = f0(t, x) + rho(t, x) [-1, 1]^N with growth, Lipschitz and accretivity metadata.

    Metadata left as ``None`` makes the conditions that need it "not evaluable".
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: Literal["single", "box"] = Field(default="single", description="Singleton or box-valued")
    dim: int = Field(default=1, ge=1, description="State dimension N")
    f0: FieldFn = Field(..., description="Center map f0(t, x)")
    rho: Optional[RadiusFn] = Field(default=None, description="Box radius rho(t, x) >= 0")
    growth_c: Optional[ScalarFn] = Field(default=None, description="c(t) in |F(t,x)| <= c(t) + m|x|")
    growth_m: Optional[float] = Field(default=None, ge=0.0, description="m in the growth bound")
    mu: Optional[ScalarFn] = Field(default=None, description="Lipschitz modulus mu(t)")
    alpha: Optional[ScalarFn] = Field(default=None, description="alpha(t) >= |F(t, 0)|")
    eta: Optional[ScalarFn] = Field(default=None, description="eta(t) in the comparison operator")
    accretive: bool = Field(default=False, description="Declares F(t, .) accretive")
    accretive_shift: float = Field(default=0.0, ge=0.0, description="Strong accretivity constant")
    label: str = Field(default="rhs", description="Printable description")

    @model_validator(mode="after")
    def validate_kind(self) -> "RightHandSide":
        if self.kind == "box" and self.rho is None:
            raise ValueError("a box-valued right-hand side needs a radius rho")
        if self.kind == "single" and self.rho is not None:
            raise ValueError("a single-valued right-hand side has no radius")
        return self

    @classmethod
    def single(cls, f0: FieldFn, dim: int = 1, **metadata) -> "RightHandSide":
        return cls(kind="single", dim=dim, f0=f0, **_normalize(metadata))

    @classmethod
    def box(cls, f0: FieldFn, rho: "float | RadiusFn", dim: int = 1, **metadata) -> "RightHandSide":
        if not callable(rho):
            r = float(rho)
            rho_fn: RadiusFn = lambda t, x: np.full(np.shape(t), r)
        else:
            rho_fn = rho
        return cls(kind="box", dim=dim, f0=f0, rho=rho_fn, **_normalize(metadata))

    @classmethod
    def linear(cls, lam: float, g: Optional[ScalarFn] = None, dim: int = 1) -> "RightHandSide":
        """f(t, x) = lam x + g(t) with exact metadata (mu = eta = |lam|, m = |lam|)."""
        g = g or _const(0.0)

        def g_values(t: np.ndarray) -> np.ndarray:
            t = np.asarray(t, dtype=float)
            gt = np.asarray(g(t), dtype=float)
            if gt.ndim <= 1:
                gt = np.broadcast_to(gt, t.shape)[:, None]
            return np.broadcast_to(gt, (t.shape[0], dim))

        def f0(t: np.ndarray, x: np.ndarray) -> np.ndarray:
            return lam * x + g_values(t)

        def c(t: np.ndarray) -> np.ndarray:
            return np.linalg.norm(g_values(t), axis=1)

        def alpha(t: np.ndarray) -> np.ndarray:
            return c(t)

        return cls(
            kind="single", dim=dim, f0=f0,
            growth_c=c, growth_m=abs(lam), mu=_const(abs(lam)),
            alpha=alpha, eta=_const(abs(lam)), accretive=lam >= 0.0,
            accretive_shift=max(lam, 0.0), label=f"{lam}*x + g(t)",
        )

    @property
    def is_box(self) -> bool:
        return self.kind == "box"

    @property
    def has_growth(self) -> bool:
        return self.growth_c is not None and self.growth_m is not None

    def center(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float).reshape(t.shape[0], self.dim)
        out = np.asarray(self.f0(t, x), dtype=float)
        return np.broadcast_to(out, x.shape).copy()

    def radius(self, t: np.ndarray, x: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.rho is None:
            return np.zeros(t.shape[0])
        x = np.asarray(x, dtype=float).reshape(t.shape[0], self.dim)
        return np.broadcast_to(np.asarray(self.rho(t, x), dtype=float), t.shape).copy()

    def project(self, t: np.ndarray, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Nearest point of F(t_k, x_k) to v_k: componentwise clamp onto the box."""
        c = self.center(t, x)
        r = self.radius(t, x)[:, None]
        return np.clip(np.asarray(v, dtype=float), c - r, c + r)

    def distance(self, t: np.ndarray, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Euclidean distance of v_k to F(t_k, x_k) at each sample."""
        v = np.asarray(v, dtype=float)
        return np.linalg.norm(v - self.project(t, x, v), axis=1)

    def sample_metadata(self, name: str, grid: Grid) -> Optional[np.ndarray]:
        fn = getattr(self, name)
        if fn is None:
            return None
        return np.broadcast_to(np.asarray(fn(grid.nodes), dtype=float), grid.nodes.shape).copy()

    def shifted(self, shift: float) -> "RightHandSide":
        """F + shift * x with every declared constant adjusted accordingly."""
        base = self.f0
        f0: FieldFn = lambda t, x: np.asarray(base(t, x), dtype=float) + shift * x
        updates = {"f0": f0, "label": f"{self.label} + {shift:.6g}*x"}
        if self.growth_m is not None:
            updates["growth_m"] = self.growth_m + shift
        for name in ("mu", "eta"):
            fn = getattr(self, name)
            if fn is not None:
                updates[name] = (lambda g: (lambda t: np.asarray(g(t), dtype=float) + shift))(fn)
        if self.accretive:
            updates["accretive_shift"] = self.accretive_shift + shift
        return self.model_copy(update=updates)

    def frozen(self, theta: np.ndarray, grid: Grid) -> "RightHandSide":
        """The single-valued map f0 + rho * theta, theta being a node-wise field in [-1, 1]^N."""
        theta = np.asarray(theta, dtype=float).reshape(grid.size, self.dim)
        n = grid.n
        base, rho = self.f0, self.rho

        def f0(t: np.ndarray, x: np.ndarray) -> np.ndarray:
            idx = np.clip(np.rint(np.asarray(t) * n).astype(int), 0, n)
            out = np.asarray(base(t, x), dtype=float)
            if rho is None:
                return out
            r = np.asarray(rho(t, x), dtype=float).reshape(-1, 1)
            return out + r * theta[idx]

        return self.model_copy(update={
            "kind": "single", "rho": None, "f0": f0, "accretive": False,
            "label": f"{self.label} (frozen selection)",
        })


def _normalize(metadata: dict) -> dict:
    out = dict(metadata)
    if "c" in out:
        out["growth_c"] = out.pop("c")
    if "m" in out:
        out["growth_m"] = out.pop("m")
    for key in ("growth_c", "mu", "alpha", "eta"):
        if key in out:
            out[key] = _as_fn(out[key])
    return out
