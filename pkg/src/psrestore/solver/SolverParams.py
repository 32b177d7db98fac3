from dataclasses import dataclass
from typing import Optional, Tuple

from ..utilities.Errors import InvariantError


@dataclass(frozen=True)
class SolverParams:
    """
    Parameters of the primal-dual chromatic filter.

    Attributes:
        lam: trade-off :math:`\\lambda` between the nonlocal TV term and the
            data term, in 8-bit normalized component units; 0 returns the input
        tau: primal step; **None** selects 0.99/L
        sigma: dual step; **None** selects 0.99/L
        theta: extrapolation parameter in [0, 1]
        max_iters: iteration cap
        rel_tol: stop once ||u^{n+1} - u^n|| / ||u^n|| drops below this value
        lambdas: optional per-component override, one value per chromatic component
    """
    lam: float = 0.5
    tau: Optional[float] = None
    sigma: Optional[float] = None
    theta: float = 1.0
    max_iters: int = 300
    rel_tol: float = 1.0e-5
    lambdas: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if not self.lam >= 0.0:
            raise InvariantError(f"lambda must be nonnegative, got {self.lam}")
        for name in ('tau', 'sigma'):
            value = getattr(self, name)
            if value is not None and not value > 0.0:
                raise InvariantError(f"{name} must be positive, got {value}")
        if not 0.0 <= self.theta <= 1.0:
            raise InvariantError(f"theta must lie in [0, 1], got {self.theta}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise InvariantError(f"max_iters must be a positive integer, got {self.max_iters}")
        if not self.rel_tol >= 0.0:
            raise InvariantError(f"rel_tol must be nonnegative, got {self.rel_tol}")
        if self.lambdas is not None:
            object.__setattr__(self, 'lambdas', tuple(float(v) for v in self.lambdas))
            if any(not v >= 0.0 for v in self.lambdas):
                raise InvariantError(f"per-component lambdas must be nonnegative, got {self.lambdas}")

    def lambdaFor(self, component):
        """
        :param component: chromatic component number m (1 .. M-1)
        :returns: :math:`\\lambda` used for that component
        """
        if self.lambdas is None:
            return self.lam
        if not 1 <= component <= len(self.lambdas):
            msg = f"no lambda given for chromatic component {component} ({len(self.lambdas)} values)"
            raise InvariantError(msg)
        return self.lambdas[component - 1]

    def steps(self, L):
        """
        Resolve step sizes against the operator norm bound **L**.

        :returns: tuple (tau, sigma)
        """
        default = 0.99 / L
        tau   = self.tau   if self.tau   is not None else default
        sigma = self.sigma if self.sigma is not None else default
        if sigma * tau * L * L > 1.0 + 1e-12:
            msg = f"step sizes violate sigma*tau*L^2 <= 1 (sigma={sigma}, tau={tau}, L={L})"
            raise InvariantError(msg)
        return tau, sigma
