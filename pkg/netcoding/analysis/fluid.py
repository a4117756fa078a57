"""
Fluid limits of the innovative-packet queues along a tandem.

With thinning factor c = 1 - q^-rho, the innovative queue in front of link
i grows like

    Q_i(tau) / tau = (min(z_1, min_{2<=j<i} c z_j) - c z_i)^+

(nodes numbered from 2; the first term is the rate at which innovative
packets can reach node i). A two-link tandem gives (z_1 - c z_2)^+.
"""
from dataclasses import dataclass

from ..exceptions import DomainError


def thinning_factor(q, rho):
    if q < 2 or rho < 1:
        raise DomainError(f"need q >= 2 and rho >= 1, got q={q}, rho={rho}")
    return 1.0 - float(q) ** -int(rho)


@dataclass(frozen=True)
class FluidPrediction:
    z: tuple
    q: int
    rho: int
    growth: tuple

    @property
    def nodes(self):
        """Tandem node ids that own each growth rate ('2', '3', ...)."""
        return tuple(str(i + 2) for i in range(len(self.growth)))

    def as_dict(self):
        return dict(zip(self.nodes, self.growth))


def fluid_queue_rates(z, q, rho=1):
    """Queue growth rate at every intermediate node of a tandem with link rates ``z``."""
    z = tuple(float(v) for v in z)
    if len(z) < 2:
        raise DomainError("a tandem needs at least two links for an intermediate queue")
    if any(v < 0 for v in z):
        raise DomainError("link rates must be non-negative")
    c = thinning_factor(q, rho)
    growth = []
    arrival = z[0]
    for i in range(1, len(z)):
        growth.append(max(0.0, arrival - c * z[i]))
        arrival = min(arrival, c * z[i])
    return FluidPrediction(z, int(q), int(rho), tuple(growth))


def fluid_throughput(z, q, rho=1):
    """
    Rate at which innovative packets leave the tandem, rescaled by 1/c.

    Equals min(z_1, min_i c z_i) / c; for large rho it tends to min_i z_i,
    so R is achievable in the fluid limit iff R is below it.
    """
    z = tuple(float(v) for v in z)
    if not z:
        raise DomainError("a tandem needs at least one link")
    c = thinning_factor(q, rho)
    return min([z[0]] + [c * v for v in z[1:]]) / c
