import math

from ..exceptions import DomainError


def random_invertibility_probability(q, n, k):
    """
    Probability that a uniformly random k x n matrix over GF(q) has rank k.

    Equals prod_{i=n-k+1}^{n} (1 - q^-i); zero when n < k is rejected as a
    domain error and k = 0 gives 1.
    """
    if q < 2:
        raise DomainError(f"field size must be at least 2, got {q}")
    if k < 0 or n < 0:
        raise DomainError("matrix dimensions must be non-negative")
    if n < k:
        raise DomainError(f"cannot have rank {k} with only {n} columns")
    log_p = math.fsum(math.log1p(-float(q) ** -i) for i in range(n - k + 1, n + 1))
    return math.exp(log_p)
