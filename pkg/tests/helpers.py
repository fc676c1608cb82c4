from src.algebra.polynomials import PointAssignment


def random_polynomial(presentation, rng, max_degree=3, terms=3, coefficient_range=6):
    """Polinômio aleatório pequeno (pode ser nulo)."""
    ring = presentation.ring
    n = presentation.ngens
    poly = ring.zero
    for _ in range(terms):
        exponents = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            exponents[rng.randrange(n)] += 1
        coefficient = rng.randint(-coefficient_range, coefficient_range)
        poly += ring.from_dict({tuple(exponents): presentation.field.convert(coefficient)})
    return poly


def nonzero_random_polynomial(presentation, rng, **kwargs):
    while True:
        poly = random_polynomial(presentation, rng, **kwargs)
        if poly:
            return poly


def point(presentation, *values):
    return PointAssignment.from_values(presentation.field, values)
