"""Extension-parameter angles on the circle S(-pi/2, pi/2].

Every self-adjoint boundary condition at the solenoid axis is labelled by
an angle on an interval with identified ends: -pi/2 and +pi/2 are the same
point.  All angle handling goes through here so that tan(lambda) at the
identified endpoint is treated by formula-level limits and never evaluated.
"""

import math

HALF_PI = math.pi / 2.0

# angles closer than this to +-pi/2 are treated as the endpoint exactly
ENDPOINT_TOL = 1e-12


def normalize_angle(lam: float) -> float:
    """Map lam into S(-pi/2, pi/2], identifying -pi/2 with +pi/2."""
    lam = math.remainder(lam, math.pi)
    if lam <= -HALF_PI + ENDPOINT_TOL or lam >= HALF_PI - ENDPOINT_TOL:
        return HALF_PI
    return lam


def is_endpoint(lam: float) -> bool:
    """True when lam is the identified point +-pi/2 of the circle."""
    return abs(abs(lam) - HALF_PI) <= ENDPOINT_TOL


def parse_angle(token: str) -> float:
    """Parse an angle given in radians or as an exact multiple of pi.

    Accepts plain floats plus the tokens ``pi``, ``pi/2``, ``-pi/4``,
    ``3pi/8``, ``0.25pi`` and the like.  The result is normalized into
    S(-pi/2, pi/2].
    """
    text = token.strip().lower().replace(" ", "")
    if "pi" in text:
        head, _, tail = text.partition("pi")
        sign = 1.0
        if head.startswith("-"):
            sign, head = -1.0, head[1:]
        elif head.startswith("+"):
            head = head[1:]
        factor = float(head) if head else 1.0
        if tail.startswith("/"):
            factor /= float(tail[1:])
        elif tail:
            raise ValueError(f"cannot parse angle token {token!r}")
        return normalize_angle(sign * factor * math.pi)
    return normalize_angle(float(text))
