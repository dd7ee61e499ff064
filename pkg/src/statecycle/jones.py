"""Kauffman-bracket state sum for the unnormalized Jones polynomial.

This path counts loops with its own kernel and never touches the cube
complex, so it serves as an independent check on the graded Euler
characteristic of computed homology.
"""

from __future__ import annotations

from collections import defaultdict

from . import kernels
from .diagram import Diagram
from .errors import TooLarge

Laurent = dict[int, int]

MAX_BRACKET_CROSSINGS = 20


def _clean(p) -> Laurent:
    return {e: c for e, c in sorted(p.items()) if c}


def poly_mul(p: Laurent, r: Laurent) -> Laurent:
    out: dict[int, int] = defaultdict(int)
    for e1, c1 in p.items():
        for e2, c2 in r.items():
            out[e1 + e2] += c1 * c2
    return _clean(out)


def poly_pow(p: Laurent, k: int) -> Laurent:
    out: Laurent = {0: 1}
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def kauffman_bracket(d: Diagram, max_crossings: int = MAX_BRACKET_CROSSINGS) -> Laurent:
    """<D> in the variable A, normalized so the crossingless unknot is 1."""
    n = len(d.crossings)
    if n > max_crossings:
        raise TooLarge(f"{n} crossings exceeds the bracket limit of {max_crossings}")
    counts = kernels.loop_histogram(list(d.crossings), d.arc_count)
    loop_factor = {2: -1, -2: -1}
    out: dict[int, int] = defaultdict(int)
    powers: dict[int, Laurent] = {}
    for h in range(counts.shape[0]):
        for k in range(counts.shape[1]):
            c = int(counts[h, k])
            if not c:
                continue
            if k not in powers:
                powers[k] = poly_pow(loop_factor, k - 1)
            shift = n - 2 * h
            for e, v in powers[k].items():
                out[e + shift] += c * v
    return _clean(out)


def jones_bracket(d: Diagram, max_crossings: int = MAX_BRACKET_CROSSINGS) -> Laurent:
    """Unnormalized Jones polynomial in q, with the unknot giving q + 1/q.

    Writhe-normalize the bracket, substitute A^-2 = -q and multiply by
    (q + 1/q).  This is the graded Euler characteristic convention of
    ``homology``.
    """
    bracket = kauffman_bracket(d, max_crossings)
    w = d.n_plus - d.n_minus
    sign = -1 if w % 2 else 1
    normalized = {e - 3 * w: sign * c for e, c in bracket.items()}
    in_q: dict[int, int] = {}
    for e, c in normalized.items():
        if e % 2:
            raise ArithmeticError("odd A-exponent after writhe normalization")
        k = -e // 2  # A^e = (A^-2)^k = (-q)^k
        in_q[k] = in_q.get(k, 0) + c * (-1 if k % 2 else 1)
    return poly_mul(_clean(in_q), {1: 1, -1: 1})


def mirror_poly(p: Laurent) -> Laurent:
    return _clean({-e: c for e, c in p.items()})


def format_poly(p: Laurent, var: str = "q") -> str:
    if not p:
        return "0"
    terms = []
    for e, c in sorted(p.items(), reverse=True):
        mag = abs(c)
        coef = "" if mag == 1 and e != 0 else str(mag)
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        body = coef + ("*" if coef and mono else "") + mono
        terms.append(("-" if c < 0 else "+", body))
    first_sign, first = terms[0]
    text = ("-" if first_sign == "-" else "") + first
    for s, body in terms[1:]:
        text += f" {s} {body}"
    return text
