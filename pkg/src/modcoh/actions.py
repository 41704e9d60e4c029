"""Sphere-action feasibility conditions and rank invariants.

Pure group-theoretic checks: the p^2 and 2p conditions, Swan's and the
Madsen-Thomas-Wall criteria, Wolf's pq clause, dimension-level periodicity
evidence, and the assembled per-group report with the Quillen pole-order
cross-check.

The 2p condition is computed in both of its circulating guises: "every
involution is central" and "every subgroup of order 2q (q prime) is
cyclic".  They are not equivalent in general (any noncyclic elementary
abelian 2-group is central-involution but has a noncyclic order-4
subgroup), so the report carries both booleans instead of choosing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameters
from .groups import FiniteGroup, center, p_rank, subgroup_closure
from .resolutions import (
    auto_poincare_fit,
    cohomology_dims,
    pole_order_at_one,
)


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def p2_condition(G: FiniteGroup, p: int) -> bool:
    """No Z/p x Z/p subgroup, i.e. p-rank at most one."""
    return p_rank(G, p) <= 1


def twop_condition(G: FiniteGroup) -> bool:
    """Milnor's form: every element of order 2 is central."""
    Z = center(G)
    return all(G.element_order(g) != 2 or g in Z for g in range(G.order))


def twop_condition_cyclic_form(G: FiniteGroup) -> bool:
    """Every subgroup of order 2q (q prime, q = 2 included) is cyclic."""
    for g in range(1, G.order):
        for h in range(1, G.order):
            S = subgroup_closure(G, [g, h])
            if S.order % 2 == 0 and _is_twice_prime(S.order) \
                    and not _is_cyclic(S):
                return False
    return True


def _is_twice_prime(n: int) -> bool:
    if n % 2:
        return False
    q = n // 2
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def _is_cyclic(S) -> bool:
    G = S.parent
    return any(G.element_order(g) == S.order for g in S.member_indices)


def swan_condition(G: FiniteGroup) -> bool:
    """Every abelian subgroup cyclic: p-rank at most one at every prime."""
    return all(p2_condition(G, p) for p in _prime_divisors(G.order))


def mtw_condition(G: FiniteGroup) -> bool:
    """Swan's condition together with the 2p condition."""
    return swan_condition(G) and twop_condition(G)


def wolf_pq_condition(G: FiniteGroup) -> bool:
    """Every subgroup of order pq (p, q prime, possibly equal) is cyclic."""
    for g in range(1, G.order):
        for h in range(1, G.order):
            S = subgroup_closure(G, [g, h])
            if _is_prime_times_prime(S.order) and not _is_cyclic(S):
                return False
    return True


def _is_prime_times_prime(n: int) -> bool:
    divs = _prime_divisors(n)
    if len(divs) == 1:
        return n == divs[0] ** 2
    if len(divs) == 2:
        return n == divs[0] * divs[1]
    return False


def periodicity_report(G: FiniteGroup, p: int, max_deg: int = 10):
    """(Artin-Tate style boolean, observed dimension-level period or None).

    The boolean is the rank condition r_p <= 1.  When it holds, the least
    d >= 1 with dims[i] = dims[i+d] on 1 <= i <= max_deg - d is reported as
    dimension-level evidence; the true cohomological period is invisible at
    dimension level (all-ones series report 1, not 2), hence the caveat in
    the field name.
    """
    if G.order % p:
        raise BadParameters(f"p = {p} does not divide |{G.name}|")
    periodic = p_rank(G, p) <= 1
    if not periodic:
        return False, None
    dims = cohomology_dims(G, p, max_deg).dims
    for d in range(1, max_deg):
        if all(dims[i] == dims[i + d] for i in range(1, max_deg - d + 1)):
            return True, d
    return True, None


@dataclass(frozen=True)
class PrimeReport:
    p: int
    p2_ok: bool
    twop_cyclic_ok: bool
    p_rank: int
    duflot_z: int
    krull_pole: int
    periodic_ok: bool
    observed_dim_period: int | None


@dataclass(frozen=True)
class ConditionReport:
    group: str
    order: int
    r_of_G: int
    swan_ok: bool
    twop_central_ok: bool
    twop_cyclic_ok: bool
    mtw_ok: bool
    wolf_pq_ok: bool
    periodic_ok: bool
    primes: tuple[PrimeReport, ...]

    def as_dict(self) -> dict:
        return {
            "group": self.group,
            "order": self.order,
            "r_of_G": self.r_of_G,
            "swan_ok": self.swan_ok,
            "twop_central_ok": self.twop_central_ok,
            "twop_cyclic_ok": self.twop_cyclic_ok,
            "mtw_ok": self.mtw_ok,
            "wolf_pq_ok": self.wolf_pq_ok,
            "periodic_ok": self.periodic_ok,
            "primes": {
                str(pr.p): {
                    "p2_ok": pr.p2_ok,
                    "twop_cyclic_ok": pr.twop_cyclic_ok,
                    "p_rank": pr.p_rank,
                    "duflot_z": pr.duflot_z,
                    "krull_pole": pr.krull_pole,
                    "periodic_ok": pr.periodic_ok,
                    "observed_dim_period": pr.observed_dim_period,
                }
                for pr in self.primes
            },
        }


def _twop_cyclic_at(G: FiniteGroup, p: int) -> bool:
    """Order-2p subgroups cyclic at one prime (order 4 when p = 2)."""
    target = 2 * p
    for g in range(1, G.order):
        for h in range(1, G.order):
            S = subgroup_closure(G, [g, h])
            if S.order == target and not _is_cyclic(S):
                return False
    return True


def full_report(G: FiniteGroup, max_deg: int = 10) -> ConditionReport:
    """All section-level conditions plus per-prime rank invariants."""
    primes = _prime_divisors(G.order)
    prime_reports = []
    Z = center(G)
    for p in primes:
        periodic, observed = periodicity_report(G, p, max_deg)
        zr = p_rank(Z.as_group(), p) if Z.order > 1 else 0
        from .resolutions import krull_dimension_estimate
        pole = krull_dimension_estimate(G, p, max_deg=max(max_deg, 12))
        prime_reports.append(PrimeReport(
            p=p,
            p2_ok=p2_condition(G, p),
            twop_cyclic_ok=_twop_cyclic_at(G, p),
            p_rank=p_rank(G, p),
            duflot_z=zr,
            krull_pole=pole,
            periodic_ok=periodic,
            observed_dim_period=observed,
        ))
    r_of_g = max((pr.p_rank for pr in prime_reports), default=0)
    swan = all(pr.p2_ok for pr in prime_reports)
    report = ConditionReport(
        group=G.name,
        order=G.order,
        r_of_G=r_of_g,
        swan_ok=swan,
        twop_central_ok=twop_condition(G),
        twop_cyclic_ok=twop_condition_cyclic_form(G),
        mtw_ok=swan and twop_condition(G),
        wolf_pq_ok=wolf_pq_condition(G),
        periodic_ok=swan,
        primes=tuple(prime_reports),
    )
    for pr in report.primes:
        if pr.krull_pole != pr.p_rank:
            raise AssertionError(
                f"Quillen cross-check failed for {G.name} at p={pr.p}: "
                f"pole order {pr.krull_pole} != p-rank {pr.p_rank}")
        if pr.duflot_z > pr.krull_pole:
            raise AssertionError(
                f"Duflot bound violated for {G.name} at p={pr.p}")
    return report
