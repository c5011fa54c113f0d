"""Profile evaluation, classification and the structural checks on equilibria."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .benefit import BenefitFunction
from .equilibria import as_profile, check_equilibrium, closed_effort
from .exact import ZERO, to_fraction
from .graph import (
    Graph,
    degrees,
    dependants_and_guardians,
    is_dominating,
    is_forest,
    is_independent,
    induced_subgraph,
    is_matching,
    mask_of,
    members_of,
)
from .indsets import enumerate_maximal_independent_sets

SPECIALIST = "specialist"
FREE_RIDER = "free_rider"
CO_SPECIALIST = "co_specialist"
OTHER = "other_supporting"


class NotAnEquilibrium(ValueError):
    """A profile handed to an equilibrium-only routine fails the equilibrium test."""


def _require_equilibrium(g: Graph, x, e_star) -> tuple:
    prof = as_profile(x, g.n)
    chk = check_equilibrium(g, prof, e_star)
    if not chk.ok:
        raise NotAnEquilibrium(f"not an equilibrium: {list(chk.violations)}")
    return prof


# -- evaluation ------------------------------------------------------------

def neighborhood_effort(g: Graph, x: Iterable) -> list[Fraction]:
    return closed_effort(g, as_profile(x, g.n))


def utility(bf: BenefitFunction, g: Graph, x: Iterable, i: int) -> float:
    prof = as_profile(x, g.n)
    return bf(closed_effort(g, prof)[i]) - float(bf.c * prof[i])


def welfare(bf: BenefitFunction, g: Graph, x: Iterable) -> float:
    prof = as_profile(x, g.n)
    scn = closed_effort(g, prof)
    return math.fsum(bf(s) for s in scn) - float(bf.c * sum(prof, ZERO))


def welfare_gain(bf: BenefitFunction, g: Graph, y: Iterable, x: Iterable) -> float:
    """``W_U(y) - W_U(x)`` computed agent by agent with exact effort gaps."""
    py, px = as_profile(y, g.n), as_profile(x, g.n)
    sy, sx = closed_effort(g, py), closed_effort(g, px)
    terms = [bf.diff(a, b) for a, b in zip(sy, sx)]
    terms.append(-float(bf.c * (sum(py, ZERO) - sum(px, ZERO))))
    return math.fsum(terms)


def weighted_effort(w: Sequence, x: Sequence) -> Fraction:
    if len(w) != len(x):
        raise ValueError("weight and profile lengths differ")
    return sum((to_fraction(a) * to_fraction(b) for a, b in zip(w, x)), ZERO)


def cost(c, x: Sequence) -> Fraction:
    return to_fraction(c) * sum((to_fraction(v) for v in x), ZERO)


# -- classification --------------------------------------------------------

@dataclass(frozen=True)
class ProfileClassification:
    kind: str
    roles: tuple
    co_specialist_links: tuple

    def count(self, role: str) -> int:
        return self.roles.count(role)

    def members(self, role: str) -> tuple:
        return tuple(i for i, r in enumerate(self.roles) if r == role)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "roles": list(self.roles),
            "co_specialist_links": [list(e) for e in self.co_specialist_links],
        }


def _roles(g: Graph, prof, e: Fraction):
    roles, links = [], set()
    for i in range(g.n):
        xi = prof[i]
        if xi == 0:
            roles.append(FREE_RIDER)
        elif xi == e:
            roles.append(SPECIALIST)
        else:
            partner = [
                j for j in members_of(g.nbr_mask(i)) if prof[j] > 0 and xi + prof[j] == e
            ]
            if partner:
                roles.append(CO_SPECIALIST)
                for j in partner:
                    links.add((min(i, j), max(i, j)))
            else:
                roles.append(OTHER)
    return roles, sorted(links)


def classify(g: Graph, x: Iterable, e_star=1) -> ProfileClassification:
    e = to_fraction(e_star)
    prof = _require_equilibrium(g, x, e)
    roles, links = _roles(g, prof, e)
    if all(r in (SPECIALIST, FREE_RIDER) for r in roles):
        kind = "specialized"
    elif all(v > 0 for v in prof):
        kind = "distributed"
    else:
        kind = "hybrid"
    return ProfileClassification(kind, tuple(roles), tuple(links))


# -- structure checks ------------------------------------------------------

@dataclass
class CheckReport:
    """Named sub-assertions and the reasons any of them failed."""

    checks: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok:
            self.failures.append(f"{name}: {detail}" if detail else name)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __bool__(self) -> bool:
        return self.ok


def check_structure(g: Graph, x: Iterable, e_star=1, report: CheckReport | None = None) -> CheckReport:
    """Support, specialist, co-specialist and effort-chain facts of one equilibrium.

    Equilibria are checked for: dominating support; specialists whose
    neighbours all free ride (hence independent); co-specialist links whose
    outside neighbours free ride (hence a matching); the chain
    ``x_i <= e* <= scn_i <= d_i e*`` with its equality cases; removal of a
    free rider keeping the rest an equilibrium.
    """
    rep = report if report is not None else CheckReport()
    e = to_fraction(e_star)
    prof = as_profile(x, g.n)
    chk = check_equilibrium(g, prof, e)
    rep.record("equilibrium", chk.ok, str(list(chk.violations)))
    if not chk.ok:
        return rep
    roles, links = _roles(g, prof, e)
    scn = closed_effort(g, prof)
    deg = degrees(g)
    supp = [i for i in range(g.n) if prof[i] > 0]
    specialists = [i for i in range(g.n) if roles[i] == SPECIALIST]

    rep.record("support dominating", is_dominating(g, supp), f"support {supp}")
    for i in specialists:
        busy = [j for j in members_of(g.nbr_mask(i)) if prof[j] != 0]
        rep.record("specialist neighbours free ride", not busy, f"specialist {i} next to {busy}")
    rep.record("specialists independent", is_independent(g, specialists), str(specialists))
    for i, j in links:
        busy = [
            k
            for k in members_of((g.nbr_mask(i) | g.nbr_mask(j)) & ~((1 << i) | (1 << j)))
            if prof[k] != 0
        ]
        rep.record("co-specialist neighbours free ride", not busy, f"link {(i, j)} next to {busy}")
    rep.record("co-specialist links matching", is_matching(g, links), str(links))

    for i in range(g.n):
        d = deg[i]
        if d == 0:
            rep.record("isolated agent exerts e*", prof[i] == e and scn[i] == e, f"agent {i}")
            continue
        chain = prof[i] <= e <= scn[i] <= d * e
        rep.record("effort chain", chain, f"agent {i}")
        if roles[i] != FREE_RIDER:
            rep.record("supporting agent tight", scn[i] == e, f"agent {i}")
        if prof[i] == e and scn[i] == e:
            rep.record("double equality only for specialists", roles[i] == SPECIALIST, f"agent {i}")
        if d > 1:
            all_spec_nbrs = all(roles[j] == SPECIALIST for j in members_of(g.nbr_mask(i)))
            cond = roles[i] == FREE_RIDER and all_spec_nbrs
            rep.record("top of chain iff free rider among specialists", (scn[i] == d * e) == cond, f"agent {i}")

    # a free rider leaving keeps everyone else in equilibrium
    for i in range(g.n):
        if prof[i] == 0:
            sub, keep = induced_subgraph(g, [j for j in range(g.n) if j != i])
            ok = check_equilibrium(sub, [prof[j] for j in keep], e).ok
            rep.record("free rider removal", ok, f"agent {i}")
    return rep


def check_forest_structure(g: Graph, x: Iterable, e_star=1, report: CheckReport | None = None) -> CheckReport:
    """Forest-only facts: supporting agents pair up or specialize, cost counts them."""
    rep = report if report is not None else CheckReport()
    if not is_forest(g):
        raise ValueError("forest structure checks need a forest")
    e = to_fraction(e_star)
    prof = _require_equilibrium(g, x, e)
    cls = classify(g, prof, e)
    bad = [i for i, r in enumerate(cls.roles) if r == OTHER]
    rep.record("supporting agents specialist or co-specialist", not bad, f"agents {bad}")
    if cls.kind == "distributed":
        deg = degrees(g)
        rep.record("distributed only on links and isolated agents", all(d <= 1 for d in deg), "")
    y = forest_specialize_support(g, prof, e)
    supp_x = mask_of(i for i in range(g.n) if prof[i])
    supp_y = mask_of(i for i in range(g.n) if y[i])
    rep.record("specialized equilibrium inside support", supp_y & ~supp_x == 0 and check_equilibrium(g, y, e).ok, "")
    rep.record("specialized equilibrium with equal cost", sum(y, ZERO) == sum(prof, ZERO), "")
    spec_count = cls.count(SPECIALIST) + Fraction(cls.count(CO_SPECIALIST), 2)
    rep.record("cost counts specialists and half co-specialists", e * spec_count == sum(prof, ZERO), "")
    return rep


def check_dependant_rules(g: Graph, x: Iterable, e_star=1, report: CheckReport | None = None) -> CheckReport:
    """Dependants specialize, free ride, or pair only with a guardian they alone depend on."""
    rep = report if report is not None else CheckReport()
    e = to_fraction(e_star)
    prof = _require_equilibrium(g, x, e)
    roles, links = _roles(g, prof, e)
    link_set = set(links)
    by_guardian: dict[int, list[int]] = {}
    for dep, guard, _ in dependants_and_guardians(g):
        by_guardian.setdefault(guard, []).append(dep)
    for guard, deps in sorted(by_guardian.items()):
        for dep in deps:
            r = roles[dep]
            if r == CO_SPECIALIST:
                paired = (min(dep, guard), max(dep, guard)) in link_set
                rep.record("dependant co-specialist with its guardian", paired, f"dependant {dep}")
                rep.record("co-specialist dependant is sole dependant", len(deps) == 1, f"dependant {dep}")
            else:
                rep.record("dependant role", r in (SPECIALIST, FREE_RIDER), f"dependant {dep} is {r}")
        if len(deps) > 1:
            uniform = len({roles[d] for d in deps}) == 1 and roles[deps[0]] in (SPECIALIST, FREE_RIDER)
            rep.record("multiple dependants all alike", uniform, f"guardian {guard}: {deps}")
    if any(not codep for _, _, codep in dependants_and_guardians(g)):
        rep.record("free rider exists", any(v == 0 for v in prof), "")
    return rep


def stability_necessary(g: Graph, x: Iterable, e_star=1) -> bool:
    """Necessary (not sufficient) condition for best-response stability.

    The profile must be specialized and every free rider must see at least
    two specialists.
    """
    e = to_fraction(e_star)
    cls = classify(g, x, e)
    if cls.kind != "specialized":
        return False
    specialists = mask_of(cls.members(SPECIALIST))
    return all(bin(g.nbr_mask(i) & specialists).count("1") >= 2 for i in cls.members(FREE_RIDER))


# -- constructions ---------------------------------------------------------

def improve_pendant_cospecialist(g: Graph, bf: BenefitFunction, x: Iterable, pair, e_star=None) -> tuple:
    """Hand all the effort of a pendant co-specialist pair to the guardian.

    ``pair = (i, j)`` with ``i`` the sole dependant of guardian ``j``. The
    result has the same total effort and strictly higher welfare.
    """
    e = bf.e_star if e_star is None else to_fraction(e_star)
    prof = _require_equilibrium(g, x, e)
    i, j = pair
    deg = degrees(g)
    if deg[i] != 1 or not (g.nbr_mask(i) >> j) & 1:
        raise ValueError(f"{i} is not a dependant of {j}")
    deps_of_j = [d for d, guard, _ in dependants_and_guardians(g) if guard == j]
    if deps_of_j != [i]:
        raise ValueError(f"{i} is not the sole dependant of {j}")
    if deg[j] < 2:
        raise ValueError(f"guardian {j} has no neighbour besides {i}")
    if not (prof[i] > 0 and prof[j] > 0 and prof[i] + prof[j] == e):
        raise ValueError(f"{(i, j)} is not a co-specialist pair in this profile")
    y = list(prof)
    y[i], y[j] = ZERO, e
    return tuple(y)


def pendant_cospecialist_pairs(g: Graph, x: Iterable, e_star=1) -> list[tuple[int, int]]:
    """(dependant, guardian) pairs that qualify for the pendant improvement."""
    e = to_fraction(e_star)
    prof = as_profile(x, g.n)
    deg = degrees(g)
    counts: dict[int, int] = {}
    for _, guard, _ in dependants_and_guardians(g):
        counts[guard] = counts.get(guard, 0) + 1
    out = []
    for dep, guard, _ in dependants_and_guardians(g):
        if counts[guard] == 1 and deg[guard] >= 2 and prof[dep] > 0 and prof[guard] > 0 and prof[dep] + prof[guard] == e:
            out.append((dep, guard))
    return out


def forest_specialize_support(g: Graph, x: Iterable, e_star=1) -> tuple:
    """A specialized equilibrium of a forest using only agents already supporting in ``x``.

    The lexicographically smallest maximal independent set inside the support
    is used; on forests one always exists.
    """
    if not is_forest(g):
        raise ValueError("support specialization is only guaranteed on forests")
    e = to_fraction(e_star)
    prof = _require_equilibrium(g, x, e)
    supp = mask_of(i for i in range(g.n) if prof[i])
    for s in enumerate_maximal_independent_sets(g):
        if mask_of(s) & ~supp == 0:
            members = set(s)
            return tuple(e if i in members else ZERO for i in range(g.n))
    raise AssertionError("no maximal independent set inside the support of a forest equilibrium")


def forest_cost_formula(g: Graph, x: Iterable, c=1, e_star=1) -> Fraction:
    """``c e* (#specialists + #co-specialists / 2)``, checked against the direct cost."""
    if not is_forest(g):
        raise ValueError("the counting formula holds on forests")
    e = to_fraction(e_star)
    cls = classify(g, x, e)
    val = to_fraction(c) * e * (cls.count(SPECIALIST) + Fraction(cls.count(CO_SPECIALIST), 2))
    direct = cost(c, as_profile(x, g.n))
    if val != direct:
        raise AssertionError(f"counting formula {val} differs from cost {direct}")
    return val
