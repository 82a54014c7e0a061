"""Referent accessibility: evaluate environments at selection sites."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ContsemError
from .logic import (
    And, Atom, EntityTerm, EnvExpr, Exists, Formula, Not, Or, SelOf,
    entity_text, env_entries, env_text,
)


class EmptyEnvironment(ContsemError):
    def __init__(self, site_id: int):
        self.site_id = site_id
        super().__init__(f"selection site #{site_id} has no accessible referents")


@dataclass(frozen=True)
class AccessReport:
    site_id: int
    env: EnvExpr
    candidates: tuple[EntityTerm, ...]


def eval_env(env: EnvExpr) -> list[EntityTerm]:
    """Accessible referents of an environment, most recent first, without
    duplicates.  See logic.env_entries for the union ordering rule."""
    return list(env_entries(env))


def report(f: Formula) -> list[AccessReport]:
    """One AccessReport per selection site, in site id order."""
    sites: list[SelOf] = []

    def walk(g):
        if isinstance(g, Not):
            walk(g.body)
        elif isinstance(g, (And, Or)):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, Exists):
            walk(g.body)
        elif isinstance(g, Atom):
            for a in g.args:
                if isinstance(a, SelOf):
                    sites.append(a)

    walk(f)
    sites.sort(key=lambda s: s.site_id)
    return [AccessReport(s.site_id, s.env, env_entries(s.env)) for s in sites]


def resolve(f: Formula, strategy: str) -> Formula:
    """Commit selection sites to referents.

    'symbolic' leaves the formula unchanged; 'recency' substitutes each
    site's most recent candidate.
    """
    if strategy == "symbolic":
        return f
    if strategy != "recency":
        raise ValueError(f"unknown strategy {strategy!r}")

    def walk(g):
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, (And, Or)):
            return type(g)(walk(g.left), walk(g.right))
        if isinstance(g, Exists):
            return Exists(g.var, walk(g.body))
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(pick(a) for a in g.args))
        return g

    def pick(a):
        if isinstance(a, SelOf):
            candidates = env_entries(a.env)
            if not candidates:
                raise EmptyEnvironment(a.site_id)
            return candidates[0]
        return a

    return walk(f)


def report_line(r: AccessReport) -> str:
    names = ", ".join(entity_text(c) for c in r.candidates)
    return f"sel#{r.site_id} env={env_text(r.env)} candidates=[{names}]"
