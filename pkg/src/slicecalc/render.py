"""Text and LaTeX renderings of computed objects."""

from __future__ import annotations

import re

from .cohomology import CohomologyAnswer
from .mackey import ORBITS
from .reps import GroupPQ
from .ring import Monomial, RODegree, RingElement, format_monomial
from .slice import SliceTower, Spherical, u_label

_LATEX_GEN = {
    "u_xi": r"u_{\xi}", "u_xip": r"u_{\xi^p}", "u_xiq": r"u_{\xi^q}",
    "a_xi": r"a_{\xi}", "a_xip": r"a_{\xi^p}", "a_xiq": r"a_{\xi^q}",
}


def latex_rep(text: str) -> str:
    return re.sub(r"xi(?:_([pq]))?", lambda m: r"\xi" + (f"^{m.group(1)}" if m.group(1) else ""), text)


def latex_monomial(mono: Monomial) -> str:
    parts = []
    for name in ("u_xi", "u_xip", "u_xiq", "a_xi", "a_xip", "a_xiq"):
        e = getattr(mono, name)
        if e:
            parts.append(_LATEX_GEN[name] + (f"^{{{e}}}" if e > 1 else ""))
    return " ".join(parts) or "1"


def latex_element(x: RingElement) -> str:
    if x.is_zero():
        return "0"
    out = ""
    for k, (mono, c) in enumerate(x.terms):
        mag = abs(c)
        if mono == Monomial():
            body = str(mag)
        elif mag == 1:
            body = latex_monomial(mono)
        else:
            body = f"{mag} {latex_monomial(mono)}"
        if k == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


def _latex_cyclic(order: int) -> str:
    return r"\mathbb{Z}" if order == 0 else rf"\mathbb{{Z}}/{order}"


# -- cohomology ------------------------------------------------------------------

def cohomology_text(ans: CohomologyAnswer) -> str:
    lines = [f"alpha = {ans.alpha}",
             f"functor: {ans.functor_name} (row {ans.row})"]
    for orbit in ORBITS:
        lines.append(f"  {orbit:5} {ans.functor.group(orbit)}")
    return "\n".join(lines)


def _latex_group(grp) -> str:
    if grp.is_zero():
        return "0"
    return r" \oplus ".join(_latex_cyclic(f) for f in grp.invariant_factors)


def cohomology_latex(ans: CohomologyAnswer) -> str:
    rows = " \\\\\n".join(f"  {o} & {_latex_group(ans.functor.group(o))}"
                          for o in ORBITS)
    return (f"% H^{{{ans.alpha}}}(S^0; Z), {ans.functor_name}, row {ans.row}\n"
            "\\[\n\\begin{array}{ll}\n" + rows + "\n\\end{array}\n\\]")


# -- ring --------------------------------------------------------------------------

def basis_text(d: RODegree, basis: list[tuple[Monomial, int]], group) -> str:
    lines = [f"degree (m,n,l,a) = {tuple(d)}: {group}"]
    for mono, order in basis:
        lines.append(f"  {format_monomial(mono):30} {'Z' if order == 0 else f'Z/{order}'}")
    return "\n".join(lines)


def basis_latex(d: RODegree, basis: list[tuple[Monomial, int]], group) -> str:
    rows = " \\\\\n".join(
        f"  {latex_monomial(m)} & {_latex_cyclic(o)}"
        for m, o in basis) or "  0 & 0"
    return (f"% degree {tuple(d)}: {group}\n\\[\n\\begin{{array}}{{ll}}\n"
            + rows + "\n\\end{array}\n\\]")


# -- towers ----------------------------------------------------------------------

def tower_text(t: SliceTower) -> str:
    g = t.g
    lines = [f"S^({t.input}) ∧ HZ over {g}"
             + (f"  (computed after adding {t.rho_k}·rho)" if t.rho_k else ""),
             f"case: C_{g.p} {t.case[0]}, C_{g.q} {t.case[1]}; "
             f"shifts s_p={t.shifts[0]}, s_q={t.shifts[1]}"]
    width = max(len(str(c.dim)) for c in t.cells)
    for c in t.cells:
        lines.append(f"  {c.dim:>{width}}-slice: {c.describe(g)}")
    if t.edges:
        lines.append("maps down the spine: " + ", ".join(t.edges))
    for label, steps in t.lower_maps:
        lines.append(f"below the spherical slice: {steps} × {label}")
    for v in t.violations:
        lines.append(f"WARNING: {v}")
    return "\n".join(lines)


def _latex_cell(c, g: GroupPQ) -> str:
    if isinstance(c.content, Spherical):
        return rf"S^{{{latex_rep(str(c.content.beta))}}} \wedge H\underline{{\mathbb{{Z}}}}"
    parts = []
    for e in c.em_parts():
        tag = "p" if g.index(e.prime) == "p" else "q"
        parts.append(rf"\Sigma^{{{e.suspension}}} H\mathcal{{K}}_{tag}\langle \mathbb{{Z}}/{e.prime} \rangle")
    return r" \vee ".join(parts)


def tower_latex(t: SliceTower) -> str:
    """One row per slice: dimension, the slice, and the map to the next stage."""
    g = t.g
    edges = list(t.edges)
    rows = []
    for c in t.cells:
        if isinstance(c.content, Spherical):
            label = r"\text{spherical}"
        elif c.dim > t.spherical.dim and edges:
            taken = [edges.pop(0) for _ in c.em_parts() if edges]
            label = r"\downarrow " + ", ".join(_latex_u(e) for e in taken)
        else:
            label = r"\uparrow " + ", ".join(_latex_u(u_label(e.prime, g)) for e in c.em_parts())
        rows.append(f"  {c.dim} & {_latex_cell(c, g)} & {label}")
    body = " \\\\\n".join(rows)
    return ("\\[\n\\begin{array}{rll}\n"
            + body + "\n\\end{array}\n\\]")


def _latex_u(label: str) -> str:
    return label.replace("u_{xi-xi^p}", r"u_{\xi-\xi^p}").replace("u_{xi-xi^q}", r"u_{\xi-\xi^q}")
