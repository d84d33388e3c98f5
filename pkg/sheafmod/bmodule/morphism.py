"""Module homomorphisms: law checks and table arithmetic."""

import numpy as np

from sheafmod.bmodule.construct import module_from_map, projection_of
from sheafmod.bmodule.models import BLocale, BModule, ModuleHom
from sheafmod.errors import MalformedInput, NotAFrameHom, NotAHom
from sheafmod.report import LawReport, describe, first_violation


def check_module_hom(hom: ModuleHom) -> LawReport:
    """Preservation of 0, binary joins and the action: h(bx) = b h(x)."""
    src, tgt = hom.source, hom.target
    h = hom.table
    report = LawReport(subject=f"module hom {hom.name}")
    report.check(
        "h(0) = 0",
        h[src.carrier.bottom] == tgt.carrier.bottom,
        f"h(0)={tgt.carrier.labels[h[src.carrier.bottom]]}",
    )
    bad = h[src.carrier.join_table] != tgt.carrier.join_table[h[:, None], h[None, :]]
    hit = first_violation(bad)
    report.check(
        "h(x v y) = h(x) v h(y)",
        hit is None,
        describe("xy", [src.carrier.labels[i] for i in hit]) if hit else None,
    )
    if src.base is not tgt.base:
        report.check("same base frame", False, f"{src.base.name} vs {tgt.base.name}")
        return report
    bad = h[src.action] != tgt.action[:, h]
    hit = first_violation(bad)
    report.check(
        "h(bx) = b h(x)",
        hit is None,
        describe("bx", [src.base.labels[hit[0]], src.carrier.labels[hit[1]]]) if hit else None,
    )
    return report


def require_module_hom(hom: ModuleHom) -> ModuleHom:
    """Return ``hom`` unchanged, or raise NotAHom with the first failing law."""
    report = check_module_hom(hom)
    if not report.passed:
        failure = report.failures[0]
        raise NotAHom(f"{hom.name} fails {failure.law}", failure.witness)
    return hom


def compose(outer: ModuleHom, inner: ModuleHom, name: str | None = None) -> ModuleHom:
    """outer ∘ inner, applying ``inner`` first."""
    if inner.target is not outer.source:
        raise MalformedInput(f"cannot compose {outer} after {inner}")
    return ModuleHom(
        inner.source,
        outer.target,
        outer.table[inner.table],
        name=name or f"{outer.name}.{inner.name}",
    )


def identity_hom(module: BModule) -> ModuleHom:
    return ModuleHom(module, module, np.arange(module.size), name=f"id_{module.name}")


def zero_hom(source: BModule, target: BModule) -> ModuleHom:
    return ModuleHom(source, target, np.zeros(source.size, dtype=np.int64), name="0")


def join_homs(left: ModuleHom, right: ModuleHom) -> ModuleHom:
    """Pointwise join of two homs with the same source and target."""
    if left.source is not right.source or left.target is not right.target:
        raise MalformedInput(f"cannot join {left} and {right}")
    table = left.target.carrier.join_table[left.table, right.table]
    return ModuleHom(left.source, left.target, table, name=f"{left.name}v{right.name}")


def check_map_roundtrip(locale: BLocale) -> LawReport:
    """Rebuild the module from p* and compare it with the original.

    The rebuilt action must equal the original one, and b -> b1 of the
    rebuilt module must be p* again.
    """
    report = LawReport(subject=f"projection round trip of {locale.name}")
    pstar = projection_of(locale).pstar
    try:
        rebuilt = module_from_map(locale.base, locale.carrier, pstar, name=locale.name)
    except NotAFrameHom as e:
        report.check("p* is a frame hom", False, e.witness)
        return report
    hit = first_violation(rebuilt.action != locale.action)
    report.check(
        "p*(b) ^ x = bx",
        hit is None,
        describe("bx", [locale.base.labels[hit[0]], locale.carrier.labels[hit[1]]])
        if hit
        else None,
    )
    again = rebuilt.action[:, rebuilt.carrier.top]
    hit = first_violation(again != pstar)
    report.check(
        "projection of rebuilt module is p*",
        hit is None,
        describe("b", [locale.base.labels[hit[0]]]) if hit else None,
    )
    return report
